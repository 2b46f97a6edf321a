// Copyright 2026 The Privgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PRIVGAME_HARNESS_CSV_WRITER_H_
#define PRIVGAME_HARNESS_CSV_WRITER_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace privgame::harness {

// A CSV document with `#`-prefixed metadata lines, one `#` line per
// column documenting it, and a plain header row. Cells are quoted only
// when they contain a comma, quote or newline.
class CsvTable {
 public:
  struct Column {
    std::string name;
    std::string description;
    // Timing columns carry wall-clock values and are the only cells that
    // differ between runs with the same seed.
    bool timing = false;
  };

  explicit CsvTable(std::vector<Column> columns);

  void AddMetadata(std::string key, std::string value);

  // `cells` must have one entry per column.
  void AddRow(std::vector<std::string> cells);

  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const { return rows_; }
  int ColumnIndex(const std::string& name) const;

  std::string ToString() const;

 private:
  std::vector<Column> columns_;
  std::vector<std::pair<std::string, std::string>> metadata_;
  std::vector<std::vector<std::string>> rows_;
};

// Fixed-precision rendering shared by all numeric cells; empty when the
// value is absent.
std::string FormatNumber(std::optional<double> value);

// Escapes one cell for CSV output.
std::string EscapeCsvCell(const std::string& cell);

}  // namespace privgame::harness

#endif  // PRIVGAME_HARNESS_CSV_WRITER_H_
