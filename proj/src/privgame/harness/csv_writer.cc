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

#include "privgame/harness/csv_writer.h"

#include <cassert>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_replace.h"

namespace privgame::harness {

CsvTable::CsvTable(std::vector<Column> columns)
    : columns_(std::move(columns)) {}

void CsvTable::AddMetadata(std::string key, std::string value) {
  metadata_.emplace_back(std::move(key), std::move(value));
}

void CsvTable::AddRow(std::vector<std::string> cells) {
  assert(cells.size() == columns_.size());
  cells.resize(columns_.size());
  rows_.push_back(std::move(cells));
}

int CsvTable::ColumnIndex(const std::string& name) const {
  for (size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

std::string CsvTable::ToString() const {
  std::string out;
  for (const auto& [key, value] : metadata_) {
    absl::StrAppend(&out, "# ", key, ": ", value, "\n");
  }
  for (const Column& column : columns_) {
    absl::StrAppend(&out, "# column ", column.name, ": ", column.description,
                    column.timing ? " (wall-clock, varies between runs)" : "",
                    "\n");
  }
  std::vector<std::string> names;
  names.reserve(columns_.size());
  for (const Column& column : columns_) names.push_back(column.name);
  absl::StrAppend(&out, absl::StrJoin(names, ","), "\n");
  for (const auto& row : rows_) {
    std::vector<std::string> escaped;
    escaped.reserve(row.size());
    for (const std::string& cell : row) escaped.push_back(EscapeCsvCell(cell));
    absl::StrAppend(&out, absl::StrJoin(escaped, ","), "\n");
  }
  return out;
}

std::string FormatNumber(std::optional<double> value) {
  if (!value.has_value()) return "";
  return absl::StrFormat("%.10g", *value);
}

std::string EscapeCsvCell(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  return absl::StrCat("\"", absl::StrReplaceAll(cell, {{"\"", "\"\""}}), "\"");
}

}  // namespace privgame::harness
