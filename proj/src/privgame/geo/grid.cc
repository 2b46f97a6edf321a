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

#include "privgame/geo/grid.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "privgame/common/errors.h"

namespace privgame::geo {

absl::StatusOr<Grid> Grid::Create(int nx, int ny, double width_km,
                                  double height_km) {
  if (nx < 1 || ny < 1) {
    return InvalidArgumentError(
        absl::StrCat("grid must have at least one cell, got ", nx, "x", ny));
  }
  if (!(width_km > 0.0) || !(height_km > 0.0) || !std::isfinite(width_km) ||
      !std::isfinite(height_km)) {
    return InvalidArgumentError(absl::StrCat(
        "grid dimensions must be positive, got ", width_km, "x", height_km));
  }
  return Grid(nx, ny, width_km, height_km);
}

double Grid::Distance(int a, int b) const {
  const double dx = (CellX(a) - CellX(b)) * cell_width();
  const double dy = (CellY(a) - CellY(b)) * cell_height();
  return std::hypot(dx, dy);
}

double Grid::Diameter() const {
  return std::hypot((nx_ - 1) * cell_width(), (ny_ - 1) * cell_height());
}

LabelSpace Grid::Cells(Role role) const {
  return LabelSpace::Indexed(num_cells(), role);
}

Table EuclidMetric(const Grid& grid) {
  const int n = grid.num_cells();
  Table table(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) table(a, b) = grid.Distance(a, b);
  }
  return table;
}

Table HammingCost(const Grid& grid) {
  const int n = grid.num_cells();
  return Table::Constant(n, n, 1.0) - Table::Identity(n, n);
}

MetricSet LocationMetrics(const Grid& grid) {
  const Table euclid = EuclidMetric(grid);
  return *MetricSet::Create(grid.Cells(Role::kSecrets),
                            grid.Cells(Role::kObservables), HammingCost(grid),
                            euclid, euclid, euclid);
}

absl::StatusOr<Grid> ParseGridJson(const std::string& text) {
  const auto doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    return MakeError(ErrorKind::kParse, "grid config is not a JSON object");
  }
  for (const char* key : {"nx", "ny", "width_km", "height_km"}) {
    if (!doc.contains(key) || !doc[key].is_number()) {
      return MakeError(ErrorKind::kParse,
                       absl::StrCat("grid config needs numeric \"", key, "\""));
    }
  }
  if (!doc["nx"].is_number_integer() || !doc["ny"].is_number_integer()) {
    return MakeError(ErrorKind::kParse, "grid \"nx\" and \"ny\" must be integers");
  }
  return Grid::Create(doc["nx"].get<int>(), doc["ny"].get<int>(),
                      doc["width_km"].get<double>(),
                      doc["height_km"].get<double>());
}

std::string GridToJson(const Grid& grid) {
  nlohmann::ordered_json doc;
  doc["nx"] = grid.nx();
  doc["ny"] = grid.ny();
  doc["width_km"] = grid.width_km();
  doc["height_km"] = grid.height_km();
  return doc.dump() + "\n";
}

}  // namespace privgame::geo
