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

#ifndef PRIVGAME_GEO_GRID_H_
#define PRIVGAME_GEO_GRID_H_

#include <string>

#include "absl/status/statusor.h"
#include "privgame/core/model.h"

namespace privgame::geo {

// A rectangular area split into nx * ny equal cells. Cell (x, y) has id
// y * nx + x.
class Grid {
 public:
  static absl::StatusOr<Grid> Create(int nx, int ny, double width_km,
                                     double height_km);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double width_km() const { return width_km_; }
  double height_km() const { return height_km_; }
  int num_cells() const { return nx_ * ny_; }
  double cell_width() const { return width_km_ / nx_; }
  double cell_height() const { return height_km_ / ny_; }

  int CellId(int x, int y) const { return y * nx_ + x; }
  int CellX(int id) const { return id % nx_; }
  int CellY(int id) const { return id / nx_; }
  bool IsValidCell(int id) const { return id >= 0 && id < num_cells(); }

  // Distance in km between the centers of two cells.
  double Distance(int a, int b) const;
  // Largest center-to-center distance.
  double Diameter() const;

  // Labels "0", ..., "n-1" for the cells.
  LabelSpace Cells(Role role) const;

 private:
  Grid(int nx, int ny, double width_km, double height_km)
      : nx_(nx), ny_(ny), width_km_(width_km), height_km_(height_km) {}

  int nx_;
  int ny_;
  double width_km_;
  double height_km_;
};

// Center-to-center Euclidean distances in km, |cells| x |cells|.
Table EuclidMetric(const Grid& grid);

// 0 on the diagonal, 1 elsewhere.
Table HammingCost(const Grid& grid);

// The location instantiation: observables are the cells themselves, cost
// is Hamming, and the privacy, distinguishability and ground distances are
// Euclidean.
MetricSet LocationMetrics(const Grid& grid);

// {"nx":..,"ny":..,"width_km":..,"height_km":..}
absl::StatusOr<Grid> ParseGridJson(const std::string& text);
std::string GridToJson(const Grid& grid);

}  // namespace privgame::geo

#endif  // PRIVGAME_GEO_GRID_H_
