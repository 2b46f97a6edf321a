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

#ifndef PRIVGAME_GEO_TRACE_H_
#define PRIVGAME_GEO_TRACE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "privgame/core/model.h"
#include "privgame/geo/grid.h"

namespace privgame::geo {

struct Visit {
  int64_t timestamp = 0;
  int cell = 0;
};

// The visits of one user, in time order.
struct Trace {
  std::string user_id;
  std::vector<Visit> visits;

  // Cell ids must be valid for `grid` and timestamps non-decreasing.
  absl::Status Validate(const Grid& grid) const;
};

// pi(s) = (count(s) + smoothing) / (total + smoothing * |cells|). Fails
// with EmptyTrace when the trace is empty and smoothing is zero.
absl::StatusOr<Prior> PriorFromTrace(const Trace& trace, const Grid& grid,
                                     double smoothing = 0.0);

// Parameters of the two-anchor random walk behind SyntheticTrace. At an
// anchor the user stays with the anchor's stay probability; otherwise they
// commute to the other anchor with `commute_prob`, or else step to a
// neighbouring cell and start roaming. While roaming they jump back to a
// random anchor with `return_prob` and otherwise take another
// neighbouring step (the eight surrounding cells, clipped to the grid).
struct MobilityParams {
  double home_stay = 0.85;
  double work_stay = 0.75;
  double commute_prob = 0.6;
  double return_prob = 0.35;
  int64_t start_timestamp = 0;
  int64_t step_seconds = 1800;
};

// Deterministic for a fixed seed. Home and work are distinct random cells
// (the same cell on a one-cell grid); the walk starts at home.
Trace SyntheticTrace(const Grid& grid, int length, uint64_t seed,
                     const MobilityParams& params = {},
                     std::string user_id = "user");

// Multiplies the `k` most likely entries (ties to the lowest index) by
// `beta` and renormalizes. Requires k <= |S| and beta >= 1.
absl::StatusOr<Prior> SharpenPrior(const Prior& prior, int k = 2,
                                   double beta = 4.0);

// CSV with header `user_id,timestamp,cell_id`. Traces come back in order
// of first appearance of each user.
absl::StatusOr<std::vector<Trace>> ParseTraceCsv(const std::string& text,
                                                 const Grid& grid);
std::string TracesToCsv(const std::vector<Trace>& traces);

}  // namespace privgame::geo

#endif  // PRIVGAME_GEO_TRACE_H_
