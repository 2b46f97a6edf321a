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

#include "privgame/geo/trace.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "privgame/common/errors.h"

namespace privgame::geo {
namespace {

// Library-independent draws so traces are identical across standard
// library implementations.
double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int UniformIndex(std::mt19937_64& rng, int n) {
  return static_cast<int>(rng() % static_cast<uint64_t>(n));
}

int NeighbourStep(const Grid& grid, int cell, std::mt19937_64& rng) {
  std::vector<int> options;
  const int x = grid.CellX(cell);
  const int y = grid.CellY(cell);
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const int nx = x + dx;
      const int ny = y + dy;
      if (nx >= 0 && nx < grid.nx() && ny >= 0 && ny < grid.ny()) {
        options.push_back(grid.CellId(nx, ny));
      }
    }
  }
  if (options.empty()) return cell;
  return options[UniformIndex(rng, static_cast<int>(options.size()))];
}

}  // namespace

absl::Status Trace::Validate(const Grid& grid) const {
  for (size_t i = 0; i < visits.size(); ++i) {
    if (!grid.IsValidCell(visits[i].cell)) {
      return InvalidArgumentError(absl::StrCat("user ", user_id, ": cell id ",
                                               visits[i].cell,
                                               " is outside the grid"));
    }
    if (i > 0 && visits[i].timestamp < visits[i - 1].timestamp) {
      return InvalidArgumentError(absl::StrCat(
          "user ", user_id, ": timestamps decrease at visit ", i));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<Prior> PriorFromTrace(const Trace& trace, const Grid& grid,
                                     double smoothing) {
  if (!(smoothing >= 0.0) || !std::isfinite(smoothing)) {
    return InvalidArgumentError(
        absl::StrCat("smoothing ", smoothing, " must be >= 0"));
  }
  PRIVGAME_RETURN_IF_ERROR(trace.Validate(grid));
  const int n = grid.num_cells();
  if (trace.visits.empty() && smoothing == 0.0) {
    return MakeError(ErrorKind::kEmptyTrace,
                     absl::StrCat("trace of user ", trace.user_id,
                                  " is empty and smoothing is 0"));
  }
  std::vector<double> counts(n, smoothing);
  for (const Visit& visit : trace.visits) counts[visit.cell] += 1.0;
  const double total =
      static_cast<double>(trace.visits.size()) + smoothing * n;
  for (double& c : counts) c /= total;
  // Absorb rounding so the probabilities sum to one as tightly as possible.
  const double sum = std::accumulate(counts.begin(), counts.end(), 0.0);
  for (double& c : counts) c /= sum;
  return Prior::Create(grid.Cells(Role::kSecrets), std::move(counts));
}

Trace SyntheticTrace(const Grid& grid, int length, uint64_t seed,
                     const MobilityParams& params, std::string user_id) {
  std::mt19937_64 rng(seed);
  const int n = grid.num_cells();
  const int home = UniformIndex(rng, n);
  int work = home;
  if (n > 1) {
    work = UniformIndex(rng, n - 1);
    if (work >= home) ++work;
  }

  enum class State { kHome, kWork, kRoam };
  Trace trace;
  trace.user_id = std::move(user_id);
  trace.visits.reserve(std::max(0, length));
  State state = State::kHome;
  int cell = home;
  int64_t timestamp = params.start_timestamp;
  for (int i = 0; i < length; ++i) {
    trace.visits.push_back({timestamp, cell});
    timestamp += params.step_seconds;
    const double u = Uniform01(rng);
    switch (state) {
      case State::kHome:
      case State::kWork: {
        const bool at_home = state == State::kHome;
        const double stay = at_home ? params.home_stay : params.work_stay;
        if (u < stay) break;
        if (Uniform01(rng) < params.commute_prob) {
          state = at_home ? State::kWork : State::kHome;
          cell = at_home ? work : home;
        } else {
          state = State::kRoam;
          cell = NeighbourStep(grid, cell, rng);
        }
        break;
      }
      case State::kRoam:
        if (u < params.return_prob) {
          const bool to_home = Uniform01(rng) < 0.5;
          state = to_home ? State::kHome : State::kWork;
          cell = to_home ? home : work;
        } else {
          cell = NeighbourStep(grid, cell, rng);
        }
        break;
    }
  }
  return trace;
}

absl::StatusOr<Prior> SharpenPrior(const Prior& prior, int k, double beta) {
  if (k < 0 || k > prior.size()) {
    return InvalidArgumentError(absl::StrCat(
        "k = ", k, " must lie in [0, ", prior.size(), "]"));
  }
  if (!(beta >= 1.0) || !std::isfinite(beta)) {
    return InvalidArgumentError(absl::StrCat("beta = ", beta, " must be >= 1"));
  }
  std::vector<int> order(prior.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return prior[a] > prior[b]; });
  std::vector<double> probs = prior.probs();
  for (int i = 0; i < k; ++i) probs[order[i]] *= beta;
  const double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& p : probs) p /= sum;
  return Prior::Create(prior.secrets(), std::move(probs));
}

absl::StatusOr<std::vector<Trace>> ParseTraceCsv(const std::string& text,
                                                 const Grid& grid) {
  std::vector<Trace> traces;
  std::map<std::string, size_t> index;
  bool header_seen = false;
  int line_number = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_number;
    absl::string_view line = absl::StripAsciiWhitespace(raw);
    if (line.empty()) continue;
    std::vector<std::string> fields = absl::StrSplit(line, ',');
    for (std::string& f : fields) {
      f = std::string(absl::StripAsciiWhitespace(f));
    }
    if (!header_seen) {
      if (fields != std::vector<std::string>{"user_id", "timestamp", "cell_id"}) {
        return MakeError(ErrorKind::kParse,
                         "trace CSV must start with user_id,timestamp,cell_id");
      }
      header_seen = true;
      continue;
    }
    int64_t timestamp = 0;
    int cell = 0;
    if (fields.size() != 3 || !absl::SimpleAtoi(fields[1], &timestamp) ||
        !absl::SimpleAtoi(fields[2], &cell)) {
      return MakeError(ErrorKind::kParse,
                       absl::StrCat("malformed trace line ", line_number));
    }
    auto [it, inserted] = index.emplace(fields[0], traces.size());
    if (inserted) traces.push_back(Trace{fields[0], {}});
    traces[it->second].visits.push_back({timestamp, cell});
  }
  if (!header_seen) {
    return MakeError(ErrorKind::kParse, "trace CSV has no header");
  }
  for (const Trace& trace : traces) {
    PRIVGAME_RETURN_IF_ERROR(trace.Validate(grid));
  }
  return traces;
}

std::string TracesToCsv(const std::vector<Trace>& traces) {
  std::string out = "user_id,timestamp,cell_id\n";
  for (const Trace& trace : traces) {
    for (const Visit& visit : trace.visits) {
      absl::StrAppend(&out, trace.user_id, ",", visit.timestamp, ",",
                      visit.cell, "\n");
    }
  }
  return out;
}

}  // namespace privgame::geo
