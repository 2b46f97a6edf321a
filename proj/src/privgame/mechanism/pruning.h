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

#ifndef PRIVGAME_MECHANISM_PRUNING_H_
#define PRIVGAME_MECHANISM_PRUNING_H_

#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "privgame/core/model.h"

namespace privgame {

// Approximation radii that shrink the mechanism programs.
struct ApproxOptions {
  // Drop differential constraints between secrets farther apart than this
  // (in the unit of the distinguishability distance).
  std::optional<double> radius_disting;
  // Fix p(o|s) = 0 when the ground distance between o and s exceeds this.
  std::optional<double> radius_support;

  absl::Status Validate() const;
};

// The variables and secret pairs that survive pruning.
class PrunedSupport {
 public:
  // Fails with InfeasibleAfterPruning when some secret keeps no observable,
  // and with InvalidArgument when support pruning is requested but the
  // metrics carry no ground distance.
  static absl::StatusOr<PrunedSupport> Create(const MetricSet& metrics,
                                              const ApproxOptions& approx);

  int num_secrets() const { return num_secrets_; }
  int num_observables() const { return num_observables_; }

  // Whether p(o|s) is a free variable.
  bool Allowed(int s, int o) const {
    return allowed_[static_cast<size_t>(s) * num_observables_ + o] != 0;
  }
  // Whether differential constraints between s and s' are kept.
  bool KeepPair(int s, int s_prime) const {
    return keep_pair_[static_cast<size_t>(s) * num_secrets_ + s_prime] != 0;
  }

  int num_allowed() const { return num_allowed_; }
  int num_pairs_kept() const { return num_pairs_kept_; }
  bool prunes_support() const { return num_allowed_ < num_secrets_ * num_observables_; }
  bool prunes_pairs() const {
    return num_pairs_kept_ < num_secrets_ * (num_secrets_ - 1);
  }
  const std::optional<double>& radius_disting() const {
    return radius_disting_;
  }

 private:
  PrunedSupport() = default;

  int num_secrets_ = 0;
  int num_observables_ = 0;
  std::vector<char> allowed_;
  std::vector<char> keep_pair_;
  int num_allowed_ = 0;
  int num_pairs_kept_ = 0;
  std::optional<double> radius_disting_;
};

// Prunes the variable and constraint sets of the mechanism programs.
absl::StatusOr<PrunedSupport> PruneConstraints(const MetricSet& metrics,
                                               const ApproxOptions& approx);

}  // namespace privgame

#endif  // PRIVGAME_MECHANISM_PRUNING_H_
