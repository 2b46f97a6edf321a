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

#include "privgame/mechanism/pruning.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "privgame/common/errors.h"

namespace privgame {

absl::Status ApproxOptions::Validate() const {
  for (const auto& radius : {radius_disting, radius_support}) {
    if (radius.has_value() && !(*radius >= 0.0)) {
      return InvalidArgumentError(
          absl::StrCat("pruning radius ", *radius, " must be >= 0"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<PrunedSupport> PrunedSupport::Create(
    const MetricSet& metrics, const ApproxOptions& approx) {
  PRIVGAME_RETURN_IF_ERROR(approx.Validate());
  PrunedSupport out;
  const int ns = metrics.num_secrets();
  const int no = metrics.num_observables();
  out.num_secrets_ = ns;
  out.num_observables_ = no;
  out.radius_disting_ = approx.radius_disting;

  out.allowed_.assign(static_cast<size_t>(ns) * no, 1);
  out.num_allowed_ = ns * no;
  if (approx.radius_support.has_value()) {
    if (!metrics.ground().has_value()) {
      return InvalidArgumentError(
          "support pruning needs a ground distance between observables and "
          "secrets");
    }
    const Table& ground = *metrics.ground();
    for (int s = 0; s < ns; ++s) {
      int kept = 0;
      for (int o = 0; o < no; ++o) {
        if (ground(o, s) > *approx.radius_support) {
          out.allowed_[static_cast<size_t>(s) * no + o] = 0;
          --out.num_allowed_;
        } else {
          ++kept;
        }
      }
      if (kept == 0) {
        return MakeError(
            ErrorKind::kInfeasibleAfterPruning,
            absl::StrCat("support radius ", *approx.radius_support,
                         " leaves secret '", metrics.secrets().label(s),
                         "' without any observable"));
      }
    }
  }

  out.keep_pair_.assign(static_cast<size_t>(ns) * ns, 0);
  for (int s = 0; s < ns; ++s) {
    for (int t = 0; t < ns; ++t) {
      if (s == t) continue;
      if (approx.radius_disting.has_value() &&
          metrics.disting()(s, t) > *approx.radius_disting) {
        continue;
      }
      out.keep_pair_[static_cast<size_t>(s) * ns + t] = 1;
      ++out.num_pairs_kept_;
    }
  }
  return out;
}

absl::StatusOr<PrunedSupport> PruneConstraints(const MetricSet& metrics,
                                               const ApproxOptions& approx) {
  return PrunedSupport::Create(metrics, approx);
}

}  // namespace privgame
