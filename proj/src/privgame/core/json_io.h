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

#ifndef PRIVGAME_CORE_JSON_IO_H_
#define PRIVGAME_CORE_JSON_IO_H_

#include <string>

#include "absl/status/statusor.h"
#include "privgame/core/model.h"

namespace privgame {

// JSON documents:
//   mechanism {"secrets":[...],"observables":[...],"rows":[[...],...]}
//             rows indexed by secrets;
//   attack    {"observables":[...],"secrets":[...],"rows":[[...],...]}
//             rows indexed by observables;
//   prior     {"secrets":[...],"probs":[...]};
//   metrics   {"secrets":[...],"observables":[...],"cost":[[c(o,s)]],
//              "privacy":[[d(s_hat,s)]],"disting":[[d(s,s')]],
//              "ground":[[g(o,s)]] (optional)}.
// Labels may be JSON strings or integers (stored as their decimal text).
// Matrix rows that sum to 1 with an error above this tolerance are rejected.
inline constexpr double kJsonRowSumTolerance = 1e-6;

std::string MechanismToJson(const Mechanism& mech);
std::string AttackToJson(const Attack& attack);
std::string PriorToJson(const Prior& prior);
std::string MetricSetToJson(const MetricSet& metrics);

// Parse errors are reported as kParse; semantic violations keep the kind
// of the failing constructor.
absl::StatusOr<Mechanism> ParseMechanismJson(const std::string& text);
absl::StatusOr<Attack> ParseAttackJson(const std::string& text);
absl::StatusOr<Prior> ParsePriorJson(const std::string& text);
absl::StatusOr<MetricSet> ParseMetricSetJson(const std::string& text);

absl::StatusOr<std::string> ReadTextFile(const std::string& path);
absl::Status WriteTextFile(const std::string& path, const std::string& text);

}  // namespace privgame

#endif  // PRIVGAME_CORE_JSON_IO_H_
