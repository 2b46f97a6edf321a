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

#ifndef PRIVGAME_LP_LP_FORMAT_H_
#define PRIVGAME_LP_LP_FORMAT_H_

#include <ostream>
#include <string>

#include "absl/status/status.h"
#include "privgame/lp/linear_program.h"

namespace privgame::lp {

// Writes `lp` in the CPLEX-style textual LP format (Minimize/Maximize,
// Subject To, Bounds, End). Intended for debugging; readable by most solvers.
void WriteLpFormat(const LinearProgram& lp, std::ostream& out);

absl::Status WriteLpFile(const LinearProgram& lp, const std::string& path);

}  // namespace privgame::lp

#endif  // PRIVGAME_LP_LP_FORMAT_H_
