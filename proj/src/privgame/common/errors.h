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

#ifndef PRIVGAME_COMMON_ERRORS_H_
#define PRIVGAME_COMMON_ERRORS_H_

#include <string_view>

#include "absl/status/status.h"

namespace privgame {

// Domain error kinds. Each is carried as a payload on an absl::Status so that
// callers (and the C API) can distinguish e.g. an infeasible design problem
// from a malformed input without parsing messages.
enum class ErrorKind {
  kNone = 0,
  kInvalidArgument,
  kDimensionMismatch,
  kUnknownLabel,
  kInfeasible,
  kInfeasibleAfterPruning,
  kUnbounded,
  kSolverFailure,
  kNumericalFailure,
  kEmptyTrace,
  kIo,
  kParse,
  kPostCheckFailed,
};

std::string_view ErrorKindName(ErrorKind kind);

absl::Status MakeError(ErrorKind kind, std::string_view message);

// Returns kNone for OK statuses and kInvalidArgument for statuses created
// outside this library.
ErrorKind ErrorKindOf(const absl::Status& status);

inline absl::Status InvalidArgumentError(std::string_view message) {
  return MakeError(ErrorKind::kInvalidArgument, message);
}
inline absl::Status DimensionMismatchError(std::string_view message) {
  return MakeError(ErrorKind::kDimensionMismatch, message);
}
inline absl::Status UnknownLabelError(std::string_view message) {
  return MakeError(ErrorKind::kUnknownLabel, message);
}
inline absl::Status InfeasibleError(std::string_view message) {
  return MakeError(ErrorKind::kInfeasible, message);
}
inline absl::Status SolverFailureError(std::string_view message) {
  return MakeError(ErrorKind::kSolverFailure, message);
}
inline absl::Status NumericalFailureError(std::string_view message) {
  return MakeError(ErrorKind::kNumericalFailure, message);
}

}  // namespace privgame

#define PRIVGAME_RETURN_IF_ERROR(expr)          \
  do {                                          \
    ::absl::Status _privgame_status = (expr);   \
    if (!_privgame_status.ok()) {               \
      return _privgame_status;                  \
    }                                           \
  } while (0)

#define PRIVGAME_CONCAT_INNER(a, b) a##b
#define PRIVGAME_CONCAT(a, b) PRIVGAME_CONCAT_INNER(a, b)

#define PRIVGAME_ASSIGN_OR_RETURN(lhs, expr) \
  PRIVGAME_ASSIGN_OR_RETURN_IMPL(PRIVGAME_CONCAT(_statusor_, __LINE__), lhs, expr)

#define PRIVGAME_ASSIGN_OR_RETURN_IMPL(statusor, lhs, expr) \
  auto statusor = (expr);                                   \
  if (!statusor.ok()) {                                     \
    return statusor.status();                               \
  }                                                         \
  lhs = std::move(statusor).value()

#endif  // PRIVGAME_COMMON_ERRORS_H_
