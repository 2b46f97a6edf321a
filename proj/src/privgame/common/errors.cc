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

#include "privgame/common/errors.h"

#include <string>

#include "absl/strings/cord.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"

namespace privgame {
namespace {

constexpr char kPayloadUrl[] = "privgame/error_kind";

absl::StatusCode CanonicalCode(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNone:
      return absl::StatusCode::kOk;
    case ErrorKind::kInvalidArgument:
    case ErrorKind::kDimensionMismatch:
    case ErrorKind::kParse:
    case ErrorKind::kEmptyTrace:
      return absl::StatusCode::kInvalidArgument;
    case ErrorKind::kUnknownLabel:
      return absl::StatusCode::kNotFound;
    case ErrorKind::kInfeasible:
    case ErrorKind::kInfeasibleAfterPruning:
    case ErrorKind::kUnbounded:
      return absl::StatusCode::kFailedPrecondition;
    case ErrorKind::kSolverFailure:
    case ErrorKind::kNumericalFailure:
    case ErrorKind::kPostCheckFailed:
      return absl::StatusCode::kInternal;
    case ErrorKind::kIo:
      return absl::StatusCode::kUnavailable;
  }
  return absl::StatusCode::kUnknown;
}

}  // namespace

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNone:
      return "OK";
    case ErrorKind::kInvalidArgument:
      return "InvalidArgument";
    case ErrorKind::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorKind::kUnknownLabel:
      return "UnknownLabel";
    case ErrorKind::kInfeasible:
      return "Infeasible";
    case ErrorKind::kInfeasibleAfterPruning:
      return "InfeasibleAfterPruning";
    case ErrorKind::kUnbounded:
      return "Unbounded";
    case ErrorKind::kSolverFailure:
      return "SolverFailure";
    case ErrorKind::kNumericalFailure:
      return "NumericalFailure";
    case ErrorKind::kEmptyTrace:
      return "EmptyTrace";
    case ErrorKind::kIo:
      return "Io";
    case ErrorKind::kParse:
      return "Parse";
    case ErrorKind::kPostCheckFailed:
      return "PostCheckFailed";
  }
  return "Unknown";
}

absl::Status MakeError(ErrorKind kind, std::string_view message) {
  std::string text(ErrorKindName(kind));
  text.append(": ").append(message);
  absl::Status status(CanonicalCode(kind), text);
  status.SetPayload(kPayloadUrl,
                    absl::Cord(absl::StrCat(static_cast<int>(kind))));
  return status;
}

ErrorKind ErrorKindOf(const absl::Status& status) {
  if (status.ok()) return ErrorKind::kNone;
  auto payload = status.GetPayload(kPayloadUrl);
  int value = 0;
  if (!payload.has_value() ||
      !absl::SimpleAtoi(std::string(*payload), &value)) {
    return ErrorKind::kInvalidArgument;
  }
  return static_cast<ErrorKind>(value);
}

}  // namespace privgame
