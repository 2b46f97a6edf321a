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

#ifndef PRIVGAME_CORE_LABEL_SPACE_H_
#define PRIVGAME_CORE_LABEL_SPACE_H_

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "absl/status/statusor.h"

namespace privgame {

enum class Role { kSecrets, kObservables };

std::string_view RoleName(Role role);

// An ordered, non-empty set of distinct labels with stable indices. Copies
// share the underlying storage, so passing spaces around is cheap.
class LabelSpace {
 public:
  // Fails with InvalidArgument on an empty list or duplicate labels.
  static absl::StatusOr<LabelSpace> Create(std::vector<std::string> labels,
                                           Role role);

  // Labels "0", "1", ..., "n-1". `n` must be positive.
  static LabelSpace Indexed(int n, Role role);

  int size() const { return static_cast<int>(data_->labels.size()); }
  Role role() const { return role_; }
  const std::string& label(int index) const { return data_->labels[index]; }
  const std::vector<std::string>& labels() const { return data_->labels; }

  // Fails with UnknownLabel.
  absl::StatusOr<int> IndexOf(std::string_view label) const;

  // Same labels in the same order, regardless of role.
  bool SameLabels(const LabelSpace& other) const;

  // The same labels under a different role.
  LabelSpace WithRole(Role role) const;

 private:
  struct Data {
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> index;
  };

  LabelSpace(std::shared_ptr<const Data> data, Role role)
      : data_(std::move(data)), role_(role) {}

  std::shared_ptr<const Data> data_;
  Role role_;
};

}  // namespace privgame

#endif  // PRIVGAME_CORE_LABEL_SPACE_H_
