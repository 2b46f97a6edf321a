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

#include "privgame/core/label_space.h"

#include <utility>

#include "absl/strings/str_cat.h"
#include "privgame/common/errors.h"

namespace privgame {

std::string_view RoleName(Role role) {
  return role == Role::kSecrets ? "secrets" : "observables";
}

absl::StatusOr<LabelSpace> LabelSpace::Create(std::vector<std::string> labels,
                                              Role role) {
  if (labels.empty()) {
    return InvalidArgumentError(
        absl::StrCat("label space of ", std::string(RoleName(role)),
                     " must not be empty"));
  }
  auto data = std::make_shared<Data>();
  data->index.reserve(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    if (!data->index.emplace(labels[i], static_cast<int>(i)).second) {
      return InvalidArgumentError(absl::StrCat(
          "duplicate label '", labels[i], "' in ", std::string(RoleName(role))));
    }
  }
  data->labels = std::move(labels);
  return LabelSpace(std::move(data), role);
}

LabelSpace LabelSpace::Indexed(int n, Role role) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back(absl::StrCat(i));
  return *Create(std::move(labels), role);
}

absl::StatusOr<int> LabelSpace::IndexOf(std::string_view label) const {
  auto it = data_->index.find(std::string(label));
  if (it == data_->index.end()) {
    return UnknownLabelError(absl::StrCat("unknown ",
                                          std::string(RoleName(role_)),
                                          " label '", std::string(label), "'"));
  }
  return it->second;
}

bool LabelSpace::SameLabels(const LabelSpace& other) const {
  return data_ == other.data_ || data_->labels == other.data_->labels;
}

LabelSpace LabelSpace::WithRole(Role role) const {
  return LabelSpace(data_, role);
}

}  // namespace privgame
