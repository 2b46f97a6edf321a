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

#include "privgame/core/json_io.h"

#include <fstream>
#include <sstream>
#include <vector>

#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"
#include "privgame/common/errors.h"

namespace privgame {
namespace {

using Json = nlohmann::ordered_json;

absl::Status ParseError(std::string_view message) {
  return MakeError(ErrorKind::kParse, message);
}

absl::StatusOr<Json> ParseDocument(const std::string& text) {
  Json doc = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) return ParseError("malformed JSON");
  if (!doc.is_object()) return ParseError("expected a JSON object");
  return doc;
}

absl::StatusOr<const Json*> Field(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    return ParseError(absl::StrCat("missing field \"", key, "\""));
  }
  return &*it;
}

absl::StatusOr<LabelSpace> ParseLabels(const Json& doc, const char* key,
                                       Role role) {
  PRIVGAME_ASSIGN_OR_RETURN(const Json* node, Field(doc, key));
  if (!node->is_array()) {
    return ParseError(absl::StrCat("\"", key, "\" must be an array"));
  }
  std::vector<std::string> labels;
  for (const Json& item : *node) {
    if (item.is_string()) {
      labels.push_back(item.get<std::string>());
    } else if (item.is_number_integer()) {
      labels.push_back(absl::StrCat(item.get<long long>()));
    } else {
      return ParseError(
          absl::StrCat("labels in \"", key, "\" must be strings or integers"));
    }
  }
  return LabelSpace::Create(std::move(labels), role);
}

absl::StatusOr<std::vector<double>> ParseVector(const Json& node,
                                                std::string_view what) {
  if (!node.is_array()) {
    return ParseError(absl::StrCat(std::string(what), " must be an array"));
  }
  std::vector<double> out;
  out.reserve(node.size());
  for (const Json& item : node) {
    if (!item.is_number()) {
      return ParseError(
          absl::StrCat(std::string(what), " must contain only numbers"));
    }
    out.push_back(item.get<double>());
  }
  return out;
}

absl::StatusOr<Table> ParseTable(const Json& doc, const char* key, int rows,
                                 int cols) {
  PRIVGAME_ASSIGN_OR_RETURN(const Json* node, Field(doc, key));
  if (!node->is_array() || static_cast<int>(node->size()) != rows) {
    return DimensionMismatchError(
        absl::StrCat("\"", key, "\" must be an array of ", rows, " rows"));
  }
  Table table(rows, cols);
  for (int r = 0; r < rows; ++r) {
    PRIVGAME_ASSIGN_OR_RETURN(
        std::vector<double> row,
        ParseVector((*node)[r], absl::StrCat("\"", key, "\" row")));
    if (static_cast<int>(row.size()) != cols) {
      return DimensionMismatchError(absl::StrCat(
          "\"", key, "\" row ", r, " has ", row.size(), " entries, expected ",
          cols));
    }
    for (int c = 0; c < cols; ++c) table(r, c) = row[c];
  }
  return table;
}

Json LabelsJson(const LabelSpace& space) {
  Json out = Json::array();
  for (const std::string& label : space.labels()) out.push_back(label);
  return out;
}

Json TableJson(const Table& table) {
  Json out = Json::array();
  for (int r = 0; r < table.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < table.cols(); ++c) row.push_back(table(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

std::string MechanismToJson(const Mechanism& mech) {
  Json doc;
  doc["secrets"] = LabelsJson(mech.secrets());
  doc["observables"] = LabelsJson(mech.observables());
  doc["rows"] = TableJson(mech.rows());
  return doc.dump(1) + "\n";
}

std::string AttackToJson(const Attack& attack) {
  Json doc;
  doc["observables"] = LabelsJson(attack.observables());
  doc["secrets"] = LabelsJson(attack.secrets());
  doc["rows"] = TableJson(attack.rows());
  return doc.dump(1) + "\n";
}

std::string PriorToJson(const Prior& prior) {
  Json doc;
  doc["secrets"] = LabelsJson(prior.secrets());
  doc["probs"] = prior.probs();
  return doc.dump(1) + "\n";
}

std::string MetricSetToJson(const MetricSet& metrics) {
  Json doc;
  doc["secrets"] = LabelsJson(metrics.secrets());
  doc["observables"] = LabelsJson(metrics.observables());
  doc["cost"] = TableJson(metrics.cost());
  doc["privacy"] = TableJson(metrics.privacy());
  doc["disting"] = TableJson(metrics.disting());
  if (metrics.ground().has_value()) {
    doc["ground"] = TableJson(*metrics.ground());
  }
  return doc.dump(1) + "\n";
}

absl::StatusOr<Mechanism> ParseMechanismJson(const std::string& text) {
  PRIVGAME_ASSIGN_OR_RETURN(Json doc, ParseDocument(text));
  PRIVGAME_ASSIGN_OR_RETURN(LabelSpace secrets,
                            ParseLabels(doc, "secrets", Role::kSecrets));
  PRIVGAME_ASSIGN_OR_RETURN(
      LabelSpace observables,
      ParseLabels(doc, "observables", Role::kObservables));
  PRIVGAME_ASSIGN_OR_RETURN(
      Table rows, ParseTable(doc, "rows", secrets.size(), observables.size()));
  return Mechanism::Create(secrets, observables, std::move(rows),
                           kJsonRowSumTolerance);
}

absl::StatusOr<Attack> ParseAttackJson(const std::string& text) {
  PRIVGAME_ASSIGN_OR_RETURN(Json doc, ParseDocument(text));
  PRIVGAME_ASSIGN_OR_RETURN(
      LabelSpace observables,
      ParseLabels(doc, "observables", Role::kObservables));
  PRIVGAME_ASSIGN_OR_RETURN(LabelSpace secrets,
                            ParseLabels(doc, "secrets", Role::kSecrets));
  PRIVGAME_ASSIGN_OR_RETURN(
      Table rows, ParseTable(doc, "rows", observables.size(), secrets.size()));
  return Attack::Create(observables, secrets, std::move(rows),
                        kJsonRowSumTolerance);
}

absl::StatusOr<Prior> ParsePriorJson(const std::string& text) {
  PRIVGAME_ASSIGN_OR_RETURN(Json doc, ParseDocument(text));
  PRIVGAME_ASSIGN_OR_RETURN(LabelSpace secrets,
                            ParseLabels(doc, "secrets", Role::kSecrets));
  PRIVGAME_ASSIGN_OR_RETURN(const Json* node, Field(doc, "probs"));
  PRIVGAME_ASSIGN_OR_RETURN(std::vector<double> probs,
                            ParseVector(*node, "\"probs\""));
  return Prior::Create(secrets, std::move(probs));
}

absl::StatusOr<MetricSet> ParseMetricSetJson(const std::string& text) {
  PRIVGAME_ASSIGN_OR_RETURN(Json doc, ParseDocument(text));
  PRIVGAME_ASSIGN_OR_RETURN(LabelSpace secrets,
                            ParseLabels(doc, "secrets", Role::kSecrets));
  LabelSpace observables = secrets.WithRole(Role::kObservables);
  if (doc.contains("observables")) {
    PRIVGAME_ASSIGN_OR_RETURN(
        observables, ParseLabels(doc, "observables", Role::kObservables));
  }
  const int ns = secrets.size();
  const int no = observables.size();
  PRIVGAME_ASSIGN_OR_RETURN(Table cost, ParseTable(doc, "cost", no, ns));
  PRIVGAME_ASSIGN_OR_RETURN(Table privacy, ParseTable(doc, "privacy", ns, ns));
  PRIVGAME_ASSIGN_OR_RETURN(Table disting, ParseTable(doc, "disting", ns, ns));
  std::optional<Table> ground;
  if (doc.contains("ground")) {
    PRIVGAME_ASSIGN_OR_RETURN(ground, ParseTable(doc, "ground", no, ns));
  }
  return MetricSet::Create(secrets, observables, std::move(cost),
                           std::move(privacy), std::move(disting),
                           std::move(ground));
}

absl::StatusOr<std::string> ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return MakeError(ErrorKind::kIo, absl::StrCat("cannot open ", path));
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteTextFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return MakeError(ErrorKind::kIo, absl::StrCat("cannot write ", path));
  }
  out << text;
  out.close();
  if (!out) {
    return MakeError(ErrorKind::kIo, absl::StrCat("error writing ", path));
  }
  return absl::OkStatus();
}

}  // namespace privgame
