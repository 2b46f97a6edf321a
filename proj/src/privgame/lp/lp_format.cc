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

#include "privgame/lp/lp_format.h"

#include <cmath>
#include <fstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "privgame/common/errors.h"

namespace privgame::lp {
namespace {

// Keeps lines well under the 510-character limit some readers impose.
constexpr int kTermsPerLine = 6;

std::string Number(double v) { return absl::StrFormat("%.17g", v); }

void WriteExpression(const LinearProgram& lp, const std::vector<Term>& terms,
                     std::ostream& out) {
  if (terms.empty()) {
    out << " 0 " << lp.VariableName(0);
    return;
  }
  int on_line = 0;
  for (const Term& t : terms) {
    if (on_line == kTermsPerLine) {
      out << "\n   ";
      on_line = 0;
    }
    out << (t.coef < 0 ? " - " : " + ") << Number(std::abs(t.coef)) << " "
        << lp.VariableName(t.var);
    ++on_line;
  }
}

}  // namespace

void WriteLpFormat(const LinearProgram& lp, std::ostream& out) {
  out << "\\ generated by privgame: " << lp.num_vars() << " variables, "
      << lp.num_constraints() << " constraints\n";
  out << (lp.sense() == Sense::kMinimize ? "Minimize\n" : "Maximize\n");
  std::vector<Term> objective;
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (lp.objective()[j] != 0.0) objective.push_back({j, lp.objective()[j]});
  }
  out << " obj:";
  if (lp.num_vars() > 0) WriteExpression(lp, objective, out);
  out << "\nSubject To\n";
  for (int i = 0; i < lp.num_constraints(); ++i) {
    const Constraint& c = lp.constraints()[i];
    if (c.terms.empty()) continue;
    out << " c" << i << ":";
    WriteExpression(lp, c.terms, out);
    switch (c.relation) {
      case Relation::kLessEqual:
        out << " <= ";
        break;
      case Relation::kGreaterEqual:
        out << " >= ";
        break;
      case Relation::kEqual:
        out << " = ";
        break;
    }
    out << Number(c.rhs) << "\n";
  }
  out << "Bounds\n";
  for (int j = 0; j < lp.num_vars(); ++j) {
    const double lo = lp.lower(j);
    const double hi = lp.upper(j);
    const std::string name = lp.VariableName(j);
    if (lo == -kInfinity && hi == kInfinity) {
      out << " " << name << " free\n";
    } else if (lo == 0.0 && hi == kInfinity) {
      continue;  // default bounds
    } else {
      out << " " << (lo == -kInfinity ? "-inf" : Number(lo)) << " <= " << name
          << " <= " << (hi == kInfinity ? "+inf" : Number(hi)) << "\n";
    }
  }
  out << "End\n";
}

absl::Status WriteLpFile(const LinearProgram& lp, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    return MakeError(ErrorKind::kIo, absl::StrCat("cannot open ", path));
  }
  WriteLpFormat(lp, out);
  if (!out) {
    return MakeError(ErrorKind::kIo, absl::StrCat("failed writing ", path));
  }
  return absl::OkStatus();
}

}  // namespace privgame::lp
