// Copyright 2026 The opfid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OPFID_SPEC_JSON_HPP
#define OPFID_SPEC_JSON_HPP

// {"n": int, "periodic": bool,
//  "terms": [{"coeff": float, "ops": [[site, "X"|"Y"|"Z"|"Sx"|"Sy"|"Sz"], ...]}]}

#include <json.hpp>

#include <string>

#include "opfid/errors.hpp"
#include "opfid/spin_hamiltonian.hpp"

namespace opfid {

inline nlohmann::json spec_to_json(const HamiltonianSpec& spec) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : spec.terms()) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& f : t.factors) ops.push_back({f.site, std::string(to_string(f.op))});
    terms.push_back({{"coeff", t.coefficient}, {"ops", std::move(ops)}});
  }
  return {{"n", spec.n_sites()}, {"periodic", spec.periodic()}, {"terms", std::move(terms)}};
}

inline HamiltonianSpec spec_from_json(const nlohmann::json& j) {
  try {
    HamiltonianSpec spec(j.at("n").get<int>(), j.value("periodic", true));
    for (const auto& jt : j.at("terms")) {
      SpinTerm term{jt.at("coeff").get<double>(), {}};
      for (const auto& op : jt.at("ops")) {
        if (!op.is_array() || op.size() != 2) {
          throw validation_error("spec JSON: each op must be [site, label]");
        }
        term.factors.push_back({op[0].get<int>(), parse_spin_op(op[1].get<std::string>())});
      }
      spec.add_term(std::move(term));
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("spec JSON: ") + e.what());
  }
}

}  // namespace opfid

#endif  // OPFID_SPEC_JSON_HPP
