// Copyright 2026 The pathpovm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "pathpovm/runtime.hpp"
#include "pathpovm/synthesis.hpp"

namespace pathpovm {

// Document formats. Complex matrices are flat row-major lists of [re, im]
// pairs; state documents carry a basis name ("two_photon_order",
// "path_pol_order" or "path_major_order") and amplitudes in that order.

struct StateDocument {
  std::string basis;
  std::optional<StateVector> state;      // canonical order after loading
  std::optional<ComplexMatrix> density;  // canonical order after loading
};

nlohmann::json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const nlohmann::json &j, std::size_t rows,
                               std::size_t cols);

nlohmann::json state_to_json(const StateVector &v);
StateDocument state_document_from_json(const nlohmann::json &j);

nlohmann::json povm_to_json(const PovmSpec &spec);
PovmSpec povm_from_json(const nlohmann::json &j);

nlohmann::json settings_to_json(const SynthesisTree &tree);
SynthesisTree settings_from_json(const nlohmann::json &j);

nlohmann::json report_to_json(const ExperimentReport &rep);

nlohmann::json load_json_file(const std::string &path);
void save_json_file(const std::string &path, const nlohmann::json &j);

}  // namespace pathpovm
