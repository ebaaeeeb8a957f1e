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

#include "pathpovm/io.hpp"

#include <fstream>

#include "pathpovm/states.hpp"

namespace pathpovm {

using nlohmann::json;

namespace {

json complex_to_json(const Complex &c) { return json::array({c.real(), c.imag()}); }

Complex complex_from_json(const json &j) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("complex entries must be [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json gadget_to_json(const GadgetSettings &g) {
  return json{{"alpha", g.alpha}, {"zeta", g.zeta},   {"xi", g.xi},
              {"u1", matrix_to_json(g.u1)}, {"u2", matrix_to_json(g.u2)},
              {"v1", matrix_to_json(g.v1)}, {"v2", matrix_to_json(g.v2)}};
}

GadgetSettings gadget_from_json(const json &j) {
  GadgetSettings g;
  g.alpha = j.at("alpha").get<double>();
  g.zeta = j.at("zeta").get<double>();
  g.xi = j.at("xi").get<double>();
  g.u1 = matrix_from_json(j.at("u1"), 2, 2);
  g.u2 = matrix_from_json(j.at("u2"), 2, 2);
  g.v1 = matrix_from_json(j.at("v1"), 2, 2);
  g.v2 = matrix_from_json(j.at("v2"), 2, 2);
  return g;
}

json module_to_json(const ModuleSettings &m) {
  return json{{"theta", m.theta},  {"phi", m.phi},
              {"beta", m.beta},    {"gamma", m.gamma},
              {"us", matrix_to_json(m.us)},   {"v1s", matrix_to_json(m.v1s)},
              {"v2s", matrix_to_json(m.v2s)}};
}

ModuleSettings module_from_json(const json &j) {
  ModuleSettings m;
  m.theta = j.at("theta").get<double>();
  m.phi = j.at("phi").get<double>();
  m.beta = j.at("beta").get<double>();
  m.gamma = j.at("gamma").get<double>();
  m.us = matrix_from_json(j.at("us"), 2, 2);
  m.v1s = matrix_from_json(j.at("v1s"), 2, 2);
  m.v2s = matrix_from_json(j.at("v2s"), 2, 2);
  return m;
}

json node_to_json(const SynthesisNode &node);

json side_to_json(const TreeSide &side) {
  json j;
  if (side.exit_unitary) j["exit_unitary"] = matrix_to_json(*side.exit_unitary);
  if (side.child) {
    j["child"] = node_to_json(*side.child);
  } else {
    j["leaves"] = json::array({side.leaf_a, side.leaf_b});
  }
  return j;
}

json node_to_json(const SynthesisNode &node) {
  json layers = json::array();
  for (const GadgetSettings &g : node.layers) layers.push_back(gadget_to_json(g));
  return json{{"layers", layers},
              {"arm_a", module_to_json(node.arm_a)},
              {"arm_b", module_to_json(node.arm_b)},
              {"side1", side_to_json(node.side1)},
              {"side2", side_to_json(node.side2)}};
}

std::unique_ptr<SynthesisNode> node_from_json(const json &j);

TreeSide side_from_json(const json &j) {
  TreeSide side;
  if (j.contains("exit_unitary"))
    side.exit_unitary = matrix_from_json(j.at("exit_unitary"), 4, 4);
  if (j.contains("child")) {
    side.child = node_from_json(j.at("child"));
  } else {
    const json &leaves = j.at("leaves");
    if (!leaves.is_array() || leaves.size() != 2)
      throw ParseError("side leaves must be a pair of labels");
    side.leaf_a = leaves[0].get<std::string>();
    side.leaf_b = leaves[1].get<std::string>();
  }
  return side;
}

std::unique_ptr<SynthesisNode> node_from_json(const json &j) {
  auto node = std::make_unique<SynthesisNode>();
  for (const json &g : j.at("layers")) node->layers.push_back(gadget_from_json(g));
  if (node->layers.empty() || node->layers.size() > 2)
    throw ParseError("a stage must carry one or two gadget layers");
  node->arm_a = module_from_json(j.at("arm_a"));
  node->arm_b = module_from_json(j.at("arm_b"));
  node->side1 = side_from_json(j.at("side1"));
  node->side2 = side_from_json(j.at("side2"));
  return node;
}

std::string basis_name_of(const StateVector &v) {
  auto matches = [&](const auto &order) {
    if (v.basis.size() != order.size()) return false;
    for (std::size_t i = 0; i < order.size(); ++i)
      if (v.basis[i] != order[i]) return false;
    return true;
  };
  if (matches(kTwoPhotonOrder)) return "two_photon_order";
  if (matches(kPathPolOrder)) return "path_pol_order";
  if (matches(kPathMajorOrder)) return "path_major_order";
  return "path_pol_order";
}

}  // namespace

json matrix_to_json(const ComplexMatrix &m) {
  json entries = json::array();
  for (const Complex &c : m.data()) entries.push_back(complex_to_json(c));
  return entries;
}

ComplexMatrix matrix_from_json(const json &j, std::size_t rows,
                               std::size_t cols) {
  if (!j.is_array() || j.size() != rows * cols)
    throw ParseError("matrix entry count mismatch");
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows * cols; ++i)
    m.data()[i] = complex_from_json(j[i]);
  return m;
}

json state_to_json(const StateVector &v) {
  json amps = json::array();
  for (const Complex &a : v.amplitudes) amps.push_back(complex_to_json(a));
  return json{{"basis", basis_name_of(v)}, {"amplitudes", amps}};
}

StateDocument state_document_from_json(const json &j) {
  try {
    StateDocument doc;
    doc.basis = j.value("basis", std::string("path_pol_order"));
    bool path_major = doc.basis == "path_major_order";
    if (doc.basis != "two_photon_order" && doc.basis != "path_pol_order" &&
        !path_major)
      throw ParseError("unknown basis name: " + doc.basis);

    if (j.contains("amplitudes")) {
      const json &amps = j.at("amplitudes");
      StateVector v;
      for (const json &a : amps) v.amplitudes.push_back(complex_from_json(a));
      if (v.dim() != 4) throw ParseError("state must have four amplitudes");
      if (path_major) v.amplitudes = to_pol_major(v.amplitudes);
      v.basis.assign(doc.basis == "two_photon_order" ? kTwoPhotonOrder.begin()
                                                     : kPathPolOrder.begin(),
                     doc.basis == "two_photon_order" ? kTwoPhotonOrder.end()
                                                     : kPathPolOrder.end());
      v.normalize();
      doc.state = std::move(v);
    } else if (j.contains("density")) {
      ComplexMatrix rho = matrix_from_json(j.at("density"), 4, 4);
      if (path_major) rho = matrix_to_pol_major(rho);
      doc.density = std::move(rho);
    } else {
      throw ParseError("state document needs amplitudes or density");
    }
    return doc;
  } catch (const json::exception &e) {
    throw ParseError(std::string("malformed state document: ") + e.what());
  }
}

json povm_to_json(const PovmSpec &spec) {
  json effects = json::array();
  for (const ComplexMatrix &f : spec.effects)
    effects.push_back(matrix_to_json(f));
  json j{{"effects", effects}};
  if (!spec.labels.empty()) j["labels"] = spec.labels;
  return j;
}

PovmSpec povm_from_json(const json &j) {
  try {
    PovmSpec spec;
    for (const json &f : j.at("effects"))
      spec.effects.push_back(matrix_from_json(f, 4, 4));
    if (j.contains("labels"))
      spec.labels = j.at("labels").get<std::vector<std::string>>();
    return spec;
  } catch (const json::exception &e) {
    throw ParseError(std::string("malformed POVM document: ") + e.what());
  }
}

json settings_to_json(const SynthesisTree &tree) {
  json j{{"format", "pathpovm-settings"},
         {"labels", tree.labels},
         {"zero_outcomes", tree.zero_outcomes}};
  if (tree.root) j["root"] = node_to_json(*tree.root);
  return j;
}

SynthesisTree settings_from_json(const json &j) {
  try {
    SynthesisTree tree;
    tree.labels = j.at("labels").get<std::vector<std::string>>();
    if (j.contains("zero_outcomes"))
      tree.zero_outcomes =
          j.at("zero_outcomes").get<std::vector<std::string>>();
    if (j.contains("root")) tree.root = node_from_json(j.at("root"));
    return tree;
  } catch (const json::exception &e) {
    throw ParseError(std::string("malformed settings document: ") + e.what());
  }
}

json report_to_json(const ExperimentReport &rep) {
  return json{{"format", "pathpovm-report"},
              {"mode", run_mode_name(rep.mode)},
              {"seed", rep.seed},
              {"shots", rep.shots},
              {"accepted", rep.accepted},
              {"teleport_successes", rep.teleport_successes},
              {"rng", rep.rng_name},
              {"settings_digest", rep.settings_digest},
              {"outcomes", rep.outcomes},
              {"counts", rep.counts},
              {"probabilities", rep.probabilities},
              {"frequencies", rep.frequencies},
              {"z_scores", rep.z_scores},
              {"max_abs_deviation", rep.max_abs_deviation}};
}

json load_json_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception &e) {
    throw ParseError("cannot parse " + path + ": " + e.what());
  }
}

void save_json_file(const std::string &path, const json &j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace pathpovm
