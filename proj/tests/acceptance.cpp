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
//
// End-to-end acceptance suite: one pass/fail line per criterion, nonzero
// exit when any criterion fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "pathpovm/io.hpp"
#include "pathpovm/optics.hpp"
#include "pathpovm/runtime.hpp"
#include "pathpovm/states.hpp"
#include "pathpovm/synthesis.hpp"
#include "pathpovm/teleport.hpp"
#include "test_util.hpp"

using namespace pathpovm;
using namespace pathpovm::testutil;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string cli_path;

StateVector two_photon(const std::vector<Complex> &amps) {
  StateVector v;
  v.amplitudes = amps;
  v.basis.assign(kTwoPhotonOrder.begin(), kTwoPhotonOrder.end());
  v.normalize();
  return v;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

// 1. The worked example: the preset settings reproduce the four Bell
//    projectors entrywise within 1e-12, both in-process and through the CLI
//    document path.
Outcome criterion_bell_example() {
  auto [tree, spec] = bell_preset();
  PovmSpec rec = reconstruct_effects(tree);
  double dev = 0;
  for (std::size_t i = 0; i < 4; ++i)
    dev = std::max(dev, max_abs_diff(rec.effects[i], spec.effects[i]));

  bool cli_ok = true;
  std::string cli_note;
  if (!cli_path.empty()) {
    namespace fs = std::filesystem;
    fs::path dir = fs::path("acceptance_tmp");
    fs::create_directories(dir);
    std::string settings = (dir / "bell_settings.json").string();
    std::string povm = (dir / "bell_povm.json").string();
    std::string cmd_example = "\"" + cli_path + "\" example bell" +
                              " --settings-out \"" + settings +
                              "\" --povm-out \"" + povm + "\" > /dev/null";
    std::string cmd_verify = "\"" + cli_path + "\" verify --settings \"" +
                             settings + "\" --povm \"" + povm +
                             "\" > /dev/null";
    cli_ok = std::system(cmd_example.c_str()) == 0 &&
             std::system(cmd_verify.c_str()) == 0;
    cli_note = cli_ok ? ", cli verify ok" : ", cli verify FAILED";
  }
  return {dev <= 1e-12 && cli_ok,
          "max projector deviation " + fmt(dev) + cli_note};
}

// 2. The singlet-singlet branch leaves (d, -c, -b, a) on photon C, and every
//    branch fires with probability exactly 1/16.
Outcome criterion_branch_state() {
  Philox rng(9002, 0);
  double worst_residual = 0, worst_prob = 0;
  BellIndex g16{BellKind::PsiMinus, BellKind::PsiMinus};
  for (int it = 0; it < 1000; ++it) {
    StateVector psi = two_photon(random_unit_vector(4, rng));
    JointState joint = joint_state(psi);

    BranchResult br = branch(joint, g16);
    Complex a = psi.amplitudes[0], b = psi.amplitudes[1];
    Complex c = psi.amplitudes[2], d = psi.amplitudes[3];
    const Complex expect[4] = {d, -c, -b, a};
    double scale = 4.0 * std::sqrt(br.probability);
    for (int i = 0; i < 4; ++i)
      worst_residual =
          std::max(worst_residual,
                   std::abs(br.residual.amplitudes[i] * scale - expect[i]));

    for (const BellIndex &idx : all_bell_indices())
      worst_prob = std::max(
          worst_prob, std::abs(branch(joint, idx).probability - 1.0 / 16));
  }
  return {worst_residual <= 1e-12 && worst_prob <= 1e-12,
          "residual dev " + fmt(worst_residual) + ", probability dev " +
              fmt(worst_prob)};
}

// 3. Sampled teleportation accepts ~1/4 of the trials; each pairwise Bell
//    measurement succeeds ~1/2 of the time on uniform Bell mixtures.
Outcome criterion_success_rates() {
  const int trials = 100000;
  Philox state_rng(9003, 0);
  StateVector psi = two_photon(random_unit_vector(4, state_rng));

  int successes = 0, first_pair = 0, second_pair = 0;
  for (int t = 0; t < trials; ++t) {
    Philox rng(12345, static_cast<std::uint64_t>(t));
    TeleportSample s = teleport_sampled(psi, rng);
    if (s.success) ++successes;
    if (s.first != BsmOutcome::Fail) {
      ++first_pair;
      if (s.second != BsmOutcome::Fail) ++second_pair;
    }
  }
  double rate = static_cast<double>(successes) / trials;
  double sigma_joint = std::sqrt(0.25 * 0.75 / trials);
  bool joint_ok = std::abs(rate - 0.25) <= 5 * sigma_joint;

  // each pairwise measurement succeeds half the time, the second one
  // conditioned on the first
  double rate1 = static_cast<double>(first_pair) / trials;
  double rate2 = static_cast<double>(second_pair) / first_pair;
  bool stages_ok =
      std::abs(rate1 - 0.5) <= 5 * std::sqrt(0.25 / trials) &&
      std::abs(rate2 - 0.5) <= 5 * std::sqrt(0.25 / first_pair);
  joint_ok = joint_ok && stages_ok;

  int bsm_successes = 0;
  Philox rng(54321, 0);
  for (int t = 0; t < trials; ++t) {
    std::size_t pick = static_cast<std::size_t>(rng.next_double() * 4);
    if (bsm_linear_optics(bell_state(kBellKinds[pick]), rng) !=
        BsmOutcome::Fail)
      ++bsm_successes;
  }
  double bsm_rate = static_cast<double>(bsm_successes) / trials;
  double sigma_pair = std::sqrt(0.25 / trials);
  bool pair_ok = std::abs(bsm_rate - 0.5) <= 5 * sigma_pair;

  return {joint_ok && pair_ok, "teleport rate " + fmt(rate) +
                                   " (target 0.25), pairwise rate " +
                                   fmt(bsm_rate) + " (target 0.5)"};
}

// 4. Synthesis round trips: random bipartitions and multi-outcome POVMs
//    reconstruct within 1e-8; sampled frequencies track the Born rule.
Outcome criterion_povm_round_trip() {
  Philox rng(9004, 0);
  double worst = 0;

  for (int it = 0; it < 100; ++it) {
    ComplexMatrix p = random_density(4, rng);
    double w = rng.next_double();
    ComplexMatrix f = ComplexMatrix::identity(4);
    f *= Complex(0.5 * w, 0);
    f += Complex(1 - w, 0) * p;
    PovmSpec spec;
    spec.effects = {f, ComplexMatrix::identity(4) - f};
    PovmSpec rec = reconstruct_effects(synth_povm(spec));
    worst = std::max(worst, max_abs_diff(rec.effects[0], spec.effects[0]));
    worst = std::max(worst, max_abs_diff(rec.effects[1], spec.effects[1]));
  }

  for (std::size_t n : {3u, 4u, 5u, 8u}) {
    for (int it = 0; it < 5; ++it) {
      PovmSpec spec;
      spec.effects = random_povm(n, rng);
      PovmSpec rec = reconstruct_effects(synth_povm(spec));
      for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, max_abs_diff(rec.effects[i], spec.effects[i]));
    }
  }
  bool recon_ok = worst <= 1e-8;

  double worst_sigma_units = 0;
  for (int it = 0; it < 20; ++it) {
    std::size_t n = 2 + static_cast<std::size_t>(rng.next_double() * 4);
    PovmSpec spec;
    spec.effects = random_povm(n, rng);
    SynthesisTree tree = synth_povm(spec);

    ExperimentConfig cfg;
    cfg.density = random_density(4, rng);
    cfg.shots = 100000;
    cfg.seed = 777 + static_cast<std::uint64_t>(it);
    cfg.mode = RunMode::Direct;
    ExperimentReport rep = run_shots(tree, cfg);

    std::vector<double> p = born_probs(spec, *cfg.density);
    for (std::size_t i = 0; i < n; ++i) {
      double sigma =
          std::sqrt(std::max(p[i] * (1 - p[i]) / cfg.shots, 1e-300));
      double units = std::abs(rep.frequencies[i] - p[i]) / sigma;
      worst_sigma_units = std::max(worst_sigma_units, units);
    }
  }
  bool freq_ok = worst_sigma_units <= 5.0;

  return {recon_ok && freq_ok, "reconstruction dev " + fmt(worst) +
                                   ", worst frequency deviation " +
                                   fmt(worst_sigma_units) + " sigma"};
}

// 5. Unitary compiler and vector-map solver hit their targets.
Outcome criterion_compiler() {
  Philox rng(9005, 0);
  double worst_compile = 0;
  std::size_t max_layers = 0;
  for (int it = 0; it < 1000; ++it) {
    ComplexMatrix w = random_unitary(4, rng);
    CompiledUnitary cu = compile_unitary(w);
    max_layers = std::max(max_layers, cu.layers.size());
    worst_compile = std::max(worst_compile, diff_up_to_phase(w, cu.product()));
  }

  double worst_map = 0;
  for (int it = 0; it < 1000; ++it) {
    std::vector<Complex> from = random_unit_vector(4, rng);
    std::vector<Complex> to = random_unit_vector(4, rng);
    GadgetSettings g = solve_vector_map(from, to);
    double ov = overlap_abs(to, gadget_unitary(g).apply(from));
    worst_map = std::max(worst_map, std::abs(ov - 1.0));
  }
  return {worst_compile <= 1e-9 && max_layers <= 2 && worst_map <= 1e-9,
          "compile dev " + fmt(worst_compile) + " (<=" +
              std::to_string(max_layers) + " layers), map dev " +
              fmt(worst_map)};
}

// 6. Element-level compositions match the closed forms.
Outcome criterion_elements() {
  Philox rng(9006, 0);
  double worst_rot = 0;
  for (int it = 0; it < 100; ++it) {
    double a = (rng.next_double() - 0.5) * 4 * kPi;
    worst_rot = std::max(
        worst_rot, max_abs_diff(build_path_rotator(a), u_path(a, 0, 0)));
  }

  double worst_module = 0, worst_complete = 0;
  for (int it = 0; it < 100; ++it) {
    ModuleSettings m;
    m.theta = rng.next_double() * kPi;
    m.phi = rng.next_double() * kPi;
    m.beta = (rng.next_double() - 0.5) * 2 * kPi;
    m.gamma = (rng.next_double() - 0.5) * 2 * kPi;
    auto [e1, e2] = build_module_from_elements(m);
    auto [c1, c2] = module_kraus(m);
    worst_module = std::max(worst_module, diff_up_to_phase(c1, e1));
    worst_module = std::max(worst_module, diff_up_to_phase(c2, e2));
    ComplexMatrix sum = c1.dagger() * c1 + c2.dagger() * c2;
    worst_complete =
        std::max(worst_complete,
                 max_abs_diff(sum, ComplexMatrix::identity(2)));
  }
  return {worst_rot <= 1e-12 && worst_module <= 1e-10 &&
              worst_complete <= 1e-12,
          "rotator dev " + fmt(worst_rot) + ", module dev " +
              fmt(worst_module) + ", completeness dev " +
              fmt(worst_complete)};
}

// 7. The sixteen generalized Bell states and the ancilla expansion.
Outcome criterion_basis_integrity() {
  auto idx = all_bell_indices();
  double worst_gram = 0;
  ComplexMatrix completeness(16, 16);
  for (std::size_t i = 0; i < 16; ++i) {
    StateVector gi = generalized_bell(idx[i]);
    completeness += ComplexMatrix::outer(gi.amplitudes, gi.amplitudes);
    for (std::size_t j = 0; j < 16; ++j) {
      double ov = overlap_abs(gi, generalized_bell(idx[j]));
      worst_gram = std::max(worst_gram, std::abs(ov - (i == j ? 1.0 : 0.0)));
    }
  }
  double comp_dev = max_abs_diff(completeness, ComplexMatrix::identity(16));

  StateVector anc = ancilla_g1_tilde();
  double anc_dev = 0;
  for (std::size_t i = 0; i < 16; ++i) {
    const std::string &l = anc.basis[i];
    Complex want = (l == "HHHs1" || l == "HVHs2" || l == "VHVs1" ||
                    l == "VVVs2")
                       ? Complex(0.5, 0)
                       : Complex(0, 0);
    anc_dev = std::max(anc_dev, std::abs(anc.amplitudes[i] - want));
  }
  return {worst_gram <= 1e-12 && comp_dev <= 1e-12 && anc_dev <= 1e-15,
          "gram dev " + fmt(worst_gram) + ", completeness dev " +
              fmt(comp_dev) + ", ancilla dev " + fmt(anc_dev)};
}

}  // namespace

int main(int argc, char **argv) {
  if (argc > 1) cli_path = argv[1];

  struct Entry {
    const char *name;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> criteria = {
      {"Bell example reproduces the four Bell projectors", criterion_bell_example},
      {"branch residual and uniform 1/16 probabilities", criterion_branch_state},
      {"teleport acceptance 1/4 and pairwise 1/2", criterion_success_rates},
      {"POVM synthesis round trips and Born-rule frequencies", criterion_povm_round_trip},
      {"unitary compiler and vector-map solver", criterion_compiler},
      {"element compositions match closed forms", criterion_elements},
      {"generalized Bell basis and ancilla integrity", criterion_basis_integrity},
  };

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s  criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL",
                i + 1, criteria[i].name, o.detail.c_str());
  }
  return all ? 0 : 1;
}
