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

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pathpovm/io.hpp"
#include "pathpovm/runtime.hpp"
#include "pathpovm/synthesis.hpp"
#include "pathpovm/teleport.hpp"

namespace {

using namespace pathpovm;

int cmd_synth(const std::string &in, const std::string &out) {
  PovmSpec spec = povm_from_json(load_json_file(in));
  SynthesisTree tree = synth_povm(spec);
  VerifyReport check = verify(tree, spec);
  save_json_file(out, settings_to_json(tree));
  std::cout << "synthesized " << spec.effects.size() << " outcomes -> " << out
            << " (round-trip deviation " << check.max_deviation << ")\n";
  return check.pass ? 0 : 1;
}

int cmd_simulate(const std::string &settings_path, const std::string &state_path,
                 std::uint64_t shots, std::uint64_t seed,
                 const std::string &mode, const std::string &out) {
  SynthesisTree tree = settings_from_json(load_json_file(settings_path));
  StateDocument doc = state_document_from_json(load_json_file(state_path));

  ExperimentConfig cfg;
  cfg.state = doc.state;
  cfg.density = doc.density;
  cfg.shots = shots;
  cfg.seed = seed;
  cfg.mode = run_mode_from_name(mode);

  ExperimentReport rep = run_shots(tree, cfg);
  nlohmann::json j = report_to_json(rep);
  if (!out.empty()) save_json_file(out, j);
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string &settings_path, const std::string &povm_path) {
  SynthesisTree tree = settings_from_json(load_json_file(settings_path));
  PovmSpec spec = povm_from_json(load_json_file(povm_path));
  VerifyReport rep = verify(tree, spec);
  std::cout << (rep.pass ? "PASS" : "FAIL")
            << " max deviation " << rep.max_deviation << "\n";
  return rep.pass ? 0 : 1;
}

int cmd_example_bell(const std::string &settings_out,
                     const std::string &povm_out) {
  auto [tree, spec] = bell_preset();
  save_json_file(settings_out, settings_to_json(tree));
  save_json_file(povm_out, povm_to_json(spec));
  std::cout << "wrote " << settings_out << " and " << povm_out << "\n";
  return 0;
}

int cmd_teleport_demo(const std::string &state_path, std::uint64_t trials,
                      std::uint64_t seed) {
  StateDocument doc = state_document_from_json(load_json_file(state_path));
  if (!doc.state)
    throw ParseError("teleport-demo needs a pure input state");
  StateVector psi = *doc.state;

  std::uint64_t successes = 0;
  double worst_fidelity = 1.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Philox rng(seed, t);
    TeleportSample s = teleport_sampled(psi, rng);
    if (!s.success) continue;
    ++successes;
    worst_fidelity =
        std::min(worst_fidelity, overlap_abs(psi.amplitudes, s.out->amplitudes));
  }
  double rate = trials ? static_cast<double>(successes) / trials : 0.0;
  std::cout << "trials " << trials << ", successes " << successes << " (rate "
            << rate << ", expected 0.25)\n";
  if (successes)
    std::cout << "worst output overlap with the input coefficients: "
              << worst_fidelity << "\n";
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"POVM synthesis and simulation for two-photon polarization "
               "states in path-polarization encoding"};
  app.require_subcommand(1);

  std::string in_path, out_path, settings_path, state_path, povm_path;
  std::string mode = "direct";
  std::string settings_out = "bell_settings.json";
  std::string povm_out = "bell_povm.json";
  std::uint64_t shots = 10000, seed = 0, trials = 100000;

  auto *synth = app.add_subcommand("synth", "compile a POVM into settings");
  synth->add_option("--in", in_path, "POVM document")->required();
  synth->add_option("--out", out_path, "settings output")->required();

  auto *sim = app.add_subcommand("simulate", "run shots through settings");
  sim->add_option("--settings", settings_path)->required();
  sim->add_option("--state", state_path)->required();
  sim->add_option("--shots", shots);
  sim->add_option("--seed", seed);
  sim->add_option("--mode", mode)
      ->check(CLI::IsMember({"direct", "postselected", "sampled-teleport"}));
  sim->add_option("--out", out_path, "report output (also printed)");

  auto *ver = app.add_subcommand("verify", "check settings against a POVM");
  ver->add_option("--settings", settings_path)->required();
  ver->add_option("--povm", povm_path)->required();

  auto *ex = app.add_subcommand("example", "emit a worked example");
  std::string which = "bell";
  ex->add_option("name", which)->check(CLI::IsMember({"bell"}));
  ex->add_option("--settings-out", settings_out);
  ex->add_option("--povm-out", povm_out);

  auto *demo = app.add_subcommand("teleport-demo", "sample the teleport stage");
  demo->add_option("--state", state_path)->required();
  demo->add_option("--trials", trials);
  demo->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
    if (synth->parsed()) return cmd_synth(in_path, out_path);
    if (sim->parsed())
      return cmd_simulate(settings_path, state_path, shots, seed, mode,
                          out_path);
    if (ver->parsed()) return cmd_verify(settings_path, povm_path);
    if (ex->parsed()) return cmd_example_bell(settings_out, povm_out);
    if (demo->parsed()) return cmd_teleport_demo(state_path, trials, seed);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
