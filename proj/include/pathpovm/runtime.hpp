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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pathpovm/synthesis.hpp"
#include "pathpovm/teleport.hpp"

namespace pathpovm {

enum class RunMode { Direct, Postselected, SampledTeleport };

std::string run_mode_name(RunMode m);
RunMode run_mode_from_name(const std::string &name);

/// Outcome probabilities p_i = tr(F_i rho). Throws InvalidDensity unless rho
/// is Hermitian, PSD and unit trace within 1e-9.
std::vector<double> born_probs(const PovmSpec &spec, const ComplexMatrix &rho);

struct ExperimentConfig {
  std::optional<StateVector> state;      // canonical coefficient order
  std::optional<ComplexMatrix> density;  // direct mode only
  std::uint64_t shots = 1;
  std::uint64_t seed = 0;
  RunMode mode = RunMode::Direct;
};

struct ExperimentReport {
  RunMode mode = RunMode::Direct;
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  std::uint64_t accepted = 0;             // shots surviving teleportation
  std::uint64_t teleport_successes = 0;   // sampled-teleport mode only
  std::string rng_name;
  std::string settings_digest;
  std::vector<std::string> outcomes;
  std::vector<std::uint64_t> counts;       // per outcome, sums to accepted
  std::vector<double> probabilities;       // theoretical, given acceptance
  std::vector<double> frequencies;
  std::vector<double> z_scores;
  double max_abs_deviation = 0.0;
};

/// Monte Carlo run through a synthesis tree. Shot k draws from the
/// counter-based stream (seed, k), so identical configs give identical
/// reports regardless of execution order.
ExperimentReport run_shots(const SynthesisTree &tree,
                           const ExperimentConfig &cfg);

/// Samples one outcome label for a normalized canonical-order state.
std::string sample_outcome(const SynthesisTree &tree,
                           const std::vector<Complex> &state, Philox &rng);

/// Stable digest of the synthesis settings (identifies the device layout in
/// reports).
std::string settings_digest(const SynthesisTree &tree);

struct VerifyReport {
  bool pass = false;
  double max_deviation = 0.0;
  std::vector<std::string> labels;
};

/// Entrywise comparison of the effects reconstructed from a tree against a
/// reference POVM; passes at 1e-8.
VerifyReport verify(const SynthesisTree &tree, const PovmSpec &reference);

}  // namespace pathpovm
