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

#include <array>
#include <string>
#include <vector>

#include "pathpovm/qmath.hpp"

namespace pathpovm {

// Basis conventions.
//
// Two-photon polarization states are ordered (HH, HV, VH, VV). The
// path-polarization space of a single photon uses the matching
// polarization-major order (Hs1, Hs2, Vs1, Vs2) as the canonical order, so a
// two-photon amplitude vector and its teleported image share coefficients
// component by component. Optical-element matrices are naturally written in
// path-major order (Hs1, Vs1, Hs2, Vs2); the permutation between the two
// orders swaps the middle components and is its own inverse.
extern const std::array<std::string, 4> kTwoPhotonOrder;
extern const std::array<std::string, 4> kPathPolOrder;
extern const std::array<std::string, 4> kPathMajorOrder;

/// Permutation sending canonical (pol-major) components to path-major order.
std::vector<Complex> to_path_major(const std::vector<Complex> &pol_major);
/// Inverse of to_path_major (the permutation is an involution).
std::vector<Complex> to_pol_major(const std::vector<Complex> &path_major);
/// Conjugates a path-major operator into the canonical pol-major order.
ComplexMatrix matrix_to_pol_major(const ComplexMatrix &path_major);
ComplexMatrix matrix_to_path_major(const ComplexMatrix &pol_major);

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

constexpr std::array<BellKind, 4> kBellKinds = {
    BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus,
    BellKind::PsiMinus};

std::string bell_name(BellKind k);

/// One of the sixteen generalized Bell states, factored as a Bell state on
/// photons (1,3) times a Bell state on photons (2,4).
struct BellIndex {
  BellKind pair13;
  BellKind pair24;

  bool operator==(const BellIndex &o) const {
    return pair13 == o.pair13 && pair24 == o.pair24;
  }
};

std::array<BellIndex, 16> all_bell_indices();

/// Normalized two-photon polarization state a|HH> + b|HV> + c|VH> + d|VV>.
StateVector two_photon_state(Complex a, Complex b, Complex c, Complex d);

StateVector bell_state(BellKind k);

/// 16-dim state over photon polarizations ordered (1,2,3,4).
StateVector generalized_bell(const BellIndex &j);

/// Three-photon ancilla precursor: an entangled (1,3) pair times photon 2 in
/// the diagonal state, ordered (pol1, pol2, pol3).
StateVector gamma_state();

/// Polarization-controlled path swap: photon 2's |V> component flips the path
/// qubit. Input ordered (pol1, pol2, pol3, path3), 16-dim.
StateVector fredkin_apply(const StateVector &state);

/// The ancilla used by the teleportation stage,
/// obtained by routing gamma_state (x) |s1> through the controlled swap.
StateVector ancilla_g1_tilde();

}  // namespace pathpovm
