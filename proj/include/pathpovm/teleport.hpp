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
#include <optional>
#include <vector>

#include "pathpovm/qmath.hpp"
#include "pathpovm/rng.hpp"
#include "pathpovm/states.hpp"

namespace pathpovm {

/// Input pair tensored with the three-photon ancilla, 64-dim, factor order
/// (pol1, pol2, polA, polB, polC, pathC).
struct JointState {
  std::vector<Complex> amplitudes;
};

/// One projected outcome of the generalized Bell measurement on pairs
/// (1,A) and (2,B): its probability, the state left on photon C, and that
/// state after the branch correction.
struct BranchResult {
  BellIndex branch{BellKind::PhiPlus, BellKind::PhiPlus};
  double probability = 0.0;
  StateVector residual;   // canonical path-pol order
  StateVector corrected;  // equals the input coefficients up to phase
};

/// Pauli-product correction sigma_polx^a1 sigma_pathx^a2 sigma_polz^a3
/// sigma_pathz^a4 attached to one measurement branch.
struct CorrectionOp {
  std::array<int, 4> exponents{0, 0, 0, 0};
  ComplexMatrix matrix = ComplexMatrix::identity(4);
};

enum class BsmOutcome { PsiMinus, PsiPlus, Fail };

JointState joint_state(const StateVector &psi);

/// Projects the joint state onto one generalized Bell branch. Throws
/// ZeroBranch below probability 1e-15 (never for valid joint states, whose
/// sixteen branches are uniform).
BranchResult branch(const JointState &joint, const BellIndex &j);

/// Correction restoring the input coefficients on the residual of branch j.
/// Found once by exhaustive search over the sixteen Pauli products, then
/// cached.
const CorrectionOp &correction_for(const BellIndex &j);

/// Linear-optics Bell measurement on one polarization pair: identifies the
/// two singlet-type outcomes, everything else is a failure.
BsmOutcome bsm_linear_optics(const StateVector &pair_state, Philox &rng);

struct TeleportSample {
  bool success = false;
  std::optional<StateVector> out;  // canonical path-pol order
  BsmOutcome first = BsmOutcome::Fail;
  BsmOutcome second = BsmOutcome::Fail;
};

/// Samples the two pairwise Bell measurements; on joint success returns the
/// corrected path-polarization state.
TeleportSample teleport_sampled(const StateVector &psi, Philox &rng);

/// Deterministic enumeration of all sixteen branches.
std::vector<BranchResult> teleport_postselected(const StateVector &psi);

}  // namespace pathpovm
