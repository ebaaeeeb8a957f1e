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

#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pathpovm/optics.hpp"
#include "pathpovm/qmath.hpp"

namespace pathpovm {

/// Six-angle parametrization of a unit 4-vector. Angles refer to the
/// path-major component order: t1 splits the two path blocks, (t2, t4) and
/// (t5, t6) shape the blocks, t3 is the inter-block phase.
struct ThetaParams {
  double t1 = 0, t2 = 0, t3 = 0, t4 = 0, t5 = 0, t6 = 0;
};

/// Fits ThetaParams to a unit vector given in canonical (pol-major) order.
/// The global phase is fixed so the four component phases sum to zero;
/// zero-amplitude components contribute phase zero and leave their free
/// angles at the documented conventions.
ThetaParams theta_params(const std::vector<Complex> &v);

/// Evaluates the parametrization back to a canonical-order unit vector;
/// s_theta(theta_params(v)) == v up to one global phase.
std::vector<Complex> s_theta(const ThetaParams &t);

/// The general 2x2 unitary template used by the vector-map solver:
/// [[e^{i tj} cos ti, -e^{i tk} sin ti], [e^{-i tk} sin ti, e^{-i tj} cos ti]].
ComplexMatrix u2_template(double ti, double tj, double tk);

/// Closed-form gadget settings mapping v_from to v_to (up to global phase):
/// the entry unitaries strip v_from's block structure, the path stage turns
/// cos/sin weights and inter-block phases, the exit unitaries rebuild
/// v_to's blocks.
GadgetSettings solve_vector_map(const std::vector<Complex> &v_from,
                                const std::vector<Complex> &v_to);

/// One or two gadget layers realizing a 4x4 unitary exactly (layers[0] is
/// applied to the state first).
struct CompiledUnitary {
  std::vector<GadgetSettings> layers;

  /// Product of the layer matrices in application order, canonical basis.
  ComplexMatrix product() const;
};

/// Compiles any 4x4 unitary into gadget layers via the cosine-sine
/// decomposition. Emits a single layer when the two CS angles agree; the
/// generic case splits the CS block into two layers with a diagonal
/// sign operator absorbed into the polarization slots.
CompiledUnitary compile_unitary(const ComplexMatrix &w);

/// A POVM on the 4-dim space: PSD effects summing to the identity.
struct PovmSpec {
  std::vector<ComplexMatrix> effects;
  std::vector<std::string> labels;  // empty => F1..Fn assigned on synthesis
};

struct SynthesisNode;

/// One exit pair of a measurement stage: either two terminal outcome labels
/// (module-A exit, module-B exit) or a continuation stage measuring on the
/// pair space. An optional exit unitary (canonical basis) is applied to the
/// pair Kraus before the continuation; it never changes the effects.
struct TreeSide {
  std::optional<ComplexMatrix> exit_unitary;
  std::unique_ptr<SynthesisNode> child;  // null => leaves
  std::string leaf_a;
  std::string leaf_b;
};

/// One gadget stage (one or two layers) with a measurement module per arm.
/// side1 covers the two first exits, side2 the two second exits.
struct SynthesisNode {
  std::vector<GadgetSettings> layers;
  ModuleSettings arm_a;
  ModuleSettings arm_b;
  TreeSide side1;
  TreeSide side2;
};

/// Binary tree of measurement stages. Leaves carry outcome labels; labels
/// whose effects vanished during synthesis are listed as zero outcomes and
/// reported with probability zero.
struct SynthesisTree {
  std::unique_ptr<SynthesisNode> root;
  std::vector<std::string> labels;
  std::vector<std::string> zero_outcomes;
};

/// Gadget product of one node's layers (canonical basis).
ComplexMatrix node_gadget(const SynthesisNode &node);

/// Pair Kraus operator of one side of a node (canonical basis): the module
/// exits of the gadget output arms, stacked as the new path pair.
ComplexMatrix side_kraus(const SynthesisNode &node, int side);

/// Projector onto one exit of a pair space (0 = module-A exit, 1 = module-B).
ComplexMatrix exit_projector(int exit_index);

/// Settings for the two-outcome measurement {F, I-F}: the eigenbasis is
/// compiled into layers and the eigenvalues become the module angles.
/// Throws NotEffect when F has eigenvalues outside [0, 1] beyond tolerance.
std::tuple<CompiledUnitary, ModuleSettings, ModuleSettings> synth_bipartition(
    const ComplexMatrix &f);

/// Compiles an n-outcome POVM (2 <= n <= 32) into a chain of bipartition
/// stages, peeling outcomes off left to right; failure branches carry
/// support-projected conditional effects.
SynthesisTree synth_povm(const PovmSpec &spec);

/// Independent reconstruction: walks every root-to-leaf path, multiplying
/// stage Kraus factors, and returns K^dag K summed per outcome label.
PovmSpec reconstruct_effects(const SynthesisTree &tree);

/// The worked single-stage preset measuring all four Bell states, with the
/// four Bell projectors as its reference POVM.
std::pair<SynthesisTree, PovmSpec> bell_preset();

}  // namespace pathpovm
