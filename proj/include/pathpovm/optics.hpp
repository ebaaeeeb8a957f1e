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

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "pathpovm/qmath.hpp"

namespace pathpovm {

/// Parameters of one path-rotation gadget layer: a path rotation by alpha
/// with entrance/exit phases (zeta, xi), sandwiched between per-path
/// polarization unitaries. The layer matrix, in path-major block form, is
///   diag(u1, u2) * U_path(alpha, zeta, xi) * diag(v1, v2)
/// with v's applied first.
struct GadgetSettings {
  double alpha = 0.0;
  double zeta = 0.0;
  double xi = 0.0;
  ComplexMatrix u1 = ComplexMatrix::identity(2);
  ComplexMatrix u2 = ComplexMatrix::identity(2);
  ComplexMatrix v1 = ComplexMatrix::identity(2);
  ComplexMatrix v2 = ComplexMatrix::identity(2);
};

/// Parameters of one single-photon two-outcome measurement module. The exit
/// Kraus operators are v1s*D1*us and v2s*D2*us with
///   D1 = diag(e^{i beta} cos theta, cos phi)
///   D2 = diag(e^{i gamma} sin theta, sin phi).
struct ModuleSettings {
  double theta = 0.0;
  double phi = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  ComplexMatrix us = ComplexMatrix::identity(2);
  ComplexMatrix v1s = ComplexMatrix::identity(2);
  ComplexMatrix v2s = ComplexMatrix::identity(2);
};

// Rail-level optical elements. A circuit acts on n rails, each carrying a
// two-component polarization amplitude; the composed matrix lives on
// rail-major components (rail*2 + pol).
struct Pbs {
  std::size_t rail_a;
  std::size_t rail_b;
};
struct PolRotator {
  std::size_t rail;
  double angle;
};
struct PhaseShifter {
  std::size_t rail;
  double phase;
};
struct Mirror {  // geometry only; identity on the encoded state
  std::size_t rail_a;
  std::size_t rail_b;
};

using Element = std::variant<Pbs, PolRotator, PhaseShifter, Mirror>;

struct ElementCircuit {
  std::size_t rails = 0;
  std::vector<Element> elements;

  /// Composed matrix over (rails x polarization), elements applied in order.
  ComplexMatrix compose() const;
};

/// Polarizing beamsplitter on the canonical 4-dim space: H keeps its path,
/// V swaps paths with reflection phase +1.
ComplexMatrix pbs_unitary();

/// 2x2 polarization rotator [[cos a, sin a], [-sin a, cos a]].
ComplexMatrix pol_rotator(double angle);

/// Path rotation by alpha, composed from the two-PBS / four-rotator layout
/// and returned in path-major order. Equals the closed-form block matrix
/// [[cos a * 1, sin a * 1], [-sin a * 1, cos a * 1]].
ComplexMatrix build_path_rotator(double alpha);

/// The element list behind build_path_rotator (exposed for the
/// element-versus-closed-form checks).
ElementCircuit path_rotator_circuit(double alpha);

/// Closed-form path unitary with entrance/exit phases, path-major order:
/// [[e^{i zeta} c, e^{i xi} s], [-e^{-i xi} s, e^{-i zeta} c]] per 2x2 block.
ComplexMatrix u_path(double alpha, double zeta, double xi);

/// u_path built from elements: phase shifters around the rotator layout.
ElementCircuit u_path_circuit(double alpha, double zeta, double xi);

/// Full gadget layer in the canonical pol-major order.
ComplexMatrix gadget_unitary(const GadgetSettings &g);

/// Same layer in path-major order (internal storage convention).
ComplexMatrix gadget_unitary_path_major(const GadgetSettings &g);

/// Closed-form Kraus pair of one module; K1^dag K1 + K2^dag K2 = I.
std::pair<ComplexMatrix, ComplexMatrix> module_kraus(const ModuleSettings &m);

/// Kraus pair obtained by composing the module's rail graph element by
/// element. Requires identity outer unitaries (UnsupportedSettings
/// otherwise). Matches module_kraus exactly with these conventions; the
/// contract only promises equality up to a global phase per exit.
std::pair<ComplexMatrix, ComplexMatrix> build_module_from_elements(
    const ModuleSettings &m);

/// The four-outcome effect set of a gadget layer with one module per arm, in
/// exit order (arm A exit 1, arm A exit 2, arm B exit 1, arm B exit 2);
/// effects sum to the identity. Matrices are canonical pol-major.
std::vector<ComplexMatrix> assemble_four_outcome(const ComplexMatrix &gadget,
                                                 const ModuleSettings &m_a,
                                                 const ModuleSettings &m_b);
std::vector<ComplexMatrix> assemble_four_outcome(const GadgetSettings &g,
                                                 const ModuleSettings &m_a,
                                                 const ModuleSettings &m_b);

}  // namespace pathpovm
