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

#include "pathpovm/optics.hpp"

#include <cmath>

#include "pathpovm/states.hpp"

namespace pathpovm {

namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kPi = 3.14159265358979323846;

void require_unitary(const ComplexMatrix &m, const char *what) {
  if (!m.is_unitary(kUnitaryTol)) throw NotUnitary(what);
}

ComplexMatrix block_diag2(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(4, 4);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      out(r, c) = a(r, c);
      out(r + 2, c + 2) = b(r, c);
    }
  return out;
}

ComplexMatrix element_matrix(const Element &e, std::size_t rails) {
  std::size_t n = 2 * rails;
  ComplexMatrix m = ComplexMatrix::identity(n);
  if (const auto *pbs = std::get_if<Pbs>(&e)) {
    std::size_t av = 2 * pbs->rail_a + 1;
    std::size_t bv = 2 * pbs->rail_b + 1;
    m(av, av) = 0;
    m(bv, bv) = 0;
    m(av, bv) = 1;
    m(bv, av) = 1;
  } else if (const auto *rot = std::get_if<PolRotator>(&e)) {
    std::size_t h = 2 * rot->rail;
    double c = std::cos(rot->angle), s = std::sin(rot->angle);
    m(h, h) = c;
    m(h, h + 1) = s;
    m(h + 1, h) = -s;
    m(h + 1, h + 1) = c;
  } else if (const auto *ps = std::get_if<PhaseShifter>(&e)) {
    Complex f = std::polar(1.0, ps->phase);
    std::size_t h = 2 * ps->rail;
    m(h, h) = f;
    m(h + 1, h + 1) = f;
  }
  // mirrors carry no matrix content
  return m;
}

}  // namespace

ComplexMatrix ElementCircuit::compose() const {
  ComplexMatrix m = ComplexMatrix::identity(2 * rails);
  for (const Element &e : elements) m = element_matrix(e, rails) * m;
  return m;
}

ComplexMatrix pbs_unitary() {
  // canonical pol-major order (Hs1, Hs2, Vs1, Vs2)
  return ComplexMatrix::from_rows({{1, 0, 0, 0},
                                   {0, 1, 0, 0},
                                   {0, 0, 0, 1},
                                   {0, 0, 1, 0}});
}

ComplexMatrix pol_rotator(double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  return ComplexMatrix::from_rows({{c, s}, {-s, c}});
}

ElementCircuit path_rotator_circuit(double alpha) {
  ElementCircuit c;
  c.rails = 2;
  c.elements = {
      PolRotator{1, -kPi / 2},  // entrance pre-rotation on the s2 arm
      Pbs{0, 1},
      PolRotator{0, alpha},
      PolRotator{1, alpha},
      Mirror{0, 0},
      Mirror{1, 1},
      Pbs{0, 1},
      PolRotator{1, kPi / 2},  // exit rotation on the s2 arm
  };
  return c;
}

ComplexMatrix build_path_rotator(double alpha) {
  return path_rotator_circuit(alpha).compose();
}

ComplexMatrix u_path(double alpha, double zeta, double xi) {
  double c = std::cos(alpha), s = std::sin(alpha);
  Complex ez = std::polar(1.0, zeta), ex = std::polar(1.0, xi);
  ComplexMatrix m(4, 4);
  for (std::size_t k = 0; k < 2; ++k) {
    m(k, k) = ez * c;
    m(k, k + 2) = ex * s;
    m(k + 2, k) = -std::conj(ex) * s;
    m(k + 2, k + 2) = std::conj(ez) * c;
  }
  return m;
}

ElementCircuit u_path_circuit(double alpha, double zeta, double xi) {
  ElementCircuit c = path_rotator_circuit(alpha);
  std::vector<Element> wrapped = {
      PhaseShifter{0, (zeta - xi) / 2},
      PhaseShifter{1, -(zeta - xi) / 2},
  };
  wrapped.insert(wrapped.end(), c.elements.begin(), c.elements.end());
  wrapped.push_back(PhaseShifter{0, (zeta + xi) / 2});
  wrapped.push_back(PhaseShifter{1, -(zeta + xi) / 2});
  c.elements = std::move(wrapped);
  return c;
}

ComplexMatrix gadget_unitary_path_major(const GadgetSettings &g) {
  require_unitary(g.u1, "gadget u1 is not unitary");
  require_unitary(g.u2, "gadget u2 is not unitary");
  require_unitary(g.v1, "gadget v1 is not unitary");
  require_unitary(g.v2, "gadget v2 is not unitary");
  return block_diag2(g.u1, g.u2) * u_path(g.alpha, g.zeta, g.xi) *
         block_diag2(g.v1, g.v2);
}

ComplexMatrix gadget_unitary(const GadgetSettings &g) {
  return matrix_to_pol_major(gadget_unitary_path_major(g));
}

std::pair<ComplexMatrix, ComplexMatrix> module_kraus(const ModuleSettings &m) {
  require_unitary(m.us, "module us is not unitary");
  require_unitary(m.v1s, "module v1s is not unitary");
  require_unitary(m.v2s, "module v2s is not unitary");
  ComplexMatrix d1(2, 2), d2(2, 2);
  d1(0, 0) = std::polar(1.0, m.beta) * std::cos(m.theta);
  d1(1, 1) = std::cos(m.phi);
  d2(0, 0) = std::polar(1.0, m.gamma) * std::sin(m.theta);
  d2(1, 1) = std::sin(m.phi);
  return {m.v1s * d1 * m.us, m.v2s * d2 * m.us};
}

std::pair<ComplexMatrix, ComplexMatrix> build_module_from_elements(
    const ModuleSettings &m) {
  auto is_identity = [](const ComplexMatrix &u) {
    return max_abs_diff(u, ComplexMatrix::identity(2)) <= 1e-12;
  };
  if (!is_identity(m.us) || !is_identity(m.v1s) || !is_identity(m.v2s))
    throw UnsupportedSettings(
        "element layout implements the module core only; outer unitaries "
        "must be identity");

  // Rails: 0 = entrance -> s1 -> t1 -> second exit (E2)
  //        1 = s2 -> t4 -> dump behind the exit splitter
  //        2 = t2 -> first exit (E1)
  //        3 = t3 -> dump behind the recombination splitter
  ElementCircuit c;
  c.rails = 4;
  c.elements = {
      Pbs{0, 1},                   // entrance split
      PolRotator{0, m.theta},      // s1 arm
      PolRotator{0, kPi / 2},
      PolRotator{1, m.phi},        // s2 arm
      Pbs{0, 2},                   // s1 -> t1 / t2
      Pbs{1, 3},                   // s2 -> t4 / t3
      PolRotator{2, -kPi / 2},     // t2
      PhaseShifter{2, m.beta},
      Mirror{0, 0},
      PolRotator{0, kPi},          // t1 continuation
      PhaseShifter{0, m.gamma},
      Mirror{1, 1},
      PolRotator{1, kPi / 2},      // t4 continuation
      PolRotator{1, kPi},
      Pbs{2, 3},                   // recombine onto exit 1
      Pbs{0, 1},                   // recombine onto exit 2
  };
  ComplexMatrix full = c.compose();

  ComplexMatrix k1(2, 2), k2(2, 2);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t cc = 0; cc < 2; ++cc) {
      k1(r, cc) = full(4 + r, cc);  // rail 2 rows, entrance columns
      k2(r, cc) = full(r, cc);      // rail 0 rows
    }
  return {k1, k2};
}

std::vector<ComplexMatrix> assemble_four_outcome(const ComplexMatrix &gadget,
                                                 const ModuleSettings &m_a,
                                                 const ModuleSettings &m_b) {
  if (gadget.rows() != 4 || gadget.cols() != 4)
    throw DimensionMismatch("gadget matrix must be 4x4");
  auto [k1a, k2a] = module_kraus(m_a);
  auto [k1b, k2b] = module_kraus(m_b);
  ComplexMatrix zero2(2, 2);
  ComplexMatrix ud = gadget.dagger();
  auto effect = [&](const ComplexMatrix &top, const ComplexMatrix &bottom) {
    ComplexMatrix pattern =
        matrix_to_pol_major(block_diag2(top.dagger() * top,
                                        bottom.dagger() * bottom));
    return ud * pattern * gadget;
  };
  return {effect(k1a, zero2), effect(k2a, zero2), effect(zero2, k1b),
          effect(zero2, k2b)};
}

std::vector<ComplexMatrix> assemble_four_outcome(const GadgetSettings &g,
                                                 const ModuleSettings &m_a,
                                                 const ModuleSettings &m_b) {
  return assemble_four_outcome(gadget_unitary(g), m_a, m_b);
}

}  // namespace pathpovm
