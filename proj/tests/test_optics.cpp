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

#include <doctest.h>

#include <cmath>

#include "pathpovm/optics.hpp"
#include "pathpovm/states.hpp"
#include "test_util.hpp"

using namespace pathpovm;
using namespace pathpovm::testutil;

namespace {

constexpr double kPi = 3.14159265358979323846;

GadgetSettings random_gadget(Philox &rng) {
  GadgetSettings g;
  g.alpha = (rng.next_double() - 0.5) * 2 * kPi;
  g.zeta = (rng.next_double() - 0.5) * 2 * kPi;
  g.xi = (rng.next_double() - 0.5) * 2 * kPi;
  g.u1 = random_unitary(2, rng);
  g.u2 = random_unitary(2, rng);
  g.v1 = random_unitary(2, rng);
  g.v2 = random_unitary(2, rng);
  return g;
}

ModuleSettings random_module(Philox &rng, bool outer_unitaries) {
  ModuleSettings m;
  m.theta = rng.next_double() * kPi;
  m.phi = rng.next_double() * kPi;
  m.beta = (rng.next_double() - 0.5) * 2 * kPi;
  m.gamma = (rng.next_double() - 0.5) * 2 * kPi;
  if (outer_unitaries) {
    m.us = random_unitary(2, rng);
    m.v1s = random_unitary(2, rng);
    m.v2s = random_unitary(2, rng);
  }
  return m;
}

ComplexMatrix block_diag(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(4, 4);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      out(r, c) = a(r, c);
      out(r + 2, c + 2) = b(r, c);
    }
  return out;
}

// per-exit phase alignment for 2x2 Kraus comparisons
double kraus_diff_up_to_phase(const ComplexMatrix &a, const ComplexMatrix &b) {
  return diff_up_to_phase(a, b);
}

}  // namespace

TEST_CASE("pbs transmits H and reflects V") {
  ComplexMatrix p = pbs_unitary();
  std::vector<Complex> hs1 = {1, 0, 0, 0};
  std::vector<Complex> vs1 = {0, 0, 1, 0};
  CHECK(p.apply(hs1)[0] == Complex(1, 0));
  CHECK(p.apply(vs1)[3] == Complex(1, 0));  // Vs1 -> Vs2
  CHECK(p.is_unitary(1e-12));
}

TEST_CASE("path rotator closed form and elements agree") {
  CHECK(max_abs_diff(build_path_rotator(0), ComplexMatrix::identity(4)) <=
        1e-12);

  // quarter turn: path block [[0,1],[-1,0]] in path-major order
  ComplexMatrix quarter = build_path_rotator(kPi / 2);
  ComplexMatrix expect(4, 4);
  for (std::size_t k = 0; k < 2; ++k) {
    expect(k, k + 2) = 1;
    expect(k + 2, k) = -1;
  }
  CHECK(max_abs_diff(quarter, expect) <= 1e-12);

  Philox rng(301, 0);
  for (int it = 0; it < 100; ++it) {
    double a = (rng.next_double() - 0.5) * 4 * kPi;
    CHECK(max_abs_diff(build_path_rotator(a), u_path(a, 0, 0)) <= 1e-12);
  }
}

TEST_CASE("path rotator reproduces the printed amplitude map") {
  Philox rng(302, 0);
  for (int it = 0; it < 100; ++it) {
    double al = (rng.next_double() - 0.5) * 2 * kPi;
    std::vector<Complex> in = random_unit_vector(4, rng);  // path-major a,b,c,d
    std::vector<Complex> out = build_path_rotator(al).apply(in);
    double c = std::cos(al), s = std::sin(al);
    Complex a = in[0], b = in[1], cc = in[2], d = in[3];
    CHECK(std::abs(out[0] - (a * c + cc * s)) <= 1e-12);
    CHECK(std::abs(out[1] - (d * s + b * c)) <= 1e-12);
    CHECK(std::abs(out[2] - (-a * s + cc * c)) <= 1e-12);
    CHECK(std::abs(out[3] - (d * c - b * s)) <= 1e-12);
  }
}

TEST_CASE("u_path special cases, determinant and element form") {
  Philox rng(303, 0);
  double z = rng.next_double(), x = rng.next_double();
  ComplexMatrix phases = u_path(0, z, x);
  Complex ez = std::polar(1.0, z);
  CHECK(std::abs(phases(0, 0) - ez) <= 1e-15);
  CHECK(std::abs(phases(1, 1) - ez) <= 1e-15);
  CHECK(std::abs(phases(2, 2) - std::conj(ez)) <= 1e-15);
  CHECK(std::abs(phases(3, 3) - std::conj(ez)) <= 1e-15);

  for (int it = 0; it < 100; ++it) {
    double a = (rng.next_double() - 0.5) * 2 * kPi;
    double zz = (rng.next_double() - 0.5) * 2 * kPi;
    double xx = (rng.next_double() - 0.5) * 2 * kPi;
    ComplexMatrix u = u_path(a, zz, xx);
    CHECK(std::abs(det4(u) - Complex(1, 0)) <= 1e-10);
    CHECK(max_abs_diff(u, u_path_circuit(a, zz, xx).compose()) <= 1e-12);
  }
}

TEST_CASE("gadget unitary structure") {
  GadgetSettings id;
  CHECK(max_abs_diff(gadget_unitary(id), ComplexMatrix::identity(4)) <= 1e-12);

  GadgetSettings quarter;
  quarter.alpha = kPi / 4;
  CHECK(max_abs_diff(gadget_unitary_path_major(quarter),
                     build_path_rotator(kPi / 4)) <= 1e-12);

  Philox rng(304, 0);
  for (int it = 0; it < 1000; ++it) {
    GadgetSettings g = random_gadget(rng);
    ComplexMatrix u = gadget_unitary(g);
    CHECK(u.is_unitary(1e-10));
    // closed form against the element-level factorization
    ComplexMatrix factored =
        block_diag(g.u1, g.u2) *
        u_path_circuit(g.alpha, g.zeta, g.xi).compose() *
        block_diag(g.v1, g.v2);
    CHECK(max_abs_diff(gadget_unitary_path_major(g), factored) <= 1e-12);
  }

  GadgetSettings bad;
  bad.u1 = ComplexMatrix::from_rows({{1, 1}, {0, 1}});
  CHECK_THROWS_AS(gadget_unitary(bad), NotUnitary);
}

TEST_CASE("module kraus closed forms") {
  ModuleSettings zero;
  auto [k1z, k2z] = module_kraus(zero);
  CHECK(max_abs_diff(k1z, ComplexMatrix::identity(2)) <= 1e-15);
  CHECK(k2z.max_abs() <= 1e-15);

  ModuleSettings proj;
  proj.theta = 0;
  proj.phi = kPi / 2;
  auto [k1p, k2p] = module_kraus(proj);
  CHECK(max_abs_diff(k1p, ComplexMatrix::from_rows({{1, 0}, {0, 0}})) <=
        1e-15);
  CHECK(max_abs_diff(k2p, ComplexMatrix::from_rows({{0, 0}, {0, 1}})) <=
        1e-15);

  Philox rng(305, 0);
  for (int it = 0; it < 1000; ++it) {
    ModuleSettings m = random_module(rng, true);
    auto [k1, k2] = module_kraus(m);
    ComplexMatrix sum = k1.dagger() * k1 + k2.dagger() * k2;
    CHECK(max_abs_diff(sum, ComplexMatrix::identity(2)) <= 1e-12);
  }
}

TEST_CASE("module element layout matches the closed form") {
  ModuleSettings all_first;
  auto [a1, a2] = build_module_from_elements(all_first);
  CHECK(max_abs_diff(a1, ComplexMatrix::identity(2)) <= 1e-12);
  CHECK(a2.max_abs() <= 1e-12);

  ModuleSettings all_second;
  all_second.theta = kPi / 2;
  all_second.phi = kPi / 2;
  auto [b1, b2] = build_module_from_elements(all_second);
  CHECK(b1.max_abs() <= 1e-12);
  CHECK(kraus_diff_up_to_phase(ComplexMatrix::identity(2), b2) <= 1e-12);

  Philox rng(306, 0);
  for (int it = 0; it < 100; ++it) {
    ModuleSettings m = random_module(rng, false);
    auto [e1, e2] = build_module_from_elements(m);
    auto [c1, c2] = module_kraus(m);
    CHECK(kraus_diff_up_to_phase(c1, e1) <= 1e-10);
    CHECK(kraus_diff_up_to_phase(c2, e2) <= 1e-10);
  }

  ModuleSettings outer;
  outer.us = pol_rotator(0.3);
  CHECK_THROWS_AS(build_module_from_elements(outer), UnsupportedSettings);
}

TEST_CASE("module element layout loses nothing to the dumps") {
  Philox rng(307, 0);
  for (int it = 0; it < 50; ++it) {
    ModuleSettings m = random_module(rng, false);
    auto [k1, k2] = build_module_from_elements(m);
    ComplexMatrix sum = k1.dagger() * k1 + k2.dagger() * k2;
    CHECK(max_abs_diff(sum, ComplexMatrix::identity(2)) <= 1e-12);
  }
}

TEST_CASE("four-outcome assembly") {
  GadgetSettings id;
  ModuleSettings zero;  // theta = phi = 0: everything exits first
  auto effects = assemble_four_outcome(id, zero, zero);
  CHECK(max_abs_diff(effects[0] + effects[2], ComplexMatrix::identity(4)) <=
        1e-12);
  CHECK(effects[1].max_abs() <= 1e-12);
  CHECK(effects[3].max_abs() <= 1e-12);

  Philox rng(308, 0);
  for (int it = 0; it < 200; ++it) {
    GadgetSettings g = random_gadget(rng);
    ModuleSettings ma = random_module(rng, false);
    ModuleSettings mb = random_module(rng, false);
    auto fs = assemble_four_outcome(g, ma, mb);
    ComplexMatrix sum(4, 4);
    for (const auto &f : fs) {
      sum += f;
      EighResult e = eigh(f);
      CHECK(e.eigenvalues.front() >= -1e-10);
    }
    CHECK(max_abs_diff(sum, ComplexMatrix::identity(4)) <= 1e-10);
  }
}
