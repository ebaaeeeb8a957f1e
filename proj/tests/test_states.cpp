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
#include <map>

#include "pathpovm/states.hpp"
#include "test_util.hpp"

using namespace pathpovm;
using namespace pathpovm::testutil;

namespace {

Complex amp(const StateVector &v, const std::string &label) {
  for (std::size_t i = 0; i < v.dim(); ++i)
    if (v.basis[i] == label) return v.amplitudes[i];
  FAIL("missing basis label ", label);
  return {};
}

}  // namespace

TEST_CASE("two_photon_state normalization and labels") {
  StateVector hh = two_photon_state(1, 0, 0, 0);
  CHECK(hh.amplitudes[0] == Complex(1, 0));
  CHECK(hh.basis[0] == "HH");

  StateVector phi = two_photon_state(1, 0, 0, 1);
  CHECK(std::abs(phi.amplitudes[0] - 1.0 / std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(phi.amplitudes[3] - 1.0 / std::sqrt(2.0)) <= 1e-15);

  StateVector scaled = two_photon_state(2, 0, 0, 0);
  CHECK(std::abs(scaled.amplitudes[0] - 1.0) <= 1e-15);

  CHECK_THROWS_AS(two_photon_state(0, 0, 0, 0), ZeroVector);
}

TEST_CASE("bell states form an orthonormal basis") {
  StateVector pp = bell_state(BellKind::PhiPlus);
  CHECK(std::abs(pp.amplitudes[0] - 1.0 / std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(pp.amplitudes[3] - 1.0 / std::sqrt(2.0)) <= 1e-15);
  StateVector pm = bell_state(BellKind::PsiMinus);
  CHECK(std::abs(pm.amplitudes[1] - 1.0 / std::sqrt(2.0)) <= 1e-15);
  CHECK(std::abs(pm.amplitudes[2] + 1.0 / std::sqrt(2.0)) <= 1e-15);

  for (BellKind a : kBellKinds)
    for (BellKind b : kBellKinds) {
      double ov = overlap_abs(bell_state(a), bell_state(b));
      CHECK(std::abs(ov - (a == b ? 1.0 : 0.0)) <= 1e-12);
    }
}

TEST_CASE("generalized Bell anchors") {
  StateVector g1 =
      generalized_bell(BellIndex{BellKind::PhiPlus, BellKind::PhiPlus});
  CHECK(std::abs(amp(g1, "HHHH") - 0.5) <= 1e-15);
  CHECK(std::abs(amp(g1, "HVHV") - 0.5) <= 1e-15);
  CHECK(std::abs(amp(g1, "VHVH") - 0.5) <= 1e-15);
  CHECK(std::abs(amp(g1, "VVVV") - 0.5) <= 1e-15);
  CHECK(std::abs(amp(g1, "HHVV")) <= 1e-15);

  StateVector g16 =
      generalized_bell(BellIndex{BellKind::PsiMinus, BellKind::PsiMinus});
  CHECK(std::abs(amp(g16, "HHVV") - 0.5) <= 1e-15);
  CHECK(std::abs(amp(g16, "HVVH") + 0.5) <= 1e-15);
  CHECK(std::abs(amp(g16, "VHHV") + 0.5) <= 1e-15);
  CHECK(std::abs(amp(g16, "VVHH") - 0.5) <= 1e-15);
}

TEST_CASE("generalized Bell family is orthonormal and complete") {
  auto idx = all_bell_indices();
  ComplexMatrix completeness(16, 16);
  for (std::size_t i = 0; i < 16; ++i) {
    StateVector gi = generalized_bell(idx[i]);
    completeness += ComplexMatrix::outer(gi.amplitudes, gi.amplitudes);
    for (std::size_t j = 0; j < 16; ++j) {
      double ov = overlap_abs(gi, generalized_bell(idx[j]));
      CHECK(std::abs(ov - (i == j ? 1.0 : 0.0)) <= 1e-12);
    }
  }
  CHECK(max_abs_diff(completeness, ComplexMatrix::identity(16)) <= 1e-12);
}

TEST_CASE("gamma state correlations") {
  StateVector g = gamma_state();
  CHECK(amp(g, "HHH") == Complex(0.5, 0));
  CHECK(amp(g, "HHV") == Complex(0, 0));
  CHECK(amp(g, "HVH") == Complex(0.5, 0));
  CHECK(std::abs(g.norm() - 1.0) <= 1e-15);
}

TEST_CASE("fredkin control rules and involution") {
  StateVector anc = ancilla_g1_tilde();
  StateVector base;
  base.amplitudes.assign(16, Complex(0, 0));
  base.basis = anc.basis;

  // control H leaves the path alone
  base.amplitudes[0] = 1;  // |HHHs1>
  StateVector fixed = fredkin_apply(base);
  CHECK(fixed.amplitudes[0] == Complex(1, 0));

  // control V swaps the path
  StateVector hv;
  hv.amplitudes.assign(16, Complex(0, 0));
  hv.basis = anc.basis;
  hv.amplitudes[4] = 1;  // |HVHs1>
  StateVector swapped = fredkin_apply(hv);
  CHECK(swapped.amplitudes[5] == Complex(1, 0));  // |HVHs2>
  CHECK(swapped.amplitudes[4] == Complex(0, 0));

  StateVector small;
  small.amplitudes.assign(8, Complex(0, 0));
  CHECK_THROWS_AS(fredkin_apply(small), DimensionMismatch);

  Philox rng(201, 0);
  for (int it = 0; it < 1000; ++it) {
    StateVector v;
    v.amplitudes = random_unit_vector(16, rng);
    v.basis = anc.basis;
    StateVector once = fredkin_apply(v);
    CHECK(std::abs(once.norm() - 1.0) <= 1e-12);
    StateVector twice = fredkin_apply(once);
    for (std::size_t i = 0; i < 16; ++i)
      CHECK(std::abs(twice.amplitudes[i] - v.amplitudes[i]) <= 1e-15);
  }
}

TEST_CASE("ancilla matches its four-term expansion exactly") {
  StateVector anc = ancilla_g1_tilde();
  std::map<std::string, Complex> expect = {{"HHHs1", {0.5, 0}},
                                           {"HVHs2", {0.5, 0}},
                                           {"VHVs1", {0.5, 0}},
                                           {"VVVs2", {0.5, 0}}};
  for (std::size_t i = 0; i < 16; ++i) {
    auto it = expect.find(anc.basis[i]);
    Complex want = it == expect.end() ? Complex(0, 0) : it->second;
    CHECK(std::abs(anc.amplitudes[i] - want) <= 1e-15);
  }
  CHECK(std::abs(amp(anc, "HHHs2")) <= 1e-15);
}

TEST_CASE("ancilla path qubit is maximally mixed") {
  StateVector anc = ancilla_g1_tilde();
  // partial trace over the three polarizations, path index is the last bit
  ComplexMatrix rho(2, 2);
  for (std::size_t rest = 0; rest < 8; ++rest)
    for (std::size_t s = 0; s < 2; ++s)
      for (std::size_t sp = 0; sp < 2; ++sp)
        rho(s, sp) += anc.amplitudes[rest * 2 + s] *
                      std::conj(anc.amplitudes[rest * 2 + sp]);
  ComplexMatrix half = ComplexMatrix::identity(2);
  half *= Complex(0.5, 0);
  CHECK(max_abs_diff(rho, half) <= 1e-12);
}

TEST_CASE("basis permutation round trip") {
  Philox rng(202, 0);
  for (int it = 0; it < 1000; ++it) {
    std::vector<Complex> v = random_unit_vector(4, rng);
    std::vector<Complex> back = to_pol_major(to_path_major(v));
    for (std::size_t i = 0; i < 4; ++i) CHECK(back[i] == v[i]);
  }
  // the permutation swaps the middle labels
  CHECK(kPathPolOrder[1] == kPathMajorOrder[2]);
  CHECK(kPathPolOrder[2] == kPathMajorOrder[1]);
}
