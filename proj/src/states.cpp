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

#include "pathpovm/states.hpp"

#include <cmath>

namespace pathpovm {

const std::array<std::string, 4> kTwoPhotonOrder = {"HH", "HV", "VH", "VV"};
const std::array<std::string, 4> kPathPolOrder = {"Hs1", "Hs2", "Vs1", "Vs2"};
const std::array<std::string, 4> kPathMajorOrder = {"Hs1", "Vs1", "Hs2",
                                                    "Vs2"};

namespace {

// pol-major index i holds path-major component kPerm[i]; self-inverse
constexpr std::array<std::size_t, 4> kPerm = {0, 2, 1, 3};

std::vector<Complex> permute4(const std::vector<Complex> &v) {
  if (v.size() != 4) throw DimensionMismatch("basis permutation expects dim 4");
  std::vector<Complex> out(4);
  for (std::size_t i = 0; i < 4; ++i) out[i] = v[kPerm[i]];
  return out;
}

}  // namespace

std::vector<Complex> to_path_major(const std::vector<Complex> &pol_major) {
  return permute4(pol_major);
}

std::vector<Complex> to_pol_major(const std::vector<Complex> &path_major) {
  return permute4(path_major);
}

ComplexMatrix matrix_to_pol_major(const ComplexMatrix &path_major) {
  if (path_major.rows() != 4 || path_major.cols() != 4)
    throw DimensionMismatch("basis permutation expects a 4x4 matrix");
  ComplexMatrix out(4, 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      out(r, c) = path_major(kPerm[r], kPerm[c]);
  return out;
}

ComplexMatrix matrix_to_path_major(const ComplexMatrix &pol_major) {
  return matrix_to_pol_major(pol_major);  // involution
}

std::string bell_name(BellKind k) {
  switch (k) {
    case BellKind::PhiPlus:
      return "PhiPlus";
    case BellKind::PhiMinus:
      return "PhiMinus";
    case BellKind::PsiPlus:
      return "PsiPlus";
    case BellKind::PsiMinus:
      return "PsiMinus";
  }
  return "?";
}

std::array<BellIndex, 16> all_bell_indices() {
  std::array<BellIndex, 16> out{};
  std::size_t k = 0;
  for (BellKind p : kBellKinds)
    for (BellKind q : kBellKinds) out[k++] = BellIndex{p, q};
  return out;
}

StateVector two_photon_state(Complex a, Complex b, Complex c, Complex d) {
  StateVector v;
  v.amplitudes = {a, b, c, d};
  v.basis.assign(kTwoPhotonOrder.begin(), kTwoPhotonOrder.end());
  v.normalize();  // throws ZeroVector on all-zero input
  return v;
}

StateVector bell_state(BellKind k) {
  double r = 1.0 / std::sqrt(2.0);
  switch (k) {
    case BellKind::PhiPlus:
      return {{r, 0, 0, r},
              {kTwoPhotonOrder.begin(), kTwoPhotonOrder.end()}};
    case BellKind::PhiMinus:
      return {{r, 0, 0, -r},
              {kTwoPhotonOrder.begin(), kTwoPhotonOrder.end()}};
    case BellKind::PsiPlus:
      return {{0, r, r, 0},
              {kTwoPhotonOrder.begin(), kTwoPhotonOrder.end()}};
    case BellKind::PsiMinus:
      return {{0, r, -r, 0},
              {kTwoPhotonOrder.begin(), kTwoPhotonOrder.end()}};
  }
  throw Error("unknown Bell state");
}

StateVector generalized_bell(const BellIndex &j) {
  StateVector b13 = bell_state(j.pair13);
  StateVector b24 = bell_state(j.pair24);
  StateVector out;
  out.amplitudes.assign(16, Complex(0, 0));
  out.basis.resize(16);
  const char *pol = "HV";
  for (std::size_t p1 = 0; p1 < 2; ++p1)
    for (std::size_t p2 = 0; p2 < 2; ++p2)
      for (std::size_t p3 = 0; p3 < 2; ++p3)
        for (std::size_t p4 = 0; p4 < 2; ++p4) {
          std::size_t idx = p1 * 8 + p2 * 4 + p3 * 2 + p4;
          out.amplitudes[idx] =
              b13.amplitudes[p1 * 2 + p3] * b24.amplitudes[p2 * 2 + p4];
          out.basis[idx] = {pol[p1], pol[p2], pol[p3], pol[p4]};
        }
  return out;
}

StateVector gamma_state() {
  // Integer amplitude pattern normalized once, so the quarters come out
  // exact in binary.
  StateVector out;
  out.amplitudes.assign(8, Complex(0, 0));
  out.basis.resize(8);
  const char *pol = "HV";
  for (std::size_t p1 = 0; p1 < 2; ++p1)
    for (std::size_t p2 = 0; p2 < 2; ++p2)
      for (std::size_t p3 = 0; p3 < 2; ++p3)
        out.basis[p1 * 4 + p2 * 2 + p3] = {pol[p1], pol[p2], pol[p3]};
  // (|HH> + |VV>)_{13} (x) (|H> + |V>)_2, photon order (1,2,3)
  out.amplitudes[0b000] = 1;
  out.amplitudes[0b010] = 1;
  out.amplitudes[0b101] = 1;
  out.amplitudes[0b111] = 1;
  out.normalize();
  return out;
}

StateVector fredkin_apply(const StateVector &state) {
  if (state.dim() != 16)
    throw DimensionMismatch("fredkin_apply expects a 16-dim state");
  StateVector out = state;
  for (std::size_t p1 = 0; p1 < 2; ++p1)
    for (std::size_t p3 = 0; p3 < 2; ++p3) {
      // control = photon 2 polarization; V swaps the path amplitudes
      std::size_t base = p1 * 8 + 1 * 4 + p3 * 2;
      std::swap(out.amplitudes[base], out.amplitudes[base + 1]);
    }
  return out;
}

StateVector ancilla_g1_tilde() {
  StateVector gamma = gamma_state();
  StateVector joint;
  joint.amplitudes = tensor(gamma.amplitudes, std::vector<Complex>{1, 0});
  joint.basis.resize(16);
  for (std::size_t i = 0; i < 8; ++i) {
    joint.basis[2 * i] = gamma.basis[i] + "s1";
    joint.basis[2 * i + 1] = gamma.basis[i] + "s2";
  }
  return fredkin_apply(joint);
}

}  // namespace pathpovm
