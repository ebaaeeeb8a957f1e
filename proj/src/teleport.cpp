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

#include "pathpovm/teleport.hpp"

#include <cmath>
#include <map>

namespace pathpovm {

namespace {

// pol-major single-photon Paulis: polarization is the outer factor
const ComplexMatrix &sigma(int which) {
  static const std::array<ComplexMatrix, 4> kSigma = {
      ComplexMatrix::from_rows({{0, 0, 1, 0},
                                {0, 0, 0, 1},
                                {1, 0, 0, 0},
                                {0, 1, 0, 0}}),  // pol x
      ComplexMatrix::from_rows({{0, 1, 0, 0},
                                {1, 0, 0, 0},
                                {0, 0, 0, 1},
                                {0, 0, 1, 0}}),  // path x
      ComplexMatrix::from_rows({{1, 0, 0, 0},
                                {0, 1, 0, 0},
                                {0, 0, -1, 0},
                                {0, 0, 0, -1}}),  // pol z
      ComplexMatrix::from_rows({{1, 0, 0, 0},
                                {0, -1, 0, 0},
                                {0, 0, 1, 0},
                                {0, 0, 0, -1}}),  // path z
  };
  return kSigma[which];
}

ComplexMatrix sigma_product(const std::array<int, 4> &e) {
  ComplexMatrix m = ComplexMatrix::identity(4);
  for (int i = 0; i < 4; ++i)
    if (e[i]) m = m * sigma(i);
  return m;
}

StateVector make_pathpol(std::vector<Complex> amps) {
  StateVector v;
  v.amplitudes = std::move(amps);
  v.basis.assign(kPathPolOrder.begin(), kPathPolOrder.end());
  return v;
}

StateVector normalized_input(const StateVector &psi) {
  if (psi.dim() != 4)
    throw DimensionMismatch("teleport input must be a two-qubit state");
  StateVector p = psi;
  p.normalize();
  return p;
}

std::size_t bell_ordinal(BellKind k) {
  switch (k) {
    case BellKind::PhiPlus:
      return 0;
    case BellKind::PhiMinus:
      return 1;
    case BellKind::PsiPlus:
      return 2;
    case BellKind::PsiMinus:
      return 3;
  }
  return 0;
}

// Projects the (pol1, polA) pair of the joint state onto a Bell vector,
// leaving a 16-dim state over (pol2, polB, polC, pathC).
std::vector<Complex> contract_pair_1a(const std::vector<Complex> &joint,
                                      const std::vector<Complex> &bell) {
  std::vector<Complex> out(16, Complex(0, 0));
  for (std::size_t p1 = 0; p1 < 2; ++p1)
    for (std::size_t pa = 0; pa < 2; ++pa) {
      Complex coef = std::conj(bell[p1 * 2 + pa]);
      if (coef == Complex(0, 0)) continue;
      for (std::size_t rest = 0; rest < 4; ++rest)    // (pol2, polB)
        for (std::size_t tail = 0; tail < 4; ++tail)  // (polC, pathC)
          out[rest * 4 + tail] +=
              coef * joint[p1 * 32 + (rest >> 1) * 16 + pa * 8 +
                           (rest & 1) * 4 + tail];
    }
  return out;
}

// Same for the (pol2, polB) pair of the reduced 16-dim state.
std::vector<Complex> contract_pair_2b(const std::vector<Complex> &reduced,
                                      const std::vector<Complex> &bell) {
  std::vector<Complex> out(4, Complex(0, 0));
  for (std::size_t p2 = 0; p2 < 2; ++p2)
    for (std::size_t pb = 0; pb < 2; ++pb) {
      Complex coef = std::conj(bell[p2 * 2 + pb]);
      if (coef == Complex(0, 0)) continue;
      for (std::size_t tail = 0; tail < 4; ++tail)
        out[tail] += coef * reduced[p2 * 8 + pb * 4 + tail];
    }
  return out;
}

double norm2(const std::vector<Complex> &v) {
  double s = 0;
  for (const auto &x : v) s += std::norm(x);
  return s;
}

// Unnormalized photon-C amplitudes after projecting the polarization pairs
// onto the given generalized Bell branch; shared by branch() and the
// correction search (which must not depend on the corrections themselves).
std::vector<Complex> raw_branch_residual(const JointState &joint,
                                         const BellIndex &j) {
  if (joint.amplitudes.size() != 64)
    throw DimensionMismatch("joint state must be 64-dim");
  StateVector b13 = bell_state(j.pair13);
  StateVector b24 = bell_state(j.pair24);

  std::vector<Complex> res(4, Complex(0, 0));
  for (std::size_t p1 = 0; p1 < 2; ++p1)
    for (std::size_t p2 = 0; p2 < 2; ++p2)
      for (std::size_t pa = 0; pa < 2; ++pa)
        for (std::size_t pb = 0; pb < 2; ++pb) {
          Complex coef = std::conj(b13.amplitudes[p1 * 2 + pa] *
                                   b24.amplitudes[p2 * 2 + pb]);
          if (coef == Complex(0, 0)) continue;
          std::size_t base = p1 * 32 + p2 * 16 + pa * 8 + pb * 4;
          for (std::size_t tail = 0; tail < 4; ++tail)
            res[tail] += coef * joint.amplitudes[base + tail];
        }
  return res;
}

}  // namespace

JointState joint_state(const StateVector &psi) {
  StateVector p = normalized_input(psi);
  StateVector anc = ancilla_g1_tilde();
  return JointState{tensor(p.amplitudes, anc.amplitudes)};
}

BranchResult branch(const JointState &joint, const BellIndex &j) {
  std::vector<Complex> res = raw_branch_residual(joint, j);

  BranchResult out;
  out.branch = j;
  out.probability = norm2(res);
  if (out.probability < 1e-15)
    throw ZeroBranch("branch has vanishing probability");
  out.residual = make_pathpol(res);
  out.residual.normalize();
  out.corrected =
      make_pathpol(correction_for(j).matrix.apply(out.residual.amplitudes));
  return out;
}

const CorrectionOp &correction_for(const BellIndex &j) {
  static const std::array<CorrectionOp, 16> table = [] {
    // Probe states fixed from the named generator, so the search is
    // reproducible and the cache is immutable afterwards.
    std::array<StateVector, 3> probes;
    Philox rng(0x70617468u, 0);  // arbitrary fixed key
    for (auto &p : probes) {
      std::vector<Complex> a(4);
      for (auto &x : a)
        x = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
      p.amplitudes = a;
      p.basis.assign(kTwoPhotonOrder.begin(), kTwoPhotonOrder.end());
      p.normalize();
    }

    std::array<CorrectionOp, 16> out{};
    for (const BellIndex &idx : all_bell_indices()) {
      std::vector<std::array<int, 4>> matches;
      for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int a3 = 0; a3 < 2; ++a3)
            for (int a4 = 0; a4 < 2; ++a4) {
              std::array<int, 4> e = {a1, a2, a3, a4};
              ComplexMatrix c = sigma_product(e);
              bool ok = true;
              for (const StateVector &p : probes) {
                std::vector<Complex> res =
                    raw_branch_residual(joint_state(p), idx);
                std::vector<Complex> fixed = c.apply(res);
                double n = std::sqrt(norm2(fixed));
                for (auto &x : fixed) x /= n;
                if (std::abs(overlap_abs(p.amplitudes, fixed) - 1.0) > 1e-9) {
                  ok = false;
                  break;
                }
              }
              if (ok) matches.push_back(e);
            }
      if (matches.size() != 1)
        throw Error("branch correction search did not isolate one operator");
      std::size_t slot =
          bell_ordinal(idx.pair13) * 4 + bell_ordinal(idx.pair24);
      out[slot] = CorrectionOp{matches.front(), sigma_product(matches.front())};
    }
    return out;
  }();
  return table[bell_ordinal(j.pair13) * 4 + bell_ordinal(j.pair24)];
}

BsmOutcome bsm_linear_optics(const StateVector &pair_state, Philox &rng) {
  if (pair_state.dim() != 4)
    throw DimensionMismatch("Bell measurement expects a two-qubit state");
  StateVector s = pair_state;
  s.normalize();
  double p_minus =
      std::pow(overlap_abs(bell_state(BellKind::PsiMinus), s), 2);
  double p_plus = std::pow(overlap_abs(bell_state(BellKind::PsiPlus), s), 2);
  double u = rng.next_double();
  if (u < p_minus) return BsmOutcome::PsiMinus;
  if (u < p_minus + p_plus) return BsmOutcome::PsiPlus;
  return BsmOutcome::Fail;
}

TeleportSample teleport_sampled(const StateVector &psi, Philox &rng) {
  JointState joint = joint_state(psi);

  // First pair: sample the three-outcome instrument on (pol1, polA).
  const StateVector psi_minus = bell_state(BellKind::PsiMinus);
  const StateVector psi_plus = bell_state(BellKind::PsiPlus);
  std::vector<Complex> after_minus =
      contract_pair_1a(joint.amplitudes, psi_minus.amplitudes);
  std::vector<Complex> after_plus =
      contract_pair_1a(joint.amplitudes, psi_plus.amplitudes);
  double p_minus = norm2(after_minus);
  double p_plus = norm2(after_plus);

  TeleportSample sample;
  double u = rng.next_double();
  std::vector<Complex> reduced;
  if (u < p_minus) {
    sample.first = BsmOutcome::PsiMinus;
    reduced = std::move(after_minus);
  } else if (u < p_minus + p_plus) {
    sample.first = BsmOutcome::PsiPlus;
    reduced = std::move(after_plus);
  } else {
    sample.first = BsmOutcome::Fail;
    return sample;
  }

  // Second pair on the post-measurement state.
  std::vector<Complex> tail_minus =
      contract_pair_2b(reduced, psi_minus.amplitudes);
  std::vector<Complex> tail_plus =
      contract_pair_2b(reduced, psi_plus.amplitudes);
  double q_minus = norm2(tail_minus) / norm2(reduced);
  double q_plus = norm2(tail_plus) / norm2(reduced);

  double u2 = rng.next_double();
  BellKind first_kind = sample.first == BsmOutcome::PsiMinus
                            ? BellKind::PsiMinus
                            : BellKind::PsiPlus;
  BellKind second_kind;
  if (u2 < q_minus) {
    sample.second = BsmOutcome::PsiMinus;
    second_kind = BellKind::PsiMinus;
  } else if (u2 < q_minus + q_plus) {
    sample.second = BsmOutcome::PsiPlus;
    second_kind = BellKind::PsiPlus;
  } else {
    sample.second = BsmOutcome::Fail;
    return sample;
  }

  sample.success = true;
  BranchResult br = branch(joint, BellIndex{first_kind, second_kind});
  sample.out = br.corrected;
  return sample;
}

std::vector<BranchResult> teleport_postselected(const StateVector &psi) {
  JointState joint = joint_state(psi);
  std::vector<BranchResult> out;
  out.reserve(16);
  for (const BellIndex &j : all_bell_indices()) out.push_back(branch(joint, j));
  return out;
}

}  // namespace pathpovm
