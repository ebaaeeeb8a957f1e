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

#include "pathpovm/synthesis.hpp"

#include <algorithm>
#include <cmath>

#include "pathpovm/states.hpp"

namespace pathpovm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kZeroAmp = 1e-14;
constexpr double kEffectSlack = 1e-8;
constexpr double kSupportTol = 1e-10;
constexpr double kDropTrace = 1e-12;

struct BlockPhases {
  bool nz0 = false, nz1 = false;  // which components are nonzero
  double r0 = 0, r1 = 0;          // phases after the global-phase shift
};

}  // namespace

ThetaParams theta_params(const std::vector<Complex> &v) {
  if (v.size() != 4) throw DimensionMismatch("theta_params expects dim 4");
  std::vector<Complex> p = to_path_major(v);
  double n = 0;
  for (const auto &x : p) n += std::norm(x);
  n = std::sqrt(n);
  if (n < kZeroAmp) throw ZeroVector("theta_params expects a unit vector");
  for (auto &x : p) x /= n;

  double mag[4], phase[4];
  bool nz[4];
  double phase_sum = 0;
  for (int i = 0; i < 4; ++i) {
    mag[i] = std::abs(p[i]);
    nz[i] = mag[i] > kZeroAmp;
    phase[i] = nz[i] ? std::arg(p[i]) : 0.0;
    phase_sum += phase[i];
  }
  double chi = -phase_sum / 4;
  double r[4];
  for (int i = 0; i < 4; ++i) r[i] = phase[i] + chi;

  ThetaParams t;
  t.t1 = std::atan2(std::hypot(mag[2], mag[3]), std::hypot(mag[0], mag[1]));
  t.t2 = (nz[0] || nz[1]) ? std::atan2(mag[1], mag[0]) : 0.0;
  t.t5 = (nz[2] || nz[3]) ? std::atan2(mag[3], mag[2]) : 0.0;

  // Phase system: components carry (t3+t4, t3-t4, -t3+t6, -t3-t6) after the
  // global-phase shift. Solve in real arithmetic; which equations exist
  // depends on the zero pattern.
  bool full1 = nz[0] && nz[1];
  bool full2 = nz[2] && nz[3];
  if (full1) {
    t.t3 = (r[0] + r[1]) / 2;
    t.t4 = (r[0] - r[1]) / 2;
    if (full2) {
      t.t6 = (r[2] - r[3]) / 2;
    } else if (nz[2]) {
      t.t6 = r[2] + t.t3;
    } else if (nz[3]) {
      t.t6 = -(r[3] + t.t3);
    }
  } else if (full2) {
    t.t3 = -(r[2] + r[3]) / 2;
    t.t6 = (r[2] - r[3]) / 2;
    if (nz[0]) {
      t.t4 = r[0] - t.t3;
    } else if (nz[1]) {
      t.t4 = t.t3 - r[1];
    }
  } else {
    // at most one nonzero component per block
    if (nz[0]) {
      t.t3 = r[0];
    } else if (nz[1]) {
      t.t3 = r[1];
    }
    if (nz[2]) {
      if (nz[0] || nz[1])
        t.t6 = r[2] + t.t3;
      else
        t.t3 = -r[2];
    } else if (nz[3]) {
      if (nz[0] || nz[1])
        t.t6 = -(r[3] + t.t3);
      else
        t.t3 = -r[3];
    }
  }
  return t;
}

std::vector<Complex> s_theta(const ThetaParams &t) {
  std::vector<Complex> p(4);
  p[0] = std::cos(t.t1) * std::cos(t.t2) * std::polar(1.0, t.t3 + t.t4);
  p[1] = std::cos(t.t1) * std::sin(t.t2) * std::polar(1.0, t.t3 - t.t4);
  p[2] = std::sin(t.t1) * std::cos(t.t5) * std::polar(1.0, -t.t3 + t.t6);
  p[3] = std::sin(t.t1) * std::sin(t.t5) * std::polar(1.0, -t.t3 - t.t6);
  return to_pol_major(p);
}

ComplexMatrix u2_template(double ti, double tj, double tk) {
  double c = std::cos(ti), s = std::sin(ti);
  ComplexMatrix m(2, 2);
  m(0, 0) = std::polar(1.0, tj) * c;
  m(0, 1) = -std::polar(1.0, tk) * s;
  m(1, 0) = std::polar(1.0, -tk) * s;
  m(1, 1) = std::polar(1.0, -tj) * c;
  return m;
}

GadgetSettings solve_vector_map(const std::vector<Complex> &v_from,
                                const std::vector<Complex> &v_to) {
  ThetaParams t = theta_params(v_from);
  ThetaParams tp = theta_params(v_to);
  GadgetSettings g;
  // Entry slots strip the source block structure, exit slots rebuild the
  // target's; the path stage rotates the block weights between them. The
  // path rotation convention [[c,s],[-s,c]] moves the block angle by -alpha,
  // hence the t1 - t1' choice.
  g.alpha = t.t1 - tp.t1;
  g.zeta = tp.t3 - t.t3;
  g.xi = tp.t3 + t.t3;
  g.v1 = u2_template(-t.t2, -t.t4, t.t4);
  g.v2 = u2_template(-t.t5, -t.t6, t.t6);
  g.u1 = u2_template(tp.t2, tp.t4, tp.t4);
  g.u2 = u2_template(tp.t5, tp.t6, tp.t6);
  return g;
}

ComplexMatrix CompiledUnitary::product() const {
  ComplexMatrix m = ComplexMatrix::identity(4);
  for (const GadgetSettings &g : layers) m = gadget_unitary(g) * m;
  return m;
}

CompiledUnitary compile_unitary(const ComplexMatrix &w) {
  if (w.rows() != 4 || w.cols() != 4 || !w.is_unitary(1e-10))
    throw NotUnitary("compile_unitary expects a 4x4 unitary");
  CsdResult c = csd_2x2(matrix_to_path_major(w));

  CompiledUnitary out;
  if (std::abs(c.a1 - c.a2) <= 1e-12) {
    GadgetSettings g;
    g.alpha = c.a1;
    g.u1 = c.l1;
    g.u2 = c.l2;
    g.v1 = c.r1.dagger();
    g.v2 = c.r2.dagger();
    out.layers.push_back(std::move(g));
    return out;
  }

  // Split the unequal CS rotations across two layers: per polarization the
  // path sees R(m +/- d), realized as G(m) Z G(d) Z with Z = diag(1,-1) on
  // the second arm's polarization.
  double mean = (c.a1 + c.a2) / 2;
  double diff = (c.a1 - c.a2) / 2;
  ComplexMatrix sz = ComplexMatrix::from_rows({{1, 0}, {0, -1}});

  GadgetSettings first;  // applied to the state first
  first.alpha = diff;
  first.v1 = c.r1.dagger();
  first.v2 = sz * c.r2.dagger();

  GadgetSettings second;
  second.alpha = mean;
  second.u1 = c.l1;
  second.u2 = c.l2;
  second.v2 = sz;

  out.layers.push_back(std::move(first));
  out.layers.push_back(std::move(second));
  return out;
}

namespace {

ComplexMatrix hermitized(const ComplexMatrix &m) {
  ComplexMatrix h = m;
  h += m.dagger();
  h *= Complex(0.5, 0);
  return h;
}

// Effect eigenvalues clamped to [0,1]; throws NotEffect outside tolerance.
std::pair<std::vector<double>, ComplexMatrix> effect_eigh(
    const ComplexMatrix &f) {
  EighResult e = eigh(hermitized(f));
  for (double &lam : e.eigenvalues) {
    if (lam < -kEffectSlack || lam > 1 + kEffectSlack)
      throw NotEffect("effect eigenvalue outside [0, 1]");
    lam = std::clamp(lam, 0.0, 1.0);
  }
  return {e.eigenvalues, e.eigenvectors};
}

ComplexMatrix perm4() {
  ComplexMatrix p(4, 4);
  p(0, 0) = 1;
  p(1, 2) = 1;
  p(2, 1) = 1;
  p(3, 3) = 1;
  return p;
}

std::unique_ptr<SynthesisNode> bipartition_node(const ComplexMatrix &f) {
  auto [layers, m_a, m_b] = synth_bipartition(f);
  auto node = std::make_unique<SynthesisNode>();
  node->layers = layers.layers;
  node->arm_a = m_a;
  node->arm_b = m_b;
  return node;
}

// Device-frame recursion; `effects` sum to the projector on the reachable
// support and labels run parallel to them.
std::unique_ptr<SynthesisNode> build_chain(
    std::vector<ComplexMatrix> effects, std::vector<std::string> labels,
    std::vector<std::string> &zero_outcomes) {
  ComplexMatrix f = effects.front();
  auto node = bipartition_node(f);
  node->side1.leaf_a = labels.front();
  node->side1.leaf_b = labels.front();

  if (effects.size() == 1) {
    // nothing left to separate; the failure side carries zero weight
    node->side2.leaf_a = labels.front();
    node->side2.leaf_b = labels.front();
    return node;
  }
  if (effects.size() == 2) {
    node->side2.leaf_a = labels[1];
    node->side2.leaf_b = labels[1];
    return node;
  }

  // The continuation sees states through the stage's failure Kraus
  // K = V * sqrt(I - f); conditioning conjugates by its pseudo-inverse, so
  // the unitary polar factor of the actual exit pair must ride along.
  ComplexMatrix complement = ComplexMatrix::identity(4) - f;
  ComplexMatrix s = sqrt_psd(hermitized(complement));
  ComplexMatrix sp = pinv_psd(s, kSupportTol);
  ComplexMatrix v = polar_unitary(side_kraus(*node, 2));

  std::vector<ComplexMatrix> rest;
  std::vector<std::string> rest_labels;
  for (std::size_t i = 1; i < effects.size(); ++i) {
    ComplexMatrix cond = hermitized(v * (sp * effects[i] * sp) * v.dagger());
    if (cond.trace().real() < kDropTrace) {
      zero_outcomes.push_back(labels[i]);
      continue;
    }
    rest.push_back(std::move(cond));
    rest_labels.push_back(labels[i]);
  }
  if (rest.empty()) {
    node->side2.leaf_a = labels.front();
    node->side2.leaf_b = labels.front();
    return node;
  }
  node->side2.child =
      build_chain(std::move(rest), std::move(rest_labels), zero_outcomes);
  return node;
}

void accumulate_effects(const SynthesisNode &node, const ComplexMatrix &prefix,
                        std::vector<std::string> &labels,
                        std::vector<ComplexMatrix> &effects);

std::size_t label_slot(const std::string &label,
                       std::vector<std::string> &labels,
                       std::vector<ComplexMatrix> &effects) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  labels.push_back(label);
  effects.push_back(ComplexMatrix::zero(4, 4));
  return labels.size() - 1;
}

void accumulate_side(const SynthesisNode &node, int side_index,
                     const ComplexMatrix &prefix,
                     std::vector<std::string> &labels,
                     std::vector<ComplexMatrix> &effects) {
  const TreeSide &side = side_index == 1 ? node.side1 : node.side2;
  ComplexMatrix k = side_kraus(node, side_index) * prefix;
  if (side.child) {
    accumulate_effects(*side.child, k, labels, effects);
    return;
  }
  for (int exit = 0; exit < 2; ++exit) {
    ComplexMatrix ke = exit_projector(exit) * k;
    const std::string &label = exit == 0 ? side.leaf_a : side.leaf_b;
    effects[label_slot(label, labels, effects)] += ke.dagger() * ke;
  }
}

void accumulate_effects(const SynthesisNode &node, const ComplexMatrix &prefix,
                        std::vector<std::string> &labels,
                        std::vector<ComplexMatrix> &effects) {
  accumulate_side(node, 1, prefix, labels, effects);
  accumulate_side(node, 2, prefix, labels, effects);
}

}  // namespace

ComplexMatrix node_gadget(const SynthesisNode &node) {
  ComplexMatrix m = ComplexMatrix::identity(4);
  for (const GadgetSettings &g : node.layers) m = gadget_unitary(g) * m;
  return m;
}

ComplexMatrix side_kraus(const SynthesisNode &node, int side) {
  auto [k1a, k2a] = module_kraus(node.arm_a);
  auto [k1b, k2b] = module_kraus(node.arm_b);
  const ComplexMatrix &ka = side == 1 ? k1a : k2a;
  const ComplexMatrix &kb = side == 1 ? k1b : k2b;
  ComplexMatrix stacked(4, 4);  // path-major block-diagonal
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      stacked(r, c) = ka(r, c);
      stacked(r + 2, c + 2) = kb(r, c);
    }
  ComplexMatrix k = matrix_to_pol_major(stacked) * node_gadget(node);
  const TreeSide &ts = side == 1 ? node.side1 : node.side2;
  if (ts.exit_unitary) k = *ts.exit_unitary * k;
  return k;
}

ComplexMatrix exit_projector(int exit_index) {
  ComplexMatrix p(4, 4);
  if (exit_index == 0) {
    p(0, 0) = 1;
    p(2, 2) = 1;
  } else {
    p(1, 1) = 1;
    p(3, 3) = 1;
  }
  return p;
}

std::tuple<CompiledUnitary, ModuleSettings, ModuleSettings> synth_bipartition(
    const ComplexMatrix &f) {
  if (f.rows() != 4 || f.cols() != 4)
    throw DimensionMismatch("synth_bipartition expects a 4x4 effect");
  auto [lam, w] = effect_eigh(f);

  // The success side must reproduce f = W diag(lam) W^dag once the module
  // cosines land on the path-major diagonal slots.
  ComplexMatrix target = perm4() * w.dagger();
  CompiledUnitary layers = compile_unitary(target);

  ModuleSettings m_a, m_b;
  m_a.theta = std::acos(std::sqrt(lam[0]));
  m_a.phi = std::acos(std::sqrt(lam[1]));
  m_b.theta = std::acos(std::sqrt(lam[2]));
  m_b.phi = std::acos(std::sqrt(lam[3]));
  return {layers, m_a, m_b};
}

SynthesisTree synth_povm(const PovmSpec &spec) {
  std::size_t n = spec.effects.size();
  if (n < 2 || n > 32)
    throw InvalidPovm("POVM must have between 2 and 32 outcomes");
  std::vector<std::string> labels = spec.labels;
  if (labels.empty()) {
    for (std::size_t i = 0; i < n; ++i)
      labels.push_back("F" + std::to_string(i + 1));
  }
  if (labels.size() != n)
    throw InvalidPovm("label count does not match effect count");

  ComplexMatrix sum(4, 4);
  std::vector<ComplexMatrix> effects;
  for (const ComplexMatrix &f : spec.effects) {
    if (f.rows() != 4 || f.cols() != 4)
      throw InvalidPovm("effects must be 4x4");
    if (max_abs_diff(f, f.dagger()) > kEffectSlack)
      throw InvalidPovm("effect is not Hermitian");
    ComplexMatrix h = hermitized(f);
    EighResult e = eigh(h);
    for (double lamv : e.eigenvalues)
      if (lamv < -kEffectSlack) throw InvalidPovm("effect is not PSD");
    sum += h;
    effects.push_back(std::move(h));
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(4)) > kEffectSlack)
    throw InvalidPovm("effects do not sum to the identity");

  SynthesisTree tree;
  tree.labels = labels;

  std::vector<ComplexMatrix> live;
  std::vector<std::string> live_labels;
  for (std::size_t i = 0; i < n; ++i) {
    if (effects[i].trace().real() < kDropTrace) {
      tree.zero_outcomes.push_back(labels[i]);
      continue;
    }
    live.push_back(effects[i]);
    live_labels.push_back(labels[i]);
  }
  if (live.empty()) throw InvalidPovm("all effects are zero");

  tree.root =
      build_chain(std::move(live), std::move(live_labels), tree.zero_outcomes);
  return tree;
}

PovmSpec reconstruct_effects(const SynthesisTree &tree) {
  std::vector<std::string> found_labels;
  std::vector<ComplexMatrix> found_effects;
  if (tree.root)
    accumulate_effects(*tree.root, ComplexMatrix::identity(4), found_labels,
                       found_effects);

  PovmSpec out;
  out.labels = tree.labels;
  for (const std::string &label : tree.labels) {
    bool hit = false;
    for (std::size_t i = 0; i < found_labels.size(); ++i) {
      if (found_labels[i] == label) {
        out.effects.push_back(hermitized(found_effects[i]));
        hit = true;
        break;
      }
    }
    if (!hit) out.effects.push_back(ComplexMatrix::zero(4, 4));
  }
  return out;
}

std::pair<SynthesisTree, PovmSpec> bell_preset() {
  GadgetSettings g;
  g.alpha = kPi / 4;
  g.v2 = ComplexMatrix::from_rows({{0, 1}, {-1, 0}});

  ModuleSettings arm;  // diag(1,0) / diag(0,1) projective split per arm
  arm.theta = 0;
  arm.phi = kPi / 2;

  auto node = std::make_unique<SynthesisNode>();
  node->layers = {g};
  node->arm_a = arm;
  node->arm_b = arm;
  node->side1.leaf_a = "PhiPlus";
  node->side1.leaf_b = "PhiMinus";
  node->side2.leaf_a = "PsiMinus";
  node->side2.leaf_b = "PsiPlus";

  SynthesisTree tree;
  tree.root = std::move(node);
  tree.labels = {"PhiPlus", "PsiMinus", "PhiMinus", "PsiPlus"};

  PovmSpec spec;
  spec.labels = tree.labels;
  for (const std::string &name : spec.labels) {
    BellKind kind = name == "PhiPlus"    ? BellKind::PhiPlus
                    : name == "PsiMinus" ? BellKind::PsiMinus
                    : name == "PhiMinus" ? BellKind::PhiMinus
                                         : BellKind::PsiPlus;
    StateVector b = bell_state(kind);
    spec.effects.push_back(
        ComplexMatrix::outer(b.amplitudes, b.amplitudes));
  }
  return {std::move(tree), std::move(spec)};
}

}  // namespace pathpovm
