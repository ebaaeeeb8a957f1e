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

#include "pathpovm/runtime.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>

namespace pathpovm {

namespace {

constexpr double kDensityTol = 1e-9;

double vec_norm2(const std::vector<Complex> &v) {
  double s = 0;
  for (const auto &x : v) s += std::norm(x);
  return s;
}

void fnv_update(std::uint64_t &h, const void *data, std::size_t len) {
  const auto *p = static_cast<const unsigned char *>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
}

void fnv_double(std::uint64_t &h, double d) { fnv_update(h, &d, sizeof(d)); }

void fnv_matrix(std::uint64_t &h, const ComplexMatrix &m) {
  for (const Complex &c : m.data()) {
    fnv_double(h, c.real());
    fnv_double(h, c.imag());
  }
}

void fnv_module(std::uint64_t &h, const ModuleSettings &m) {
  fnv_double(h, m.theta);
  fnv_double(h, m.phi);
  fnv_double(h, m.beta);
  fnv_double(h, m.gamma);
  fnv_matrix(h, m.us);
  fnv_matrix(h, m.v1s);
  fnv_matrix(h, m.v2s);
}

void fnv_node(std::uint64_t &h, const SynthesisNode &node) {
  for (const GadgetSettings &g : node.layers) {
    fnv_double(h, g.alpha);
    fnv_double(h, g.zeta);
    fnv_double(h, g.xi);
    fnv_matrix(h, g.u1);
    fnv_matrix(h, g.u2);
    fnv_matrix(h, g.v1);
    fnv_matrix(h, g.v2);
  }
  fnv_module(h, node.arm_a);
  fnv_module(h, node.arm_b);
  for (const TreeSide *side : {&node.side1, &node.side2}) {
    if (side->exit_unitary) fnv_matrix(h, *side->exit_unitary);
    if (side->child) {
      fnv_update(h, "node", 4);
      fnv_node(h, *side->child);
    } else {
      fnv_update(h, side->leaf_a.data(), side->leaf_a.size());
      fnv_update(h, side->leaf_b.data(), side->leaf_b.size());
    }
  }
}

std::size_t outcome_index(const std::vector<std::string> &labels,
                          const std::string &label) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  throw Error("outcome label missing from tree label list: " + label);
}

// Flattened stage matrices so the per-shot walk is plain matrix-vector work.
struct CompiledStage {
  ComplexMatrix k1, k2;
  const SynthesisNode *node;
};

void compile_stages(const SynthesisNode &node,
                    std::vector<CompiledStage> &out) {
  out.push_back({side_kraus(node, 1), side_kraus(node, 2), &node});
  if (node.side1.child) compile_stages(*node.side1.child, out);
  if (node.side2.child) compile_stages(*node.side2.child, out);
}

const CompiledStage &stage_for(const std::vector<CompiledStage> &stages,
                               const SynthesisNode *node) {
  for (const CompiledStage &s : stages)
    if (s.node == node) return s;
  throw Error("stage cache is missing a node");
}

std::string sample_compiled(const std::vector<CompiledStage> &stages,
                            const SynthesisNode *root,
                            const std::vector<Complex> &state, Philox &rng) {
  const SynthesisNode *node = root;
  std::vector<Complex> v = state;
  while (true) {
    const CompiledStage &st = stage_for(stages, node);
    std::vector<Complex> w1 = st.k1.apply(v);
    std::vector<Complex> w2 = st.k2.apply(v);
    double p1 = vec_norm2(w1), p2 = vec_norm2(w2);
    double total = p1 + p2;
    bool take1 = rng.next_double() * total < p1;
    const TreeSide &side = take1 ? node->side1 : node->side2;
    std::vector<Complex> &w = take1 ? w1 : w2;
    double wn = take1 ? p1 : p2;

    if (side.child) {
      double n = std::sqrt(wn);
      for (auto &x : w) x /= n;
      v = std::move(w);
      node = side.child.get();
      continue;
    }
    double pa = (std::norm(w[0]) + std::norm(w[2])) / wn;
    return rng.next_double() < pa ? side.leaf_a : side.leaf_b;
  }
}

StateVector canonical_state(const StateVector &v) {
  if (v.dim() != 4)
    throw DimensionMismatch("experiment states must be 4-dim");
  StateVector out = v;
  out.normalize();
  return out;
}

}  // namespace

std::string run_mode_name(RunMode m) {
  switch (m) {
    case RunMode::Direct:
      return "direct";
    case RunMode::Postselected:
      return "postselected";
    case RunMode::SampledTeleport:
      return "sampled-teleport";
  }
  return "?";
}

RunMode run_mode_from_name(const std::string &name) {
  if (name == "direct") return RunMode::Direct;
  if (name == "postselected") return RunMode::Postselected;
  if (name == "sampled-teleport") return RunMode::SampledTeleport;
  throw ParseError("unknown run mode: " + name);
}

std::vector<double> born_probs(const PovmSpec &spec,
                               const ComplexMatrix &rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw InvalidDensity("density matrix must be 4x4");
  if (!rho.is_hermitian(kDensityTol))
    throw InvalidDensity("density matrix is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > kDensityTol ||
      std::abs(rho.trace().imag()) > kDensityTol)
    throw InvalidDensity("density matrix trace is not one");
  EighResult e = eigh(rho);
  if (e.eigenvalues.front() < -kDensityTol)
    throw InvalidDensity("density matrix is not PSD");

  std::vector<double> p;
  p.reserve(spec.effects.size());
  for (const ComplexMatrix &f : spec.effects)
    p.push_back((f * rho).trace().real());
  return p;
}

std::string sample_outcome(const SynthesisTree &tree,
                           const std::vector<Complex> &state, Philox &rng) {
  if (!tree.root) throw Error("empty synthesis tree");
  std::vector<CompiledStage> stages;
  compile_stages(*tree.root, stages);
  return sample_compiled(stages, tree.root.get(), state, rng);
}

std::string settings_digest(const SynthesisTree &tree) {
  std::uint64_t h = 1469598103934665603ull;
  for (const std::string &l : tree.labels) fnv_update(h, l.data(), l.size());
  for (const std::string &l : tree.zero_outcomes)
    fnv_update(h, l.data(), l.size());
  if (tree.root) fnv_node(h, *tree.root);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

ExperimentReport run_shots(const SynthesisTree &tree,
                           const ExperimentConfig &cfg) {
  if (cfg.shots < 1) throw Error("shot count must be at least 1");

  ExperimentReport rep;
  rep.mode = cfg.mode;
  rep.seed = cfg.seed;
  rep.shots = cfg.shots;
  rep.rng_name = Philox::name();
  rep.settings_digest = settings_digest(tree);
  rep.outcomes = tree.labels;
  rep.counts.assign(tree.labels.size(), 0);

  // Theoretical distribution (conditioned on acceptance; the teleport stage
  // reproduces the input state exactly).
  PovmSpec recon = reconstruct_effects(tree);
  ComplexMatrix rho(4, 4);
  StateVector pure;
  bool have_pure = false;

  if (cfg.density) {
    if (cfg.mode != RunMode::Direct)
      throw InvalidDensity(
          "density-matrix input is accepted in direct mode only");
    rho = *cfg.density;
  } else if (cfg.state) {
    pure = canonical_state(*cfg.state);
    have_pure = true;
    rho = ComplexMatrix::outer(pure.amplitudes, pure.amplitudes);
  } else {
    throw Error("experiment config carries no input state");
  }
  rep.probabilities = born_probs(recon, rho);

  // Pure-state decomposition for direct-mode density sampling.
  std::vector<double> mix_weights;
  std::vector<std::vector<Complex>> mix_states;
  if (!have_pure) {
    EighResult e = eigh(rho);
    for (std::size_t k = 0; k < e.eigenvalues.size(); ++k) {
      double wgt = e.eigenvalues[k];
      if (wgt < 1e-14) continue;
      std::vector<Complex> col(4);
      for (std::size_t r = 0; r < 4; ++r) col[r] = e.eigenvectors(r, k);
      mix_weights.push_back(wgt);
      mix_states.push_back(std::move(col));
    }
  }

  std::vector<BranchResult> branches;
  if (cfg.mode == RunMode::Postselected)
    branches = teleport_postselected(pure);

  if (!tree.root) throw Error("empty synthesis tree");
  std::vector<CompiledStage> stages;
  compile_stages(*tree.root, stages);

  for (std::uint64_t shot = 0; shot < cfg.shots; ++shot) {
    Philox rng(cfg.seed, shot);
    std::vector<Complex> input;

    switch (cfg.mode) {
      case RunMode::Direct: {
        if (have_pure) {
          input = pure.amplitudes;
        } else {
          double u = rng.next_double();
          double acc = 0;
          std::size_t pick = mix_weights.size() - 1;
          for (std::size_t k = 0; k < mix_weights.size(); ++k) {
            acc += mix_weights[k];
            if (u < acc) {
              pick = k;
              break;
            }
          }
          input = mix_states[pick];
        }
        break;
      }
      case RunMode::Postselected: {
        double u = rng.next_double();
        double acc = 0;
        std::size_t pick = branches.size() - 1;
        for (std::size_t k = 0; k < branches.size(); ++k) {
          acc += branches[k].probability;
          if (u < acc) {
            pick = k;
            break;
          }
        }
        input = branches[pick].corrected.amplitudes;
        break;
      }
      case RunMode::SampledTeleport: {
        TeleportSample s = teleport_sampled(pure, rng);
        if (!s.success) continue;  // shot rejected
        ++rep.teleport_successes;
        input = s.out->amplitudes;
        break;
      }
    }

    ++rep.accepted;
    std::string label = sample_compiled(stages, tree.root.get(), input, rng);
    ++rep.counts[outcome_index(tree.labels, label)];
  }

  rep.frequencies.assign(rep.outcomes.size(), 0.0);
  rep.z_scores.assign(rep.outcomes.size(), 0.0);
  double n = static_cast<double>(rep.accepted);
  for (std::size_t i = 0; i < rep.outcomes.size(); ++i) {
    if (rep.accepted == 0) break;
    double p = rep.probabilities[i];
    rep.frequencies[i] = static_cast<double>(rep.counts[i]) / n;
    double var = n * p * (1 - p);
    double dev = static_cast<double>(rep.counts[i]) - n * p;
    rep.z_scores[i] = var > 0 ? dev / std::sqrt(var) : (dev == 0 ? 0.0 : 1e300);
    rep.max_abs_deviation =
        std::max(rep.max_abs_deviation, std::abs(rep.frequencies[i] - p));
  }
  return rep;
}

VerifyReport verify(const SynthesisTree &tree, const PovmSpec &reference) {
  PovmSpec recon = reconstruct_effects(tree);
  if (recon.effects.size() != reference.effects.size())
    throw InvalidPovm("outcome count mismatch between settings and POVM");

  // Match by label when both sides agree on the label set, else by order.
  std::vector<std::size_t> map(recon.effects.size());
  bool by_label = !reference.labels.empty();
  if (by_label) {
    for (std::size_t i = 0; i < recon.labels.size(); ++i) {
      bool hit = false;
      for (std::size_t j = 0; j < reference.labels.size(); ++j)
        if (reference.labels[j] == recon.labels[i]) {
          map[i] = j;
          hit = true;
          break;
        }
      if (!hit) {
        by_label = false;
        break;
      }
    }
  }
  if (!by_label)
    for (std::size_t i = 0; i < map.size(); ++i) map[i] = i;

  VerifyReport rep;
  rep.labels = recon.labels;
  for (std::size_t i = 0; i < recon.effects.size(); ++i)
    rep.max_deviation = std::max(
        rep.max_deviation,
        max_abs_diff(recon.effects[i], reference.effects[map[i]]));
  rep.pass = rep.max_deviation <= 1e-8;
  return rep;
}

}  // namespace pathpovm
