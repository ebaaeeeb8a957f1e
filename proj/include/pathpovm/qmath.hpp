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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "pathpovm/errors.hpp"

namespace pathpovm {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Sized for this project's dimensions
/// (2..64); all operations are plain loops or small eigensolves.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Complex(0, 0)) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols);
  /// Row-major construction: {{a,b},{c,d}}.
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);
  static ComplexMatrix diagonal(const std::vector<double> &d);
  static ComplexMatrix outer(const std::vector<Complex> &u,
                             const std::vector<Complex> &v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex &operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Complex &operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::vector<Complex> &data() { return data_; }
  const std::vector<Complex> &data() const { return data_; }

  ComplexMatrix dagger() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  double max_abs() const;

  std::vector<Complex> apply(const std::vector<Complex> &v) const;

  bool is_hermitian(double tol) const;
  bool is_unitary(double tol) const;

  ComplexMatrix &operator+=(const ComplexMatrix &o);
  ComplexMatrix &operator-=(const ComplexMatrix &o);
  ComplexMatrix &operator*=(Complex s);

  friend ComplexMatrix operator*(const ComplexMatrix &a,
                                 const ComplexMatrix &b);
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
  }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
  }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
    a *= s;
    return a;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// Normalized state with explicit basis labels; the labels travel with the
/// amplitudes so basis-order bugs show up as label mismatches, not silent
/// transpositions.
struct StateVector {
  std::vector<Complex> amplitudes;
  std::vector<std::string> basis;

  std::size_t dim() const { return amplitudes.size(); }
  double norm() const;
  /// Scales to unit norm; throws ZeroVector below 1e-14.
  void normalize();
};

double overlap_abs(const StateVector &a, const StateVector &b);
double overlap_abs(const std::vector<Complex> &a,
                   const std::vector<Complex> &b);

/// Kronecker product; (A (x) B)(C (x) D) = AC (x) BD.
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);
std::vector<Complex> tensor(const std::vector<Complex> &u,
                            const std::vector<Complex> &v);

struct EighResult {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns, unitary
};

/// Hermitian eigendecomposition with deterministic conventions: ascending
/// eigenvalues, each eigenvector phase-fixed so its first nonzero component
/// is real positive, degenerate groups ordered by component comparison.
/// Throws NotHermitian when ||H - H^dag||_inf > 1e-10.
EighResult eigh(const ComplexMatrix &h);

/// PSD square root via eigh; eigenvalues below -1e-8 throw NotPsd, small
/// negatives are clamped to zero.
ComplexMatrix sqrt_psd(const ComplexMatrix &p);

/// Moore-Penrose pseudo-inverse of a Hermitian PSD matrix; eigenvalues below
/// tol are treated as exact zeros.
ComplexMatrix pinv_psd(const ComplexMatrix &p, double tol);

/// Unitary factor W of the polar decomposition M = W sqrt(M^dag M). On the
/// kernel of M the factor is completed deterministically (Gram-Schmidt over
/// identity columns); M = 0 returns the identity.
ComplexMatrix polar_unitary(const ComplexMatrix &m);

struct CsdResult {
  ComplexMatrix l1, l2, r1, r2;  // 2x2 unitary factors
  double a1 = 0.0, a2 = 0.0;     // angles in [0, pi/2], ascending
};

/// Cosine-sine decomposition of a 4x4 unitary into 2x2 blocks:
///   W = diag(L1,L2) * [[C, S], [-S, C]] * diag(R1^dag, R2^dag)
/// with C = diag(cos a1, cos a2), S = diag(sin a1, sin a2).
/// Degenerate blocks (a = 0 or pi/2) complete missing factors toward the
/// identity. Throws NotUnitary.
CsdResult csd_2x2(const ComplexMatrix &w);

/// Reassembles the CSD factors (test oracle convenience).
ComplexMatrix csd_compose(const CsdResult &c);

}  // namespace pathpovm
