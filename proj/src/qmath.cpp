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

#include "pathpovm/qmath.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pathpovm {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kUnitaryTol = 1e-10;
constexpr double kPsdFloor = -1e-8;
constexpr double kZeroComponent = 1e-12;

Eigen::MatrixXcd to_eigen(const ComplexMatrix &m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

ComplexMatrix from_eigen(const Eigen::MatrixXcd &m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()),
                    static_cast<std::size_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = m(r, c);
  return out;
}

// Multiplies a column by the phase making its first component above the
// threshold real positive.
void fix_column_phase(ComplexMatrix &m, std::size_t col) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Complex v = m(r, col);
    if (std::abs(v) > kZeroComponent) {
      Complex phase = std::conj(v) / std::abs(v);
      for (std::size_t k = 0; k < m.rows(); ++k) m(k, col) *= phase;
      return;
    }
  }
}

// Orders columns i before j when the first differing component is larger
// (real part first, then imaginary); keeps identity-like bases in natural
// order under eigenvalue ties.
bool column_precedes(const ComplexMatrix &m, std::size_t i, std::size_t j) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double dre = m(r, i).real() - m(r, j).real();
    if (std::abs(dre) > kZeroComponent) return dre > 0;
    double dim = m(r, i).imag() - m(r, j).imag();
    if (std::abs(dim) > kZeroComponent) return dim > 0;
  }
  return false;
}

std::vector<Complex> column(const ComplexMatrix &m, std::size_t c) {
  std::vector<Complex> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out[r] = m(r, c);
  return out;
}

void set_column(ComplexMatrix &m, std::size_t c,
                const std::vector<Complex> &v) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = v[r];
}

double vec_norm(const std::vector<Complex> &v) {
  double s = 0;
  for (const auto &x : v) s += std::norm(x);
  return std::sqrt(s);
}

// Modified Gram-Schmidt of `v` against the given columns of `m`.
void orthogonalize_against(std::vector<Complex> &v, const ComplexMatrix &m,
                           const std::vector<std::size_t> &cols) {
  for (std::size_t c : cols) {
    Complex dot(0, 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
      dot += std::conj(m(r, c)) * v[r];
    for (std::size_t r = 0; r < m.rows(); ++r) v[r] -= dot * m(r, c);
  }
}

void phase_fix_vector(std::vector<Complex> &v) {
  for (const auto &x : v) {
    if (std::abs(x) > kZeroComponent) {
      Complex phase = std::conj(x) / std::abs(x);
      for (auto &y : v) y *= phase;
      return;
    }
  }
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Complex(1, 0);
  return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  std::size_t nr = rows.size();
  std::size_t nc = nr == 0 ? 0 : rows.begin()->size();
  ComplexMatrix m(nr, nc);
  std::size_t r = 0;
  for (const auto &row : rows) {
    std::size_t c = 0;
    for (const auto &v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double> &d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = Complex(d[i], 0);
  return m;
}

ComplexMatrix ComplexMatrix::outer(const std::vector<Complex> &u,
                                   const std::vector<Complex> &v) {
  ComplexMatrix m(u.size(), v.size());
  for (std::size_t r = 0; r < u.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = u[r] * std::conj(v[c]);
  return m;
}

ComplexMatrix ComplexMatrix::dagger() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      m(c, r) = std::conj((*this)(r, c));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i)
    m.data()[i] = std::conj(data_[i]);
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t(0, 0);
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0;
  for (const auto &v : data_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<Complex> ComplexMatrix::apply(
    const std::vector<Complex> &v) const {
  if (v.size() != cols_)
    throw DimensionMismatch("matrix-vector dimension mismatch");
  std::vector<Complex> out(rows_, Complex(0, 0));
  for (std::size_t r = 0; r < rows_; ++r) {
    Complex acc(0, 0);
    for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol)
        return false;
  return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
  if (!square()) return false;
  ComplexMatrix g = dagger() * (*this);
  return max_abs_diff(g, identity(rows_)) <= tol;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionMismatch("matrix addition dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw DimensionMismatch("matrix subtraction dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex s) {
  for (auto &v : data_) v *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("matrix product dimension mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Complex av = a(r, k);
      if (av == Complex(0, 0)) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += av * b(k, c);
    }
  return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("matrix comparison dimension mismatch");
  double m = 0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double StateVector::norm() const {
  double s = 0;
  for (const auto &a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::normalize() {
  double n = norm();
  if (n < 1e-14) throw ZeroVector("cannot normalize a zero vector");
  for (auto &a : amplitudes) a /= n;
}

double overlap_abs(const std::vector<Complex> &a,
                   const std::vector<Complex> &b) {
  if (a.size() != b.size())
    throw DimensionMismatch("overlap dimension mismatch");
  Complex dot(0, 0);
  for (std::size_t i = 0; i < a.size(); ++i) dot += std::conj(a[i]) * b[i];
  return std::abs(dot);
}

double overlap_abs(const StateVector &a, const StateVector &b) {
  return overlap_abs(a.amplitudes, b.amplitudes);
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      Complex av = a(ar, ac);
      if (av == Complex(0, 0)) continue;
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = av * b(br, bc);
    }
  return out;
}

std::vector<Complex> tensor(const std::vector<Complex> &u,
                            const std::vector<Complex> &v) {
  std::vector<Complex> out(u.size() * v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      out[i * v.size() + j] = u[i] * v[j];
  return out;
}

EighResult eigh(const ComplexMatrix &h) {
  if (!h.square()) throw NotHermitian("eigh expects a square matrix");
  if (!h.is_hermitian(kHermitianTol))
    throw NotHermitian("matrix is not Hermitian within 1e-10");

  Eigen::MatrixXcd a = to_eigen(h);
  a = (a + a.adjoint().eval()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
  if (solver.info() != Eigen::Success)
    throw Error("eigendecomposition failed to converge");

  std::size_t n = h.rows();
  EighResult res;
  res.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    res.eigenvalues[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
  res.eigenvectors = from_eigen(solver.eigenvectors());
  for (std::size_t c = 0; c < n; ++c) fix_column_phase(res.eigenvectors, c);

  // Eigen already sorts ascending; canonicalize the order inside degenerate
  // groups so equal inputs give bit-equal outputs.
  double scale = std::max(1.0, std::abs(res.eigenvalues.back()));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && std::abs(res.eigenvalues[end] - res.eigenvalues[start]) <=
                          1e-12 * scale)
      ++end;
    std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                     order.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t i, std::size_t j) {
                       return column_precedes(res.eigenvectors, i, j);
                     });
    start = end;
  }

  EighResult sorted;
  sorted.eigenvalues.resize(n);
  sorted.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    sorted.eigenvalues[k] = res.eigenvalues[order[k]];
    set_column(sorted.eigenvectors, k, column(res.eigenvectors, order[k]));
  }
  return sorted;
}

ComplexMatrix sqrt_psd(const ComplexMatrix &p) {
  EighResult e = eigh(p);
  std::vector<double> roots(e.eigenvalues.size());
  for (std::size_t i = 0; i < e.eigenvalues.size(); ++i) {
    double lam = e.eigenvalues[i];
    if (lam < kPsdFloor) throw NotPsd("matrix has a negative eigenvalue");
    roots[i] = lam > 0 ? std::sqrt(lam) : 0.0;
  }
  ComplexMatrix w = e.eigenvectors;
  ComplexMatrix out = w * ComplexMatrix::diagonal(roots) * w.dagger();
  // symmetrize away roundoff so downstream Hermiticity gates hold
  ComplexMatrix h = out.dagger();
  out += h;
  out *= Complex(0.5, 0);
  return out;
}

ComplexMatrix pinv_psd(const ComplexMatrix &p, double tol) {
  EighResult e = eigh(p);
  std::vector<double> inv(e.eigenvalues.size());
  for (std::size_t i = 0; i < e.eigenvalues.size(); ++i) {
    double lam = e.eigenvalues[i];
    inv[i] = lam < tol ? 0.0 : 1.0 / lam;
  }
  ComplexMatrix w = e.eigenvectors;
  ComplexMatrix out = w * ComplexMatrix::diagonal(inv) * w.dagger();
  ComplexMatrix h = out.dagger();
  out += h;
  out *= Complex(0.5, 0);
  return out;
}

ComplexMatrix polar_unitary(const ComplexMatrix &m) {
  if (!m.square()) throw DimensionMismatch("polar_unitary expects square input");
  std::size_t n = m.rows();
  if (m.max_abs() < 1e-14) return ComplexMatrix::identity(n);

  EighResult e = eigh(m.dagger() * m);
  std::vector<double> s(n);
  double smax = 0;
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = e.eigenvalues[i] > 0 ? std::sqrt(e.eigenvalues[i]) : 0.0;
    smax = std::max(smax, s[i]);
  }
  double cutoff = 1e-11 * std::max(1.0, smax);

  // Columns with usable singular values, largest first so Gram-Schmidt
  // anchors on the best-conditioned directions.
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t i, std::size_t j) { return s[i] > s[j]; });

  ComplexMatrix u(n, n);
  std::vector<std::size_t> placed;
  std::vector<std::size_t> kernel_cols;
  for (std::size_t k : idx) {
    if (s[k] <= cutoff) {
      kernel_cols.push_back(k);
      continue;
    }
    std::vector<Complex> col = m.apply(column(e.eigenvectors, k));
    for (auto &v : col) v /= s[k];
    orthogonalize_against(col, u, placed);
    double nn = vec_norm(col);
    for (auto &v : col) v /= nn;
    set_column(u, k, col);
    placed.push_back(k);
  }
  // Complete the kernel with identity columns.
  std::size_t cand = 0;
  for (std::size_t k : kernel_cols) {
    std::vector<Complex> col;
    double nn = 0;
    while (cand < n) {
      col.assign(n, Complex(0, 0));
      col[cand++] = Complex(1, 0);
      orthogonalize_against(col, u, placed);
      nn = vec_norm(col);
      if (nn > 1e-6) break;
    }
    for (auto &v : col) v /= nn;
    set_column(u, k, col);
    placed.push_back(k);
  }
  return u * e.eigenvectors.dagger();
}

namespace {

// Deterministic orthonormal completion of a 2x2 factor whose flagged columns
// were never populated.
void complete_2x2(ComplexMatrix &m, bool have0, bool have1) {
  if (have0 && have1) return;
  if (!have0 && !have1) {
    m = ComplexMatrix::identity(2);
    return;
  }
  std::size_t have = have0 ? 0 : 1;
  std::size_t miss = have0 ? 1 : 0;
  std::vector<Complex> u = {m(0, have), m(1, have)};
  std::vector<Complex> v = {-std::conj(u[1]), std::conj(u[0])};
  phase_fix_vector(v);
  m(0, miss) = v[0];
  m(1, miss) = v[1];
}

// Re-orthonormalizes column `weak` against column `anchor` (2x2 case).
void polish_2x2(ComplexMatrix &m, std::size_t anchor, std::size_t weak) {
  Complex dot = std::conj(m(0, anchor)) * m(0, weak) +
                std::conj(m(1, anchor)) * m(1, weak);
  m(0, weak) -= dot * m(0, anchor);
  m(1, weak) -= dot * m(1, anchor);
  double n = std::sqrt(std::norm(m(0, weak)) + std::norm(m(1, weak)));
  if (n > 1e-14) {
    m(0, weak) /= n;
    m(1, weak) /= n;
  }
}

ComplexMatrix block(const ComplexMatrix &w, std::size_t r0, std::size_t c0) {
  ComplexMatrix b(2, 2);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) b(r, c) = w(r0 + r, c0 + c);
  return b;
}

}  // namespace

CsdResult csd_2x2(const ComplexMatrix &w) {
  if (w.rows() != 4 || w.cols() != 4)
    throw NotUnitary("csd_2x2 expects a 4x4 matrix");
  if (!w.is_unitary(kUnitaryTol))
    throw NotUnitary("csd_2x2 input is not unitary within 1e-10");

  ComplexMatrix w11 = block(w, 0, 0), w12 = block(w, 0, 2);
  ComplexMatrix w21 = block(w, 2, 0), w22 = block(w, 2, 2);

  EighResult e = eigh(w11.dagger() * w11);  // eigenvalues = cos^2, ascending
  // columns ordered so cosines descend => angles ascend
  ComplexMatrix r1(2, 2);
  set_column(r1, 0, column(e.eigenvectors, 1));
  set_column(r1, 1, column(e.eigenvectors, 0));

  double c[2], s[2], a[2];
  std::vector<Complex> top[2], bot[2];
  for (std::size_t k = 0; k < 2; ++k) {
    top[k] = w11.apply(column(r1, k));
    bot[k] = w21.apply(column(r1, k));
    c[k] = vec_norm(top[k]);
    s[k] = vec_norm(bot[k]);
    double hyp = std::hypot(c[k], s[k]);
    a[k] = std::atan2(s[k], c[k]);
    c[k] /= hyp;
    s[k] /= hyp;
  }

  // Division noise cancels in the reconstruction (the column re-scales by
  // the same factor), so the cutoff only has to keep the discarded signal
  // below the reconstruction tolerance.
  constexpr double kDivTol = 1e-13;
  ComplexMatrix l1(2, 2), l2(2, 2);
  bool h1[2] = {false, false}, h2[2] = {false, false};
  for (std::size_t k = 0; k < 2; ++k) {
    if (c[k] > kDivTol) {
      for (std::size_t r = 0; r < 2; ++r) l1(r, k) = top[k][r] / c[k];
      h1[k] = true;
    }
    if (s[k] > kDivTol) {
      for (std::size_t r = 0; r < 2; ++r) l2(r, k) = -bot[k][r] / s[k];
      h2[k] = true;
    }
  }
  complete_2x2(l1, h1[0], h1[1]);
  complete_2x2(l2, h2[0], h2[1]);
  // the division with the smaller denominator carries the noise; polish it
  if (h1[0] && h1[1]) polish_2x2(l1, c[0] >= c[1] ? 0 : 1, c[0] >= c[1] ? 1 : 0);
  if (h2[0] && h2[1]) polish_2x2(l2, s[0] >= s[1] ? 0 : 1, s[0] >= s[1] ? 1 : 0);

  ComplexMatrix r2d(2, 2);  // R2^dag, assembled row by row
  ComplexMatrix viaS = l1.dagger() * w12;
  ComplexMatrix viaC = l2.dagger() * w22;
  bool weak_row[2];
  for (std::size_t k = 0; k < 2; ++k) {
    if (s[k] >= c[k]) {
      for (std::size_t j = 0; j < 2; ++j) r2d(k, j) = viaS(k, j) / s[k];
    } else {
      for (std::size_t j = 0; j < 2; ++j) r2d(k, j) = viaC(k, j) / c[k];
    }
    weak_row[k] = std::max(s[k], c[k]) < 0.9;
  }
  ComplexMatrix r2 = r2d.dagger();
  // r2d rows became r2 columns; polish whichever came from the worse split
  polish_2x2(r2, weak_row[0] && !weak_row[1] ? 1 : 0,
             weak_row[0] && !weak_row[1] ? 0 : 1);

  CsdResult res;
  res.l1 = l1;
  res.l2 = l2;
  res.r1 = r1;
  res.r2 = r2;
  res.a1 = a[0];
  res.a2 = a[1];
  return res;
}

ComplexMatrix csd_compose(const CsdResult &c) {
  ComplexMatrix mid(4, 4);
  double cs[2] = {std::cos(c.a1), std::cos(c.a2)};
  double sn[2] = {std::sin(c.a1), std::sin(c.a2)};
  for (std::size_t k = 0; k < 2; ++k) {
    mid(k, k) = cs[k];
    mid(k, k + 2) = sn[k];
    mid(k + 2, k) = -sn[k];
    mid(k + 2, k + 2) = cs[k];
  }
  ComplexMatrix left(4, 4), right(4, 4);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t cc = 0; cc < 2; ++cc) {
      left(r, cc) = c.l1(r, cc);
      left(r + 2, cc + 2) = c.l2(r, cc);
      right(r, cc) = std::conj(c.r1(cc, r));
      right(r + 2, cc + 2) = std::conj(c.r2(cc, r));
    }
  return left * mid * right;
}

}  // namespace pathpovm
