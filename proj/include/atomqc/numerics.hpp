// Copyright 2026 The atomqc Authors
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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "atomqc/error.hpp"

namespace atomqc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2;

/// Numerical thresholds. These are configuration: every stage takes them by
/// value so callers can tighten or relax them per run.
struct Tolerances {
  double tol_unitary = 1e-10;  // ||M^dag M - I||_max for a unitary
  double tol_recon = 1e-8;     // reconstruction / round-trip distance
  double tol_zero = 1e-12;     // entry treated as already eliminated

  void validate() const {
    if (!(tol_unitary > 0) || !(tol_recon > 0) || !(tol_zero > 0)) {
      throw Error(ErrorCode::InvalidArgument, "tolerances must be positive");
    }
  }
};

// ---------------------------------------------------------------------------
// Angle helpers

/// Maps an angle into (-pi, pi].
inline double wrap_pi(double a) {
  double r = std::remainder(a, 2 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2 * kPi;
  return r;
}

/// Maps an angle into [0, 2*pi).
inline double wrap_2pi(double a) {
  if (a >= 0 && a < 2 * kPi) return a;
  double r = std::fmod(a, 2 * kPi);
  if (r < 0) r += 2 * kPi;
  if (r >= 2 * kPi) r = 0;
  return r;
}

// ---------------------------------------------------------------------------
// Basic predicates

inline bool is_power_of_two(std::size_t v) { return v && !(v & (v - 1)); }

/// log2 of a power-of-two dimension.
inline int qubit_count(std::size_t dim) {
  if (!is_power_of_two(dim)) {
    throw Error(
        ErrorCode::NotPowerOfTwo,
        "dimension " + std::to_string(dim) + " is not a power of two");
  }
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

/// max |(M^dag M - I)_ij|.
inline double unitarity_error(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) return INFINITY;
  Matrix e = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return e.cwiseAbs().maxCoeff();
}

inline bool is_unitary(const Matrix& m, double tol) {
  return unitarity_error(m) <= tol;
}

inline void require_square(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DimMismatch, "matrix must be square and non-empty");
  }
}

inline void require_unitary(const Matrix& m, double tol) {
  require_square(m);
  double err = unitarity_error(m);
  if (!(err <= tol)) {
    throw Error(
        ErrorCode::NotUnitary,
        "unitarity error " + std::to_string(err) + " exceeds " +
            std::to_string(tol));
  }
}

/// min over gamma of ||U - e^{i gamma} V||_F. Equal to
/// sqrt(2 dim - 2 |tr(U^dag V)|) for unitaries; evaluated at the optimal
/// phase instead so that tiny distances do not lose digits to cancellation.
inline double phase_distance(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw Error(ErrorCode::DimMismatch, "phase_distance: shapes differ");
  }
  Complex overlap = (v.adjoint() * u).trace();
  double mag = std::abs(overlap);
  Complex phase = mag > 0 ? overlap / mag : Complex(1);
  return (u - phase * v).norm();
}

// ---------------------------------------------------------------------------
// Givens rotations

/// Two-level unitary acting on rows i and j. The 2x2 block is
/// [[g_ii, g_ij], [g_ji, g_jj]] in (i, j) order.
struct GivensRotation {
  std::size_t i = 0;
  std::size_t j = 1;
  Complex g_ii{1}, g_ij{0}, g_ji{0}, g_jj{1};

  Mat2 block() const {
    Mat2 b;
    b << g_ii, g_ij, g_ji, g_jj;
    return b;
  }

  Matrix embed(Eigen::Index dim) const {
    Matrix g = Matrix::Identity(dim, dim);
    g(i, i) = g_ii;
    g(i, j) = g_ij;
    g(j, i) = g_ji;
    g(j, j) = g_jj;
    return g;
  }

  /// In-place m <- G m.
  void apply_left(Matrix& m) const {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      Complex a = m(i, c), b = m(j, c);
      m(i, c) = g_ii * a + g_ij * b;
      m(j, c) = g_ji * a + g_jj * b;
    }
  }
};

/// Rotation on rows (i, j) that zeroes m(j, k) and leaves m(i, k) real and
/// non-negative. The block is special unitary.
inline GivensRotation givens_params(
    const Matrix& m, std::size_t j, std::size_t i, std::size_t k,
    const Tolerances& tol = {}) {
  require_square(m);
  auto dim = static_cast<std::size_t>(m.rows());
  if (i >= dim || j >= dim || k >= dim || i == j) {
    throw Error(ErrorCode::InvalidArgument, "givens_params: bad indices");
  }
  Complex ui = m(i, k), uj = m(j, k);
  double r = std::hypot(std::abs(ui), std::abs(uj));
  if (r < tol.tol_zero) {
    throw Error(ErrorCode::DegenerateColumn, "both entries already zero");
  }
  GivensRotation g;
  g.i = i;
  g.j = j;
  g.g_ii = std::conj(ui) / r;
  g.g_ij = std::conj(uj) / r;
  g.g_ji = -uj / r;
  g.g_jj = ui / r;
  return g;
}

// ---------------------------------------------------------------------------
// Cosine-sine decomposition

/// U = diag(a1, b1) * [[C, -S], [S, C]] * diag(a2, b2) with
/// C = diag(cos thetas), S = diag(sin thetas).
struct CsdResult {
  Matrix a1, b1, a2, b2;
  std::vector<double> thetas;
};

inline Matrix csd_reconstruct(const CsdResult& r) {
  auto p = r.a1.rows();
  Matrix left = Matrix::Zero(2 * p, 2 * p);
  Matrix mid = Matrix::Zero(2 * p, 2 * p);
  Matrix right = Matrix::Zero(2 * p, 2 * p);
  left.topLeftCorner(p, p) = r.a1;
  left.bottomRightCorner(p, p) = r.b1;
  right.topLeftCorner(p, p) = r.a2;
  right.bottomRightCorner(p, p) = r.b2;
  for (Eigen::Index k = 0; k < p; ++k) {
    double c = std::cos(r.thetas[k]), s = std::sin(r.thetas[k]);
    mid(k, k) = c;
    mid(k + p, k + p) = c;
    mid(k, k + p) = -s;
    mid(k + p, k) = s;
  }
  return left * mid * right;
}

/// Blockwise CSD from the SVD of the top-left quadrant. Columns whose sine
/// is small are re-resolved by an SVD of the projected bottom-left block so
/// that their left singular vectors stay accurate.
inline CsdResult cs_decompose(const Matrix& u, const Tolerances& tol = {}) {
  require_square(u);
  if (u.rows() % 2 != 0) {
    throw Error(ErrorCode::OddDimension, "cs_decompose needs an even dimension");
  }
  require_unitary(u, tol.tol_unitary);

  const Eigen::Index p = u.rows() / 2;
  const Matrix u00 = u.topLeftCorner(p, p);
  const Matrix u01 = u.topRightCorner(p, p);
  const Matrix u10 = u.bottomLeftCorner(p, p);
  const Matrix u11 = u.bottomRightCorner(p, p);

  Eigen::JacobiSVD<Matrix> svd(u00, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix l0 = svd.matrixU();
  Matrix r0 = svd.matrixV();
  Eigen::VectorXd c = svd.singularValues().cwiseMin(1.0);
  Eigen::VectorXd s(p);

  Matrix q = u10 * r0;  // orthogonal columns of norm sin(theta_k)
  Matrix l1 = Matrix::Zero(p, p);
  std::vector<Eigen::Index> good, bad;
  for (Eigen::Index k = 0; k < p; ++k) {
    double nk = q.col(k).norm();
    if (nk > std::numbers::sqrt2 / 2) {
      good.push_back(k);
      s(k) = nk;
      l1.col(k) = q.col(k) / nk;
    } else {
      bad.push_back(k);
    }
  }

  if (!bad.empty()) {
    const auto nb = static_cast<Eigen::Index>(bad.size());
    const auto ng = static_cast<Eigen::Index>(good.size());
    Matrix complement;
    if (ng == 0) {
      complement = Matrix::Identity(p, p);
    } else {
      Matrix g(p, ng);
      for (Eigen::Index t = 0; t < ng; ++t) g.col(t) = l1.col(good[t]);
      Eigen::HouseholderQR<Matrix> qr(g);
      Matrix full = qr.householderQ() * Matrix::Identity(p, p);
      complement = full.rightCols(nb);
    }
    Matrix qb(p, nb), rb(p, nb);
    for (Eigen::Index t = 0; t < nb; ++t) {
      qb.col(t) = q.col(bad[t]);
      rb.col(t) = r0.col(bad[t]);
    }
    Eigen::JacobiSVD<Matrix> small(
        complement.adjoint() * qb, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Matrix lb = complement * small.matrixU();
    rb = rb * small.matrixV();
    Matrix ab = u00 * rb;
    for (Eigen::Index t = 0; t < nb; ++t) {
      Eigen::Index k = bad[t];
      r0.col(k) = rb.col(t);
      l1.col(k) = lb.col(t);
      s(k) = std::min(1.0, small.singularValues()(t));
      double ck = ab.col(t).norm();
      c(k) = std::min(1.0, ck);
      l0.col(k) = ab.col(t) / ck;
    }
  }

  CsdResult out;
  out.a1 = l0;
  out.b1 = l1;
  out.a2 = r0.adjoint();
  out.thetas.resize(p);
  for (Eigen::Index k = 0; k < p; ++k) out.thetas[k] = std::atan2(s(k), c(k));
  Eigen::VectorXcd cc(p), ss(p);
  for (Eigen::Index k = 0; k < p; ++k) {
    cc(k) = std::cos(out.thetas[k]);
    ss(k) = std::sin(out.thetas[k]);
  }
  // b2 = C (b1^dag u11) - S (a1^dag u01)
  out.b2 = cc.asDiagonal() * (l1.adjoint() * u11) -
           ss.asDiagonal() * (l0.adjoint() * u01);
  return out;
}

// ---------------------------------------------------------------------------
// Demultiplexing

/// diag(A, B) = diag(V, V) diag(D, D^dag) diag(W, W), D = diag(e^{i d_phases}).
struct DemuxResult {
  Matrix v, w;
  std::vector<double> d_phases;

  Matrix d() const {
    Eigen::VectorXcd diag(static_cast<Eigen::Index>(d_phases.size()));
    for (std::size_t k = 0; k < d_phases.size(); ++k) {
      diag(static_cast<Eigen::Index>(k)) = std::polar(1.0, d_phases[k]);
    }
    return diag.asDiagonal();
  }
};

namespace detail {

/// Unitary diagonalization of a normal matrix via complex Schur form.
/// Returns (Q, eigenvalues) with m ~= Q diag(ev) Q^dag.
inline std::pair<Matrix, Eigen::VectorXcd> normal_eigen(const Matrix& m) {
  Eigen::ComplexSchur<Matrix> schur(m);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "Schur decomposition did not converge");
  }
  return {schur.matrixU(), schur.matrixT().diagonal()};
}

}  // namespace detail

inline DemuxResult demultiplex(
    const Matrix& a, const Matrix& b, const Tolerances& tol = {}) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimMismatch, "demultiplex: blocks differ in size");
  }
  require_unitary(a, tol.tol_unitary);
  require_unitary(b, tol.tol_unitary);
  auto [v, ev] = detail::normal_eigen(a * b.adjoint());
  DemuxResult out;
  out.v = std::move(v);
  out.d_phases.resize(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    out.d_phases[static_cast<std::size_t>(k)] = wrap_pi(std::arg(ev(k))) / 2;
  }
  out.w = out.d() * out.v.adjoint() * b;
  return out;
}

// ---------------------------------------------------------------------------
// Square roots and sampling

/// Principal square root: eigenphases in (-pi, pi] are halved.
inline Matrix unitary_sqrt(const Matrix& u, const Tolerances& tol = {}) {
  require_unitary(u, tol.tol_unitary);
  auto [q, ev] = detail::normal_eigen(u);
  Eigen::VectorXcd root(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    root(k) = std::polar(1.0, wrap_pi(std::arg(ev(k))) / 2);
  }
  return q * root.asDiagonal() * q.adjoint();
}

inline constexpr int kMaxSimQubits = 12;

/// Haar-random unitary on n qubits: QR of a complex Ginibre matrix with the
/// phases of R's diagonal folded back into Q.
inline Matrix random_unitary(int n_qubits, std::uint64_t seed) {
  if (n_qubits < 1 || n_qubits > kMaxSimQubits) {
    throw Error(
        ErrorCode::SizeTooLarge,
        "random_unitary supports 1..12 qubits, got " + std::to_string(n_qubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix z(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      double re = normal(rng);
      double im = normal(rng);
      z(r, c) = Complex(re, im) * kInvSqrt2;
    }
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix& rr = qr.matrixQR();
  for (Eigen::Index k = 0; k < dim; ++k) {
    Complex d = rr(k, k);
    double mag = std::abs(d);
    q.col(k) *= mag > 0 ? d / mag : Complex(1);
  }
  return q;
}

}  // namespace atomqc
