/**
 * Copyright 2026 The fockhaf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fockhaf/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace fockhaf {

GaussianMap::GaussianMap(CMatrix e, CMatrix f, CVector delta)
    : e_(std::move(e)), f_(std::move(f)), delta_(std::move(delta)) {
  const Eigen::Index n = e_.rows();
  if (e_.cols() != n || f_.rows() != n || f_.cols() != n || delta_.size() != n) {
    throw InvalidInput("GaussianMap blocks have inconsistent dimensions");
  }
}

GaussianMap GaussianMap::identity(int modes) {
  if (modes < 0) throw InvalidInput("negative mode count");
  return {CMatrix::Identity(modes, modes), CMatrix::Zero(modes, modes), CVector::Zero(modes)};
}

double GaussianMap::constraint_residual() const {
  const Eigen::Index n = e_.rows();
  const double comm = max_abs(e_ * e_.adjoint() - f_ * f_.adjoint() - CMatrix::Identity(n, n));
  const CMatrix eft = e_ * f_.transpose();
  return std::max(comm, max_abs(eft - eft.transpose()));
}

bool GaussianMap::satisfies_invariants(double tol) const {
  const double scale = std::max(1.0, max_abs(e_) * max_abs(e_));
  return constraint_residual() <= tol * scale;
}

GaussianMap GaussianMap::inverse() const {
  CMatrix e = e_.adjoint();
  CMatrix f = -f_.transpose();
  CVector d = -(e * delta_ + f * delta_.conjugate());
  return {std::move(e), std::move(f), std::move(d)};
}

GaussianMap displacement_map(const CVector& alpha) {
  const Eigen::Index n = alpha.size();
  return {CMatrix::Identity(n, n), CMatrix::Zero(n, n), alpha};
}

GaussianMap squeeze_map(const RVector& lambda) {
  const Eigen::Index n = lambda.size();
  CMatrix e = CMatrix::Zero(n, n);
  CMatrix f = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    e(j, j) = std::cosh(lambda(j));
    f(j, j) = std::sinh(lambda(j));
  }
  return {std::move(e), std::move(f), CVector::Zero(n)};
}

GaussianMap two_mode_squeeze_map(int modes, double t, int i, int j) {
  if (i == j) throw InvalidInput("two-mode squeezer needs two distinct modes");
  if (i < 0 || j < 0 || i >= modes || j >= modes) throw InvalidInput("two-mode squeezer mode out of range");
  CMatrix e = CMatrix::Identity(modes, modes);
  CMatrix f = CMatrix::Zero(modes, modes);
  e(i, i) = e(j, j) = std::cosh(t);
  f(i, j) = f(j, i) = std::sinh(t);
  return {std::move(e), std::move(f), CVector::Zero(modes)};
}

bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return max_abs(u * u.adjoint() - CMatrix::Identity(u.rows(), u.rows())) <= tol;
}

GaussianMap passive_map(const CMatrix& u, double tol) {
  if (!is_unitary(u, tol)) throw InvalidInput("passive transformation matrix is not unitary");
  const Eigen::Index n = u.rows();
  return {u, CMatrix::Zero(n, n), CVector::Zero(n)};
}

GaussianMap compose(const GaussianMap& first, const GaussianMap& second) {
  if (first.modes() != second.modes()) {
    throw InvalidInput("compose: mode counts differ (" + std::to_string(first.modes()) + " vs " +
                       std::to_string(second.modes()) + ")");
  }
  const CMatrix& e1 = first.E();
  const CMatrix& f1 = first.F();
  const CMatrix& e2 = second.E();
  const CMatrix& f2 = second.F();
  CMatrix e = e1 * e2 + f1 * f2.conjugate();
  CMatrix f = e1 * f2 + f1 * e2.conjugate();
  CVector d = e1 * second.delta() + f1 * second.delta().conjugate() + first.delta();
  return {std::move(e), std::move(f), std::move(d)};
}

GaussianMap compose_all(const std::vector<GaussianMap>& factors) {
  if (factors.empty()) throw InvalidInput("compose_all needs at least one factor");
  GaussianMap out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = compose(out, factors[k]);
  return out;
}

GaussianMap embed(const GaussianMap& m, int modes, int offset) {
  const int k = m.modes();
  if (offset < 0 || offset + k > modes) throw InvalidInput("embed: block does not fit the register");
  GaussianMap id = GaussianMap::identity(modes);
  CMatrix e = id.E();
  CMatrix f = id.F();
  CVector d = id.delta();
  e.block(offset, offset, k, k) = m.E();
  f.block(offset, offset, k, k) = m.F();
  d.segment(offset, k) = m.delta();
  return {std::move(e), std::move(f), std::move(d)};
}

GaussianMap BlochMessiahFactors::reconstruct() const {
  return compose(passive_map(u, 1e-8), compose(squeeze_map(lambda), passive_map(uprime, 1e-8)));
}

namespace {

// Completes the orthonormal columns of `w` (first `kept` are valid) with
// standard basis vectors, largest residual first.
void complete_basis(CMatrix& w, int kept) {
  const Eigen::Index n = w.rows();
  for (int col = kept; col < n; ++col) {
    Eigen::Index best = -1;
    double best_norm = -1.0;
    CVector best_vec;
    for (Eigen::Index c = 0; c < n; ++c) {
      CVector v = CVector::Unit(n, c);
      for (int k = 0; k < col; ++k) v -= w.col(k) * w.col(k).dot(v);
      const double nv = v.norm();
      if (nv > best_norm + 1e-12) {
        best_norm = nv;
        best = c;
        best_vec = v;
      }
    }
    if (best < 0 || best_norm < 1e-6) throw NumericalError("basis completion failed");
    w.col(col) = best_vec / best_norm;
  }
}

void modified_gram_schmidt(CMatrix& w) {
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    for (Eigen::Index k = 0; k < j; ++k) w.col(j) -= w.col(k) * w.col(k).dot(w.col(j));
    const double nv = w.col(j).norm();
    if (nv < 1e-8) throw NumericalError("Takagi vectors are linearly dependent");
    w.col(j) /= nv;
  }
}

}  // namespace

BlochMessiahFactors bloch_messiah(const GaussianMap& m, const Tolerances& tol) {
  const int n = m.modes();
  if (max_abs(m.delta()) > tol.constraint) {
    throw InvalidInput("bloch_messiah requires a map without displacement");
  }
  if (!m.satisfies_invariants(tol.constraint)) {
    throw InvalidInput("bloch_messiah input violates the bosonic commutation constraints");
  }
  if (n == 0) return {CMatrix(0, 0), RVector(0), CMatrix(0, 0)};

  // F = U sinh U'^*, E = U cosh U'  =>  B = F conj(E)^{-1} = U tanh U^T.
  Eigen::PartialPivLU<CMatrix> lu(m.E().adjoint());
  CMatrix b = lu.solve(m.F().transpose());
  b = 0.5 * (b + b.transpose()).eval();

  // Takagi: B conj(w) = s w  <=>  [[X, Y], [Y, -X]] (u; y) = s (u; y), w = u + i y.
  RMatrix h(2 * n, 2 * n);
  h << b.real(), b.imag(), b.imag(), -b.real();
  Eigen::SelfAdjointEigenSolver<RMatrix> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("Takagi eigen-decomposition failed");

  constexpr double zero_singular = 1e-10;
  CMatrix w(n, n);
  int kept = 0;
  for (int k = 0; k < n; ++k) {
    const Eigen::Index idx = 2 * n - 1 - k;
    if (es.eigenvalues()(idx) <= zero_singular) break;
    const auto v = es.eigenvectors().col(idx);
    w.col(kept++) = (v.head(n).cast<Complex>() + Complex(0.0, 1.0) * v.tail(n).cast<Complex>());
  }
  if (kept > 0) {
    CMatrix head = w.leftCols(kept);
    modified_gram_schmidt(head);
    w.leftCols(kept) = head;
  }
  complete_basis(w, kept);

  RVector lambda(n);
  for (int j = 0; j < n; ++j) lambda(j) = std::asinh((m.F().adjoint() * w.col(j)).norm());

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int c) { return lambda(a) > lambda(c); });
  BlochMessiahFactors out;
  out.u.resize(n, n);
  out.lambda.resize(n);
  for (int j = 0; j < n; ++j) {
    out.u.col(j) = w.col(order[j]);
    out.lambda(j) = lambda(order[j]);
  }
  const RVector inv_cosh = out.lambda.array().cosh().inverse();
  out.uprime = inv_cosh.cast<Complex>().asDiagonal() * (out.u.adjoint() * m.E());

  const GaussianMap back = out.reconstruct();
  const double scale = std::max(1.0, max_abs(m.E()));
  const double err = std::max(max_abs(back.E() - m.E()), max_abs(back.F() - m.F()));
  if (!(err <= tol.reconstruction * scale)) {
    throw NumericalError("Bloch-Messiah reconstruction error " + std::to_string(err) +
                         " exceeds tolerance");
  }
  return out;
}

QuadratureAction to_quadrature(const GaussianMap& m) {
  const Eigen::Index n = m.modes();
  const CMatrix sum = m.E() + m.F();
  const CMatrix diff = m.E() - m.F();
  QuadratureAction q;
  q.s.resize(2 * n, 2 * n);
  q.s << sum.real(), -diff.imag(), sum.imag(), diff.real();
  q.shift.resize(2 * n);
  q.shift << std::sqrt(2.0) * m.delta().real(), std::sqrt(2.0) * m.delta().imag();
  return q;
}

std::vector<GaussianMap> DoktorovFactorization::factors() const {
  const CVector alpha = (d / std::sqrt(2.0)).cast<Complex>();
  return {displacement_map(alpha), passive_map(o_left.cast<Complex>(), 1e-8),
          squeeze_map(l.array().log().matrix()),
          passive_map(o_right.transpose().cast<Complex>(), 1e-8)};
}

GaussianMap DoktorovFactorization::composed() const { return compose_all(factors()); }

DoktorovFactorization doktorov_factorize(const RMatrix& a, const RVector& d, const Tolerances& tol) {
  if (a.rows() != a.cols() || a.rows() != d.size()) {
    throw InvalidInput("doktorov_factorize: A must be square and match d");
  }
  const Eigen::Index n = a.rows();
  Eigen::JacobiSVD<RMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  DoktorovFactorization out;
  out.o_left = svd.matrixU();
  out.o_right = svd.matrixV();
  out.l = svd.singularValues();
  out.d = d;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!(out.l(j) > tol.singularity)) {
      throw InvalidInput("Duschinsky A matrix is singular (singular value " +
                         std::to_string(out.l(j)) + ")");
    }
    Eigen::Index imax = 0;
    out.o_left.col(j).cwiseAbs().maxCoeff(&imax);
    if (out.o_left(imax, j) < 0.0) {
      out.o_left.col(j) *= -1.0;
      out.o_right.col(j) *= -1.0;
    }
  }
  return out;
}

}  // namespace fockhaf
