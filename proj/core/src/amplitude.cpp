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

#include "fockhaf/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace fockhaf {

namespace {

// exp() of anything above this overflows a double.
constexpr double kMaxLog = 709.0;

bool all_zero(const std::vector<int>& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

bool exactly_zero(const CVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != Complex(0.0, 0.0)) return false;
  return true;
}

int sum_of(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

// -1/2 (|a|^2 - a^dag B conj(a)).
Complex gaussian_exponent(const CVector& a, const CMatrix& b) {
  const CVector ac = a.conjugate();
  return -0.5 * (a.squaredNorm() - (ac.transpose() * b * ac).value());
}

double log_r_of(const std::vector<int>& n, const RVector& t) {
  double log_r = 0.0;
  for (std::size_t j = 0; j < n.size(); ++j) {
    log_r += log_cosh(t(j));
    if (n[j] > 0) {
      if (!(t(j) > 0.0)) throw InvalidInput("two-mode squeeze parameter must be positive where n_j > 0");
      log_r -= n[j] * std::log(std::tanh(t(j)));
    }
  }
  return log_r;
}

Complex checked_exp(Complex log_value, const char* what) {
  if (log_value.real() > kMaxLog) {
    throw std::overflow_error(std::string(what) + " overflows double precision (log-magnitude " +
                              std::to_string(log_value.real()) + ")");
  }
  return std::exp(log_value);
}

void check_photons(const std::vector<int>& v, int modes, const char* name) {
  if (static_cast<int>(v.size()) != modes) {
    throw InvalidInput(std::string(name) + " has " + std::to_string(v.size()) + " entries, expected " +
                       std::to_string(modes));
  }
  for (int x : v)
    if (x < 0) throw InvalidInput(std::string(name) + " photon numbers must be non-negative");
}

void check_unitary_parts(const GaussianUnitary& w, double tol) {
  const int l = w.modes();
  if (w.alpha.size() != l || w.u.rows() != l || w.uprime.rows() != l) {
    throw InvalidInput("alpha, U, U' and lambda must all have the mode count " + std::to_string(l));
  }
  if (!is_unitary(w.u, tol)) throw InvalidInput("U is not unitary");
  if (!is_unitary(w.uprime, tol)) throw InvalidInput("U' is not unitary");
  for (Eigen::Index j = 0; j < l; ++j)
    if (!std::isfinite(w.lambda(j))) throw InvalidInput("lambda must be finite");
}

}  // namespace

double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

int AmplitudeSpec::total_photons() const { return sum_of(m) + sum_of(n); }

void AmplitudeSpec::validate(double tol) const {
  const int l = modes();
  check_photons(m, l, "m");
  check_photons(n, l, "n");
  if (lambda.size() != l) throw InvalidInput("lambda length does not match the mode count");
  check_unitary_parts(GaussianUnitary::of(*this), tol);
}

AmplitudeSpec AmplitudeSpec::identity(std::vector<int> m, std::vector<int> n) {
  const auto l = static_cast<Eigen::Index>(m.size());
  return {std::move(m), std::move(n), CVector::Zero(l), CMatrix::Identity(l, l), RVector::Zero(l),
          CMatrix::Identity(l, l)};
}

GaussianUnitary GaussianUnitary::of(const AmplitudeSpec& spec) {
  return {spec.alpha, spec.u, spec.lambda, spec.uprime};
}

AmplitudeSpec GaussianUnitary::with_photons(std::vector<int> m, std::vector<int> n) const {
  return {std::move(m), std::move(n), alpha, u, lambda, uprime};
}

DoubledProblem build_doubled(const AmplitudeSpec& spec, const std::optional<RVector>& t_override,
                             const Tolerances& tol) {
  spec.validate(tol.constraint);
  const int l = spec.modes();
  RVector t(l);
  if (t_override) {
    if (t_override->size() != l) throw InvalidInput("t override length does not match the mode count");
    t = *t_override;
  } else {
    for (int j = 0; j < l; ++j) t(j) = std::asinh(std::sqrt(static_cast<double>(spec.n[j])));
  }
  for (int j = 0; j < l; ++j) {
    if (spec.n[j] > 0 && !(t(j) > 0.0)) throw InvalidInput("t_j must be positive where n_j > 0");
  }

  std::vector<GaussianMap> chain{embed(passive_map(spec.u, tol.constraint), 2 * l, 0),
                                 embed(squeeze_map(spec.lambda), 2 * l, 0),
                                 embed(passive_map(spec.uprime, tol.constraint), 2 * l, 0)};
  for (int j = 0; j < l; ++j) chain.push_back(two_mode_squeeze_map(2 * l, t(j), j, l + j));

  DoubledProblem out;
  out.p = spec.m;
  out.p.insert(out.p.end(), spec.n.begin(), spec.n.end());
  out.alpha_tilde = CVector::Zero(2 * l);
  out.alpha_tilde.head(l) = spec.alpha;
  out.t = t;
  out.map = compose_all(chain);
  out.factors = bloch_messiah(out.map, tol);
  return out;
}

BZeta assemble_B_zeta(const BlochMessiahFactors& factors, const CVector& alpha_tilde) {
  if (alpha_tilde.size() != factors.modes()) throw InvalidInput("alpha dimension does not match the factors");
  const CVector th = factors.lambda.array().tanh().matrix().cast<Complex>();
  const CMatrix b = factors.u * th.asDiagonal() * factors.u.transpose();
  BZeta out{SymmetricMatrix::symmetrized(b), CVector()};
  out.zeta = alpha_tilde - out.b.dense() * alpha_tilde.conjugate();
  return out;
}

double Prefactors::r() const { return checked_exp(Complex(log_r, 0.0), "prefactor R").real(); }

Complex Prefactors::t() const { return checked_exp(log_t, "prefactor T"); }

Prefactors prefactors(const AmplitudeSpec& spec, const DoubledProblem& doubled, const SymmetricMatrix& b) {
  Prefactors out;
  out.log_r = log_r_of(spec.n, doubled.t);
  out.log_t = gaussian_exponent(doubled.alpha_tilde, b.dense());
  for (int pj : doubled.p) out.log_t -= 0.5 * log_factorial(pj);
  for (Eigen::Index j = 0; j < doubled.factors.lambda.size(); ++j)
    out.log_t -= 0.5 * log_cosh(doubled.factors.lambda(j));
  return out;
}

AmplitudeEngine::AmplitudeEngine(const GaussianUnitary& w, std::vector<int> n, const AmplitudeOptions& options)
    : modes_(w.modes()), n_(std::move(n)), options_(options) {
  options_.kernel.validate();
  if (w.lambda.size() != w.alpha.size()) throw InvalidInput("lambda length does not match the mode count");
  check_photons(n_, modes_, "n");
  check_unitary_parts(w, options_.tolerances.constraint);
  alpha_zero_ = exactly_zero(w.alpha);
  doubled_ = !(options_.skip_doubling_for_vacuum_ket && all_zero(n_));
  passive_ = alpha_zero_ && max_abs(w.lambda) == 0.0;

  if (passive_) {
    doubled_ = false;
    passive_u_ = w.u * w.uprime;
    factors_ = {passive_u_, RVector::Zero(modes_), CMatrix::Identity(modes_, modes_)};
    bz_ = {SymmetricMatrix(modes_), CVector::Zero(modes_)};
    log_r_ = 0.0;
    log_t_base_ = 0.0;
  } else if (doubled_) {
    const AmplitudeSpec spec = w.with_photons(std::vector<int>(modes_, 0), n_);
    const DoubledProblem dp = build_doubled(spec, options_.t_override, options_.tolerances);
    factors_ = dp.factors;
    bz_ = assemble_B_zeta(factors_, dp.alpha_tilde);
    log_r_ = log_r_of(n_, dp.t);
    log_t_base_ = gaussian_exponent(dp.alpha_tilde, bz_.b.dense());
  } else {
    const GaussianMap q = compose_all({passive_map(w.u, options_.tolerances.constraint), squeeze_map(w.lambda),
                                       passive_map(w.uprime, options_.tolerances.constraint)});
    factors_ = bloch_messiah(q, options_.tolerances);
    bz_ = assemble_B_zeta(factors_, w.alpha);
    log_r_ = 0.0;
    log_t_base_ = gaussian_exponent(w.alpha, bz_.b.dense());
  }
  log_cosh_sum_ = 0.0;
  for (Eigen::Index j = 0; j < factors_.lambda.size(); ++j) log_cosh_sum_ += log_cosh(factors_.lambda(j));
}

Complex AmplitudeEngine::operator()(const std::vector<int>& m) const {
  check_photons(m, modes_, "m");
  std::vector<int> p = m;
  if (doubled_) p.insert(p.end(), n_.begin(), n_.end());
  const int total = sum_of(m) + sum_of(n_);
  if (alpha_zero_ && total % 2 == 1) return Complex(0.0, 0.0);
  if (passive_) return passive_amplitude(m, total);
  if (total > options_.kernel.max_dim) {
    throw CapExceeded("total photon number " + std::to_string(total) + " exceeds the kernel cap " +
                      std::to_string(options_.kernel.max_dim));
  }

  const SymmetricMatrix bbar = expand_repetition(bz_.b, bz_.zeta, RepetitionVector(p), options_.kernel);
  const bool zeta_zero = bz_.zeta.size() == 0 || max_abs(bz_.zeta) <= 1e-14;
  const Complex h = zeta_zero ? haf_fast(bbar, options_.kernel) : lhaf_fast(bbar, options_.kernel);
  if (h == Complex(0.0, 0.0)) return h;

  Complex log_scale = log_t_base_ - 0.5 * log_cosh_sum_ + log_r_;
  for (int pj : p) log_scale -= 0.5 * log_factorial(pj);
  return h * checked_exp(log_scale + std::log(std::abs(h)), "amplitude") / std::abs(h);
}

Complex AmplitudeEngine::passive_amplitude(const std::vector<int>& m, int total) const {
  if (sum_of(m) != sum_of(n_)) return Complex(0.0, 0.0);
  std::vector<int> rows, cols;
  for (int j = 0; j < modes_; ++j) {
    rows.insert(rows.end(), m[j], j);
    cols.insert(cols.end(), n_[j], j);
  }
  const int k = static_cast<int>(rows.size());
  CMatrix sub(k, k);
  for (int i = 0; i < k; ++i)
    for (int c = 0; c < k; ++c) sub(i, c) = passive_u_(rows[i], cols[c]);
  PermanentLimits limits;
  limits.max_dim = std::min(PermanentLimits::hard_limit, options_.kernel.max_dim / 2);
  if (k > limits.max_dim) {
    throw CapExceeded("total photon number " + std::to_string(total) + " exceeds the kernel cap " +
                      std::to_string(options_.kernel.max_dim));
  }
  double log_scale = 0.0;
  for (int j = 0; j < modes_; ++j) log_scale -= 0.5 * (log_factorial(m[j]) + log_factorial(n_[j]));
  return permanent(sub, limits) * std::exp(log_scale);
}

Complex amplitude(const AmplitudeSpec& spec, const AmplitudeOptions& options) {
  spec.validate(options.tolerances.constraint);
  if (exactly_zero(spec.alpha) && spec.total_photons() % 2 == 1) return Complex(0.0, 0.0);
  const AmplitudeEngine engine(GaussianUnitary::of(spec), spec.n, options);
  return engine(spec.m);
}

double probability(const AmplitudeSpec& spec, const AmplitudeOptions& options) {
  return std::norm(amplitude(spec, options));
}

Complex coherent_amplitude(const CVector& beta, const CVector& alpha, const CMatrix& u, const RVector& lambda) {
  const Eigen::Index l = lambda.size();
  if (beta.size() != l || alpha.size() != l || u.rows() != l || u.cols() != l) {
    throw InvalidInput("coherent_amplitude: inconsistent dimensions");
  }
  if (!is_unitary(u)) throw InvalidInput("U is not unitary");
  const CVector th = lambda.array().tanh().matrix().cast<Complex>();
  const CMatrix b = u * th.asDiagonal() * u.transpose();
  const CVector zeta = alpha - b * alpha.conjugate();
  const CVector x = beta.conjugate();

  Complex log_value = gaussian_exponent(alpha, b);
  for (Eigen::Index j = 0; j < l; ++j) log_value -= 0.5 * log_cosh(lambda(j));
  log_value += 0.5 * (x.transpose() * b * x).value();
  log_value += (zeta.transpose() * x).value();
  log_value -= 0.5 * beta.squaredNorm();
  return checked_exp(log_value, "coherent amplitude");
}

AmplitudeSpec adjoint_spec(const AmplitudeSpec& spec) {
  spec.validate();
  // W^dag = G D(-alpha) = D(-(E_G alpha + F_G conj(alpha))) G, G = U(U'^dag) S(-lambda) U(U^dag).
  const CMatrix ua = spec.u.adjoint();
  const CMatrix upa = spec.uprime.adjoint();
  const RVector neg = -spec.lambda;
  const GaussianMap g = compose_all({passive_map(upa, 1e-8), squeeze_map(neg), passive_map(ua, 1e-8)});
  CVector gamma = -(g.E() * spec.alpha + g.F() * spec.alpha.conjugate());
  return {spec.n, spec.m, std::move(gamma), upa, neg, ua};
}

}  // namespace fockhaf
