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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "test_support.hpp"

using namespace fockhaf;
using fockhaf::testing::Rng;
using fockhaf::testing::rel_err;

namespace {

OracleResult reference(const AmplitudeSpec& spec, int cutoff = 40) {
  OracleOptions o;
  o.cutoff = cutoff;
  return oracle_amplitude(spec, o);
}

AmplitudeSpec single_mode(int m, int n, Complex alpha, double lambda) {
  AmplitudeSpec s = AmplitudeSpec::identity({m}, {n});
  s.alpha(0) = alpha;
  s.lambda(0) = lambda;
  return s;
}

// Enumerates all photon vectors of the given length with total at most c.
void for_each_vector(int modes, int c, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> v(modes, 0);
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == modes) {
      f(v);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      v[j] = k;
      rec(j + 1, left - k);
    }
    v[j] = 0;
  };
  rec(0, c);
}

}  // namespace

TEST_CASE("identity and vacuum fixtures") {
  CHECK(amplitude(AmplitudeSpec::identity({0}, {0})) == Complex(1.0, 0.0));
  CHECK(std::abs(amplitude(AmplitudeSpec::identity({2, 1}, {2, 1})) - 1.0) < 1e-12);
  CHECK(std::abs(amplitude(AmplitudeSpec::identity({2, 1}, {1, 2}))) < 1e-12);
  CHECK(amplitude(AmplitudeSpec::identity({}, {})) == Complex(1.0, 0.0));
}

TEST_CASE("squeezed single mode, two photons") {
  for (double lambda : {-1.1, -0.3, 0.25, 0.7, 1.2}) {
    const Complex nu = amplitude(single_mode(2, 0, 0.0, lambda));
    const double expect = std::tanh(lambda) / std::sqrt(2.0 * std::cosh(lambda));
    CHECK(std::abs(nu - expect) < 1e-12);
    CHECK(std::abs(nu - reference(single_mode(2, 0, 0.0, lambda), 80).value) < 1e-10);
  }
}

TEST_CASE("displaced vacuum gives a Poisson law") {
  const Complex alpha(0.9, -0.4);
  const double mean = std::norm(alpha);
  for (int k = 0; k <= 10; ++k) {
    const double p = probability(single_mode(k, 0, alpha, 0.0));
    CHECK(std::abs(p - fockhaf::testing::poisson(mean, k)) < 1e-13);
  }
}

TEST_CASE("doubled problem construction") {
  const DoubledProblem vac = build_doubled(AmplitudeSpec::identity({1, 0}, {0, 0}));
  CHECK(vac.t.cwiseAbs().maxCoeff() == 0.0);
  CHECK(vac.p == std::vector<int>{1, 0, 0, 0});
  CHECK(vac.alpha_tilde.size() == 4);

  const DoubledProblem one = build_doubled(AmplitudeSpec::identity({0}, {1}));
  CHECK(std::abs(one.t(0) - std::asinh(1.0)) < 1e-15);
  CHECK(std::abs(std::pow(std::sinh(one.t(0)), 2) - 1.0) < 1e-12);

  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const AmplitudeSpec s = rng.spec(1 + trial % 3, 3, 1.0, 1.0);
    const DoubledProblem dp = build_doubled(s);
    CHECK(max_abs(dp.factors.reconstruct().E() - dp.map.E()) < 1e-8);
    CHECK(max_abs(dp.factors.reconstruct().F() - dp.map.F()) < 1e-8);
    for (int j = 0; j < s.modes(); ++j) {
      CHECK(dp.alpha_tilde(s.modes() + j) == Complex(0.0, 0.0));
      CHECK(std::abs(std::pow(std::sinh(dp.t(j)), 2) - s.n[j]) < 1e-12);
    }
  }
}

TEST_CASE("B and zeta assembly") {
  BlochMessiahFactors f{CMatrix::Identity(1, 1), RVector::Constant(1, 0.6), CMatrix::Identity(1, 1)};
  BZeta bz = assemble_B_zeta(f, CVector::Zero(1));
  CHECK(std::abs(bz.b(0, 0) - std::tanh(0.6)) < 1e-15);
  CHECK(bz.zeta(0) == Complex(0.0, 0.0));

  Rng rng(12);
  const CMatrix u = rng.unitary(3);
  CVector a(3);
  for (int j = 0; j < 3; ++j) a(j) = rng.disk();
  BlochMessiahFactors flat{u, RVector::Zero(3), rng.unitary(3)};
  bz = assemble_B_zeta(flat, a);
  CHECK(max_abs(bz.b.dense()) == 0.0);
  CHECK(max_abs(bz.zeta - a) == 0.0);

  BlochMessiahFactors random{u, RVector::LinSpaced(3, -0.8, 1.1), rng.unitary(3)};
  bz = assemble_B_zeta(random, a);
  CHECK(max_abs(bz.b.dense() - bz.b.dense().transpose()) < 1e-15);
}

TEST_CASE("prefactors") {
  const AmplitudeSpec vac = AmplitudeSpec::identity({0}, {0});
  const DoubledProblem dv = build_doubled(vac);
  const Prefactors pv = prefactors(vac, dv, assemble_B_zeta(dv.factors, dv.alpha_tilde).b);
  CHECK(std::abs(pv.r() - 1.0) < 1e-15);
  CHECK(std::abs(pv.t() - 1.0) < 1e-15);

  const AmplitudeSpec one = AmplitudeSpec::identity({0}, {1});
  const DoubledProblem d1 = build_doubled(one);
  const Prefactors p1 = prefactors(one, d1, assemble_B_zeta(d1.factors, d1.alpha_tilde).b);
  CHECK(std::abs(p1.r() - 2.0) < 1e-12);

  const AmplitudeSpec big = AmplitudeSpec::identity({20, 20}, {20, 20});
  const DoubledProblem db = build_doubled(big);
  const Prefactors pb = prefactors(big, db, assemble_B_zeta(db.factors, db.alpha_tilde).b);
  CHECK(std::isfinite(pb.log_r));
  CHECK(std::isfinite(pb.t().real()));
  CHECK(std::abs(pb.t()) > 0.0);

  AmplitudeSpec huge = AmplitudeSpec::identity({400}, {0});
  huge.lambda(0) = 0.4;
  const DoubledProblem dh = build_doubled(huge);
  const Prefactors ph = prefactors(huge, dh, assemble_B_zeta(dh.factors, dh.alpha_tilde).b);
  CHECK(std::isfinite(ph.log_t.real()));
}

TEST_CASE("pipeline matches the Fock oracle") {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    const AmplitudeSpec s = rng.spec(1 + trial % 3, 4, 1.2, 1.5);
    const OracleResult r = reference(s);
    CHECK(r.error_bound < 1e-6);
    CHECK(std::abs(amplitude(s) - r.value) <= 1e-8);
  }
}

TEST_CASE("two-mode squeeze parameter is arbitrary") {
  Rng rng(14);
  for (int trial = 0; trial < 8; ++trial) {
    AmplitudeSpec s = rng.spec(2, 3, 1.0, 1.0);
    for (int& x : s.n) x = std::max(x, 1);
    const Complex base = amplitude(s);
    for (double t : {0.35, 0.9, 1.95}) {
      AmplitudeOptions o;
      o.t_override = RVector::Constant(2, t);
      CHECK(rel_err(amplitude(s, o), base) <= 1e-9);
    }
  }
}

TEST_CASE("odd total photon number without displacement vanishes exactly") {
  Rng rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    AmplitudeSpec s = rng.spec(2, 3, 1.0, 0.0);
    s.alpha.setZero();
    if (s.total_photons() % 2 == 0) s.m[0] += 1;
    CHECK(amplitude(s) == Complex(0.0, 0.0));
  }
}

TEST_CASE("real transformations give real amplitudes") {
  Rng rng(16);
  for (int trial = 0; trial < 12; ++trial) {
    AmplitudeSpec s = rng.spec(1 + trial % 3, 3, 1.0, 1.0);
    s.u = rng.orthogonal(s.modes()).cast<Complex>();
    s.uprime = rng.orthogonal(s.modes()).cast<Complex>();
    for (int j = 0; j < s.modes(); ++j) s.alpha(j) = s.alpha(j).real();
    const Complex nu = amplitude(s);
    CHECK(std::abs(nu.imag()) <= 1e-10 * (1.0 + std::abs(nu)));
  }
}

TEST_CASE("adjoint spec gives the conjugate amplitude") {
  Rng rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    const AmplitudeSpec s = rng.spec(1 + trial % 3, 3, 1.0, 1.0);
    const AmplitudeSpec adj = adjoint_spec(s);
    CHECK(adj.m == s.n);
    CHECK(adj.n == s.m);
    CHECK(std::abs(amplitude(adj) - std::conj(amplitude(s))) <= 1e-9);
  }
}

TEST_CASE("probabilities sum to one as the bra cutoff grows") {
  Rng rng(18);
  for (int trial = 0; trial < 3; ++trial) {
    const AmplitudeSpec s = rng.spec(2, 1, 0.4, 0.5);
    const AmplitudeEngine engine(GaussianUnitary::of(s), s.n);
    double last = 0.0;
    double sum = 0.0;
    for (int c = 0; c <= 16; ++c) {
      for_each_vector(2, c, [&](const std::vector<int>& m) {
        if (m[0] + m[1] == c) sum += std::norm(engine(m));
      });
      CHECK(sum >= last - 1e-14);
      CHECK(sum <= 1.0 + 1e-9);
      last = sum;
    }
    CHECK(sum > 1.0 - 1e-4);
  }
}

TEST_CASE("vacuum ket without doubling agrees with the doubled path") {
  Rng rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    AmplitudeSpec s = rng.spec(1 + trial % 3, 4, 1.0, 1.2);
    std::fill(s.n.begin(), s.n.end(), 0);
    AmplitudeOptions direct;
    direct.skip_doubling_for_vacuum_ket = true;
    const AmplitudeEngine e(GaussianUnitary::of(s), s.n, direct);
    CHECK(!e.doubled());
    CHECK(std::abs(amplitude(s, direct) - amplitude(s)) <= 1e-12);
  }
}

TEST_CASE("zero displacement reduces to a hafnian") {
  Rng rng(20);
  for (int trial = 0; trial < 10; ++trial) {
    AmplitudeSpec s = rng.spec(1 + trial % 3, 3, 1.0, 0.0);
    s.alpha.setZero();
    std::fill(s.n.begin(), s.n.end(), 0);
    if (s.total_photons() % 2 == 1) s.m[0] += 1;
    const int l = s.modes();
    const CMatrix b = s.u * s.lambda.array().tanh().matrix().cast<Complex>().asDiagonal() * s.u.transpose();
    std::vector<int> rows;
    for (int j = 0; j < l; ++j)
      for (int r = 0; r < s.m[j]; ++r) rows.push_back(j);
    SymmetricMatrix bbar(static_cast<int>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t k = i + 1; k < rows.size(); ++k) bbar.set(static_cast<int>(i), static_cast<int>(k), b(rows[i], rows[k]));
    double denom = 1.0;
    for (int j = 0; j < l; ++j) denom *= std::tgamma(s.m[j] + 1.0) * std::cosh(s.lambda(j));
    const double expect = std::norm(haf_bruteforce(bbar)) / denom;
    CHECK(std::abs(probability(s) - expect) <= 1e-10 * expect + 1e-300);
  }
}

TEST_CASE("coherent-state amplitudes") {
  CVector a(2);
  a << Complex(0.3, -0.2), Complex(-0.6, 0.1);
  CHECK(std::abs(coherent_amplitude(a, a, CMatrix::Identity(2, 2), RVector::Zero(2)) - 1.0) < 1e-14);

  Rng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix u = rng.unitary(2);
    const RVector lambda = RVector::LinSpaced(2, -0.6, 0.5) * (0.5 + 0.2 * trial);
    CVector alpha(2), beta(2);
    for (int j = 0; j < 2; ++j) {
      alpha(j) = rng.disk(0.8);
      beta(j) = rng.disk(0.8);
    }
    const int c = 40;
    TruncatedState s = TruncatedState::vacuum(2, c);
    for (int j = 0; j < 2; ++j) s = apply_squeeze(s, j, lambda(j));
    s = apply_passive(s, u);
    for (int j = 0; j < 2; ++j) s = apply_displacement(s, j, alpha(j));
    TruncatedState bra = TruncatedState::vacuum(2, c);
    for (int j = 0; j < 2; ++j) bra = apply_displacement(bra, j, beta(j));
    CHECK(std::abs(coherent_amplitude(beta, alpha, u, lambda) - bra.inner(s)) < 1e-8);

    AmplitudeSpec vac;
    vac.m = {0, 0};
    vac.n = {0, 0};
    vac.alpha = alpha;
    vac.u = u;
    vac.lambda = lambda;
    vac.uprime = CMatrix::Identity(2, 2);
    CHECK(std::abs(coherent_amplitude(CVector::Zero(2), alpha, u, lambda) - amplitude(vac)) < 1e-12);
  }
}

TEST_CASE("passive transformations reduce to permanents") {
  Rng rng(22);
  for (int trial = 0; trial < 8; ++trial) {
    AmplitudeSpec s = rng.spec(1 + trial % 3, 3, 0.0, 0.0);
    s.alpha.setZero();
    s.lambda.setZero();
    s.n = s.m;
    std::rotate(s.n.begin(), s.n.begin() + 1, s.n.end());
    const AmplitudeEngine e(GaussianUnitary::of(s), s.n);
    CHECK(e.passive());
    CHECK(std::abs(amplitude(s) - reference(s).value) < 1e-12);
  }
  AmplitudeSpec s = AmplitudeSpec::identity({2, 1}, {1, 1});
  CHECK(amplitude(s) == Complex(0.0, 0.0));
  s.n = {2, 1};
  CHECK(amplitude(s) == Complex(1.0, 0.0));
}

TEST_CASE("invalid specs are rejected") {
  AmplitudeSpec s = AmplitudeSpec::identity({1}, {1});
  s.u(0, 0) = 2.0;
  CHECK_THROWS_AS(amplitude(s), InvalidInput);
  s = AmplitudeSpec::identity({-1}, {1});
  CHECK_THROWS_AS(amplitude(s), InvalidInput);
  s = AmplitudeSpec::identity({30, 1}, {30, 0});
  s.alpha(0) = 0.1;
  CHECK_THROWS_AS(amplitude(s), CapExceeded);
}
