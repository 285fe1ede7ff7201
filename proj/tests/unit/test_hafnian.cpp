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
#include <numeric>

#include "test_support.hpp"

using namespace fockhaf;
using fockhaf::testing::Rng;

TEST_CASE("G1 through the fast kernels") {
  const SymmetricMatrix g = fockhaf::testing::g1_matrix();
  CHECK(std::abs(lhaf_fast(g) - 2.0) < 1e-12);
  CHECK(std::abs(haf_fast(g) - 1.0) < 1e-12);
}

TEST_CASE("trivial inputs") {
  CHECK(std::abs(lhaf_fast(SymmetricMatrix(6))) == 0.0);
  CHECK(lhaf_fast(SymmetricMatrix(0)) == Complex(1.0, 0.0));
  CHECK(haf_fast(SymmetricMatrix(0)) == Complex(1.0, 0.0));
  Rng rng(1);
  CHECK(haf_fast(rng.symmetric(7)) == Complex(0.0, 0.0));
  SymmetricMatrix one(1);
  one.set(0, 0, Complex(0.5, 2.0));
  CHECK(std::abs(lhaf_fast(one) - Complex(0.5, 2.0)) < 1e-15);
}

TEST_CASE("lhaf_fast matches brute force on random matrices") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 11;
    const SymmetricMatrix a = rng.symmetric(n);
    const Complex fast = lhaf_fast(a);
    const Complex brute = lhaf_bruteforce(a);
    CHECK(std::abs(fast - brute) <= 1e-10 * (1.0 + std::abs(brute)));
  }
}

TEST_CASE("haf_fast matches brute force and the zero-diagonal loop hafnian") {
  Rng rng(7);
  for (int n = 2; n <= 12; n += 2) {
    const SymmetricMatrix a = rng.symmetric(n);
    const Complex h = haf_fast(a);
    const Complex brute = haf_bruteforce(a);
    CHECK(std::abs(h - brute) <= 1e-10 * (1.0 + std::abs(brute)));
    const Complex lz = lhaf_fast(a.with_zero_diagonal());
    CHECK(std::abs(h - lz) <= 1e-12 * std::max(1.0, std::abs(lz)));
  }
}

TEST_CASE("thread count and compensated summation do not change the result") {
  Rng rng(3);
  const SymmetricMatrix a = rng.symmetric(16);
  const Complex base = lhaf_fast(a);
  for (int threads : {2, 3, 8}) {
    KernelOptions o;
    o.threads = threads;
    CHECK(std::abs(lhaf_fast(a, o) - base) <= 1e-12 * std::max(1.0, std::abs(base)));
    o.compensated = true;
    CHECK(std::abs(lhaf_fast(a, o) - base) <= 1e-12 * std::max(1.0, std::abs(base)));
  }
  KernelOptions same;
  same.threads = 4;
  CHECK(lhaf_fast(a, same) == lhaf_fast(a, same));
}

TEST_CASE("kernel caps") {
  KernelOptions o;
  o.max_dim = 8;
  Rng rng(4);
  CHECK_THROWS_AS(lhaf_fast(rng.symmetric(9), o), CapExceeded);
  o.max_dim = 65;
  CHECK_THROWS_AS(lhaf_fast(rng.symmetric(2), o), InvalidInput);
  KernelOptions t;
  t.threads = 0;
  CHECK_THROWS_AS(lhaf_fast(rng.symmetric(2), t), InvalidInput);
}

TEST_CASE("expand_repetition reproduces the block layout for p = (1,3,0,2)") {
  SymmetricMatrix b(4);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) b.set(i, j, Complex(10.0 * (i + 1) + (j + 1), 0.0));
  CVector zeta(4);
  zeta << Complex(1, 1), Complex(2, 2), Complex(3, 3), Complex(4, 4);
  const SymmetricMatrix e = expand_repetition(b, zeta, RepetitionVector({1, 3, 0, 2}));
  REQUIRE(e.size() == 6);
  const int rows[6] = {0, 1, 1, 1, 3, 3};
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const Complex expect = i == j ? zeta(rows[i]) : b(rows[i], rows[j]);
      CHECK(e(i, j) == expect);
    }
  }
}

TEST_CASE("expand_repetition edge cases") {
  Rng rng(5);
  const SymmetricMatrix b = rng.symmetric(3);
  CVector zeta(3);
  zeta << 0.1, 0.2, 0.3;
  const SymmetricMatrix same = expand_repetition(b, zeta, RepetitionVector({1, 1, 1}));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(same(i, j) == (i == j ? zeta(i) : b(i, j)));
  }
  const SymmetricMatrix empty = expand_repetition(b, zeta, RepetitionVector({0, 0, 0}));
  CHECK(empty.size() == 0);
  CHECK(lhaf_fast(empty) == Complex(1.0, 0.0));
  CHECK_THROWS_AS(expand_repetition(b, zeta, RepetitionVector({1, 1})), InvalidInput);
  CHECK_THROWS_AS(RepetitionVector({1, -1}), InvalidInput);
  KernelOptions o;
  o.max_dim = 4;
  CHECK_THROWS_AS(expand_repetition(b, zeta, RepetitionVector({2, 2, 2}), o), CapExceeded);
}

TEST_CASE("repetition expansion is invariant under simultaneous relabelling") {
  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 4;
    const SymmetricMatrix b = rng.symmetric(dim);
    CVector zeta(dim);
    for (int j = 0; j < dim; ++j) zeta(j) = rng.disk();
    const std::vector<int> p = rng.photons(dim, 3);
    std::vector<int> perm(dim);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    CVector zp(dim);
    std::vector<int> pp(dim);
    for (int j = 0; j < dim; ++j) {
      zp(j) = zeta(perm[j]);
      pp[j] = p[perm[j]];
    }
    const Complex a = lhaf_fast(expand_repetition(b, zeta, RepetitionVector(p)));
    const Complex c = lhaf_fast(expand_repetition(b.permuted(perm), zp, RepetitionVector(pp)));
    CHECK(std::abs(a - c) <= 1e-10 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("bipartite identity through the fast kernel") {
  Rng rng(8);
  for (int n = 1; n <= 6; ++n) {
    const CMatrix w = rng.complex_matrix(n);
    const Complex per = permanent(w);
    CHECK(std::abs(lhaf_fast(bipartite_adjacency(w)) - per) <= 1e-10 * std::max(1.0, std::abs(per)));
  }
}

TEST_CASE("exact integer path") {
  const SymmetricMatrix g = fockhaf::testing::g1_matrix();
  CHECK(*lhaf_integer(g) == Complex(2.0, 0.0));
  CHECK(*haf_integer(g) == Complex(1.0, 0.0));
  CHECK(*lhaf_integer(SymmetricMatrix(0)) == Complex(1.0, 0.0));
  CHECK(*haf_integer(SymmetricMatrix(3)) == Complex(0.0, 0.0));

  Rng rng(8);
  for (int n = 1; n <= 12; ++n) {
    SymmetricMatrix a(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) a.set(i, j, Complex(rng.integer(-3, 3), rng.integer(-2, 2)));
    CHECK(*lhaf_integer(a) == lhaf_bruteforce(a));
    CHECK(*haf_integer(a) == haf_bruteforce(a));
  }

  SymmetricMatrix frac(2);
  frac.set(0, 1, 0.5);
  CHECK(!lhaf_integer(frac).has_value());
  CHECK(!lhaf_integer(SymmetricMatrix(22)).has_value());
  SymmetricMatrix big(8);
  for (int i = 0; i < 8; ++i)
    for (int j = i; j < 8; ++j) big.set(i, j, 4.0e15);
  CHECK(!lhaf_integer(big).has_value());
}
