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
#include <numeric>
#include <set>

#include "test_support.hpp"

using namespace fockhaf;
using fockhaf::testing::Rng;

namespace {

std::set<std::vector<Edge>> as_set(const std::vector<Matching>& ms) {
  std::set<std::vector<Edge>> out;
  for (const auto& m : ms) {
    auto p = m.pairs;
    std::sort(p.begin(), p.end());
    out.insert(p);
  }
  return out;
}

// 1-based listing to 0-based edges.
std::vector<Edge> edges(std::initializer_list<Edge> one_based) {
  std::vector<Edge> e;
  for (auto [i, j] : one_based) e.emplace_back(i - 1, j - 1);
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace

TEST_CASE("PMP(4) is the three pairings") {
  const auto ms = enumerate_perfect_matchings(4, false);
  CHECK(ms.size() == 3);
  const std::set<std::vector<Edge>> expected{edges({{1, 2}, {3, 4}}), edges({{1, 3}, {2, 4}}),
                                             edges({{1, 4}, {2, 3}})};
  CHECK(as_set(ms) == expected);
}

TEST_CASE("SPM(4) has the ten listed matchings") {
  const auto ms = enumerate_perfect_matchings(4, true);
  CHECK(ms.size() == 10);
  const std::set<std::vector<Edge>> expected{
      edges({{1, 2}, {3, 4}}),         edges({{1, 3}, {2, 4}}),         edges({{1, 4}, {2, 3}}),
      edges({{1, 1}, {2, 2}, {3, 4}}), edges({{1, 1}, {3, 3}, {2, 4}}), edges({{1, 1}, {4, 4}, {2, 3}}),
      edges({{2, 2}, {3, 3}, {1, 4}}), edges({{2, 2}, {4, 4}, {1, 3}}), edges({{3, 3}, {4, 4}, {1, 2}}),
      edges({{1, 1}, {2, 2}, {3, 3}, {4, 4}})};
  CHECK(as_set(ms) == expected);
}

TEST_CASE("odd vertex counts") {
  CHECK(enumerate_perfect_matchings(3, false).empty());
  const std::set<std::vector<Edge>> expected{edges({{1, 1}, {2, 3}}), edges({{2, 2}, {1, 3}}),
                                             edges({{3, 3}, {1, 2}}), edges({{1, 1}, {2, 2}, {3, 3}})};
  CHECK(as_set(enumerate_perfect_matchings(3, true)) == expected);
}

TEST_CASE("empty graph has one empty matching") {
  const auto ms = enumerate_perfect_matchings(0, false);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].pairs.empty());
  CHECK(enumerate_perfect_matchings(0, true).size() == 1);
}

TEST_CASE("matchings are perfect and duplicate-free") {
  for (bool loops : {false, true}) {
    for (int n = 0; n <= 8; ++n) {
      const auto ms = enumerate_perfect_matchings(n, loops);
      CHECK(as_set(ms).size() == ms.size());
      for (const auto& m : ms) {
        std::vector<int> seen(n, 0);
        for (auto [i, j] : m.pairs) {
          CHECK(i <= j);
          if (!loops) CHECK(i != j);
          ++seen[i];
          if (i != j) ++seen[j];
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
      }
    }
  }
}

TEST_CASE("pmp_count") {
  CHECK(pmp_count(0) == 1);
  CHECK(pmp_count(4) == 3);
  CHECK(pmp_count(6) == 15);
  CHECK(pmp_count(5) == 0);
  CHECK(pmp_count(14) == 135135);
  CHECK_THROWS_AS(pmp_count(80), std::overflow_error);
}

TEST_CASE("spm_count") {
  CHECK(spm_count(0) == 1);
  CHECK(spm_count(2) == 2);
  CHECK(spm_count(3) == 4);
  CHECK(spm_count(4) == 10);
  CHECK_THROWS_AS(spm_count(15), CapExceeded);
  EnumerationLimits wide;
  wide.max_vertices_loops = 16;
  CHECK(spm_count(15, wide) > 0);
}

TEST_CASE("enumeration sizes match the counters for n <= 14") {
  for (int n = 0; n <= 14; ++n) {
    std::uint64_t loopless = 0;
    for_each_perfect_matching(n, false, [&](const Matching&) { ++loopless; });
    CHECK(loopless == pmp_count(n));
    std::uint64_t looped = 0;
    for_each_perfect_matching(n, true, [&](const Matching&) { ++looped; });
    CHECK(looped == spm_count(n));
  }
}

TEST_CASE("loop-matching growth ratio tracks exp(sqrt(n) - 1/4)/2") {
  const std::uint64_t known[] = {9496, 140152, 2390480};
  int idx = 0;
  for (int n : {10, 12, 14}) {
    const double ratio = static_cast<double>(spm_count(n)) / static_cast<double>(pmp_count(n));
    const double model = std::exp(std::sqrt(static_cast<double>(n)) - 0.25) / 2.0;
    CHECK(spm_count(n) == known[idx++]);
    CHECK(std::abs(ratio / model - 1.0) < 0.15);
  }
}

TEST_CASE("caps are configuration values") {
  CHECK_THROWS_AS(enumerate_perfect_matchings(17, false), CapExceeded);
  CHECK_THROWS_AS(enumerate_perfect_matchings(15, true), CapExceeded);
  EnumerationLimits tight;
  tight.max_vertices_loopless = 4;
  CHECK_THROWS_AS(enumerate_perfect_matchings(6, false, tight), CapExceeded);
  EnumerationLimits absurd;
  absurd.max_vertices_loopless = 100;
  CHECK_THROWS_AS(enumerate_perfect_matchings(2, false, absurd), InvalidInput);
}

TEST_CASE("G1 hafnians") {
  const SymmetricMatrix g = fockhaf::testing::g1_matrix();
  CHECK(haf_bruteforce(g) == Complex(1.0, 0.0));
  CHECK(lhaf_bruteforce(g) == Complex(2.0, 0.0));
}

TEST_CASE("small hafnian cases") {
  SymmetricMatrix a(2);
  const Complex w(0.3, -1.2);
  a.set(0, 1, w);
  CHECK(haf_bruteforce(a) == w);
  CHECK(haf_bruteforce(SymmetricMatrix(0)) == Complex(1.0, 0.0));
  CHECK(lhaf_bruteforce(SymmetricMatrix(0)) == Complex(1.0, 0.0));
  CHECK(haf_bruteforce(SymmetricMatrix(3)) == Complex(0.0, 0.0));

  SymmetricMatrix diag(4);
  Complex prod(1.0, 0.0);
  for (int i = 0; i < 4; ++i) {
    const Complex z(0.5 + i, 0.25 * i);
    diag.set(i, i, z);
    prod *= z;
  }
  CHECK(std::abs(lhaf_bruteforce(diag) - prod) < 1e-14);

  CMatrix ones = CMatrix::Ones(4, 4);
  CHECK(lhaf_bruteforce(SymmetricMatrix::from_dense(ones)) == Complex(10.0, 0.0));
}

TEST_CASE("zeroing the diagonal turns lhaf into haf exactly") {
  Rng rng(11);
  for (int n = 0; n <= 12; ++n) {
    const SymmetricMatrix a = rng.symmetric(n);
    CHECK(lhaf_bruteforce(a.with_zero_diagonal()) == haf_bruteforce(a));
  }
}

TEST_CASE("lhaf is permutation invariant") {
  Rng rng(12);
  for (int n = 1; n <= 9; ++n) {
    const SymmetricMatrix a = rng.symmetric(n);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    const Complex base = lhaf_bruteforce(a);
    CHECK(std::abs(lhaf_bruteforce(a.permuted(perm)) - base) <= 1e-12 * std::max(1.0, std::abs(base)));
  }
}

TEST_CASE("permanent basics") {
  CHECK(permanent(CMatrix::Identity(5, 5)) == Complex(1.0, 0.0));
  CHECK(permanent(CMatrix::Ones(2, 2)) == Complex(2.0, 0.0));
  CHECK(permanent(CMatrix(0, 0)) == Complex(1.0, 0.0));
  CHECK(std::abs(permanent(CMatrix::Ones(4, 4)) - 24.0) < 1e-12);
  CHECK_THROWS_AS(permanent(CMatrix::Ones(2, 3)), InvalidInput);
  PermanentLimits small;
  small.max_dim = 3;
  CHECK_THROWS_AS(permanent(CMatrix::Ones(4, 4), small), CapExceeded);
}

TEST_CASE("permanent against the Leibniz sum") {
  Rng rng(13);
  for (int n = 1; n <= 6; ++n) {
    const CMatrix w = rng.complex_matrix(n);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Complex leibniz(0.0, 0.0);
    do {
      Complex p(1.0, 0.0);
      for (int i = 0; i < n; ++i) p *= w(i, perm[i]);
      leibniz += p;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(std::abs(permanent(w) - leibniz) <= 1e-12 * (1.0 + std::abs(leibniz)));
  }
}

TEST_CASE("bipartite identity with brute-force hafnians") {
  Rng rng(14);
  for (int n = 1; n <= 6; ++n) {
    const CMatrix w = rng.complex_matrix(n);
    const SymmetricMatrix g = bipartite_adjacency(w);
    const Complex per = permanent(w);
    CHECK(std::abs(lhaf_bruteforce(g) - per) <= 1e-10 * std::max(1.0, std::abs(per)));
    CHECK(std::abs(haf_bruteforce(g) - per) <= 1e-10 * std::max(1.0, std::abs(per)));
  }
}

TEST_CASE("symmetric matrix validation") {
  CMatrix m = CMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(SymmetricMatrix::from_dense(m), InvalidInput);
  m(1, 0) = 1.0 + 5e-13;
  CHECK_NOTHROW(SymmetricMatrix::from_dense(m));
  CHECK_THROWS_AS(SymmetricMatrix::from_dense(CMatrix::Zero(2, 3)), InvalidInput);
  SymmetricMatrix s(3);
  s.set(0, 2, Complex(1.0, 2.0));
  CHECK(s(2, 0) == Complex(1.0, 2.0));
}
