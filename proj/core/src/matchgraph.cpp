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

#include "fockhaf/matchgraph.hpp"

#include <bit>
#include <limits>
#include <string>

namespace fockhaf {

SymmetricMatrix::SymmetricMatrix(Eigen::Index n) : m_(CMatrix::Zero(n, n)) {
  if (n < 0) throw InvalidInput("negative matrix dimension");
}

SymmetricMatrix SymmetricMatrix::from_dense(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw InvalidInput("matrix is " + std::to_string(m.rows()) + "x" +
                       std::to_string(m.cols()) + ", expected square");
  }
  const double asym = max_abs(m - m.transpose());
  if (!(asym <= tol)) {
    throw InvalidInput("matrix is not symmetric (max |G_ij - G_ji| = " +
                       std::to_string(asym) + ")");
  }
  return symmetrized(m);
}

SymmetricMatrix SymmetricMatrix::symmetrized(const CMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("matrix is not square");
  SymmetricMatrix s;
  s.m_ = 0.5 * (m + m.transpose());
  return s;
}

void SymmetricMatrix::set(Eigen::Index i, Eigen::Index j, Complex v) {
  m_(i, j) = v;
  m_(j, i) = v;
}

SymmetricMatrix SymmetricMatrix::with_zero_diagonal() const {
  SymmetricMatrix s = *this;
  s.m_.diagonal().setZero();
  return s;
}

SymmetricMatrix SymmetricMatrix::permuted(std::span<const int> perm) const {
  const Eigen::Index n = size();
  if (static_cast<Eigen::Index>(perm.size()) != n) throw InvalidInput("permutation length mismatch");
  SymmetricMatrix s(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) s.m_(i, j) = m_(perm[i], perm[j]);
  return s;
}

int EnumerationLimits::cap(bool allow_loops) const {
  const int c = allow_loops ? max_vertices_loops : max_vertices_loopless;
  if (c < 0 || c > hard_limit) {
    throw InvalidInput("enumeration cap " + std::to_string(c) + " outside [0, " +
                       std::to_string(hard_limit) + "]");
  }
  return c;
}

namespace {

void check_cap(int n, bool allow_loops, const EnumerationLimits& limits) {
  if (n < 0) throw InvalidInput("negative vertex count");
  const int c = limits.cap(allow_loops);
  if (n > c) {
    throw CapExceeded("n = " + std::to_string(n) + " exceeds the enumeration cap " +
                      std::to_string(c) + (allow_loops ? " (with loops)" : " (loopless)"));
  }
}

class MatchingWalker {
 public:
  MatchingWalker(bool loops, const std::function<void(const Matching&)>& visit)
      : loops_(loops), visit_(visit) {}

  void run(std::uint32_t remaining) {
    if (remaining == 0) {
      visit_(current_);
      return;
    }
    const int i = std::countr_zero(remaining);
    const std::uint32_t rest = remaining & (remaining - 1);
    if (loops_) {
      current_.pairs.emplace_back(i, i);
      run(rest);
      current_.pairs.pop_back();
    }
    for (std::uint32_t r = rest; r != 0; r &= r - 1) {
      const int j = std::countr_zero(r);
      current_.pairs.emplace_back(i, j);
      run(rest & ~(std::uint32_t{1} << j));
      current_.pairs.pop_back();
    }
  }

 private:
  bool loops_;
  const std::function<void(const Matching&)>& visit_;
  Matching current_;
};

std::uint64_t count_matchings(std::uint32_t remaining, bool loops) {
  if (remaining == 0) return 1;
  const std::uint32_t rest = remaining & (remaining - 1);
  std::uint64_t total = loops ? count_matchings(rest, loops) : 0;
  for (std::uint32_t r = rest; r != 0; r &= r - 1) {
    total += count_matchings(rest & ~(r & -r), loops);
  }
  return total;
}

// Same recursion as the enumeration; the loop weight is skipped when loops are off.
Complex matching_sum(const CMatrix& a, std::uint32_t remaining, bool loops) {
  if (remaining == 0) return Complex(1.0, 0.0);
  const int i = std::countr_zero(remaining);
  const std::uint32_t rest = remaining & (remaining - 1);
  Complex sum = loops ? a(i, i) * matching_sum(a, rest, loops) : Complex(0.0, 0.0);
  for (std::uint32_t r = rest; r != 0; r &= r - 1) {
    const int j = std::countr_zero(r);
    sum += a(i, j) * matching_sum(a, rest & ~(std::uint32_t{1} << j), loops);
  }
  return sum;
}

std::uint32_t full_mask(int n) {
  return n == 0 ? 0u : (n >= 32 ? ~0u : ((std::uint32_t{1} << n) - 1));
}

}  // namespace

void for_each_perfect_matching(int n, bool allow_loops,
                               const std::function<void(const Matching&)>& visit,
                               const EnumerationLimits& limits) {
  check_cap(n, allow_loops, limits);
  if (!allow_loops && n % 2 == 1) return;
  MatchingWalker walker(allow_loops, visit);
  walker.run(full_mask(n));
}

std::vector<Matching> enumerate_perfect_matchings(int n, bool allow_loops,
                                                  const EnumerationLimits& limits) {
  std::vector<Matching> out;
  for_each_perfect_matching(n, allow_loops, [&](const Matching& m) { out.push_back(m); }, limits);
  return out;
}

std::uint64_t pmp_count(int n) {
  if (n < 0) throw InvalidInput("negative vertex count");
  if (n % 2 == 1) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t k = 3; k < static_cast<std::uint64_t>(n); k += 2) {
    if (r > std::numeric_limits<std::uint64_t>::max() / k) {
      throw std::overflow_error("pmp_count(" + std::to_string(n) + ") overflows 64 bits");
    }
    r *= k;
  }
  return r;
}

std::uint64_t spm_count(int n, const EnumerationLimits& limits) {
  check_cap(n, true, limits);
  return count_matchings(full_mask(n), true);
}

Complex haf_bruteforce(const SymmetricMatrix& a, const EnumerationLimits& limits) {
  const int n = static_cast<int>(a.size());
  check_cap(n, false, limits);
  if (n % 2 == 1) return Complex(0.0, 0.0);
  return matching_sum(a.dense(), full_mask(n), false);
}

Complex lhaf_bruteforce(const SymmetricMatrix& a, const EnumerationLimits& limits) {
  const int n = static_cast<int>(a.size());
  check_cap(n, true, limits);
  return matching_sum(a.dense(), full_mask(n), true);
}

Complex permanent(const CMatrix& w, const PermanentLimits& limits) {
  if (w.rows() != w.cols()) throw InvalidInput("permanent needs a square matrix");
  if (limits.max_dim < 0 || limits.max_dim > PermanentLimits::hard_limit) {
    throw InvalidInput("permanent cap outside [0, " + std::to_string(PermanentLimits::hard_limit) + "]");
  }
  const int n = static_cast<int>(w.rows());
  if (n > limits.max_dim) {
    throw CapExceeded("n = " + std::to_string(n) + " exceeds the permanent cap " +
                      std::to_string(limits.max_dim));
  }
  if (n == 0) return Complex(1.0, 0.0);

  CVector rowsum = CVector::Zero(n);
  Complex total(0.0, 0.0);
  const std::uint64_t subsets = std::uint64_t{1} << n;
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const int j = std::countr_zero(k);
    gray ^= std::uint64_t{1} << j;
    if (gray & (std::uint64_t{1} << j)) {
      rowsum += w.col(j);
    } else {
      rowsum -= w.col(j);
    }
    Complex prod = rowsum.prod();
    if (std::popcount(gray) % 2 == 1) prod = -prod;
    total += prod;
  }
  return n % 2 == 1 ? -total : total;
}

SymmetricMatrix bipartite_adjacency(const CMatrix& w) {
  if (w.rows() != w.cols()) throw InvalidInput("bipartite block needs a square matrix");
  const Eigen::Index n = w.rows();
  CMatrix g = CMatrix::Zero(2 * n, 2 * n);
  g.topRightCorner(n, n) = w;
  g.bottomLeftCorner(n, n) = w.transpose();
  return SymmetricMatrix::symmetrized(g);
}

}  // namespace fockhaf
