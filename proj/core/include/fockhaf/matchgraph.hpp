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

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "fockhaf/common.hpp"

namespace fockhaf {

/**
 * @brief Complex symmetric matrix; the weighted adjacency matrix of a graph
 * with loops. Symmetry is exact: every write updates both triangles.
 */
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(Eigen::Index n);

  /// Rejects input whose asymmetry exceeds @p tol, then symmetrizes.
  static SymmetricMatrix from_dense(const CMatrix& m, double tol = 1e-12);
  /// (m + m^T)/2 without any check.
  static SymmetricMatrix symmetrized(const CMatrix& m);

  Eigen::Index size() const { return m_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  void set(Eigen::Index i, Eigen::Index j, Complex v);
  const CMatrix& dense() const { return m_; }

  SymmetricMatrix with_zero_diagonal() const;
  /// Result(i, j) = this(perm[i], perm[j]).
  SymmetricMatrix permuted(std::span<const int> perm) const;

 private:
  CMatrix m_;
};

/// A vertex pair (i, j) with i <= j; i == j is a loop.
using Edge = std::pair<int, int>;

struct Matching {
  std::vector<Edge> pairs;

  bool operator==(const Matching&) const = default;
};

struct EnumerationLimits {
  int max_vertices_loopless = 16;
  int max_vertices_loops = 14;
  /// Hard bound on the configurable caps (bitmask width and sanity).
  static constexpr int hard_limit = 30;

  int cap(bool allow_loops) const;
};

/**
 * Visits every perfect matching of the complete graph on @p n vertices,
 * recursing on the lowest unmatched vertex: loop first (if allowed), then
 * pairs with each higher vertex in increasing order.
 */
void for_each_perfect_matching(int n, bool allow_loops,
                               const std::function<void(const Matching&)>& visit,
                               const EnumerationLimits& limits = {});

std::vector<Matching> enumerate_perfect_matchings(int n, bool allow_loops,
                                                  const EnumerationLimits& limits = {});

/// (n-1)!! for even n, 0 for odd n; throws std::overflow_error past 64 bits.
std::uint64_t pmp_count(int n);

/// Number of perfect matchings with loops, counted by enumeration.
std::uint64_t spm_count(int n, const EnumerationLimits& limits = {});

Complex haf_bruteforce(const SymmetricMatrix& a, const EnumerationLimits& limits = {});
Complex lhaf_bruteforce(const SymmetricMatrix& a, const EnumerationLimits& limits = {});

struct PermanentLimits {
  int max_dim = 24;
  static constexpr int hard_limit = 40;
};

/// Ryser inclusion-exclusion over Gray-code ordered column subsets.
Complex permanent(const CMatrix& w, const PermanentLimits& limits = {});

/// The bipartite block matrix [[0, W], [W^T, 0]].
SymmetricMatrix bipartite_adjacency(const CMatrix& w);

}  // namespace fockhaf
