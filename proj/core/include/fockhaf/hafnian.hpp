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

#include <optional>
#include <vector>

#include "fockhaf/common.hpp"
#include "fockhaf/matchgraph.hpp"

namespace fockhaf {

struct KernelOptions {
  /// Workers for the outer subset loop; chunks are merged in chunk order.
  int threads = 1;
  /// Kahan-Neumaier summation of the subset terms.
  bool compensated = false;
  /// Dimension cap; values above hard_limit are refused.
  int max_dim = 50;

  static constexpr int hard_limit = 64;
  static constexpr int max_threads = 256;

  void validate() const;
};

/**
 * Loop hafnian by inclusion-exclusion over the n/2 vertex pairs with power
 * traces of the reduced matrix, O(n^3 2^(n/2)). Odd n is padded with an
 * isolated vertex carrying a unit loop.
 */
Complex lhaf_fast(const SymmetricMatrix& a, const KernelOptions& options = {});

/// Hafnian; the diagonal is ignored and odd n gives 0.
Complex haf_fast(const SymmetricMatrix& a, const KernelOptions& options = {});

/**
 * Exact (loop) hafnian of a matrix of Gaussian integers by a subset recursion
 * in 64-bit integer arithmetic. Empty when an entry is not a Gaussian integer,
 * n exceeds @p max_dim, or an intermediate overflows.
 */
std::optional<Complex> lhaf_integer(const SymmetricMatrix& a, int max_dim = 20);
std::optional<Complex> haf_integer(const SymmetricMatrix& a, int max_dim = 20);

/// Photon multiplicities p_j >= 0 attached to the rows of a base matrix.
class RepetitionVector {
 public:
  RepetitionVector() = default;
  explicit RepetitionVector(std::vector<int> counts);

  int dim() const { return static_cast<int>(counts_.size()); }
  int total() const { return total_; }
  int operator[](int j) const { return counts_[j]; }
  const std::vector<int>& counts() const { return counts_; }

  /// Row j of the base matrix repeated p_j times, in index order.
  std::vector<int> multiset() const;

 private:
  std::vector<int> counts_;
  int total_ = 0;
};

/// B restricted to the multiset rows/columns with zeta placed on the diagonal.
SymmetricMatrix expand_repetition(const SymmetricMatrix& b, const CVector& zeta,
                                  const RepetitionVector& p, const KernelOptions& options = {});

}  // namespace fockhaf
