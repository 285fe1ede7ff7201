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
#include "fockhaf/gaussian.hpp"
#include "fockhaf/hafnian.hpp"
#include "fockhaf/matchgraph.hpp"

namespace fockhaf {

/// nu = <m| D(alpha) U(U) S(lambda) U(U') |n>.
struct AmplitudeSpec {
  std::vector<int> m;
  std::vector<int> n;
  CVector alpha;
  CMatrix u;
  RVector lambda;
  CMatrix uprime;

  int modes() const { return static_cast<int>(m.size()); }
  int total_photons() const;
  void validate(double tol = Tolerances{}.constraint) const;

  /// Zero displacement, identity passives, no squeezing.
  static AmplitudeSpec identity(std::vector<int> m, std::vector<int> n);
};

/// The photon-independent part of a spec: W = D(alpha) U(U) S(lambda) U(U').
struct GaussianUnitary {
  CVector alpha;
  CMatrix u;
  RVector lambda;
  CMatrix uprime;

  int modes() const { return static_cast<int>(lambda.size()); }
  static GaussianUnitary of(const AmplitudeSpec& spec);
  AmplitudeSpec with_photons(std::vector<int> m, std::vector<int> n) const;
};

struct DoubledProblem {
  /// (m_1..m_l, n_1..n_l).
  std::vector<int> p;
  CVector alpha_tilde;
  RVector t;
  GaussianMap map;
  BlochMessiahFactors factors;
};

/**
 * Mode-doubled problem. @p t_override replaces asinh(sqrt(n_j)); entries must
 * be nonzero where n_j > 0.
 */
DoubledProblem build_doubled(const AmplitudeSpec& spec,
                             const std::optional<RVector>& t_override = std::nullopt,
                             const Tolerances& tol = {});

struct BZeta {
  SymmetricMatrix b;
  CVector zeta;
};

/// B = U tanh(lambda) U^T, zeta = alpha - B conj(alpha).
BZeta assemble_B_zeta(const BlochMessiahFactors& factors, const CVector& alpha_tilde);

/// R and T kept as logarithms until the final product.
struct Prefactors {
  double log_r = 0.0;
  Complex log_t{0.0, 0.0};

  double r() const;
  Complex t() const;
};

Prefactors prefactors(const AmplitudeSpec& spec, const DoubledProblem& doubled,
                      const SymmetricMatrix& b);

struct AmplitudeOptions {
  KernelOptions kernel;
  Tolerances tolerances;
  /// For n = 0, run Bloch-Messiah on the l-mode map instead of doubling.
  bool skip_doubling_for_vacuum_ket = false;
  std::optional<RVector> t_override;
};

/**
 * Fixed Gaussian unitary and ket photons; the factored map is computed once
 * and shared by every bra evaluated through it. Immutable after construction.
 */
class AmplitudeEngine {
 public:
  AmplitudeEngine(const GaussianUnitary& w, std::vector<int> n, const AmplitudeOptions& options = {});

  Complex operator()(const std::vector<int>& m) const;

  int modes() const { return modes_; }
  const std::vector<int>& ket() const { return n_; }
  bool doubled() const { return doubled_; }
  bool passive() const { return passive_; }
  const BZeta& b_zeta() const { return bz_; }
  const BlochMessiahFactors& factors() const { return factors_; }

 private:
  Complex passive_amplitude(const std::vector<int>& m, int total) const;

  int modes_;
  std::vector<int> n_;
  AmplitudeOptions options_;
  bool doubled_;
  bool alpha_zero_;
  /// No squeezing and no displacement: nu is a scaled permanent of U U'.
  bool passive_;
  CMatrix passive_u_;
  BlochMessiahFactors factors_;
  BZeta bz_;
  double log_r_;
  Complex log_t_base_;
  double log_cosh_sum_;
};

Complex amplitude(const AmplitudeSpec& spec, const AmplitudeOptions& options = {});
double probability(const AmplitudeSpec& spec, const AmplitudeOptions& options = {});

/// <beta| D(alpha) U(U) S(lambda) |0>.
Complex coherent_amplitude(const CVector& beta, const CVector& alpha, const CMatrix& u,
                           const RVector& lambda);

/// The spec of W^dagger with bra and ket swapped: amplitude(adj) = conj(amplitude(spec)).
AmplitudeSpec adjoint_spec(const AmplitudeSpec& spec);

/// log cosh x without overflow.
double log_cosh(double x);

}  // namespace fockhaf
