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

#include <vector>

#include "fockhaf/common.hpp"

namespace fockhaf {

/**
 * @brief Heisenberg action of a Gaussian unitary W:
 *   W^dagger a_i W = sum_j E_ij a_j + F_ij a_j^dagger + delta_i.
 */
class GaussianMap {
 public:
  GaussianMap() = default;
  GaussianMap(CMatrix e, CMatrix f, CVector delta);

  static GaussianMap identity(int modes);

  int modes() const { return static_cast<int>(e_.rows()); }
  const CMatrix& E() const { return e_; }
  const CMatrix& F() const { return f_; }
  const CVector& delta() const { return delta_; }

  /// max(|E E^dag - F F^dag - I|, |E F^T - F E^T|), entrywise.
  double constraint_residual() const;
  bool satisfies_invariants(double tol = Tolerances{}.constraint) const;

  /// The map of W^dagger.
  GaussianMap inverse() const;

 private:
  CMatrix e_, f_;
  CVector delta_;
};

GaussianMap displacement_map(const CVector& alpha);
GaussianMap squeeze_map(const RVector& lambda);
/// exp(t (a_i^dag a_j^dag - a_i a_j)) on a register of @p modes modes.
GaussianMap two_mode_squeeze_map(int modes, double t, int i, int j);
GaussianMap passive_map(const CMatrix& u, double tol = Tolerances{}.constraint);

/// The map of the operator product W1 W2, with W1 = first and W2 = second.
GaussianMap compose(const GaussianMap& first, const GaussianMap& second);

/// Operator product W1 W2 ... Wk of the listed maps.
GaussianMap compose_all(const std::vector<GaussianMap>& factors);

/// Embeds @p m into modes [offset, offset + m.modes()) of a larger register.
GaussianMap embed(const GaussianMap& m, int modes, int offset);

/// U(U) S(lambda) U(U'), lambda sorted descending and non-negative.
struct BlochMessiahFactors {
  CMatrix u;
  RVector lambda;
  CMatrix uprime;

  int modes() const { return static_cast<int>(lambda.size()); }
  GaussianMap reconstruct() const;
};

BlochMessiahFactors bloch_messiah(const GaussianMap& m, const Tolerances& tol = {});

/// Action on (R, P) with R = (a + a^dag)/sqrt2, P = (a - a^dag)/(i sqrt2):
/// W^dag (R; P) W = S (R; P) + shift.
struct QuadratureAction {
  RMatrix s;
  RVector shift;
};

QuadratureAction to_quadrature(const GaussianMap& m);

/**
 * Factorization of the Gaussian unitary acting as R -> A R + d.
 * A = O_L diag(l) O_R^T; W = D(d/sqrt2) U(O_L) S(log l) U(O_R^T).
 */
struct DoktorovFactorization {
  RMatrix o_left;
  RVector l;
  RMatrix o_right;
  RVector d;

  /// Factors in operator-product order: D(d/sqrt2), U(O_L), S(log l), U(O_R^T).
  std::vector<GaussianMap> factors() const;
  GaussianMap composed() const;
};

DoktorovFactorization doktorov_factorize(const RMatrix& a, const RVector& d,
                                         const Tolerances& tol = {});

/// True when u u^dag = I within @p tol (entrywise).
bool is_unitary(const CMatrix& u, double tol = Tolerances{}.constraint);

}  // namespace fockhaf
