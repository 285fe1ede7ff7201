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
#include <vector>

#include "fockhaf/amplitude.hpp"
#include "fockhaf/common.hpp"

namespace fockhaf {

/**
 * @brief Multimode state truncated to photon numbers 0..cutoff-1 per mode.
 * Flat index: mode 0 is the most significant digit in base `cutoff`.
 */
class TruncatedState {
 public:
  /// c^l above this many amplitudes is refused.
  static constexpr std::int64_t max_amplitudes = std::int64_t{1} << 24;

  TruncatedState(int modes, int cutoff);

  static TruncatedState vacuum(int modes, int cutoff);
  static TruncatedState fock(const std::vector<int>& photons, int cutoff);

  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  std::int64_t size() const { return static_cast<std::int64_t>(amp_.size()); }

  Complex& operator[](std::int64_t flat) { return amp_[flat]; }
  Complex operator[](std::int64_t flat) const { return amp_[flat]; }
  Complex at(const std::vector<int>& photons) const;

  std::int64_t index_of(const std::vector<int>& photons) const;
  std::vector<int> photons_of(std::int64_t flat) const;
  /// Stride of mode j in the flat index.
  std::int64_t stride(int mode) const { return strides_[mode]; }

  double norm() const;
  /// 1 - norm^2, clamped at 0.
  double leakage() const;
  Complex inner(const TruncatedState& ket) const;

 private:
  int modes_;
  int cutoff_;
  std::vector<std::int64_t> strides_;
  std::vector<Complex> amp_;
};

/// <j|D(alpha)|k> for j, k < cutoff, exact matrix elements.
CMatrix displacement_matrix(Complex alpha, int cutoff);
/// <j|S(lambda)|k> for j, k < cutoff, exact matrix elements.
CMatrix squeeze_matrix(double lambda, int cutoff);

TruncatedState apply_single_mode(const TruncatedState& state, int mode, const CMatrix& op);
TruncatedState apply_displacement(const TruncatedState& state, int mode, Complex alpha);
TruncatedState apply_squeeze(const TruncatedState& state, int mode, double lambda);
TruncatedState apply_two_mode_squeeze(const TruncatedState& state, int i, int j, double t);
/// U(U) with U(U) a_l^dag U(U)^dag = sum_i U_il a_i^dag, applied per photon-number sector.
TruncatedState apply_passive(const TruncatedState& state, const CMatrix& u);
/// a_mode, truncated.
TruncatedState apply_annihilation(const TruncatedState& state, int mode);

struct OracleOptions {
  int cutoff = 18;
  /// Results whose error bound exceeds this are flagged.
  double leakage_threshold = 1e-8;
  static constexpr int max_cutoff = 512;
};

struct OracleResult {
  Complex value;
  /// Norm deficits of the two truncated half-states.
  double leakage_bra = 0.0;
  double leakage_ket = 0.0;
  /// sqrt(leakage_bra * leakage_ket): bound on |value - exact|.
  double error_bound = 0.0;
  bool flagged = false;
};

/**
 * <m| D U S U' |n> as the overlap of S U' |n> with U^dag D(-alpha) |m>,
 * each built in the truncated space.
 */
OracleResult oracle_amplitude(const AmplitudeSpec& spec, const OracleOptions& options = {});

/// Applies U', S, U, D in sequence to |n> and reads off the m component.
OracleResult oracle_amplitude_forward(const AmplitudeSpec& spec, const OracleOptions& options = {});

}  // namespace fockhaf
