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

#include "fockhaf/amplitude.hpp"
#include "fockhaf/common.hpp"
#include "fockhaf/gaussian.hpp"

namespace fockhaf {

/// 1 hartree in cm^-1.
inline constexpr double kHartreeToCm1 = 219474.6313632;

/**
 * Two harmonic surfaces in frequency-weighted normal coordinates:
 * q_final = O_D q_in + d after scaling by the square-root frequencies.
 */
struct VibronicModel {
  RVector omega_in;
  RVector omega_final;
  RMatrix duschinsky;
  RVector displacement;
  double e_offset = 0.0;

  int modes() const { return static_cast<int>(omega_in.size()); }
  void validate() const;

  /// A = Omega_final^(1/2) O_D Omega_in^(-1/2).
  RMatrix a_matrix() const;
  /// The same pair of surfaces with the roles of initial and final swapped.
  VibronicModel reversed() const;
};

struct SurfaceData {
  RMatrix hessian;
  RVector geometry;
};

struct NormalModes {
  RVector omega;
  RMatrix vectors;
};

/// H = O diag(omega^2) O^T, ascending, largest-magnitude component of each vector positive.
NormalModes normal_modes(const RMatrix& hessian);

VibronicModel model_from_surfaces(const SurfaceData& in, const SurfaceData& final_surface,
                                  double e_offset = 0.0);

/// <m_final| W |n_in> as an amplitude problem; W = D(d/sqrt2) U(O_L) S(log l) U(O_R^T).
AmplitudeSpec fcf_amplitude_spec(const VibronicModel& model, const std::vector<int>& n,
                                 const std::vector<int>& m);

/// Overlap of final-surface state m with initial-surface state n.
double fcf(const VibronicModel& model, const std::vector<int>& n, const std::vector<int>& m,
           const AmplitudeOptions& options = {});

/// FCFs out of a fixed initial state; the factored map is built once.
class FcfEvaluator {
 public:
  FcfEvaluator(const VibronicModel& model, std::vector<int> n, const AmplitudeOptions& options = {});
  double operator()(const std::vector<int>& m) const;

 private:
  AmplitudeEngine engine_;
};

struct SpectrumLine {
  double energy;
  double intensity;
  std::vector<int> final_quanta;
};

struct Spectrum {
  /// Lines at or above the threshold, sorted by energy.
  std::vector<SpectrumLine> lines;
  /// Sum of all intensities, including those below the threshold.
  double total_intensity = 0.0;
  std::size_t evaluated = 0;
};

struct SpectrumOptions {
  AmplitudeOptions amplitude;
  /// Workers for the map over final states.
  int threads = 1;
};

/// Every final state with sum(m) <= max_total_quanta; energies in the model's units.
Spectrum spectrum(const VibronicModel& model, const std::vector<int>& n, int max_total_quanta,
                  double threshold, const SpectrumOptions& options = {});

/// All vectors of @p modes non-negative integers with sum <= @p max_total, graded order.
std::vector<std::vector<int>> quanta_up_to(int modes, int max_total);

}  // namespace fockhaf
