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

#include "fockhaf/vibronic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <thread>

#include <Eigen/Eigenvalues>

namespace fockhaf {

void VibronicModel::validate() const {
  const Eigen::Index l = omega_in.size();
  if (omega_final.size() != l || displacement.size() != l || duschinsky.rows() != l ||
      duschinsky.cols() != l) {
    throw InvalidInput("vibronic model blocks have inconsistent dimensions");
  }
  for (Eigen::Index j = 0; j < l; ++j) {
    if (!(omega_in(j) > 0.0) || !(omega_final(j) > 0.0) || !std::isfinite(omega_in(j)) ||
        !std::isfinite(omega_final(j))) {
      throw InvalidInput("vibrational frequencies must be positive and finite");
    }
    if (!std::isfinite(displacement(j))) throw InvalidInput("displacement must be finite");
  }
  if (!std::isfinite(e_offset)) throw InvalidInput("energy offset must be finite");
  if (max_abs(duschinsky * duschinsky.transpose() - RMatrix::Identity(l, l)) > 1e-8) {
    throw InvalidInput("Duschinsky matrix is not orthogonal");
  }
}

RMatrix VibronicModel::a_matrix() const {
  return omega_final.cwiseSqrt().asDiagonal() * duschinsky * omega_in.cwiseSqrt().cwiseInverse().asDiagonal();
}

VibronicModel VibronicModel::reversed() const {
  VibronicModel r;
  r.omega_in = omega_final;
  r.omega_final = omega_in;
  r.duschinsky = duschinsky.transpose();
  r.displacement = -(omega_in.cwiseSqrt().asDiagonal() * duschinsky.transpose() *
                     omega_final.cwiseSqrt().cwiseInverse().asDiagonal() * displacement);
  r.e_offset = -e_offset;
  return r;
}

NormalModes normal_modes(const RMatrix& hessian) {
  const Eigen::Index n = hessian.rows();
  if (hessian.cols() != n) throw InvalidInput("Hessian must be square");
  const double scale = std::max(1.0, max_abs(hessian));
  if (max_abs(hessian - hessian.transpose()) > 1e-10 * scale) throw InvalidInput("Hessian is not symmetric");
  Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (hessian + hessian.transpose()));
  if (es.info() != Eigen::Success) throw NumericalError("Hessian diagonalization failed");
  const RVector ev = es.eigenvalues();
  RMatrix vec = es.eigenvectors();
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!(ev(j) > 0.0)) throw InvalidInput("Hessian is not positive definite (eigenvalue " + std::to_string(ev(j)) + ")");
  }

  // Degenerate blocks: Gram-Schmidt of the block projector's columns in index order.
  const double degenerate = 1e-10 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (Eigen::Index start = 0; start < n;) {
    Eigen::Index stop = start + 1;
    while (stop < n && ev(stop) - ev(start) <= degenerate) ++stop;
    const Eigen::Index k = stop - start;
    if (k > 1) {
      const RMatrix v = vec.middleCols(start, k);
      const RMatrix proj = v * v.transpose();
      Eigen::Index found = 0;
      for (Eigen::Index c = 0; c < n && found < k; ++c) {
        RVector x = proj.col(c);
        for (Eigen::Index q = 0; q < found; ++q) x -= vec.col(start + q) * vec.col(start + q).dot(x);
        const double nx = x.norm();
        if (nx > 1e-6) vec.col(start + found++) = x / nx;
      }
      if (found < k) throw NumericalError("degenerate normal-mode block lost rank");
    }
    start = stop;
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Index imax = 0;
    vec.col(j).cwiseAbs().maxCoeff(&imax);
    if (vec(imax, j) < 0.0) vec.col(j) *= -1.0;
  }
  return {ev.cwiseSqrt(), vec};
}

VibronicModel model_from_surfaces(const SurfaceData& in, const SurfaceData& final_surface, double e_offset) {
  const Eigen::Index n = in.hessian.rows();
  if (final_surface.hessian.rows() != n || in.geometry.size() != n || final_surface.geometry.size() != n) {
    throw InvalidInput("surface data have inconsistent dimensions");
  }
  const NormalModes mi = normal_modes(in.hessian);
  const NormalModes mf = normal_modes(final_surface.hessian);
  VibronicModel model;
  model.omega_in = mi.omega;
  model.omega_final = mf.omega;
  model.duschinsky = mf.vectors.transpose() * mi.vectors;
  model.displacement = mf.omega.cwiseSqrt().asDiagonal() * (mf.vectors.transpose() * (in.geometry - final_surface.geometry));
  model.e_offset = e_offset;
  return model;
}

AmplitudeSpec fcf_amplitude_spec(const VibronicModel& model, const std::vector<int>& n, const std::vector<int>& m) {
  model.validate();
  const DoktorovFactorization dk = doktorov_factorize(model.a_matrix(), model.displacement);
  AmplitudeSpec spec;
  spec.m = m;
  spec.n = n;
  spec.alpha = (dk.d / std::sqrt(2.0)).cast<Complex>();
  spec.u = dk.o_left.cast<Complex>();
  spec.lambda = dk.l.array().log().matrix();
  spec.uprime = dk.o_right.transpose().cast<Complex>();
  return spec;
}

namespace {

double real_fcf(Complex nu) {
  if (std::abs(nu.imag()) > 1e-10 * (1.0 + std::abs(nu))) {
    throw NumericalError("Franck-Condon amplitude has an imaginary part " + std::to_string(nu.imag()));
  }
  return nu.real();
}

AmplitudeEngine make_fcf_engine(const VibronicModel& model, const std::vector<int>& n,
                                const AmplitudeOptions& options) {
  if (static_cast<int>(n.size()) != model.modes()) throw InvalidInput("initial quanta length does not match the model");
  const AmplitudeSpec spec = fcf_amplitude_spec(model, n, std::vector<int>(n.size(), 0));
  return AmplitudeEngine(GaussianUnitary::of(spec), n, options);
}

}  // namespace

double fcf(const VibronicModel& model, const std::vector<int>& n, const std::vector<int>& m,
           const AmplitudeOptions& options) {
  return FcfEvaluator(model, n, options)(m);
}

FcfEvaluator::FcfEvaluator(const VibronicModel& model, std::vector<int> n, const AmplitudeOptions& options)
    : engine_(make_fcf_engine(model, n, options)) {}

double FcfEvaluator::operator()(const std::vector<int>& m) const { return real_fcf(engine_(m)); }

std::vector<std::vector<int>> quanta_up_to(int modes, int max_total) {
  if (modes < 0 || max_total < 0) throw InvalidInput("quanta enumeration needs non-negative arguments");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(modes, 0);
  std::function<void(int, int)> fill = [&](int j, int left) {
    if (j == modes - 1) {
      cur[j] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[j] = k;
      fill(j + 1, left - k);
    }
  };
  for (int total = 0; total <= max_total; ++total) {
    if (modes == 0) {
      if (total == 0) out.push_back({});
      continue;
    }
    fill(0, total);
  }
  return out;
}

Spectrum spectrum(const VibronicModel& model, const std::vector<int>& n, int max_total_quanta, double threshold,
                  const SpectrumOptions& options) {
  if (max_total_quanta < 0) throw InvalidInput("max total quanta must be non-negative");
  if (options.threads < 1 || options.threads > KernelOptions::max_threads) throw InvalidInput("invalid thread count");
  const FcfEvaluator eval(model, n, options.amplitude);
  const std::vector<std::vector<int>> finals = quanta_up_to(model.modes(), max_total_quanta);
  std::vector<double> intensity(finals.size());

  const int workers = static_cast<int>(std::min<std::size_t>(options.threads, std::max<std::size_t>(1, finals.size())));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](int w) {
    try {
      for (std::size_t k = w; k < finals.size(); k += workers) {
        const double f = eval(finals[k]);
        intensity[k] = f * f;
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  double shift = model.e_offset;
  for (int j = 0; j < model.modes(); ++j) shift -= n[j] * model.omega_in(j);
  Spectrum out;
  out.evaluated = finals.size();
  for (std::size_t k = 0; k < finals.size(); ++k) {
    out.total_intensity += intensity[k];
    if (intensity[k] < threshold) continue;
    double e = shift;
    for (int j = 0; j < model.modes(); ++j) e += finals[k][j] * model.omega_final(j);
    out.lines.push_back({e, intensity[k], finals[k]});
  }
  std::stable_sort(out.lines.begin(), out.lines.end(), [](const SpectrumLine& a, const SpectrumLine& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.final_quanta < b.final_quanta;
  });
  return out;
}

}  // namespace fockhaf
