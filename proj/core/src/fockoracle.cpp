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

#include "fockhaf/fockoracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace fockhaf {

TruncatedState::TruncatedState(int modes, int cutoff) : modes_(modes), cutoff_(cutoff) {
  if (modes < 0) throw InvalidInput("negative mode count");
  if (cutoff < 1 || cutoff > OracleOptions::max_cutoff) {
    throw InvalidInput("cutoff must lie in [1, " + std::to_string(OracleOptions::max_cutoff) + "]");
  }
  std::int64_t total = 1;
  strides_.assign(modes, 1);
  for (int j = modes - 1; j >= 0; --j) {
    strides_[j] = total;
    if (total > max_amplitudes / cutoff) {
      throw CapExceeded("cutoff^modes exceeds the oracle memory guard of 2^24 amplitudes");
    }
    total *= cutoff;
  }
  amp_.assign(total, Complex(0.0, 0.0));
}

TruncatedState TruncatedState::vacuum(int modes, int cutoff) {
  TruncatedState s(modes, cutoff);
  s.amp_[0] = 1.0;
  return s;
}

TruncatedState TruncatedState::fock(const std::vector<int>& photons, int cutoff) {
  TruncatedState s(static_cast<int>(photons.size()), cutoff);
  s.amp_[s.index_of(photons)] = 1.0;
  return s;
}

std::int64_t TruncatedState::index_of(const std::vector<int>& photons) const {
  if (static_cast<int>(photons.size()) != modes_) throw InvalidInput("photon vector length mismatch");
  std::int64_t flat = 0;
  for (int j = 0; j < modes_; ++j) {
    if (photons[j] < 0 || photons[j] >= cutoff_) {
      throw InvalidInput("photon number " + std::to_string(photons[j]) + " outside the cutoff " +
                         std::to_string(cutoff_));
    }
    flat += photons[j] * strides_[j];
  }
  return flat;
}

std::vector<int> TruncatedState::photons_of(std::int64_t flat) const {
  std::vector<int> k(modes_);
  for (int j = 0; j < modes_; ++j) {
    k[j] = static_cast<int>(flat / strides_[j]);
    flat %= strides_[j];
  }
  return k;
}

Complex TruncatedState::at(const std::vector<int>& photons) const { return amp_[index_of(photons)]; }

double TruncatedState::norm() const {
  double s = 0.0;
  for (const Complex& a : amp_) s += std::norm(a);
  return std::sqrt(s);
}

double TruncatedState::leakage() const {
  const double n = norm();
  return std::max(0.0, 1.0 - n * n);
}

Complex TruncatedState::inner(const TruncatedState& ket) const {
  if (ket.modes_ != modes_ || ket.cutoff_ != cutoff_) throw InvalidInput("inner product of incompatible states");
  Complex s(0.0, 0.0);
  for (std::size_t i = 0; i < amp_.size(); ++i) s += std::conj(amp_[i]) * ket.amp_[i];
  return s;
}

CMatrix displacement_matrix(Complex alpha, int cutoff) {
  CMatrix d = CMatrix::Zero(cutoff, cutoff);
  d(0, 0) = std::exp(-0.5 * std::norm(alpha));
  for (int k = 1; k < cutoff; ++k) d(k, 0) = d(k - 1, 0) * alpha / std::sqrt(static_cast<double>(k));
  // D a^dag = (a^dag - conj(alpha)) D
  const Complex ac = std::conj(alpha);
  for (int n = 1; n < cutoff; ++n) {
    const double inv = 1.0 / std::sqrt(static_cast<double>(n));
    for (int k = 0; k < cutoff; ++k) {
      Complex v = -ac * d(k, n - 1);
      if (k > 0) v += std::sqrt(static_cast<double>(k)) * d(k - 1, n - 1);
      d(k, n) = v * inv;
    }
  }
  return d;
}

CMatrix squeeze_matrix(double lambda, int cutoff) {
  // Normal-ordered form exp(t/2 a^dag^2) cosh^-(N+1/2) exp(-t/2 a^2), summed
  // term by term in extended precision. Column recurrences are unstable here.
  using Real = long double;
  const Real th = std::tanh(static_cast<Real>(lambda));
  const Real log_ch = std::log(std::cosh(static_cast<Real>(lambda)));
  const Real log_half_t = std::log(std::abs(th) / 2);
  const bool negative = th < 0;
  std::vector<Real> lf(cutoff + 1);
  for (int k = 0; k <= cutoff; ++k) lf[k] = std::lgamma(static_cast<Real>(k) + 1);
  CMatrix s = CMatrix::Zero(cutoff, cutoff);
  for (int m = 0; m < cutoff; ++m) {
    for (int n = m % 2; n < cutoff; n += 2) {
      Real sum = 0;
      for (int k = m % 2; k <= std::min(m, n); k += 2) {
        const int j = (m - k) / 2;
        const int i = (n - k) / 2;
        if (th == 0 && i + j > 0) continue;
        Real log_term = (lf[m] + lf[n]) / 2 - lf[k] - lf[i] - lf[j] - (k + Real(0.5)) * log_ch;
        if (i + j > 0) log_term += (i + j) * log_half_t;
        const bool flip = (i % 2 == 1) != (negative && (i + j) % 2 == 1);
        sum += flip ? -std::exp(log_term) : std::exp(log_term);
      }
      s(m, n) = static_cast<double>(sum);
    }
  }
  return s;
}

TruncatedState apply_single_mode(const TruncatedState& state, int mode, const CMatrix& op) {
  const int c = state.cutoff();
  if (mode < 0 || mode >= state.modes()) throw InvalidInput("mode index out of range");
  if (op.rows() != c || op.cols() != c) throw InvalidInput("operator does not match the cutoff");
  TruncatedState out(state.modes(), c);
  const std::int64_t s = state.stride(mode);
  const std::int64_t block = s * c;
  CVector v(c);
  for (std::int64_t base = 0; base < state.size(); base += block) {
    for (std::int64_t inner = 0; inner < s; ++inner) {
      bool any = false;
      for (int k = 0; k < c; ++k) {
        v(k) = state[base + k * s + inner];
        any = any || v(k) != Complex(0.0, 0.0);
      }
      if (!any) continue;
      const CVector w = op * v;
      for (int k = 0; k < c; ++k) out[base + k * s + inner] = w(k);
    }
  }
  return out;
}

TruncatedState apply_displacement(const TruncatedState& state, int mode, Complex alpha) {
  return apply_single_mode(state, mode, displacement_matrix(alpha, state.cutoff()));
}

TruncatedState apply_squeeze(const TruncatedState& state, int mode, double lambda) {
  return apply_single_mode(state, mode, squeeze_matrix(lambda, state.cutoff()));
}

namespace {

std::vector<std::int64_t> rest_offsets(const TruncatedState& state, const std::vector<int>& skip) {
  std::vector<std::int64_t> out;
  for (std::int64_t flat = 0; flat < state.size(); ++flat) {
    const std::vector<int> k = state.photons_of(flat);
    bool ok = true;
    for (int m : skip) ok = ok && k[m] == 0;
    if (ok) out.push_back(flat);
  }
  return out;
}

}  // namespace

TruncatedState apply_two_mode_squeeze(const TruncatedState& state, int i, int j, double t) {
  if (i == j || i < 0 || j < 0 || i >= state.modes() || j >= state.modes()) {
    throw InvalidInput("two-mode squeezer needs two distinct valid modes");
  }
  const int c = state.cutoff();
  const std::int64_t si = state.stride(i);
  const std::int64_t sj = state.stride(j);
  const std::vector<std::int64_t> rest = rest_offsets(state, {i, j});
  TruncatedState out(state.modes(), c);

  using Real = long double;
  const Real th = std::tanh(static_cast<Real>(t));
  const Real log_ch = std::log(std::cosh(static_cast<Real>(t)));
  const Real log_t = std::log(std::abs(th));
  const bool negative = th < 0;
  std::vector<Real> lf(2 * c + 1);
  for (int k = 0; k <= 2 * c; ++k) lf[k] = std::lgamma(static_cast<Real>(k) + 1);

  // <x,y|T|p,q> from exp(t a^dag b^dag) cosh^-(Na+Nb+1) exp(-t a b); x - y = p - q.
  std::vector<double> cur;
  for (int p = 0; p < c; ++p) {
    for (int q = 0; q < c; ++q) {
      const std::int64_t src = p * si + q * sj;
      bool any = false;
      for (std::int64_t off : rest) any = any || state[off + src] != Complex(0.0, 0.0);
      if (!any) continue;
      const int delta = p - q;
      const int dx = std::max(delta, 0);
      const int dy = std::max(-delta, 0);
      cur.assign(c - std::max(dx, dy), 0.0);
      for (int r = 0; r < static_cast<int>(cur.size()); ++r) {
        const int x = r + dx;
        const int y = r + dy;
        Real sum = 0;
        for (int k = std::max(0, p - x); k <= std::min(p, q); ++k) {
          const int j = x - p + k;
          if (th == 0 && j + k > 0) continue;
          Real log_term = (lf[x] + lf[y] + lf[p] + lf[q]) / 2 - lf[p - k] - lf[q - k] - lf[k] - lf[j] -
                          (p + q - 2 * k + 1) * log_ch;
          if (j + k > 0) log_term += (j + k) * log_t;
          const bool flip = (k % 2 == 1) != (negative && (j + k) % 2 == 1);
          sum += flip ? -std::exp(log_term) : std::exp(log_term);
        }
        cur[r] = static_cast<double>(sum);
      }
      for (std::int64_t off : rest) {
        const Complex in = state[off + src];
        if (in == Complex(0.0, 0.0)) continue;
        for (int r = 0; r < static_cast<int>(cur.size()); ++r) {
          out[off + (r + dx) * si + (r + dy) * sj] += cur[r] * in;
        }
      }
    }
  }
  return out;
}

TruncatedState apply_passive(const TruncatedState& state, const CMatrix& u) {
  const int l = state.modes();
  const int c = state.cutoff();
  if (!is_unitary(u, 1e-8) || u.rows() != l) throw InvalidInput("passive transformation must be unitary and match the modes");

  // Group basis states by total photon number.
  const int max_total = l * (c - 1);
  std::vector<std::vector<std::int64_t>> members(max_total + 1);
  std::vector<int> position(state.size());
  std::vector<int> total_of(state.size());
  int top = -1;
  for (std::int64_t flat = 0; flat < state.size(); ++flat) {
    const std::vector<int> k = state.photons_of(flat);
    int tot = 0;
    for (int x : k) tot += x;
    total_of[flat] = tot;
    position[flat] = static_cast<int>(members[tot].size());
    members[tot].push_back(flat);
    if (state[flat] != Complex(0.0, 0.0)) top = std::max(top, tot);
  }

  TruncatedState out(l, c);
  if (top < 0) return out;

  // Columns of sector N from those of N - 1: U|k> = (sum_i U_il a_i^dag) U|k - e_l> / sqrt(k_l).
  CMatrix prev = CMatrix::Ones(1, 1);
  for (int sector = 0; sector <= top; ++sector) {
    const auto& mem = members[sector];
    const auto dim = static_cast<Eigen::Index>(mem.size());
    CMatrix cur;
    if (sector == 0) {
      cur = prev;
    } else {
      cur = CMatrix::Zero(dim, dim);
      for (Eigen::Index col = 0; col < dim; ++col) {
        const std::vector<int> k = state.photons_of(mem[col]);
        int lm = 0;
        while (k[lm] == 0) ++lm;
        const std::int64_t lower = mem[col] - state.stride(lm);
        const Eigen::Index pc = position[lower];
        const double scale = 1.0 / std::sqrt(static_cast<double>(k[lm]));
        const auto& pmem = members[sector - 1];
        for (std::size_t row = 0; row < pmem.size(); ++row) {
          const Complex v = prev(static_cast<Eigen::Index>(row), pc);
          if (v == Complex(0.0, 0.0)) continue;
          const std::vector<int> kr = state.photons_of(pmem[row]);
          for (int i = 0; i < l; ++i) {
            if (kr[i] + 1 >= c) continue;
            const std::int64_t target = pmem[row] + state.stride(i);
            cur(position[target], col) += u(i, lm) * std::sqrt(kr[i] + 1.0) * v * scale;
          }
        }
      }
    }
    CVector in(dim);
    bool any = false;
    for (Eigen::Index a = 0; a < dim; ++a) {
      in(a) = state[mem[a]];
      any = any || in(a) != Complex(0.0, 0.0);
    }
    if (any) {
      const CVector res = cur * in;
      for (Eigen::Index a = 0; a < dim; ++a) out[mem[a]] = res(a);
    }
    prev = std::move(cur);
  }
  return out;
}

TruncatedState apply_annihilation(const TruncatedState& state, int mode) {
  if (mode < 0 || mode >= state.modes()) throw InvalidInput("mode index out of range");
  TruncatedState out(state.modes(), state.cutoff());
  const std::int64_t s = state.stride(mode);
  for (std::int64_t flat = 0; flat < state.size(); ++flat) {
    const int k = static_cast<int>((flat / s) % state.cutoff());
    if (k > 0) out[flat - s] += std::sqrt(static_cast<double>(k)) * state[flat];
  }
  return out;
}

namespace {

void check_oracle_spec(const AmplitudeSpec& spec, const OracleOptions& options) {
  spec.validate(1e-8);
  if (options.cutoff < 1 || options.cutoff > OracleOptions::max_cutoff) {
    throw InvalidInput("oracle cutoff must lie in [1, " + std::to_string(OracleOptions::max_cutoff) + "]");
  }
  const int top = std::max(*std::max_element(spec.m.begin(), spec.m.end()),
                           *std::max_element(spec.n.begin(), spec.n.end()));
  if (options.cutoff <= top) {
    throw InvalidInput("oracle cutoff " + std::to_string(options.cutoff) +
                       " must exceed the largest photon number " + std::to_string(top));
  }
}

}  // namespace

OracleResult oracle_amplitude(const AmplitudeSpec& spec, const OracleOptions& options) {
  if (spec.modes() == 0) return {Complex(1.0, 0.0), 0.0, 0.0, 0.0, false};
  check_oracle_spec(spec, options);
  const int l = spec.modes();
  const int c = options.cutoff;

  TruncatedState ket = apply_passive(TruncatedState::fock(spec.n, c), spec.uprime);
  for (int j = 0; j < l; ++j) ket = apply_squeeze(ket, j, spec.lambda(j));

  // U^dag D(-alpha) = D(-U^dag alpha) U^dag
  const CMatrix ua = spec.u.adjoint();
  const CVector beta = ua * spec.alpha;
  TruncatedState bra = apply_passive(TruncatedState::fock(spec.m, c), ua);
  for (int j = 0; j < l; ++j) bra = apply_displacement(bra, j, -beta(j));

  OracleResult r;
  r.value = bra.inner(ket);
  r.leakage_bra = bra.leakage();
  r.leakage_ket = ket.leakage();
  r.error_bound = std::sqrt(r.leakage_bra * r.leakage_ket);
  r.flagged = r.error_bound > options.leakage_threshold;
  return r;
}

OracleResult oracle_amplitude_forward(const AmplitudeSpec& spec, const OracleOptions& options) {
  if (spec.modes() == 0) return {Complex(1.0, 0.0), 0.0, 0.0, 0.0, false};
  check_oracle_spec(spec, options);
  const int l = spec.modes();
  const int c = options.cutoff;

  double bound = 0.0;
  double last = 1.0;
  auto track = [&](const TruncatedState& s) {
    const double n2 = s.norm() * s.norm();
    bound += std::sqrt(std::max(0.0, last - n2));
    last = n2;
  };
  TruncatedState s = apply_passive(TruncatedState::fock(spec.n, c), spec.uprime);
  track(s);
  for (int j = 0; j < l; ++j) {
    s = apply_squeeze(s, j, spec.lambda(j));
    track(s);
  }
  s = apply_passive(s, spec.u);
  track(s);
  for (int j = 0; j < l; ++j) {
    s = apply_displacement(s, j, spec.alpha(j));
    track(s);
  }
  OracleResult r;
  r.value = s.at(spec.m);
  r.leakage_ket = s.leakage();
  r.error_bound = bound;
  r.flagged = r.error_bound > options.leakage_threshold;
  return r;
}

}  // namespace fockhaf
