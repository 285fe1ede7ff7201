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

#include "fockhaf/hafnian.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>

namespace fockhaf {

void KernelOptions::validate() const {
  if (threads < 1 || threads > max_threads) {
    throw InvalidInput("threads must lie in [1, " + std::to_string(max_threads) + "]");
  }
  if (max_dim < 0 || max_dim > hard_limit) {
    throw InvalidInput("kernel cap must lie in [0, " + std::to_string(hard_limit) + "]");
  }
}

namespace {

// Neumaier summation, real and imaginary parts independently.
class Accumulator {
 public:
  explicit Accumulator(bool compensated) : compensated_(compensated) {}

  void add(Complex x) {
    if (!compensated_) {
      sum_ += x;
      return;
    }
    re_ = step(re_, re_c_, x.real());
    im_ = step(im_, im_c_, x.imag());
  }

  void merge(const Accumulator& other) {
    add(other.value());
  }

  Complex value() const {
    return compensated_ ? Complex(re_ + re_c_, im_ + im_c_) : sum_;
  }

 private:
  static double step(double s, double& c, double x) {
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    return t;
  }

  bool compensated_;
  Complex sum_{0.0, 0.0};
  double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

class PowerTraceKernel {
 public:
  PowerTraceKernel(const CMatrix& a, bool loops) : a_(a), loops_(loops), m_(a.rows() / 2) {}

  // Signed contribution of the pair subset encoded by the bits of `s`.
  Complex term(std::uint64_t s) const {
    const int k = std::popcount(s);
    if (k == 0) return Complex(0.0, 0.0);
    const int dim = 2 * k;
    idx_.resize(dim);
    int pos = 0;
    for (std::uint64_t r = s; r != 0; r &= r - 1) {
      const int pair = std::countr_zero(r);
      idx_[pos++] = 2 * pair;
      idx_[pos++] = 2 * pair + 1;
    }
    ax_.resize(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) ax_(r, c) = a_(idx_[r], idx_[c ^ 1]);

    solver_.compute(ax_, false);
    if (solver_.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed in lhaf kernel");
    const CVector& ev = solver_.eigenvalues();

    fac_.assign(m_ + 1, Complex(0.0, 0.0));
    pw_ = ev;
    for (int i = 1; i <= m_; ++i) {
      fac_[i] = pw_.sum() / static_cast<double>(2 * i);
      if (i < m_) pw_ = pw_.cwiseProduct(ev);
    }
    if (loops_) {
      xd_.resize(dim);
      dd_.resize(dim);
      for (int c = 0; c < dim; ++c) {
        xd_(c) = a_(idx_[c ^ 1], idx_[c ^ 1]);
        dd_(c) = a_(idx_[c], idx_[c]);
      }
      for (int i = 1; i <= m_; ++i) {
        fac_[i] += 0.5 * xd_.cwiseProduct(dd_).sum();
        if (i < m_) xd_ = (xd_.transpose() * ax_).transpose();
      }
    }

    // Coefficient of eta^m in exp(sum_i fac_i eta^i).
    ex_.assign(m_ + 1, Complex(0.0, 0.0));
    ex_[0] = 1.0;
    for (int q = 1; q <= m_; ++q) {
      Complex acc(0.0, 0.0);
      for (int i = 1; i <= q; ++i) acc += static_cast<double>(i) * fac_[i] * ex_[q - i];
      ex_[q] = acc / static_cast<double>(q);
    }
    return (m_ - k) % 2 == 1 ? -ex_[m_] : ex_[m_];
  }

  int pairs() const { return m_; }

 private:
  const CMatrix& a_;
  bool loops_;
  int m_;
  // Scratch, one kernel object per worker.
  mutable std::vector<int> idx_;
  mutable CMatrix ax_;
  mutable Eigen::ComplexEigenSolver<CMatrix> solver_;
  mutable CVector pw_, xd_, dd_;
  mutable std::vector<Complex> fac_, ex_;
};

Complex run_kernel(const CMatrix& a, bool loops, const KernelOptions& options) {
  const int m = static_cast<int>(a.rows() / 2);
  if (m == 0) return Complex(1.0, 0.0);
  const std::uint64_t subsets = std::uint64_t{1} << m;
  const int workers = static_cast<int>(std::min<std::uint64_t>(options.threads, subsets));

  std::vector<Accumulator> partial(workers, Accumulator(options.compensated));
  auto work = [&](int w) {
    const std::uint64_t lo = subsets * w / workers;
    const std::uint64_t hi = subsets * (w + 1) / workers;
    PowerTraceKernel kernel(a, loops);
    for (std::uint64_t s = lo; s < hi; ++s) partial[w].add(kernel.term(s));
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  Accumulator total(options.compensated);
  for (const auto& p : partial) total.merge(p);
  return total.value();
}

void check_kernel_cap(Eigen::Index n, const KernelOptions& options) {
  options.validate();
  if (n > options.max_dim) {
    throw CapExceeded("matrix dimension " + std::to_string(n) + " exceeds the kernel cap " +
                      std::to_string(options.max_dim));
  }
}

}  // namespace

Complex lhaf_fast(const SymmetricMatrix& a, const KernelOptions& options) {
  check_kernel_cap(a.size(), options);
  const Eigen::Index n = a.size();
  if (n % 2 == 0) return run_kernel(a.dense(), true, options);
  CMatrix padded = CMatrix::Zero(n + 1, n + 1);
  padded.topLeftCorner(n, n) = a.dense();
  padded(n, n) = 1.0;
  return run_kernel(padded, true, options);
}

Complex haf_fast(const SymmetricMatrix& a, const KernelOptions& options) {
  check_kernel_cap(a.size(), options);
  if (a.size() % 2 == 1) return Complex(0.0, 0.0);
  return run_kernel(a.with_zero_diagonal().dense(), false, options);
}

namespace {

struct GaussInt {
  std::int64_t re = 0;
  std::int64_t im = 0;
};

bool mul_add(GaussInt& acc, GaussInt x, GaussInt y) {
  std::int64_t rr, ii, ri, ir, re, im;
  if (__builtin_mul_overflow(x.re, y.re, &rr) || __builtin_mul_overflow(x.im, y.im, &ii) ||
      __builtin_mul_overflow(x.re, y.im, &ri) || __builtin_mul_overflow(x.im, y.re, &ir) ||
      __builtin_sub_overflow(rr, ii, &re) || __builtin_add_overflow(ri, ir, &im) ||
      __builtin_add_overflow(acc.re, re, &acc.re) || __builtin_add_overflow(acc.im, im, &acc.im)) {
    return false;
  }
  return true;
}

std::optional<Complex> integer_kernel(const SymmetricMatrix& a, bool loops, int max_dim) {
  const int n = a.size();
  if (n > max_dim || n > 30) return std::nullopt;
  constexpr double kLimit = 9.0e15;
  std::vector<GaussInt> g(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex z = a(i, j);
      if (z.real() != std::round(z.real()) || z.imag() != std::round(z.imag()) || std::abs(z.real()) > kLimit ||
          std::abs(z.imag()) > kLimit) {
        return std::nullopt;
      }
      g[i * n + j] = {static_cast<std::int64_t>(z.real()), static_cast<std::int64_t>(z.imag())};
    }
  }
  if (!loops && n % 2 == 1) return Complex(0.0, 0.0);
  // f[S] sums the matchings of vertex set S; the lowest vertex is matched first.
  const std::uint32_t full = (1u << n) - 1u;
  std::vector<GaussInt> f(static_cast<std::size_t>(full) + 1);
  f[0] = {1, 0};
  for (std::uint32_t s = 1; s <= full; ++s) {
    const int i = std::countr_zero(s);
    const std::uint32_t rest = s & (s - 1);
    GaussInt acc;
    if (loops && !mul_add(acc, g[i * n + i], f[rest])) return std::nullopt;
    for (std::uint32_t r = rest; r != 0; r &= r - 1) {
      const int j = std::countr_zero(r);
      if (!mul_add(acc, g[i * n + j], f[rest & ~(1u << j)])) return std::nullopt;
    }
    f[s] = acc;
  }
  return Complex(static_cast<double>(f[full].re), static_cast<double>(f[full].im));
}

}  // namespace

std::optional<Complex> lhaf_integer(const SymmetricMatrix& a, int max_dim) { return integer_kernel(a, true, max_dim); }

std::optional<Complex> haf_integer(const SymmetricMatrix& a, int max_dim) { return integer_kernel(a, false, max_dim); }

RepetitionVector::RepetitionVector(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int c : counts_) {
    if (c < 0) throw InvalidInput("repetition counts must be non-negative");
    total_ += c;
  }
}

std::vector<int> RepetitionVector::multiset() const {
  std::vector<int> rows;
  rows.reserve(total_);
  for (int j = 0; j < dim(); ++j)
    for (int r = 0; r < counts_[j]; ++r) rows.push_back(j);
  return rows;
}

SymmetricMatrix expand_repetition(const SymmetricMatrix& b, const CVector& zeta,
                                  const RepetitionVector& p, const KernelOptions& options) {
  if (b.size() != zeta.size() || b.size() != p.dim()) {
    throw InvalidInput("expand_repetition: B is " + std::to_string(b.size()) + ", zeta has " +
                       std::to_string(zeta.size()) + " entries, p has " + std::to_string(p.dim()));
  }
  check_kernel_cap(p.total(), options);
  const std::vector<int> rows = p.multiset();
  const int total = p.total();
  SymmetricMatrix out(total);
  for (int i = 0; i < total; ++i) {
    for (int j = i + 1; j < total; ++j) out.set(i, j, b(rows[i], rows[j]));
    out.set(i, i, zeta(rows[i]));
  }
  return out;
}

}  // namespace fockhaf
