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

#include "fockhaf/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fockhaf/fockhaf.hpp"
#include "fockhaf/io.hpp"

namespace fockhaf::cli {
namespace {

struct RunConfig {
  std::string input;
  std::string output;
  int threads = 1;
  bool verify = false;
  double tolerance = 1e-6;
  double symmetry_tolerance = 1e-12;
  int max_dim = KernelOptions{}.max_dim;
  bool compensated = false;
  int cutoff = 40;
  std::string n;
  std::string m;
  int max_quanta = 6;
  double threshold = 1e-10;
};

KernelOptions kernel_options(const RunConfig& c) {
  KernelOptions k;
  k.threads = c.threads;
  k.max_dim = c.max_dim;
  k.compensated = c.compensated;
  k.validate();
  return k;
}

std::vector<int> parse_quanta(const std::string& text, int modes, const char* name) {
  if (text.empty()) return std::vector<int>(modes, 0);
  std::vector<int> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int x = 0;
    try {
      x = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || x < 0) {
      throw InvalidInput(std::string("--") + name + ": expected comma-separated non-negative integers");
    }
    v.push_back(x);
  }
  if (static_cast<int>(v.size()) != modes) {
    throw InvalidInput(std::string("--") + name + " needs " + std::to_string(modes) + " entries");
  }
  return v;
}

// Prints the reference and the difference; the caller's exit code depends on it.
int report_verify(std::ostream& out, const RunConfig& c, Complex value, Complex reference) {
  const double diff = std::abs(value - reference);
  out << "reference " << io::format_complex(reference) << '\n';
  out << "difference " << io::format_real(diff) << '\n';
  return diff > c.tolerance ? kVerifyMismatch : kOk;
}

int cmd_hafnian(const RunConfig& c, bool loops, std::ostream& out) {
  const SymmetricMatrix a = io::parse_symmetric_matrix(io::read_file(c.input), c.symmetry_tolerance);
  const KernelOptions k = kernel_options(c);
  // Integer matrices up to the subset-recursion size are evaluated exactly.
  const int exact_cap = std::min(20, k.max_dim);
  const std::optional<Complex> exact = loops ? lhaf_integer(a, exact_cap) : haf_integer(a, exact_cap);
  const Complex v = exact ? *exact : (loops ? lhaf_fast(a, k) : haf_fast(a, k));
  out << io::format_complex(v) << '\n';
  if (!c.verify) return kOk;
  return report_verify(out, c, v, loops ? lhaf_bruteforce(a) : haf_bruteforce(a));
}

int cmd_permanent(const RunConfig& c, std::ostream& out) {
  const CMatrix w = io::parse_matrix(io::read_file(c.input));
  const Complex v = permanent(w);
  out << io::format_complex(v) << '\n';
  if (!c.verify) return kOk;
  return report_verify(out, c, v, lhaf_fast(bipartite_adjacency(w), kernel_options(c)));
}

OracleOptions oracle_options(const RunConfig& c) {
  OracleOptions o;
  o.cutoff = c.cutoff;
  return o;
}

int cmd_amplitude(const RunConfig& c, std::ostream& out) {
  const AmplitudeSpec spec = io::parse_amplitude_spec(io::read_file(c.input));
  AmplitudeOptions opt;
  opt.kernel = kernel_options(c);
  const Complex v = amplitude(spec, opt);
  out << io::format_complex(v) << '\n';
  if (!c.verify) return kOk;
  const OracleResult r = oracle_amplitude(spec, oracle_options(c));
  const int code = report_verify(out, c, v, r.value);
  out << "oracle_error_bound " << io::format_real(r.error_bound) << '\n';
  return code;
}

int cmd_fcf(const RunConfig& c, std::ostream& out) {
  const VibronicModel model = io::parse_vibronic_model(io::read_file(c.input));
  const std::vector<int> n = parse_quanta(c.n, model.modes(), "n");
  const std::vector<int> m = parse_quanta(c.m, model.modes(), "m");
  AmplitudeOptions opt;
  opt.kernel = kernel_options(c);
  const double v = fcf(model, n, m, opt);
  out << io::format_real(v) << '\n';
  if (!c.verify) return kOk;
  const OracleResult r = oracle_amplitude(fcf_amplitude_spec(model, n, m), oracle_options(c));
  const int code = report_verify(out, c, v, r.value);
  out << "oracle_error_bound " << io::format_real(r.error_bound) << '\n';
  return code;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const VibronicModel model = io::parse_vibronic_model(io::read_file(c.input));
  const std::vector<int> n = parse_quanta(c.n, model.modes(), "n");
  if (c.max_quanta < 0) throw InvalidInput("--max-quanta must be non-negative");
  SpectrumOptions opt;
  opt.amplitude.kernel = kernel_options(c);
  opt.threads = c.threads;
  const Spectrum s = spectrum(model, n, c.max_quanta, c.threshold, opt);
  if (c.verify) {
    // Spot-checks the strongest line against the oracle.
    const auto best = std::max_element(s.lines.begin(), s.lines.end(),
                                       [](const SpectrumLine& a, const SpectrumLine& b) { return a.intensity < b.intensity; });
    if (best != s.lines.end()) {
      const OracleResult r = oracle_amplitude(fcf_amplitude_spec(model, n, best->final_quanta), oracle_options(c));
      const double diff = std::abs(best->intensity - std::norm(r.value));
      err << "verify strongest line difference " << io::format_real(diff) << '\n';
      if (diff > c.tolerance) return kVerifyMismatch;
    }
  }
  if (c.output.empty()) {
    io::write_spectrum_csv(out, s);
  } else {
    std::ofstream file(c.output, std::ios::binary);
    if (!file) throw InvalidInput("cannot write " + c.output);
    io::write_spectrum_csv(file, s);
  }
  err << "lines " << s.lines.size() << " evaluated " << s.evaluated << " total_intensity "
      << io::format_real(s.total_intensity) << '\n';
  return kOk;
}

void add_common(CLI::App* sub, RunConfig& c, bool kernel) {
  sub->add_option("input", c.input, "input JSON file")->required();
  sub->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1, KernelOptions::max_threads));
  sub->add_flag("--verify", c.verify, "cross-check against an independent reference");
  sub->add_option("--tolerance", c.tolerance, "largest accepted --verify difference")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", c.output, "output path");
  if (kernel) {
    sub->add_option("--max-dim", c.max_dim, "kernel dimension cap")->check(CLI::Range(0, KernelOptions::hard_limit));
    sub->add_flag("--compensated", c.compensated, "compensated summation in the kernel");
  }
}

void add_oracle(CLI::App* sub, RunConfig& c) {
  sub->add_option("--cutoff", c.cutoff, "Fock cutoff per mode for --verify")
      ->check(CLI::Range(1, OracleOptions::max_cutoff));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Loop hafnians, Gaussian amplitudes and Franck-Condon factors", "fockhaf"};
  app.require_subcommand(1);
  RunConfig c;

  CLI::App* lhaf = app.add_subcommand("lhaf", "loop hafnian of a symmetric matrix");
  CLI::App* haf = app.add_subcommand("haf", "hafnian of a symmetric matrix");
  CLI::App* perm = app.add_subcommand("permanent", "permanent of a square matrix");
  CLI::App* amp = app.add_subcommand("amplitude", "amplitude <m| D U S U' |n>");
  CLI::App* fc = app.add_subcommand("fcf", "Franck-Condon factor");
  CLI::App* spec = app.add_subcommand("spectrum", "vibronic stick spectrum as CSV");
  for (CLI::App* s : {lhaf, haf, perm, amp, fc, spec}) add_common(s, c, true);
  for (CLI::App* s : {lhaf, haf}) {
    s->add_option("--symmetry-tolerance", c.symmetry_tolerance, "accepted |A - A^T|")->check(CLI::NonNegativeNumber);
  }
  for (CLI::App* s : {amp, fc, spec}) add_oracle(s, c);
  for (CLI::App* s : {fc, spec}) s->add_option("--n", c.n, "initial quanta, comma separated");
  fc->add_option("--m", c.m, "final quanta, comma separated");
  spec->add_option("--max-quanta", c.max_quanta, "largest total final quanta")->check(CLI::NonNegativeNumber);
  spec->add_option("--threshold", c.threshold, "smallest printed intensity")->check(CLI::NonNegativeNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (lhaf->parsed()) return cmd_hafnian(c, true, out);
    if (haf->parsed()) return cmd_hafnian(c, false, out);
    if (perm->parsed()) return cmd_permanent(c, out);
    if (amp->parsed()) return cmd_amplitude(c, out);
    if (fc->parsed()) return cmd_fcf(c, out);
    if (spec->parsed()) return cmd_spectrum(c, out, err);
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace fockhaf::cli
