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

#include "fockhaf/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace fockhaf::io {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw FormatError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw FormatError(where + ": non-finite value");
  return v;
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw FormatError(where + ": expected an integer");
  return j.get<int>();
}

Complex complex_value(const json& j, const std::string& where) {
  if (j.is_number()) return {number(j, where), 0.0};
  if (!j.is_array() || j.size() != 2) throw FormatError(where + ": expected [re, im]");
  return {number(j[0], where), number(j[1], where)};
}

CMatrix matrix_rows(const json& rows, Eigen::Index n, const std::string& where) {
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
    throw FormatError(where + ": expected " + std::to_string(n) + " rows");
  }
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw FormatError(where + ": row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      m(i, k) = complex_value(row[k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return m;
}

CMatrix matrix_object(const json& j, const std::string& where) {
  if (j.is_array()) return matrix_rows(j, static_cast<Eigen::Index>(j.size()), where);
  const int n = integer(require(j, "n"), where + ".n");
  if (n < 0) throw FormatError(where + ".n must be non-negative");
  return matrix_rows(require(j, "entries"), n, where + ".entries");
}

RMatrix real_matrix(const json& j, const std::string& where) {
  const CMatrix m = matrix_object(j, where);
  if (max_abs(m.imag()) != 0.0) throw FormatError(where + ": expected a real matrix");
  return m.real();
}

RVector real_vector(const json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + ": expected an array");
  RVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = number(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

CVector complex_vector(const json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + ": expected an array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = complex_value(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

std::vector<int> int_vector(const json& j, const std::string& where) {
  if (!j.is_array()) throw FormatError(where + ": expected an array");
  std::vector<int> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(integer(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::string format_g(double x, int digits) {
  if (x == 0.0) x = 0.0;  // drops the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CMatrix parse_matrix(const std::string& text) { return matrix_object(parse_json(text), "matrix"); }

SymmetricMatrix parse_symmetric_matrix(const std::string& text, double tol) {
  const CMatrix m = parse_matrix(text);
  try {
    return SymmetricMatrix::from_dense(m, tol);
  } catch (const InvalidInput& e) {
    throw FormatError(e.what());
  }
}

std::string matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_json(m(i, k)));
    rows.push_back(row);
  }
  return json{{"n", m.rows()}, {"entries", rows}}.dump();
}

AmplitudeSpec parse_amplitude_spec(const std::string& text) {
  const json j = parse_json(text);
  AmplitudeSpec spec;
  const int l = integer(require(j, "l"), "l");
  if (l < 0) throw FormatError("l must be non-negative");
  spec.m = int_vector(require(j, "m"), "m");
  spec.n = int_vector(require(j, "n"), "n");
  spec.alpha = j.contains("alpha") ? complex_vector(j.at("alpha"), "alpha") : CVector::Zero(l);
  spec.u = j.contains("U") ? matrix_object(j.at("U"), "U") : CMatrix::Identity(l, l);
  spec.uprime = j.contains("Uprime") ? matrix_object(j.at("Uprime"), "Uprime") : CMatrix::Identity(l, l);
  spec.lambda = j.contains("lambda") ? real_vector(j.at("lambda"), "lambda") : RVector::Zero(l);
  if (static_cast<int>(spec.m.size()) != l) throw FormatError("m must have l entries");
  try {
    spec.validate();
  } catch (const InvalidInput& e) {
    throw FormatError(e.what());
  }
  return spec;
}

std::string amplitude_spec_to_json(const AmplitudeSpec& spec) {
  json alpha = json::array();
  for (Eigen::Index i = 0; i < spec.alpha.size(); ++i) alpha.push_back(complex_json(spec.alpha(i)));
  json lambda = json::array();
  for (Eigen::Index i = 0; i < spec.lambda.size(); ++i) lambda.push_back(spec.lambda(i));
  return json{{"l", spec.modes()},
              {"m", spec.m},
              {"n", spec.n},
              {"alpha", alpha},
              {"U", json::parse(matrix_to_json(spec.u))},
              {"Uprime", json::parse(matrix_to_json(spec.uprime))},
              {"lambda", lambda}}
      .dump(1);
}

VibronicModel parse_vibronic_model(const std::string& text) {
  const json j = parse_json(text);
  VibronicModel model;
  try {
    if (j.is_object() && j.contains("hessian_in")) {
      SurfaceData in{real_matrix(require(j, "hessian_in"), "hessian_in"),
                     real_vector(require(j, "geometry_in"), "geometry_in")};
      SurfaceData fin{real_matrix(require(j, "hessian_final"), "hessian_final"),
                      real_vector(require(j, "geometry_final"), "geometry_final")};
      double e0 = 0.0;
      if (j.contains("e_offset_cm1")) e0 = number(j.at("e_offset_cm1"), "e_offset_cm1") / kHartreeToCm1;
      model = model_from_surfaces(in, fin, e0);
    } else {
      model.omega_in = real_vector(require(j, "frequencies_in_cm1"), "frequencies_in_cm1") / kHartreeToCm1;
      model.omega_final = real_vector(require(j, "frequencies_final_cm1"), "frequencies_final_cm1") / kHartreeToCm1;
      const Eigen::Index l = model.omega_in.size();
      model.duschinsky = j.contains("duschinsky") ? real_matrix(j.at("duschinsky"), "duschinsky") : RMatrix::Identity(l, l);
      model.displacement = j.contains("displacement") ? real_vector(j.at("displacement"), "displacement") : RVector::Zero(l);
      model.e_offset = j.contains("e_offset_cm1") ? number(j.at("e_offset_cm1"), "e_offset_cm1") / kHartreeToCm1 : 0.0;
    }
    model.validate();
  } catch (const FormatError&) {
    throw;
  } catch (const InvalidInput& e) {
    throw FormatError(e.what());
  }
  return model;
}

void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
  out << "energy_cm1,intensity\n";
  for (const SpectrumLine& line : s.lines) {
    out << format_g(line.energy * kHartreeToCm1, 12) << ',' << format_g(line.intensity, 12) << '\n';
  }
}

std::string format_real(double x, int digits) { return format_g(x, digits); }

std::string format_complex(Complex z) { return format_g(z.real(), 15) + " " + format_g(z.imag(), 15); }

}  // namespace fockhaf::io
