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

#include <iosfwd>
#include <string>

#include "fockhaf/amplitude.hpp"
#include "fockhaf/common.hpp"
#include "fockhaf/matchgraph.hpp"
#include "fockhaf/vibronic.hpp"

namespace fockhaf::io {

/// Malformed document; carries the offending path or key in the message.
class FormatError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

std::string read_file(const std::string& path);

/// {"n": int, "entries": [[[re, im], ...], ...]}; entries may also be plain numbers.
CMatrix parse_matrix(const std::string& text);
SymmetricMatrix parse_symmetric_matrix(const std::string& text, double tol = 1e-12);
std::string matrix_to_json(const CMatrix& m);

/// {"l", "m", "n", "alpha", "U", "Uprime", "lambda"}.
AmplitudeSpec parse_amplitude_spec(const std::string& text);
std::string amplitude_spec_to_json(const AmplitudeSpec& spec);

/// Frequencies in cm^-1 or mass-weighted Hessians and geometries (atomic units).
VibronicModel parse_vibronic_model(const std::string& text);

/// energy_cm1,intensity with 12 significant digits.
void write_spectrum_csv(std::ostream& out, const Spectrum& s);

/// "re im" with 15 significant digits; negative zero printed as 0.
std::string format_complex(Complex z);
std::string format_real(double x, int digits = 15);

}  // namespace fockhaf::io
