/*
 Copyright 2026 The mmashc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#ifndef MMASHC_MODEL_IO_HPP
#define MMASHC_MODEL_IO_HPP

// JSON model, signal and scenario files; CSV trajectory output.
//
// Matrices are arrays of row arrays; an r x 0 matrix is r empty rows.
// Signals are arrays of channels, each an array of terms such as
// {"type": "sine", "amplitude": 2, "omega": 3, "phase": 0}.

#include "mmashc/sim.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace mmashc {

using Json = nlohmann::json;

/// Version of the CSV column contract written by trajectory_csv.
inline constexpr int kCsvSchemaVersion = 1;

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

/// Throws ParseError carrying `source` and the line/column of the fault.
Json parse_json(std::string_view text, const std::string& source);
Json read_json_file(const std::string& path);

Matrix matrix_from_json(const Json& j, const std::string& name);
Vector vector_from_json(const Json& j, const std::string& name);
Json matrix_to_json(const Matrix& m);
Json vector_to_json(const Vector& v);

/// Matrix stored under `key`; ParseError when missing.
Matrix require_matrix(const Json& j, const std::string& key);
Vector require_vector(const Json& j, const std::string& key);

struct ModelFile {
    std::string name;
    std::string role = "concrete";  ///< concrete, abstract or interpolant
    StateSpaceModel model;
};

ModelFile model_from_json(const Json& j);
Json model_to_json(const ModelFile& file);
ModelFile read_model_file(const std::string& path);
void write_model_file(const std::string& path, const ModelFile& file);

SignalSpec signal_from_json(const Json& j, const std::string& name);
Json signal_to_json(const SignalSpec& s);

/// Pole list: [[re, im], ...] or plain reals.
std::vector<Complex> poles_from_json(const Json& j, const std::string& name);
Json poles_to_json(const std::vector<Complex>& poles);

/// Scenario file for `simulate`. Gains may be given directly ("k", "k_hat")
/// or as pole sets ("k_poles", "k_hat_poles") placed with `seed`.
InterconnectionSpec interconnection_from_json(const Json& j, std::uint64_t seed = 0);

/// printf("%.17g").
std::string format_double(double x);

/// Header: time, every block label in order, state_error_norm,
/// output_error_norm.
std::vector<std::string> trajectory_csv_header(const Trajectory& traj);
std::string trajectory_csv(const Trajectory& traj, const ErrorTrace& error);

/// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);
std::string file_digest(const std::string& path);

}  // namespace mmashc

#endif  // MMASHC_MODEL_IO_HPP
