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
#ifndef MMASHC_COMMANDS_HPP
#define MMASHC_COMMANDS_HPP

// Pipeline commands behind the mmashc executable. Each returns a RunReport;
// the executable prints it and maps all_pass() to the exit status.

#include "mmashc/acceptance.hpp"
#include "mmashc/model_io.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mmashc {

struct CommandOptions {
    std::optional<double> step;     ///< s, overrides scenario files
    std::optional<double> horizon;  ///< s, overrides scenario files
    double tol = 1e-8;
    std::string out;
    std::uint64_t seed = 0;
};

struct RunReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> input_digests;  ///< path, FNV-1a
    std::vector<NamedResidual> residuals;
    std::vector<std::pair<std::string, std::vector<Complex>>> spectra;
    std::vector<Measurement> verdicts;
    std::vector<CriterionResult> criteria;
    std::vector<std::string> outputs;
    std::vector<std::string> notes;

    bool all_pass() const;
    Json to_json() const;
    std::string to_text() const;
};

enum class ReduceMode { Direct, Swapped, TwoSided };
ReduceMode reduce_mode_from_name(const std::string& name);

/// Interpolant files hold "s", "l" (direct) and/or "q", "r" (swapped), and
/// optionally the free map "g" or "h". Without one, the free map places
/// sigma(S - G L) (or sigma(Q - R H)) at -1, -2, ...
RunReport cmd_reduce(const std::string& model_path, const std::vector<std::string>& interpolant_paths,
                     ReduceMode mode, const CommandOptions& opts);

/// Writes <out>/design.json and <out>/abstraction.json.
RunReport cmd_abstract(const std::string& model_path, const std::string& p_path, const CommandOptions& opts);

/// Writes <out>.csv and <out>.svg.
RunReport cmd_simulate(const std::string& spec_path, const CommandOptions& opts);

/// Check names accepted by cmd_verify.
const std::vector<std::string>& verify_check_names();

/// Runs the named checks (all applicable ones when `checks` is empty)
/// against the artifact's matrices. Unknown names throw.
RunReport cmd_verify(const std::string& model_path, const std::string& artifact_path,
                     const std::vector<std::string>& checks, const CommandOptions& opts);

/// CSV text of the four benchmark runs, keyed by file name.
std::map<std::string, std::string> spring_mass_csv_outputs(const SpringMassSetup& setup, const TimeGrid& grid);

/// Writes the benchmark data, four CSV/SVG pairs and report.{txt,json}
/// into <out>, with the verdict of every reproducibility criterion.
RunReport cmd_spring_mass_example(const CommandOptions& opts);

}  // namespace mmashc

#endif  // MMASHC_COMMANDS_HPP
