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
#ifndef MMASHC_ACCEPTANCE_HPP
#define MMASHC_ACCEPTANCE_HPP

// Reproducibility criteria for the spring-mass benchmark and the random
// property suites. Each check returns its measured values next to the
// thresholds it is judged against.

#include "mmashc/spring_mass.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace mmashc {

struct Measurement {
    std::string name;
    double value;
    double threshold;
    bool upper_bound = true;  ///< value <= threshold, otherwise value >= threshold

    bool pass() const { return upper_bound ? value <= threshold : value >= threshold; }
};

struct CriterionResult {
    int id = 0;
    std::string name;
    std::vector<Measurement> measurements;
    std::vector<std::string> notes;
    double seconds = 0.0;

    bool passed() const;
    /// "[PASS] 6 decay ... | name=value (<= threshold) ..."
    std::string summary_line() const;
};

struct AcceptanceOptions {
    std::uint64_t seed = 0;
    TimeGrid grid{};
};

CriterionResult check_plant_spectrum(const AcceptanceOptions& opts = {});
CriterionResult check_sylvester_golden(const AcceptanceOptions& opts = {});
CriterionResult check_design_golden(const AcceptanceOptions& opts = {});
CriterionResult check_moment_suite(const AcceptanceOptions& opts = {});
CriterionResult check_steady_state_suite(const AcceptanceOptions& opts = {});
CriterionResult check_zero_input_decay(const AcceptanceOptions& opts = {});
CriterionResult check_bounded_error(const AcceptanceOptions& opts = {});
CriterionResult check_m_relation_matching(const AcceptanceOptions& opts = {});
CriterionResult check_invariant_start(const AcceptanceOptions& opts = {});
CriterionResult check_certificate_sampling(const AcceptanceOptions& opts = {});
CriterionResult check_closed_loop_projection(const AcceptanceOptions& opts = {});

/// Files produced by one run, keyed by name.
using OutputProducer = std::function<std::map<std::string, std::string>()>;

/// Runs `produce` twice and compares every file byte for byte.
CriterionResult check_determinism(const OutputProducer& produce);

/// Criteria 1..11 in order; criterion 12 needs a producer and is appended
/// by the caller.
std::vector<CriterionResult> run_numeric_criteria(const AcceptanceOptions& opts = {});

}  // namespace mmashc

#endif  // MMASHC_ACCEPTANCE_HPP
