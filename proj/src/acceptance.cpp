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
#include "mmashc/acceptance.hpp"

#include "mmashc/random_models.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

namespace mmashc {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string short_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", x);
    return buf;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

CriterionResult start(int id, std::string name) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    return r;
}

}  // namespace

bool CriterionResult::passed() const {
    return !measurements.empty() &&
           std::all_of(measurements.begin(), measurements.end(), [](const Measurement& m) { return m.pass(); });
}

std::string CriterionResult::summary_line() const {
    std::string line = passed() ? "[PASS] " : "[FAIL] ";
    line += std::to_string(id) + " " + name + ":";
    for (const Measurement& m : measurements) {
        line += " " + m.name + "=" + short_number(m.value) + (m.upper_bound ? " (<= " : " (>= ") +
                short_number(m.threshold) + ")";
    }
    line += " [" + short_number(seconds) + " s]";
    return line;
}

CriterionResult check_plant_spectrum(const AcceptanceOptions&) {
    CriterionResult r = start(1, "plant spectrum");
    const auto t0 = Clock::now();
    const SpringMassData data = spring_mass_data();
    const SpectrumReport spec = eigenvalues(data.plant.a());
    const std::vector<Complex> printed{{0.0, 3.1623}, {0.0, -3.1623}, {0.0, 1.5811}, {0.0, -1.5811}};
    const double mismatch = spectrum_mismatch(spec.eigenvalues, printed);
    const double elapsed = seconds_since(t0);
    r.measurements = {{"max_eigenvalue_error", mismatch, 1e-3},
                      {"eigenvalue_count", static_cast<double>(spec.size()), 4.0, false},
                      {"runtime_s", elapsed, 1.0}};
    r.seconds = elapsed;
    return r;
}

CriterionResult check_sylvester_golden(const AcceptanceOptions&) {
    CriterionResult r = start(2, "Sylvester solution for P");
    const auto t0 = Clock::now();
    const SpringMassData d = spring_mass_data();
    const Matrix p = solve_sylvester(d.plant.a(), d.f, -d.plant.b() * d.l_hat);
    const Matrix h = d.plant.c() * p;
    r.measurements = {{"max_abs_P_error", max_abs(p - d.p), 1e-9},
                      {"max_abs_CP_minus_I", max_abs(h - Matrix::Identity(2, 2)), 0.0}};
    r.seconds = seconds_since(t0);
    return r;
}

CriterionResult check_design_golden(const AcceptanceOptions&) {
    CriterionResult r = start(3, "geometric abstraction design");
    const auto t0 = Clock::now();
    const SpringMassData d = spring_mass_data();
    const AbstractionDesign design = design_abstraction(d.plant, d.p);
    double worst_residual = 0.0;
    for (const auto& res : m_relation_residuals(d.plant, design.abstract_system(), design.m_map,
                                                design.n_map, design.gamma, 1e-9)) {
        worst_residual = std::max(worst_residual, res.value);
    }
    r.measurements = {
        {"max_abs_M_error", max_abs(design.m_map - d.m_map), 1e-8},
        {"max_abs_G_error", max_abs(design.g - d.g), 1e-8},
        {"max_abs_Gamma_error", max_abs(design.gamma - d.gamma), 1e-8},
        {"max_abs_N_rows34_error", max_abs(design.n_map.bottomRows(2) - d.n_printed.bottomRows(2)), 1e-8},
        {"max_m_relation_residual", worst_residual, 1e-9},
    };
    const double constructed = design.n_map(0, 0);
    const double printed = d.n_printed(0, 0);
    if (std::abs(constructed - printed) > 1e-8) {
        r.notes.push_back("N(1,1): construction gives " + short_number(constructed) +
                          ", listed value is " + short_number(printed) + "; rows 1-2 equal -L^ M");
    }
    r.seconds = seconds_since(t0);
    return r;
}

CriterionResult check_moment_suite(const AcceptanceOptions& opts) {
    CriterionResult r = start(4, "moment matching on random systems");
    const auto t0 = Clock::now();
    ModelSampler sampler(opts.seed);
    double direct_moment = 0.0, swapped_moment = 0.0, two_sided_moment = 0.0;
    double direct_interp = 0.0, swapped_interp = 0.0, two_sided_interp = 0.0;
    constexpr int kSystems = 100;
    for (int i = 0; i < kSystems; ++i) {
        const Eigen::Index n = sampler.uniform_int(3, 10);
        const Eigen::Index m = sampler.uniform_int(1, 3);
        const Eigen::Index p = sampler.uniform_int(1, 3);
        const StateSpaceModel sys = sampler.stable_system(n, m, p);
        const DirectInterpolant di = sampler.direct_interpolant(2, m);
        const SwappedInterpolant si = sampler.swapped_interpolant(2, p, imaginary_parts(di.s));

        const DirectMomentSolution full_d = moment_direct(sys, di);
        const SwappedMomentSolution full_s = moment_swapped(sys, si);

        const StateSpaceModel rd = rom_direct(sys, di, default_input_map(di, opts.seed));
        direct_moment = std::max(direct_moment, relative_difference(moment_direct(rd, di).moment, full_d.moment));
        direct_interp = std::max(direct_interp, direct_interpolation_error(sys, rd, di));

        const StateSpaceModel rs = rom_swapped(sys, si, default_output_map(si, opts.seed));
        swapped_moment = std::max(swapped_moment, relative_difference(moment_swapped(rs, si).moment, full_s.moment));
        swapped_interp = std::max(swapped_interp, swapped_interpolation_error(sys, rs, si));

        for (TwoSidedForm form : {TwoSidedForm::InputMap, TwoSidedForm::OutputMap}) {
            const StateSpaceModel rt = rom_two_sided(sys, di, si, form);
            two_sided_moment = std::max({two_sided_moment,
                                         relative_difference(moment_direct(rt, di).moment, full_d.moment),
                                         relative_difference(moment_swapped(rt, si).moment, full_s.moment)});
            two_sided_interp = std::max({two_sided_interp, direct_interpolation_error(sys, rt, di),
                                         swapped_interpolation_error(sys, rt, si)});
        }
    }
    const double elapsed = seconds_since(t0);
    r.measurements = {{"direct_moment_rel_error", direct_moment, 1e-7},
                      {"swapped_moment_rel_error", swapped_moment, 1e-7},
                      {"two_sided_moment_rel_error", two_sided_moment, 1e-7},
                      {"direct_interpolation_rel_error", direct_interp, 1e-7},
                      {"swapped_interpolation_rel_error", swapped_interp, 1e-7},
                      {"two_sided_interpolation_rel_error", two_sided_interp, 1e-7},
                      {"runtime_s", elapsed, 30.0}};
    r.seconds = elapsed;
    return r;
}

CriterionResult check_steady_state_suite(const AcceptanceOptions& opts) {
    CriterionResult r = start(5, "steady-state matching on random plants");
    const auto t0 = Clock::now();
    ModelSampler sampler(opts.seed + 1);
    // Slowest plant mode decays at rate 1, so 20 s leaves a 14 s transient.
    const TimeGrid direct_grid{20.0, opts.grid.step};
    double direct_window = 0.0, swapped_sup = 0.0;
    constexpr int kPlants = 20;
    for (int i = 0; i < kPlants; ++i) {
        const Eigen::Index n = sampler.uniform_int(2, 8);
        const Eigen::Index m = sampler.uniform_int(1, std::min<int>(3, static_cast<int>(n)));
        const Eigen::Index p = sampler.uniform_int(1, std::min<int>(3, static_cast<int>(n)));
        const StateSpaceModel plant = sampler.stable_system(n, m, p);

        const DirectInterpolant di = sampler.direct_interpolant(2, m);
        const Vector w0 = sampler.excitable_vector(di.s);
        const Vector x0 = sampler.normal_vector(n);
        const SimulationResult dr = run_direct_generator(plant, di, w0, x0, direct_grid);
        direct_window = std::max(direct_window, dr.error.window_sup);

        const SwappedInterpolant si = sampler.swapped_interpolant(2, p);
        const SignalSpec u = sampler.decaying_signal(m, 1.0);
        const SimulationResult sr = run_swapped_filter(plant, si, u, opts.grid);
        swapped_sup = std::max(swapped_sup, sr.error.sup_norm);
    }
    const double elapsed = seconds_since(t0);
    r.measurements = {{"direct_window_output_error", direct_window, 1e-4},
                      {"swapped_sup_gap", swapped_sup, 1e-5},
                      {"runtime_s", elapsed, 60.0}};
    r.seconds = elapsed;
    return r;
}

CriterionResult check_zero_input_decay(const AcceptanceOptions& opts) {
    CriterionResult r = start(6, "bounded-error interconnection, v = 0");
    const auto t0 = Clock::now();
    const SpringMassSetup setup = spring_mass_setup(opts.seed);
    const SimulationResult res = run_hierarchical(setup.data.plant, setup.data.abstract(), setup.cert,
                                                  SignalSpec::zeros(4), setup.data.x0, setup.data.xi0, opts.grid);
    const ErrorTrace& e = res.error;
    const bool envelope = envelope_nonincreasing(e.times, e.output_norm, 1.0, 1e-10);
    r.measurements = {{"terminal_output_error", e.terminal_norm, 1e-3},
                      {"envelope_nonincreasing", envelope ? 1.0 : 0.0, 1.0, false},
                      {"fitted_decay_rate", e.decay_rate.value_or(0.0), 0.8 * setup.cert.lambda, false}};
    r.notes.push_back("certificate decay rate lambda = " + short_number(setup.cert.lambda));
    r.seconds = seconds_since(t0);
    return r;
}

CriterionResult check_bounded_error(const AcceptanceOptions& opts) {
    CriterionResult r = start(7, "bounded-error interconnection, v != 0");
    const auto t0 = Clock::now();
    const SpringMassSetup setup = spring_mass_setup(opts.seed);
    const SimulationResult res = run_hierarchical(setup.data.plant, setup.data.abstract(), setup.cert,
                                                  setup.data.v, setup.data.x0, setup.data.xi0, opts.grid);
    r.measurements = {{"sup_output_error", res.error.sup_norm, res.bound.value_or(0.0)}};
    r.notes.push_back("V(xi0, x0) = " + short_number(res.initial_value.value_or(0.0)) +
                      ", gamma(||v||_inf) = " + short_number(res.gamma_term.value_or(0.0)) +
                      ", bound = " + short_number(res.bound.value_or(0.0)));
    r.seconds = seconds_since(t0);
    return r;
}

CriterionResult check_m_relation_matching(const AcceptanceOptions& opts) {
    CriterionResult r = start(8, "stabilized M-relation interconnection");
    const auto t0 = Clock::now();
    const SpringMassSetup setup = spring_mass_setup(opts.seed);
    for (bool with_input : {false, true}) {
        const MDirectScenario s = spring_mass_m_direct(setup, with_input);
        const SimulationResult res = run_m_direct(s.plant, s.abstract, s.m_map, s.link, s.u, s.x0, s.xi0, opts.grid);
        const std::string tag = with_input ? "u_nonzero" : "u_zero";
        r.measurements.push_back({"window_output_error_" + tag, res.error.window_sup, 1e-3});
        r.measurements.push_back({"error_dynamics_mismatch_" + tag, res.error_dynamics_mismatch.value_or(1.0), 1e-6});
    }
    r.seconds = seconds_since(t0);
    return r;
}

CriterionResult check_invariant_start(const AcceptanceOptions& opts) {
    CriterionResult r = start(9, "exact matching from the invariant set");
    const auto t0 = Clock::now();
    const SpringMassSetup setup = spring_mass_setup(opts.seed);
    const AbstractionDesign& design = setup.design;
    const StabilizedLink link = setup.link(false);
    ModelSampler sampler(opts.seed + 2);
    double worst = 0.0;
    constexpr int kScenarios = 20;
    for (int i = 0; i < kScenarios; ++i) {
        const Vector x0 = 5.0 * sampler.normal_vector(4);
        const SignalSpec u = sampler.smooth_signal(2, 100.0);
        const SimulationResult res = run_m_direct(setup.data.plant, design.abstract_system(), design.m_map, link,
                                                  u, x0, design.m_map * x0, opts.grid);
        worst = std::max(worst, res.error.sup_norm);
    }
    r.measurements = {{"sup_output_error", worst, 1e-6}};
    r.seconds = seconds_since(t0);
    return r;
}

CriterionResult check_certificate_sampling(const AcceptanceOptions& opts) {
    CriterionResult r = start(10, "simulation-function decrease");
    const auto t0 = Clock::now();
    const SpringMassSetup setup = spring_mass_setup(opts.seed);
    const StateSpaceModel abstract = setup.data.abstract();
    ModelSampler sampler(opts.seed + 3);
    constexpr int kSamples = 1000;
    int accepted = 0, violations = 0;
    double worst = -std::numeric_limits<double>::infinity();
    while (accepted < kSamples) {
        const Vector xi = std::pow(10.0, sampler.uniform(-3.0, 3.0)) * sampler.normal_vector(2);
        const Vector x = std::pow(10.0, sampler.uniform(-3.0, 3.0)) * sampler.normal_vector(4);
        const double value = simulation_fn_value(setup.cert, xi, x);
        if (!(value > 0.0)) continue;
        Vector v = sampler.normal_vector(4);
        v *= sampler.uniform(0.0, 1.0) * value / (setup.cert.gamma_gain * v.norm());
        if (!(setup.cert.gamma(v.norm()) < value)) continue;
        ++accepted;
        const double dv = simulation_fn_derivative(setup.cert, setup.data.plant, abstract, xi, x, v);
        if (!(dv < 0.0)) ++violations;
        worst = std::max(worst, dv / value);
    }
    r.measurements = {{"violations", static_cast<double>(violations), 0.0},
                      {"samples", static_cast<double>(accepted), static_cast<double>(kSamples), false}};
    r.notes.push_back("largest dV/V over the samples = " + short_number(worst));
    r.seconds = seconds_since(t0);
    return r;
}

CriterionResult check_closed_loop_projection(const AcceptanceOptions& opts) {
    CriterionResult r = start(11, "closed-loop Sylvester solution equals P");
    const auto t0 = Clock::now();
    const SpringMassSetup setup = spring_mass_setup(opts.seed);
    const double bench = max_abs(closed_loop_projection(setup.cert, setup.data.plant, setup.data.f) - setup.cert.p);

    ModelSampler sampler(opts.seed + 4);
    double worst = 0.0;
    constexpr int kInstances = 20;
    for (int i = 0; i < kInstances; ++i) {
        const Eigen::Index n = sampler.uniform_int(3, 8);
        const Eigen::Index m = sampler.uniform_int(1, 3);
        const Eigen::Index p = sampler.uniform_int(1, 3);
        const StateSpaceModel plant = sampler.stable_system(n, m, p);
        const Matrix f = sampler.imaginary_axis_generator(2);
        const Matrix l_hat = sampler.normal_matrix(m, 2);
        const Matrix pm = solve_sylvester(plant.a(), f, -plant.b() * l_hat);
        const StateSpaceModel abstract(f, sampler.normal_matrix(2, 2), plant.c() * pm);
        const Matrix k = place_poles(plant.a(), plant.b(), real_block_diagonal(sampler.stable_poles(n)),
                                     {.seed = opts.seed});
        const SimulationCertificate cert = synth_certificate(plant, abstract, l_hat, k);
        worst = std::max(worst, max_abs(closed_loop_projection(cert, plant, f) - cert.p));
    }
    r.measurements = {{"benchmark_max_abs_error", bench, 1e-9}, {"random_max_abs_error", worst, 1e-9}};
    r.seconds = seconds_since(t0);
    return r;
}

CriterionResult check_determinism(const OutputProducer& produce) {
    CriterionResult r = start(12, "byte-identical reruns");
    const auto t0 = Clock::now();
    const auto first = produce();
    const auto second = produce();
    double differing = 0.0;
    for (const auto& [name, bytes] : first) {
        const auto it = second.find(name);
        if (it == second.end() || it->second != bytes) {
            differing += 1.0;
            r.notes.push_back(name + " differs between runs");
        }
    }
    if (second.size() != first.size()) differing += 1.0;
    r.measurements = {{"differing_files", differing, 0.0},
                      {"compared_files", static_cast<double>(first.size()), 1.0, false}};
    r.seconds = seconds_since(t0);
    return r;
}

std::vector<CriterionResult> run_numeric_criteria(const AcceptanceOptions& opts) {
    return {check_plant_spectrum(opts),       check_sylvester_golden(opts),   check_design_golden(opts),
            check_moment_suite(opts),         check_steady_state_suite(opts), check_zero_input_decay(opts),
            check_bounded_error(opts),        check_m_relation_matching(opts), check_invariant_start(opts),
            check_certificate_sampling(opts), check_closed_loop_projection(opts)};
}

}  // namespace mmashc
