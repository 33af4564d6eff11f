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
#include "mmashc/errors.hpp"
#include "mmashc/random_models.hpp"
#include "mmashc/sim.hpp"
#include "mmashc/spring_mass.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace mmashc;
using mmashc::testing::max_abs;

namespace {

Matrix damped_rotation_flow(double t) {
    Matrix e(2, 2);
    e << std::cos(2.0 * t), std::sin(2.0 * t), -std::sin(2.0 * t), std::cos(2.0 * t);
    return std::exp(-t) * e;
}

double terminal_error(double step) {
    Matrix a(2, 2);
    a << -1, 2, -2, -1;
    const Vector x0 = Vector::Ones(2);
    const TimeGrid grid{2.0, step};
    const Matrix samples = integrate_linear(a, Matrix::Zero(2, 1), SignalSpec::zeros(1), x0, grid);
    const Vector last = samples.row(samples.rows() - 1).transpose();
    return (last - damped_rotation_flow(2.0) * x0).norm();
}

}  // namespace

TEST_CASE("time grid validation") {
    CHECK((TimeGrid{10.0, 1e-3}).steps() == 10000);
    CHECK_THROWS_AS((TimeGrid{0.0, 1e-3}).validate(), DimensionError);
    CHECK_THROWS_AS((TimeGrid{1.0, 0.0}).validate(), DimensionError);
    CHECK_THROWS_AS((TimeGrid{1.0, 0.3}).validate(), DimensionError);
    CHECK(topology_from_name(topology_name(Topology::MSwapped)) == Topology::MSwapped);
    CHECK_THROWS_AS(topology_from_name("loop"), ParseError);
}

TEST_CASE("RK4 accuracy and order") {
    const Matrix samples =
        integrate_linear(-Matrix::Identity(1, 1), Matrix::Zero(1, 1), SignalSpec::zeros(1),
                         Vector::Ones(1), TimeGrid{1.0, 1e-3});
    CHECK(std::abs(samples(samples.rows() - 1, 0) - std::exp(-1.0)) < 1e-10);

    Matrix s(2, 2);
    s << 0, 1, -1, 0;
    const Matrix harmonic =
        integrate_linear(s, Matrix::Zero(2, 1), SignalSpec::zeros(1), Vector::Ones(2), TimeGrid{10.0, 1e-3});
    double drift = 0.0;
    for (Eigen::Index k = 0; k < harmonic.rows(); ++k) {
        drift = std::max(drift, std::abs(harmonic.row(k).norm() - std::sqrt(2.0)));
    }
    CHECK(drift < 1e-8);

    const double ratio = terminal_error(0.1) / terminal_error(0.05);
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("RK4 forced response") {
    // x' = -x + 1, x(0) = 0  =>  x = 1 - e^{-t}
    const SignalSpec one({{SignalTerm::constant(1.0)}});
    const Matrix samples =
        integrate_linear(-Matrix::Identity(1, 1), Matrix::Identity(1, 1), one, Vector::Zero(1), TimeGrid{3.0, 1e-2});
    for (Eigen::Index k = 0; k < samples.rows(); ++k) {
        CHECK(std::abs(samples(k, 0) - (1.0 - std::exp(-0.01 * static_cast<double>(k)))) < 1e-9);
    }
}

TEST_CASE("divergence is reported with its time") {
    try {
        rk4_integrate([](double, const Vector& z, Vector& dz) { dz = z.cwiseProduct(z); }, Vector::Ones(1),
                      TimeGrid{2.0, 1e-3});
        FAIL("expected divergence");
    } catch (const SimulationError& e) {
        CHECK(e.time() > 0.99);
        CHECK(e.time() < 1.1);
    }
}

TEST_CASE("error trace statistics") {
    std::vector<double> times, values;
    for (int k = 0; k <= 500; ++k) {
        times.push_back(0.01 * k);
        values.push_back(3.0 * std::exp(-2.0 * times.back()));
    }
    const ErrorTrace trace = make_error_trace(times, {}, values);
    REQUIRE(trace.decay_rate.has_value());
    CHECK(*trace.decay_rate == doctest::Approx(2.0).epsilon(0.05));
    CHECK(trace.sup_norm == doctest::Approx(3.0));
    CHECK(trace.terminal_norm == doctest::Approx(3.0 * std::exp(-10.0)));
    CHECK(trace.window_sup == doctest::Approx(3.0 * std::exp(-7.0)).epsilon(1e-2));
    CHECK(envelope_nonincreasing(times, values, 0.5, 1e-10));

    const ErrorTrace zero = make_error_trace(times, {}, std::vector<double>(times.size(), 0.0));
    CHECK(zero.sup_norm == 0.0);
    CHECK_FALSE(zero.decay_rate.has_value());

    std::vector<double> bumped = values;
    bumped[400] = 1.0;
    CHECK_FALSE(envelope_nonincreasing(times, bumped, 0.5, 1e-10));

    CHECK_THROWS_AS(make_error_trace(times, {}, values, 1.0), DimensionError);
    CHECK_THROWS_AS(make_error_trace(times, {}, values, 0.0), DimensionError);
    const std::vector<double> short_times{0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK_THROWS_AS(make_error_trace(short_times, {}, std::vector<double>(6, 1.0)), DimensionError);
}

TEST_CASE("direct generator") {
    ModelSampler sampler(31);
    const StateSpaceModel plant = sampler.stable_system(5, 2, 2);
    const DirectInterpolant interp = sampler.direct_interpolant(4, 2);
    const Vector w0 = sampler.excitable_vector(interp.s);
    const DirectMomentSolution moment = moment_direct(plant, interp);
    const TimeGrid grid{10.0, 1e-3};

    const SimulationResult on = run_direct_generator(plant, interp, w0, moment.pi * w0, grid);
    CHECK(on.error.sup_norm < 1e-6);
    for (const auto& h : on.hypotheses) CHECK_MESSAGE(h.holds, h.name);
    for (const char* name : {"omega", "x", "y", "y_ss", "e_y"}) CHECK(on.trajectory.has_block(name));

    const SimulationResult off = run_direct_generator(plant, interp, w0, sampler.normal_vector(5), grid);
    CHECK(off.error.window_sup < 1e-2);
    CHECK(off.error.terminal_norm < 1e-3);

    const SimulationResult idle = run_direct_generator(plant, interp, Vector::Zero(4), sampler.normal_vector(5), grid);
    const Matrix& y = idle.trajectory.block("y").samples;
    CHECK(y.row(y.rows() - 1).norm() < 1e-3);

    CHECK_THROWS_AS(run_direct_generator(plant, DirectInterpolant{Matrix::Zero(2, 2), Matrix::Ones(2, 2)},
                                         Vector::Ones(2), Vector::Zero(5), grid),
                    PreconditionError);
    CHECK_THROWS_AS(run_direct_generator(plant, interp, w0, Vector::Zero(3), grid), DimensionError);
}

TEST_CASE("swapped filter") {
    ModelSampler sampler(32);
    const StateSpaceModel plant = sampler.stable_system(4, 1, 2);
    const SwappedInterpolant interp = sampler.swapped_interpolant(3, 2);
    const TimeGrid grid{10.0, 1e-3};

    const SimulationResult idle = run_swapped_filter(plant, interp, SignalSpec::zeros(1), grid);
    for (const auto& block : idle.trajectory.blocks) CHECK(max_abs(block.samples) == 0.0);

    const SimulationResult run = run_swapped_filter(plant, interp, sampler.decaying_signal(1, 2.0), grid);
    CHECK(run.error.sup_norm < 1e-9);
    CHECK(run.trajectory.has_block("gap"));

    const SignalSpec constant({{SignalTerm::constant(1.0)}});
    try {
        run_swapped_filter(plant, interp, constant, grid);
        FAIL("expected non-decaying input to be rejected");
    } catch (const PreconditionError& e) {
        CHECK(e.condition() == "u exponentially decaying");
    }
}

TEST_CASE("hierarchical interconnection") {
    const SpringMassSetup setup = spring_mass_setup();
    const TimeGrid grid{5.0, 1e-3};

    HierarchicalScenario on_manifold = spring_mass_hierarchical(setup, false);
    on_manifold.x0 = setup.cert.p * on_manifold.xi0;
    const SimulationResult idle = run_hierarchical(on_manifold.plant, on_manifold.abstract, on_manifold.cert,
                                                   on_manifold.v, on_manifold.x0, on_manifold.xi0, grid);
    CHECK(idle.error.sup_norm < 1e-6);

    const HierarchicalScenario forced = spring_mass_hierarchical(setup, true);
    const SimulationResult a = run_hierarchical(forced.plant, forced.abstract, forced.cert, forced.v, forced.x0,
                                                forced.xi0, grid, HierarchicalWiring::Interface);
    const SimulationResult b = run_hierarchical(forced.plant, forced.abstract, forced.cert, forced.v, forced.x0,
                                                forced.xi0, grid, HierarchicalWiring::StabilizingLink);
    const Matrix& xa = a.trajectory.block("x").samples;
    const Matrix& xb = b.trajectory.block("x").samples;
    CHECK(max_abs(xa - xb) <= 1e-10 * std::max(1.0, max_abs(xa)));
    REQUIRE(a.bound.has_value());
    CHECK(a.error.sup_norm <= *a.bound);
    REQUIRE(a.error_dynamics_mismatch.has_value());
    CHECK(*a.error_dynamics_mismatch < 1e-6);
    for (const char* name : {"xi", "x", "v", "u", "psi", "y", "e_y"}) CHECK(a.trajectory.has_block(name));
}

TEST_CASE("M-related direct interconnection") {
    const SpringMassSetup setup = spring_mass_setup();
    const TimeGrid grid{5.0, 1e-3};
    MDirectScenario s = spring_mass_m_direct(setup, true);
    s.xi0 = s.m_map * s.x0;
    const SimulationResult invariant = run_m_direct(s.plant, s.abstract, s.m_map, s.link, s.u, s.x0, s.xi0, grid);
    CHECK(invariant.error.sup_norm < 1e-6);
    CHECK(invariant.warnings.empty());
    CHECK(invariant.trajectory.topology == Topology::MDirectStabilized);

    const StabilizedLink open = setup.link(false);
    const SimulationResult drifting =
        run_m_direct(s.plant, s.abstract, s.m_map, open, s.u, s.x0, s.xi0 + Vector::Ones(2), grid);
    CHECK(drifting.trajectory.topology == Topology::MDirect);
    CHECK_FALSE(drifting.warnings.empty());
    REQUIRE(drifting.error_dynamics_mismatch.has_value());
    CHECK(*drifting.error_dynamics_mismatch < 1e-9);
}

TEST_CASE("M-related swapped interconnection") {
    ModelSampler sampler(33);
    const StateSpaceModel plant = sampler.stable_system(5, 2, 1);
    const Matrix f = sampler.imaginary_axis_generator(4, imaginary_parts(plant.a()));
    const Matrix g = sampler.normal_matrix(4, 2);
    const Matrix n = sampler.normal_matrix(2, 5);
    const Matrix m = solve_sylvester(f, plant.a(), -g * n);
    const StateSpaceModel aux(plant.a(), plant.b(), -n);
    const TimeGrid grid{10.0, 1e-3};
    const SimulationResult run = run_m_swapped(aux, f, g, m, sampler.decaying_signal(2, 1.0), grid);
    CHECK(run.error.sup_norm < 1e-5);
    CHECK(run.warnings.empty());

    const SpringMassSetup setup = spring_mass_setup();
    const SpringMassData& d = setup.data;
    CHECK(max_abs(d.m_map * d.plant.b()) == 0.0);
    const Matrix closed = d.plant.a() + d.plant.b() * setup.k;
    const StateSpaceModel stabilized(closed, d.plant.b(), -(setup.design.n_map + setup.design.gamma * setup.k));
    const SimulationResult demo =
        run_m_swapped(stabilized, d.f, d.g, d.m_map, sampler.decaying_signal(2, 1.0), grid);
    CHECK(demo.error.sup_norm < 1e-5);
    CHECK(demo.warnings.empty());

    const StateSpaceModel raw(d.plant.a(), d.plant.b(), -setup.design.n_map);
    CHECK_THROWS_AS(run_m_swapped(raw, d.f, d.g, d.m_map, SignalSpec::zeros(2), grid), SpectralError);
}

TEST_CASE("interconnection dispatch and steady-state predictor") {
    ModelSampler sampler(34);
    const StateSpaceModel plant = sampler.stable_system(3, 1, 1);
    const DirectInterpolant interp = sampler.direct_interpolant(2, 1);
    const Vector w0 = sampler.excitable_vector(interp.s);
    const InterconnectionSpec spec{DirectGeneratorScenario{plant, interp, w0, Vector::Zero(3)}, TimeGrid{20.0, 1e-3}};
    CHECK(spec.topology() == Topology::DirectGenerator);
    const SimulationResult run = integrate(spec);
    const DirectMomentSolution moment = moment_direct(plant, interp);
    const Eigen::EigenSolver<Matrix> eig(interp.s);
    const ComplexMatrix modes = eig.eigenvectors();
    const ComplexMatrix coords = modes.partialPivLu().solve(w0.cast<Complex>());
    const ErrorTrace trace = steady_state_error(run.trajectory, "y", [&](double t) -> Vector {
        const ComplexMatrix flow = (eig.eigenvalues() * t).array().exp().matrix();
        const Vector omega = (modes * flow.cwiseProduct(coords)).real();
        return moment.moment * omega;
    });
    CHECK(trace.window_sup < 1e-5);
    CHECK(trace.window_sup == doctest::Approx(run.error.window_sup).epsilon(1e-3));
}
