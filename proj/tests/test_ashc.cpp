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
#include "mmashc/ashc.hpp"
#include "mmashc/errors.hpp"
#include "mmashc/random_models.hpp"
#include "mmashc/spring_mass.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace mmashc;
using mmashc::testing::max_abs;

namespace {

Matrix rows(std::initializer_list<std::initializer_list<double>> values) {
    Matrix m(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& row : values) {
        Eigen::Index j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

std::string failing_condition(const StateSpaceModel& sys, const Matrix& p) {
    try {
        design_abstraction(sys, p);
    } catch (const PreconditionError& e) {
        return e.condition();
    }
    return "";
}

}  // namespace

TEST_CASE("geometric design on the two-mass plant") {
    const SpringMassData d = spring_mass_data();
    const AbstractionDesign design = design_abstraction(d.plant, d.p);

    // Hand-derived: L^ = -(E B)^{-1} E A P with E B = diag(0.05, 0.1).
    CHECK(max_abs(design.l_hat - rows({{-1850, -50}, {-50, -950}})) < 1e-9);
    CHECK(max_abs(design.f - rows({{0, 10}, {-10, 0}})) < 1e-12);
    CHECK(max_abs(design.e - rows({{0, -10, 1, 0}, {10, 0, 0, 1}})) < 1e-12);
    CHECK(max_abs(design.d - rows({{0, 0}, {0, 0}, {1, 0}, {0, 1}})) < 1e-12);
    CHECK(max_abs(design.m_map - rows({{1, 0, 0, 0}, {0, 1, 0, 0}})) < 1e-12);
    CHECK(max_abs(design.g - rows({{0, 0, 1, 0}, {0, 0, 0, 1}})) < 1e-12);
    CHECK(max_abs(design.h - Matrix::Identity(2, 2)) < 1e-12);
    CHECK(max_abs(design.gamma - rows({{1, 0}, {0, 1}, {0, 0}, {0, 0}})) < 1e-12);
    // Rows 1-2 are -L^ M.
    CHECK(max_abs(design.n_map - rows({{1850, 50, 0, 0}, {50, 950, 0, 0}, {0, -10, 1, 0}, {10, 0, 0, 1}})) < 1e-9);

    for (const auto& r : design_residuals(design, d.plant)) CHECK_MESSAGE(r.pass(), r.name);
    for (const auto& r : m_relation_residuals(d.plant, design.abstract_system(), design.m_map, design.n_map,
                                              design.gamma)) {
        CHECK_MESSAGE(r.pass(), r.name);
    }
    const StateSpaceModel fin = final_abstraction(design, d.plant);
    CHECK(max_abs(fin.b()) < 1e-15);
    CHECK(max_abs(fin.c() - Matrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("geometric design rejects inadmissible P with the failing condition") {
    const StateSpaceModel plant = spring_mass_plant();
    Matrix e3 = Matrix::Zero(4, 1);
    e3(2, 0) = 1.0;
    CHECK(failing_condition(plant, e3) == "im(AP) in im(P)+im(B)");

    Matrix e1 = Matrix::Zero(4, 1);
    e1(0, 0) = 1.0;
    CHECK(failing_condition(plant, e1) == "im(P)+ker(C)=R^n");

    Matrix twice(4, 2);
    twice << 1, 1, 0, 0, 0, 0, -10, -10;
    CHECK(failing_condition(plant, twice) == "P injective");
    CHECK_THROWS_AS(design_abstraction(plant, Matrix::Ones(3, 1)), DimensionError);
}

TEST_CASE("identity abstraction") {
    ModelSampler sampler(21);
    const StateSpaceModel sys = sampler.stable_system(4, 2, 2);
    const AbstractionDesign design = design_abstraction(sys, Matrix::Identity(4, 4));
    CHECK(max_abs(design.f - sys.a()) < 1e-12);
    CHECK(max_abs(design.l_hat) == 0.0);
    CHECK(design.d.cols() == 0);
    CHECK(max_abs(design.h - sys.c()) < 1e-12);
    for (const auto& r : design_residuals(design, sys)) CHECK_MESSAGE(r.pass(), r.name);
}

TEST_CASE("M-relation search") {
    const SpringMassData d = spring_mass_data();
    const MRelationReport rel = check_m_relation(d.plant, d.abstract(), d.m_map);
    CHECK(rel.accepted);
    CHECK(rel.failing.empty());
    CHECK(max_abs(d.abstract().b() * rel.gamma - d.m_map * d.plant.b()) < 1e-9);

    Matrix bad = d.m_map;
    bad(0, 2) = 1.0;
    const MRelationReport refuted = check_m_relation(d.plant, d.abstract(), bad);
    CHECK_FALSE(refuted.accepted);
    CHECK_FALSE(refuted.failing.empty());
}

TEST_CASE("certificate on the two-mass benchmark") {
    const SpringMassSetup setup = spring_mass_setup();
    const SimulationCertificate& cert = setup.cert;
    const SpringMassData& d = setup.data;
    CHECK(cert.lambda == doctest::Approx(2.7).epsilon(1e-9));
    CHECK(max_abs(cert.p - d.p) < 1e-9);
    CHECK(max_abs(cert.r_hat - Matrix::Ones(2, 4)) == 0.0);
    CHECK(cert.gamma_gain > 0.0);
    for (const auto& r : certificate_residuals(cert, d.plant, d.abstract())) CHECK_MESSAGE(r.pass(), r.name);

    ModelSampler sampler(4);
    for (int i = 0; i < 200; ++i) {
        const Vector xi = sampler.normal_vector(2);
        const Vector x = 10.0 * sampler.normal_vector(4);
        const double gap = (d.plant.c() * x - d.h * xi).norm();
        CHECK(simulation_fn_value(cert, xi, x) >= gap * (1.0 - 1e-12));
    }
    const Vector xi = d.xi0;
    CHECK(simulation_fn_value(cert, xi, d.p * xi) < 1e-12);
    CHECK(simulation_fn_derivative(cert, d.plant, d.abstract(), xi, d.p * xi, Vector::Zero(4)) == 0.0);

    const Vector v = sampler.normal_vector(4);
    const Vector x = sampler.normal_vector(4);
    CHECK(max_abs(interface_eval(cert, v, xi, x) - (cert.k * x + stabilizing_link(cert, v, xi))) < 1e-9);
    CHECK(max_abs(closed_loop_projection(cert, d.plant, d.f) - cert.p) < 1e-9);
}

TEST_CASE("certificate preconditions") {
    const SpringMassSetup setup = spring_mass_setup();
    const SpringMassData& d = setup.data;
    Matrix p = d.p;
    p(0, 0) += 1e-3;
    try {
        synth_certificate_with_p(d.plant, d.abstract(), p, d.l_hat, setup.k);
        FAIL("expected the perturbed P to be rejected");
    } catch (const PreconditionError& e) {
        CHECK(e.condition() == "P F = A P + B L^");
    }
    CHECK_THROWS_AS(synth_certificate(d.plant, d.abstract(), d.l_hat, Matrix::Zero(2, 4)), SpectralError);
    CHECK_THROWS_AS(synth_certificate(d.plant, d.abstract(), d.l_hat, setup.k, {.lambda_fraction = 1.5}),
                    PreconditionError);
    const StateSpaceModel wrong_h(d.f, d.g, 2.0 * d.h);
    CHECK_THROWS_AS(synth_certificate(d.plant, wrong_h, d.l_hat, setup.k), PreconditionError);
}

TEST_CASE("R^ selection") {
    const SpringMassSetup setup = spring_mass_setup();
    const SpringMassData& d = setup.data;
    const RHatFit fit = optimize_r_hat(d.p, d.plant.b(), d.g);
    CHECK(max_abs(fit.r_hat - pseudo_inverse(d.plant.b()) * d.p * d.g) < 1e-12);
    CHECK_FALSE(fit.b_rank_deficient);
    const double ones_residual = (d.plant.b() * Matrix::Ones(2, 4) - d.p * d.g).norm();
    CHECK(fit.residual <= ones_residual);

    const SimulationCertificate optimized =
        synth_certificate(d.plant, d.abstract(), d.l_hat, setup.k, {.r_hat = RHatOptimize{}});
    CHECK(optimized.gamma_gain <= setup.cert.gamma_gain * (1.0 + 1e-12));
    const Matrix explicit_r = 2.0 * Matrix::Ones(2, 4);
    CHECK(max_abs(synth_certificate(d.plant, d.abstract(), d.l_hat, setup.k, {.r_hat = explicit_r}).r_hat -
                  explicit_r) == 0.0);
}

TEST_CASE("stabilizing link evaluation") {
    const SpringMassSetup setup = spring_mass_setup();
    const StabilizedLink link = setup.link(true);
    CHECK(link.stabilized());
    CHECK_FALSE(setup.link(false).stabilized());
    ModelSampler sampler(5);
    const Vector x = sampler.normal_vector(4);
    const Vector u = sampler.normal_vector(2);
    const Vector xi = sampler.normal_vector(2);
    const Vector expected = link.n_map * x + link.gamma * u + link.k_hat * (xi - setup.design.m_map * x);
    CHECK(max_abs(link_eval(link, setup.design.m_map, x, u, xi) - expected) < 1e-12);
    const Matrix cl = setup.data.f + setup.data.g * setup.k_hat;
    CHECK(spectrum_mismatch(eigenvalues(cl).eigenvalues, setup.data.k_hat_poles) < 1e-6);
}
