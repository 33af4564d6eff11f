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
#include "mmashc/spring_mass.hpp"

#include <cmath>

namespace mmashc {

StateSpaceModel spring_mass_plant(const SpringMassParameters& params) {
    const auto& [k1, k2, m1, m2] = params;
    Matrix a(4, 4);
    a << 0, 0, 1, 0,
         0, 0, 0, 1,
         -(k1 + k2) / m1, k2 / m1, 0, 0,
         k2 / m2, -k2 / m2, 0, 0;
    Matrix b = Matrix::Zero(4, 2);
    b(2, 0) = 1.0 / m1;
    b(3, 1) = 1.0 / m2;
    Matrix c = Matrix::Zero(2, 4);
    c(0, 0) = 1.0;
    c(1, 1) = 1.0;
    return StateSpaceModel(a, b, c);
}

SpringMassData spring_mass_data(const SpringMassParameters& params) {
    SpringMassData d;
    d.params = params;
    d.plant = spring_mass_plant(params);

    d.f.resize(2, 2);
    d.f << 0, 10,
           -10, 0;
    d.g = Matrix::Zero(2, 4);
    d.g(0, 2) = 1.0;
    d.g(1, 3) = 1.0;
    d.h = Matrix::Identity(2, 2);

    d.p.resize(4, 2);
    d.p << 1, 0,
           0, 1,
           0, 10,
           -10, 0;
    d.l_hat.resize(2, 2);
    d.l_hat << -1850, -50,
               -50, -950;
    d.m_map = Matrix::Zero(2, 4);
    d.m_map.leftCols(2) = Matrix::Identity(2, 2);
    d.d = Matrix::Zero(4, 2);
    d.d.bottomRows(2) = Matrix::Identity(2, 2);
    d.r_hat = Matrix::Ones(2, 4);

    d.n_printed.resize(4, 4);
    d.n_printed << -1850, 50, 0, 0,
                   50, 950, 0, 0,
                   0, -10, 1, 0,
                   10, 0, 0, 1;
    d.gamma = Matrix::Zero(4, 2);
    d.gamma.topRows(2) = Matrix::Identity(2, 2);

    d.x0.resize(4);
    d.x0 << 6.7794, -1.3348, -0.5875, 1.2143;
    d.xi0.resize(2);
    d.xi0 << -4.2811, 0.8733;

    const double w1 = std::sqrt(10.0);
    const double w2 = std::sqrt(2.5);
    d.plant_spectrum = {{0.0, w1}, {0.0, -w1}, {0.0, w2}, {0.0, -w2}};
    d.k_poles = {{-3.0, 1.5}, {-3.0, -1.5}, {-5.0, 2.0}, {-5.0, -2.0}};
    d.k_hat_poles = {{-5.0, 5.0}, {-5.0, -5.0}};

    d.v = SignalSpec({{SignalTerm::sine(51.032, 4.0)},
                      {SignalTerm::sign_sine(-25.945, 6.0)},
                      {SignalTerm::zero()},
                      {SignalTerm::cosine(48.056, 3.0)}});
    d.u = SignalSpec({{SignalTerm::sign_sine(296.881, 2.0)},
                      {SignalTerm::cosine(-161.659, 3.0)}});
    return d;
}

StabilizedLink SpringMassSetup::link(bool stabilized) const {
    return {design.n_map, design.gamma,
            stabilized ? k_hat : Matrix::Zero(k_hat.rows(), k_hat.cols())};
}

SpringMassSetup spring_mass_setup(std::uint64_t seed) {
    SpringMassSetup s;
    s.data = spring_mass_data();
    const SpringMassData& d = s.data;
    const PolePlacementOptions opts{.seed = seed};
    s.k = place_poles(d.plant.a(), d.plant.b(), real_block_diagonal(d.k_poles), opts);
    s.k_hat = place_poles(d.f, d.g, real_block_diagonal(d.k_hat_poles), opts);
    s.cert = synth_certificate(d.plant, d.abstract(), d.l_hat, s.k,
                               {.lambda_fraction = 0.9, .r_hat = d.r_hat});
    s.design = design_abstraction(d.plant, d.p);
    s.n_constructed = s.design.n_map;
    return s;
}

HierarchicalScenario spring_mass_hierarchical(const SpringMassSetup& setup, bool with_input) {
    const SpringMassData& d = setup.data;
    return {d.plant, d.abstract(), setup.cert,
            with_input ? d.v : SignalSpec::zeros(d.g.cols()), d.x0, d.xi0,
            HierarchicalWiring::Interface};
}

MDirectScenario spring_mass_m_direct(const SpringMassSetup& setup, bool with_input) {
    const SpringMassData& d = setup.data;
    return {d.plant, setup.design.abstract_system(), setup.design.m_map, setup.link(true),
            with_input ? d.u : SignalSpec::zeros(d.plant.m()), d.x0, d.xi0};
}

}  // namespace mmashc
