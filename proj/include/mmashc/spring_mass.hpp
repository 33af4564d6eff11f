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
#ifndef MMASHC_SPRING_MASS_HPP
#define MMASHC_SPRING_MASS_HPP

// Two-spring two-mass benchmark: plant data, the reference abstraction and
// the four interconnection scenarios built on it.

#include "mmashc/ashc.hpp"
#include "mmashc/signals.hpp"
#include "mmashc/sim.hpp"

#include <cstdint>
#include <vector>

namespace mmashc {

struct SpringMassParameters {
    double k1 = 100.0;  ///< N/m
    double k2 = 50.0;   ///< N/m
    double m1 = 20.0;   ///< kg
    double m2 = 10.0;   ///< kg
};

/// x = [x1, x2, x1', x2'], u = forces, y = displacements.
StateSpaceModel spring_mass_plant(const SpringMassParameters& params = {});

/// Benchmark matrices, initial conditions, pole sets and signals.
struct SpringMassData {
    SpringMassParameters params;
    StateSpaceModel plant;
    Matrix f, g, h;
    Matrix p, l_hat;
    Matrix m_map, d;
    Matrix r_hat;
    Matrix n_printed;  ///< N exactly as listed with the example
    Matrix gamma;
    Vector x0, xi0;
    std::vector<Complex> plant_spectrum;  ///< {+-3.1623i, +-1.5811i}
    std::vector<Complex> k_poles;         ///< sigma(A + B K)
    std::vector<Complex> k_hat_poles;     ///< sigma(F + G K^)
    SignalSpec v;                         ///< abstract input for the bounded-error run
    SignalSpec u;                         ///< plant input for the M-relation run

    StateSpaceModel abstract() const { return StateSpaceModel(f, g, h); }
};

SpringMassData spring_mass_data(const SpringMassParameters& params = {});

/// Everything derived from the data: gains, certificate and geometric design.
struct SpringMassSetup {
    SpringMassData data;
    Matrix k;
    Matrix k_hat;
    SimulationCertificate cert;
    AbstractionDesign design;
    /// N from the construction; differs from n_printed in entry (1, 1).
    Matrix n_constructed;

    StabilizedLink link(bool stabilized = true) const;
};

SpringMassSetup spring_mass_setup(std::uint64_t seed = 0);

/// Bounded-error interconnection, v = 0 or the benchmark v.
HierarchicalScenario spring_mass_hierarchical(const SpringMassSetup& setup, bool with_input);

/// Stabilized M-relation interconnection, u = 0 or the benchmark u.
MDirectScenario spring_mass_m_direct(const SpringMassSetup& setup, bool with_input);

}  // namespace mmashc

#endif  // MMASHC_SPRING_MASS_HPP
