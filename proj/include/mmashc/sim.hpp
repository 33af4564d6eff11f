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
#ifndef MMASHC_SIM_HPP
#define MMASHC_SIM_HPP

// Fixed-step RK4 simulation of the interconnections used to check the
// steady-state matching and bounded-error properties:
//
//   direct-generator     omega' = S omega,  x' = A x + B L omega
//   swapped-filter       x' = A x + B u,    varpi' = Q varpi + R C x
//   hierarchical         xi' = F xi + G v,  x' = A x + B u_v(v, xi, x)
//   m-direct(-stabilized) x' = A x + B u,   xi' = F xi + G (N x + Gamma u + K^ (xi - M x))
//   m-swapped            x' = A x + B u,    xi' = F xi + G (-N x)

#include "mmashc/ashc.hpp"
#include "mmashc/moments.hpp"
#include "mmashc/signals.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mmashc {

struct TimeGrid {
    double horizon = 10.0;  ///< s
    double step = 1e-3;     ///< s

    /// Throws unless step > 0, horizon >= step and horizon/step is an integer
    /// to within 1e-9 relative.
    void validate() const;
    std::size_t steps() const;
    double time(std::size_t k) const { return static_cast<double>(k) * step; }
};

enum class Topology { Custom, DirectGenerator, SwappedFilter, Hierarchical, MDirect, MDirectStabilized, MSwapped };

std::string_view topology_name(Topology topology);
Topology topology_from_name(std::string_view name);

/// Named group of sampled columns, one row per time sample.
struct TrajectoryBlock {
    std::string name;
    std::vector<std::string> labels;
    Matrix samples;
};

struct Trajectory {
    Topology topology = Topology::Custom;
    double step = 0.0;
    std::vector<double> times;
    std::vector<TrajectoryBlock> blocks;

    /// Adds a block whose column labels are `name1`, `name2`, ...
    void add_block(const std::string& name, Matrix samples);
    const TrajectoryBlock& block(std::string_view name) const;
    bool has_block(std::string_view name) const;
    std::size_t size() const noexcept { return times.size(); }
};

/// Norm histories of the interconnection error. For run_* results the state
/// norm is ||e_s|| (or ||eps_s||) and the output norm ||e_y|| (or ||eps_y||).
struct ErrorTrace {
    std::vector<double> times;
    std::vector<double> state_norm;
    std::vector<double> output_norm;
    double sup_norm = 0.0;       ///< over the full horizon
    double terminal_norm = 0.0;  ///< at the final sample
    double window_sup = 0.0;     ///< over t >= settle_fraction * horizon
    double settle_fraction = 0.7;
    /// Least-squares slope of -log(output_norm) against time.
    std::optional<double> decay_rate;
};

inline constexpr double kDefaultSettleFraction = 0.7;

/// Builds the summary statistics from norm histories. Throws if the
/// trailing window holds fewer than 10 samples.
ErrorTrace make_error_trace(std::vector<double> times, std::vector<double> state_norm,
                            std::vector<double> output_norm,
                            double settle_fraction = kDefaultSettleFraction);

/// Log-linear least-squares decay rate over samples with value > 1e-12.
std::optional<double> fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values);

/// Maxima over consecutive windows of length `window` never increase, once
/// values below `floor` are clamped to `floor`.
bool envelope_nonincreasing(const std::vector<double>& times, const std::vector<double>& values,
                            double window, double floor);

using OdeRhs = std::function<void(double t, const Vector& z, Vector& dz)>;

/// Classic RK4. Row k of the result is the state at t = k * step. Throws
/// SimulationError at the first non-finite state.
Matrix rk4_integrate(const OdeRhs& rhs, const Vector& z0, const TimeGrid& grid);

/// z' = A z + B w(t), integrated with rk4_integrate.
Matrix integrate_linear(const Matrix& a, const Matrix& b, const SignalSpec& w, const Vector& z0,
                        const TimeGrid& grid);

struct HypothesisFlag {
    std::string name;
    bool holds;
};

struct SimulationResult {
    Trajectory trajectory;
    ErrorTrace error;
    std::vector<HypothesisFlag> hypotheses;
    std::vector<std::string> warnings;

    /// hierarchical: V(xi0, x0), gamma(||v||_inf) and their maximum.
    std::optional<double> initial_value;
    std::optional<double> gamma_term;
    std::optional<double> bound;
    /// Largest gap between the measured state error and an independent
    /// integration of its predicted autonomous/forced dynamics.
    std::optional<double> error_dynamics_mismatch;
};

SimulationResult run_direct_generator(const StateSpaceModel& plant, const DirectInterpolant& interp,
                                      const Vector& w0, const Vector& x0, const TimeGrid& grid = {});

/// x(0) = varpi(0) = 0; u must be exponentially decaying.
SimulationResult run_swapped_filter(const StateSpaceModel& plant, const SwappedInterpolant& interp,
                                    const SignalSpec& u, const TimeGrid& grid = {});

enum class HierarchicalWiring {
    Interface,        ///< x' = A x + B u_v(v, xi, x)
    StabilizingLink,  ///< x' = (A + B K) x + B u_v*(v, xi)
};

SimulationResult run_hierarchical(const StateSpaceModel& plant, const StateSpaceModel& abstract,
                                  const SimulationCertificate& cert, const SignalSpec& v,
                                  const Vector& x0, const Vector& xi0, const TimeGrid& grid = {},
                                  HierarchicalWiring wiring = HierarchicalWiring::Interface);

SimulationResult run_m_direct(const StateSpaceModel& plant, const StateSpaceModel& abstract,
                              const Matrix& m_map, const StabilizedLink& link, const SignalSpec& u,
                              const Vector& x0, const Vector& xi0, const TimeGrid& grid = {});

/// `aux_plant` is (A, B, -N); the abstract system acts as the filter
/// xi' = F xi + G y*. Requires A Hurwitz, x(0) = xi(0) = 0 and decaying u.
SimulationResult run_m_swapped(const StateSpaceModel& aux_plant, const Matrix& f, const Matrix& g,
                               const Matrix& m_map, const SignalSpec& u, const TimeGrid& grid = {});

/// Error of `output_block` against a closed-form predictor.
ErrorTrace steady_state_error(const Trajectory& traj, std::string_view output_block,
                              const std::function<Vector(double)>& predictor,
                              double settle_fraction = kDefaultSettleFraction);

struct DirectGeneratorScenario {
    StateSpaceModel plant;
    DirectInterpolant interp;
    Vector w0;
    Vector x0;
};

struct SwappedFilterScenario {
    StateSpaceModel plant;
    SwappedInterpolant interp;
    SignalSpec u;
};

struct HierarchicalScenario {
    StateSpaceModel plant;
    StateSpaceModel abstract;
    SimulationCertificate cert;
    SignalSpec v;
    Vector x0;
    Vector xi0;
    HierarchicalWiring wiring = HierarchicalWiring::Interface;
};

struct MDirectScenario {
    StateSpaceModel plant;
    StateSpaceModel abstract;
    Matrix m_map;
    StabilizedLink link;
    SignalSpec u;
    Vector x0;
    Vector xi0;
};

struct MSwappedScenario {
    StateSpaceModel aux_plant;
    Matrix f;
    Matrix g;
    Matrix m_map;
    SignalSpec u;
};

struct InterconnectionSpec {
    std::variant<DirectGeneratorScenario, SwappedFilterScenario, HierarchicalScenario,
                 MDirectScenario, MSwappedScenario>
        scenario;
    TimeGrid grid;

    Topology topology() const;
};

/// Dispatches to the run_* routine for the scenario's topology.
SimulationResult integrate(const InterconnectionSpec& spec);

}  // namespace mmashc

#endif  // MMASHC_SIM_HPP
