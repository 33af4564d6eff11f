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
#include "mmashc/sim.hpp"

#include "mmashc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mmashc {

namespace {

void require_size(const Vector& v, Eigen::Index n, const std::string& name) {
    if (v.size() != n) {
        throw DimensionError(name + ": expected " + std::to_string(n) + " entries, got " +
                             std::to_string(v.size()));
    }
    if (!v.allFinite()) throw DimensionError(name + ": non-finite entry");
}

void require_signal(const SignalSpec& s, Eigen::Index n, const std::string& name) {
    if (s.dim() != n) {
        throw DimensionError(name + ": expected " + std::to_string(n) + " channels, got " +
                             std::to_string(s.dim()));
    }
}

std::vector<double> grid_times(const TimeGrid& grid) {
    std::vector<double> times(grid.steps() + 1);
    for (std::size_t k = 0; k < times.size(); ++k) times[k] = grid.time(k);
    return times;
}

std::vector<double> row_norms(const Matrix& samples) {
    std::vector<double> out(static_cast<std::size_t>(samples.rows()));
    for (Eigen::Index k = 0; k < samples.rows(); ++k) out[static_cast<std::size_t>(k)] = samples.row(k).norm();
    return out;
}

Matrix sample_signal(const SignalSpec& s, const std::vector<double>& times) {
    Matrix out(static_cast<Eigen::Index>(times.size()), s.dim());
    for (std::size_t k = 0; k < times.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = s(times[k]).transpose();
    return out;
}

double sup_row_gap(const Matrix& x, const Matrix& y) {
    double worst = 0.0;
    for (Eigen::Index k = 0; k < x.rows(); ++k) worst = std::max(worst, (x.row(k) - y.row(k)).norm());
    return worst;
}

}  // namespace

void TimeGrid::validate() const {
    if (!(std::isfinite(step) && step > 0.0)) throw DimensionError("time grid: step must be positive");
    if (!(std::isfinite(horizon) && horizon >= step)) {
        throw DimensionError("time grid: horizon must be at least one step");
    }
    const double ratio = horizon / step;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
        throw DimensionError("time grid: horizon is not an integer number of steps");
    }
}

std::size_t TimeGrid::steps() const {
    return static_cast<std::size_t>(std::llround(horizon / step));
}

std::string_view topology_name(Topology topology) {
    switch (topology) {
        case Topology::Custom: return "custom";
        case Topology::DirectGenerator: return "direct-generator";
        case Topology::SwappedFilter: return "swapped-filter";
        case Topology::Hierarchical: return "hierarchical";
        case Topology::MDirect: return "m-direct";
        case Topology::MDirectStabilized: return "m-direct-stabilized";
        case Topology::MSwapped: return "m-swapped";
    }
    return "custom";
}

Topology topology_from_name(std::string_view name) {
    for (Topology t : {Topology::DirectGenerator, Topology::SwappedFilter, Topology::Hierarchical,
                       Topology::MDirect, Topology::MDirectStabilized, Topology::MSwapped}) {
        if (topology_name(t) == name) return t;
    }
    throw ParseError("unknown topology '" + std::string(name) + "'");
}

void Trajectory::add_block(const std::string& name, Matrix samples) {
    if (samples.rows() != static_cast<Eigen::Index>(times.size())) {
        throw DimensionError("trajectory block " + name + ": row count differs from time grid");
    }
    TrajectoryBlock block;
    block.name = name;
    for (Eigen::Index j = 0; j < samples.cols(); ++j) block.labels.push_back(name + std::to_string(j + 1));
    block.samples = std::move(samples);
    blocks.push_back(std::move(block));
}

const TrajectoryBlock& Trajectory::block(std::string_view name) const {
    for (const auto& b : blocks) {
        if (b.name == name) return b;
    }
    throw DimensionError("trajectory has no block '" + std::string(name) + "'");
}

bool Trajectory::has_block(std::string_view name) const {
    return std::any_of(blocks.begin(), blocks.end(), [&](const auto& b) { return b.name == name; });
}

std::optional<double> fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values) {
    double n = 0.0, st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t k = 0; k < times.size() && k < values.size(); ++k) {
        if (!(values[k] > 1e-12)) continue;
        const double y = std::log(values[k]);
        n += 1.0;
        st += times[k];
        sy += y;
        stt += times[k] * times[k];
        sty += times[k] * y;
    }
    const double denom = n * stt - st * st;
    if (n < 2.0 || denom <= 0.0) return std::nullopt;
    return -(n * sty - st * sy) / denom;
}

bool envelope_nonincreasing(const std::vector<double>& times, const std::vector<double>& values,
                            double window, double floor) {
    if (times.empty() || window <= 0.0) return true;
    std::vector<double> maxima;
    const double start = times.front();
    for (std::size_t k = 0; k < times.size() && k < values.size(); ++k) {
        const auto slot = static_cast<std::size_t>((times[k] - start) / window);
        if (slot >= maxima.size()) maxima.resize(slot + 1, floor);
        maxima[slot] = std::max(maxima[slot], std::max(values[k], floor));
    }
    for (std::size_t i = 1; i < maxima.size(); ++i) {
        if (maxima[i] > maxima[i - 1] * (1.0 + 1e-12)) return false;
    }
    return true;
}

ErrorTrace make_error_trace(std::vector<double> times, std::vector<double> state_norm,
                            std::vector<double> output_norm, double settle_fraction) {
    if (!(settle_fraction > 0.0 && settle_fraction < 1.0)) {
        throw DimensionError("error trace: settle fraction must lie in (0, 1)");
    }
    if (times.empty() || output_norm.size() != times.size() ||
        (!state_norm.empty() && state_norm.size() != times.size())) {
        throw DimensionError("error trace: norm histories do not match the time grid");
    }
    ErrorTrace trace;
    trace.settle_fraction = settle_fraction;
    const double window_start = times.front() + settle_fraction * (times.back() - times.front());
    std::size_t window_samples = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        trace.sup_norm = std::max(trace.sup_norm, output_norm[k]);
        if (times[k] >= window_start) {
            ++window_samples;
            trace.window_sup = std::max(trace.window_sup, output_norm[k]);
        }
    }
    if (window_samples < 10) {
        throw DimensionError("error trace: steady-state window holds fewer than 10 samples");
    }
    trace.terminal_norm = output_norm.back();
    trace.decay_rate = fit_decay_rate(times, output_norm);
    trace.times = std::move(times);
    trace.state_norm = std::move(state_norm);
    trace.output_norm = std::move(output_norm);
    return trace;
}

Matrix rk4_integrate(const OdeRhs& rhs, const Vector& z0, const TimeGrid& grid) {
    grid.validate();
    if (!z0.allFinite()) throw SimulationError(0.0, "integrate: non-finite initial state");
    const std::size_t steps = grid.steps();
    const double h = grid.step;
    const Eigen::Index dim = z0.size();

    Matrix out(static_cast<Eigen::Index>(steps + 1), dim);
    out.row(0) = z0.transpose();
    Vector z = z0;
    Vector k1(dim), k2(dim), k3(dim), k4(dim), work(dim);
    for (std::size_t k = 0; k < steps; ++k) {
        const double t = grid.time(k);
        rhs(t, z, k1);
        work = z + 0.5 * h * k1;
        rhs(t + 0.5 * h, work, k2);
        work = z + 0.5 * h * k2;
        rhs(t + 0.5 * h, work, k3);
        work = z + h * k3;
        rhs(t + h, work, k4);
        z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!z.allFinite()) {
            throw SimulationError(grid.time(k + 1), "integrate: state diverged at t = " +
                                                        std::to_string(grid.time(k + 1)) + " s");
        }
        out.row(static_cast<Eigen::Index>(k + 1)) = z.transpose();
    }
    return out;
}

Matrix integrate_linear(const Matrix& a, const Matrix& b, const SignalSpec& w, const Vector& z0,
                        const TimeGrid& grid) {
    require_square(a, "integrate_linear A");
    require_size(z0, a.rows(), "integrate_linear z0");
    if (b.rows() != a.rows() || b.cols() != w.dim()) {
        throw DimensionError("integrate_linear: input matrix does not match the signal");
    }
    const bool forced = !w.identically_zero();
    return rk4_integrate(
        [&](double t, const Vector& z, Vector& dz) {
            dz = a * z;
            if (forced) dz += b * w(t);
        },
        z0, grid);
}

SimulationResult run_direct_generator(const StateSpaceModel& plant, const DirectInterpolant& interp,
                                      const Vector& w0, const Vector& x0, const TimeGrid& grid) {
    interp.validate();
    const Eigen::Index n = plant.n();
    const Eigen::Index order = interp.s.rows();
    require_size(w0, order, "w0");
    require_size(x0, n, "x0");
    if (interp.l.rows() != plant.m()) throw DimensionError("generator: L must have m rows");

    const SpectrumReport s_spec = eigenvalues(interp.s);
    if (!s_spec.all_simple) {
        throw PreconditionError("sigma(S) simple", "direct generator: S must have simple eigenvalues");
    }
    SimulationResult result;
    result.hypotheses = {
        {"sigma(A) Hurwitz", eigenvalues(plant.a()).hurwitz()},
        {"sigma(S) on the imaginary axis", s_spec.on_imaginary_axis()},
        {"sigma(S) simple", s_spec.all_simple},
        {"(S, L) observable", pbh_observable(interp.s, interp.l)},
        {"(S, w0) excitable", excitable(interp.s, w0)},
    };
    const DirectMomentSolution moment = moment_direct(plant, interp, {.require_interpolant_pbh = false});

    Matrix system = Matrix::Zero(order + n, order + n);
    system.topLeftCorner(order, order) = interp.s;
    system.bottomLeftCorner(n, order) = plant.b() * interp.l;
    system.bottomRightCorner(n, n) = plant.a();
    Vector z0(order + n);
    z0 << w0, x0;
    const Matrix samples = integrate_linear(system, Matrix::Zero(order + n, 1), SignalSpec::zeros(1), z0, grid);

    Trajectory& traj = result.trajectory;
    traj.topology = Topology::DirectGenerator;
    traj.step = grid.step;
    traj.times = grid_times(grid);
    const Matrix omega = samples.leftCols(order);
    const Matrix x = samples.rightCols(n);
    const Matrix y = x * plant.c().transpose();
    const Matrix y_ss = omega * moment.moment.transpose();
    traj.add_block("omega", omega);
    traj.add_block("x", x);
    traj.add_block("y", y);
    traj.add_block("y_ss", y_ss);
    traj.add_block("e_y", y - y_ss);

    result.error = make_error_trace(traj.times, row_norms(x - omega * moment.pi.transpose()),
                                    row_norms(y - y_ss));
    return result;
}

SimulationResult run_swapped_filter(const StateSpaceModel& plant, const SwappedInterpolant& interp,
                                    const SignalSpec& u, const TimeGrid& grid) {
    interp.validate();
    const Eigen::Index n = plant.n();
    const Eigen::Index order = interp.q.rows();
    require_signal(u, plant.m(), "u");
    if (interp.r.cols() != plant.p()) throw DimensionError("filter: R must have p columns");
    if (!u.exponentially_decaying()) {
        throw PreconditionError("u exponentially decaying",
                                "swapped filter: input must decay exponentially to zero");
    }
    const SpectrumReport q_spec = eigenvalues(interp.q);
    if (!q_spec.all_simple) {
        throw PreconditionError("sigma(Q) simple", "swapped filter: Q must have simple eigenvalues");
    }
    SimulationResult result;
    result.hypotheses = {
        {"sigma(A) Hurwitz", eigenvalues(plant.a()).hurwitz()},
        {"sigma(Q) on the imaginary axis", q_spec.on_imaginary_axis()},
        {"sigma(Q) simple", q_spec.all_simple},
        {"(Q, R) reachable", pbh_reachable(interp.q, interp.r)},
    };
    const SwappedMomentSolution moment = moment_swapped(plant, interp, {.require_interpolant_pbh = false});

    // z = [x; varpi; zeta], zeta runs the limiting model in parallel.
    const Eigen::Index dim = n + 2 * order;
    Matrix system = Matrix::Zero(dim, dim);
    system.topLeftCorner(n, n) = plant.a();
    system.block(n, 0, order, n) = interp.r * plant.c();
    system.block(n, n, order, order) = interp.q;
    system.bottomRightCorner(order, order) = interp.q;
    Matrix input = Matrix::Zero(dim, plant.m());
    input.topRows(n) = plant.b();
    input.bottomRows(order) = moment.moment;
    const Matrix samples = integrate_linear(system, input, u, Vector::Zero(dim), grid);

    Trajectory& traj = result.trajectory;
    traj.topology = Topology::SwappedFilter;
    traj.step = grid.step;
    traj.times = grid_times(grid);
    const Matrix x = samples.leftCols(n);
    const Matrix varpi = samples.middleCols(n, order);
    const Matrix zeta = samples.rightCols(order);
    const Matrix gap = varpi - zeta + x * moment.upsilon.transpose();
    traj.add_block("u", sample_signal(u, traj.times));
    traj.add_block("x", x);
    traj.add_block("y", x * plant.c().transpose());
    traj.add_block("varpi", varpi);
    traj.add_block("zeta", zeta);
    traj.add_block("gap", gap);

    const std::vector<double> norms = row_norms(gap);
    result.error = make_error_trace(traj.times, norms, norms);
    return result;
}

SimulationResult run_hierarchical(const StateSpaceModel& plant, const StateSpaceModel& abstract,
                                  const SimulationCertificate& cert, const SignalSpec& v,
                                  const Vector& x0, const Vector& xi0, const TimeGrid& grid,
                                  HierarchicalWiring wiring) {
    const Eigen::Index n = plant.n();
    const Eigen::Index order = abstract.n();
    require_size(x0, n, "x0");
    require_size(xi0, order, "xi0");
    require_signal(v, abstract.m(), "v");
    if (cert.p.rows() != n || cert.p.cols() != order || cert.r_hat.cols() != abstract.m()) {
        throw DimensionError("hierarchical: certificate does not match the systems");
    }

    const Matrix& a = plant.a();
    const Matrix& b = plant.b();
    const Matrix a_cl = a + b * cert.k;
    Vector z0(order + n);
    z0 << xi0, x0;
    const Matrix samples = rk4_integrate(
        [&](double t, const Vector& z, Vector& dz) {
            const Vector vt = v(t);
            const auto xi = z.head(order);
            const auto x = z.tail(n);
            dz.resize(order + n);
            dz.head(order) = abstract.a() * xi + abstract.b() * vt;
            if (wiring == HierarchicalWiring::Interface) {
                dz.tail(n) = a * x + b * interface_eval(cert, vt, xi, x);
            } else {
                dz.tail(n) = a_cl * x + b * stabilizing_link(cert, vt, xi);
            }
        },
        z0, grid);

    SimulationResult result;
    Trajectory& traj = result.trajectory;
    traj.topology = Topology::Hierarchical;
    traj.step = grid.step;
    traj.times = grid_times(grid);
    const Matrix xi = samples.leftCols(order);
    const Matrix x = samples.rightCols(n);
    const Matrix v_samples = sample_signal(v, traj.times);
    Matrix u(x.rows(), plant.m());
    for (Eigen::Index k = 0; k < x.rows(); ++k) {
        u.row(k) = interface_eval(cert, v_samples.row(k).transpose(), xi.row(k).transpose(),
                                  x.row(k).transpose())
                       .transpose();
    }
    const Matrix y = x * plant.c().transpose();
    const Matrix psi = xi * abstract.c().transpose();
    const Matrix e_s = x - xi * cert.p.transpose();
    traj.add_block("xi", xi);
    traj.add_block("x", x);
    traj.add_block("v", v_samples);
    traj.add_block("u", u);
    traj.add_block("psi", psi);
    traj.add_block("y", y);
    traj.add_block("e_y", y - psi);

    result.error = make_error_trace(traj.times, row_norms(e_s), row_norms(y - psi));
    result.initial_value = simulation_fn_value(cert, xi0, x0);
    result.gamma_term = cert.gamma(v.sampled_sup_norm(grid.horizon, grid.step));
    result.bound = std::max(*result.initial_value, *result.gamma_term);

    // e_s' = (A + B K) e_s + (B R^ - P G) v, integrated on its own.
    const Matrix forcing = b * cert.r_hat - cert.p * abstract.b();
    const Matrix independent = integrate_linear(a_cl, forcing, v, x0 - cert.p * xi0, grid);
    result.error_dynamics_mismatch = sup_row_gap(e_s, independent);

    result.hypotheses = {
        {"sigma(A + B K) Hurwitz", eigenvalues(a_cl).hurwitz()},
        {"(F, L^) observable", pbh_observable(abstract.a(), cert.l_hat)},
        {"(F, xi0) excitable", excitable(abstract.a(), xi0)},
        {"v identically zero", v.identically_zero()},
    };
    return result;
}

SimulationResult run_m_direct(const StateSpaceModel& plant, const StateSpaceModel& abstract,
                              const Matrix& m_map, const StabilizedLink& link, const SignalSpec& u,
                              const Vector& x0, const Vector& xi0, const TimeGrid& grid) {
    const Eigen::Index n = plant.n();
    const Eigen::Index order = abstract.n();
    require_size(x0, n, "x0");
    require_size(xi0, order, "xi0");
    require_signal(u, plant.m(), "u");
    if (m_map.rows() != order || m_map.cols() != n || link.n_map.rows() != abstract.m() ||
        link.n_map.cols() != n || link.gamma.rows() != abstract.m() || link.gamma.cols() != plant.m()) {
        throw DimensionError("m-direct: link matrices do not match the systems");
    }
    if (link.k_hat.size() > 0 && (link.k_hat.rows() != abstract.m() || link.k_hat.cols() != order)) {
        throw DimensionError("m-direct: K^ must be m^ x n^");
    }

    SimulationResult result;
    const Matrix k_hat = link.k_hat.size() > 0 ? link.k_hat : Matrix::Zero(abstract.m(), order);
    const Matrix error_dynamics = abstract.a() + abstract.b() * k_hat;
    const bool on_invariant_set = (xi0 - m_map * x0).norm() <= 1e-12 * std::max(1.0, xi0.norm());
    const bool error_hurwitz = eigenvalues(error_dynamics).hurwitz();
    result.hypotheses = {
        {"xi0 = M x0", on_invariant_set},
        {"F + G K^ Hurwitz", error_hurwitz},
    };
    for (const auto& r : m_relation_residuals(plant, abstract, m_map, link.n_map, link.gamma, 1e-8)) {
        result.hypotheses.push_back({r.name, r.pass()});
        if (!r.pass()) result.warnings.push_back("M-relation identity violated: " + r.name);
    }
    if (!on_invariant_set && !error_hurwitz) {
        result.warnings.push_back(
            "xi0 differs from M x0 and F + G K^ is not Hurwitz: outputs need not match");
    }

    Vector z0(n + order);
    z0 << x0, xi0;
    const Matrix samples = rk4_integrate(
        [&](double t, const Vector& z, Vector& dz) {
            const Vector ut = u(t);
            const Vector x = z.head(n);
            const Vector xi = z.tail(order);
            dz.resize(n + order);
            dz.head(n) = plant.a() * x + plant.b() * ut;
            dz.tail(order) = abstract.a() * xi + abstract.b() * link_eval(link, m_map, x, ut, xi);
        },
        z0, grid);

    Trajectory& traj = result.trajectory;
    traj.topology = link.stabilized() ? Topology::MDirectStabilized : Topology::MDirect;
    traj.step = grid.step;
    traj.times = grid_times(grid);
    const Matrix x = samples.leftCols(n);
    const Matrix xi = samples.rightCols(order);
    const Matrix u_samples = sample_signal(u, traj.times);
    Matrix v(x.rows(), abstract.m());
    for (Eigen::Index k = 0; k < x.rows(); ++k) {
        v.row(k) = link_eval(link, m_map, x.row(k).transpose(), u_samples.row(k).transpose(),
                             xi.row(k).transpose())
                       .transpose();
    }
    const Matrix y = x * plant.c().transpose();
    const Matrix psi = xi * abstract.c().transpose();
    const Matrix eps_s = xi - x * m_map.transpose();
    traj.add_block("x", x);
    traj.add_block("xi", xi);
    traj.add_block("u", u_samples);
    traj.add_block("v", v);
    traj.add_block("y", y);
    traj.add_block("psi", psi);
    traj.add_block("eps_y", psi - y);

    result.error = make_error_trace(traj.times, row_norms(eps_s), row_norms(psi - y));
    const Matrix independent =
        integrate_linear(error_dynamics, Matrix::Zero(order, 1), SignalSpec::zeros(1), xi0 - m_map * x0, grid);
    result.error_dynamics_mismatch = sup_row_gap(eps_s, independent);
    return result;
}

SimulationResult run_m_swapped(const StateSpaceModel& aux_plant, const Matrix& f, const Matrix& g,
                               const Matrix& m_map, const SignalSpec& u, const TimeGrid& grid) {
    const Eigen::Index n = aux_plant.n();
    require_square(f, "F");
    require_finite(g, "G");
    require_finite(m_map, "M");
    const Eigen::Index order = f.rows();
    if (g.rows() != order || g.cols() != aux_plant.p() || m_map.rows() != order || m_map.cols() != n) {
        throw DimensionError("m-swapped: F, G, M do not match the auxiliary plant");
    }
    require_signal(u, aux_plant.m(), "u");
    if (!eigenvalues(aux_plant.a()).hurwitz()) {
        throw SpectralError("m-swapped: plant must be Hurwitz (pre-stabilize it first)");
    }
    if (!u.exponentially_decaying()) {
        throw PreconditionError("u exponentially decaying",
                                "m-swapped: input must decay exponentially to zero");
    }
    SimulationResult result;
    const SpectrumReport f_spec = eigenvalues(f);
    const Matrix minus_n = aux_plant.c();
    const double relation = (m_map * aux_plant.a() - f * m_map + g * minus_n).norm() /
                            std::max(1.0, (m_map * aux_plant.a()).norm());
    result.hypotheses = {
        {"sigma(F) on the imaginary axis", f_spec.on_imaginary_axis()},
        {"sigma(F) simple", f_spec.all_simple},
        {"sigma(F), sigma(A) disjoint", spectra_disjoint(f, aux_plant.a())},
        {"(F, G) reachable", pbh_reachable(f, g)},
        {"M A = F M + G N", relation <= 1e-8},
    };
    if (relation > 1e-8) result.warnings.push_back("M A = F M + G N is violated");

    // z = [x; xi; xi_lim]
    const Eigen::Index dim = n + 2 * order;
    Matrix system = Matrix::Zero(dim, dim);
    system.topLeftCorner(n, n) = aux_plant.a();
    system.block(n, 0, order, n) = g * minus_n;
    system.block(n, n, order, order) = f;
    system.bottomRightCorner(order, order) = f;
    Matrix input = Matrix::Zero(dim, aux_plant.m());
    input.topRows(n) = aux_plant.b();
    input.bottomRows(order) = m_map * aux_plant.b();
    const Matrix samples = integrate_linear(system, input, u, Vector::Zero(dim), grid);

    Trajectory& traj = result.trajectory;
    traj.topology = Topology::MSwapped;
    traj.step = grid.step;
    traj.times = grid_times(grid);
    const Matrix x = samples.leftCols(n);
    const Matrix xi = samples.middleCols(n, order);
    const Matrix xi_lim = samples.rightCols(order);
    const Matrix gap = xi - xi_lim + x * m_map.transpose();
    traj.add_block("u", sample_signal(u, traj.times));
    traj.add_block("x", x);
    traj.add_block("ystar", x * minus_n.transpose());
    traj.add_block("xi", xi);
    traj.add_block("xi_lim", xi_lim);
    traj.add_block("gap", gap);

    const std::vector<double> norms = row_norms(gap);
    result.error = make_error_trace(traj.times, norms, norms);
    return result;
}

ErrorTrace steady_state_error(const Trajectory& traj, std::string_view output_block,
                              const std::function<Vector(double)>& predictor, double settle_fraction) {
    const TrajectoryBlock& block = traj.block(output_block);
    std::vector<double> norms(traj.times.size());
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const Vector expected = predictor(traj.times[k]);
        if (expected.size() != block.samples.cols()) {
            throw DimensionError("steady_state_error: predictor dimension differs from the block");
        }
        norms[k] = (block.samples.row(static_cast<Eigen::Index>(k)).transpose() - expected).norm();
    }
    return make_error_trace(traj.times, {}, std::move(norms), settle_fraction);
}

Topology InterconnectionSpec::topology() const {
    struct Visitor {
        Topology operator()(const DirectGeneratorScenario&) const { return Topology::DirectGenerator; }
        Topology operator()(const SwappedFilterScenario&) const { return Topology::SwappedFilter; }
        Topology operator()(const HierarchicalScenario&) const { return Topology::Hierarchical; }
        Topology operator()(const MDirectScenario& s) const {
            return s.link.stabilized() ? Topology::MDirectStabilized : Topology::MDirect;
        }
        Topology operator()(const MSwappedScenario&) const { return Topology::MSwapped; }
    };
    return std::visit(Visitor{}, scenario);
}

SimulationResult integrate(const InterconnectionSpec& spec) {
    struct Visitor {
        const TimeGrid& grid;
        SimulationResult operator()(const DirectGeneratorScenario& s) const {
            return run_direct_generator(s.plant, s.interp, s.w0, s.x0, grid);
        }
        SimulationResult operator()(const SwappedFilterScenario& s) const {
            return run_swapped_filter(s.plant, s.interp, s.u, grid);
        }
        SimulationResult operator()(const HierarchicalScenario& s) const {
            return run_hierarchical(s.plant, s.abstract, s.cert, s.v, s.x0, s.xi0, grid, s.wiring);
        }
        SimulationResult operator()(const MDirectScenario& s) const {
            return run_m_direct(s.plant, s.abstract, s.m_map, s.link, s.u, s.x0, s.xi0, grid);
        }
        SimulationResult operator()(const MSwappedScenario& s) const {
            return run_m_swapped(s.aux_plant, s.f, s.g, s.m_map, s.u, grid);
        }
    };
    return std::visit(Visitor{spec.grid}, spec.scenario);
}

}  // namespace mmashc
