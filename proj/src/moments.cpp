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
#include "mmashc/moments.hpp"

#include "mmashc/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <string>

namespace mmashc {

namespace {

double complex_relative(const ComplexMatrix& x, const ComplexMatrix& y) {
    return (x - y).norm() / std::max(y.norm(), 1e-12);
}

void require_rows(const Matrix& m, Eigen::Index rows, const std::string& what) {
    if (m.rows() != rows) {
        throw DimensionError(what + ": expected " + std::to_string(rows) + " rows, got " +
                             std::to_string(m.rows()));
    }
}

void require_cols(const Matrix& m, Eigen::Index cols, const std::string& what) {
    if (m.cols() != cols) {
        throw DimensionError(what + ": expected " + std::to_string(cols) + " columns, got " +
                             std::to_string(m.cols()));
    }
}

}  // namespace

void DirectInterpolant::validate() const {
    require_square(s, "S");
    require_finite(l, "L");
    require_cols(l, s.rows(), "L");
}

void SwappedInterpolant::validate() const {
    require_square(q, "Q");
    require_finite(r, "R");
    require_rows(r, q.rows(), "R");
}

double relative_difference(const Matrix& x, const Matrix& y) {
    return (x - y).norm() / std::max(y.norm(), 1e-12);
}

DirectMomentSolution moment_direct(const StateSpaceModel& sys, const DirectInterpolant& interp,
                                   const MomentOptions& options) {
    interp.validate();
    require_rows(interp.l, sys.m(), "L");
    if (!spectra_disjoint(interp.s, sys.a())) {
        throw SpectralError("moment_direct: sigma(S) intersects sigma(A)");
    }
    if (options.require_interpolant_pbh && !pbh_observable(interp.s, interp.l)) {
        throw PreconditionError("observable(S,L)", "moment_direct: (S, L) is not observable");
    }
    DirectMomentSolution out;
    // Pi S = A Pi + B L  <=>  A Pi - Pi S = -B L
    out.pi = solve_sylvester(sys.a(), interp.s, -sys.b() * interp.l);
    out.moment = sys.c() * out.pi;
    return out;
}

SwappedMomentSolution moment_swapped(const StateSpaceModel& sys, const SwappedInterpolant& interp,
                                     const MomentOptions& options) {
    interp.validate();
    require_cols(interp.r, sys.p(), "R");
    if (!spectra_disjoint(interp.q, sys.a())) {
        throw SpectralError("moment_swapped: sigma(Q) intersects sigma(A)");
    }
    if (options.require_interpolant_pbh && !pbh_reachable(interp.q, interp.r)) {
        throw PreconditionError("reachable(Q,R)", "moment_swapped: (Q, R) is not reachable");
    }
    SwappedMomentSolution out;
    // Q Ups = Ups A + R C  <=>  Q Ups - Ups A = R C
    out.upsilon = solve_sylvester(interp.q, sys.a(), interp.r * sys.c());
    out.moment = out.upsilon * sys.b();
    return out;
}

StateSpaceModel rom_direct(const StateSpaceModel& sys, const DirectInterpolant& interp,
                           const Matrix& g_free) {
    interp.validate();
    require_finite(g_free, "G");
    require_rows(g_free, interp.s.rows(), "G");
    require_cols(g_free, sys.m(), "G");
    const Matrix reduced_a = interp.s - g_free * interp.l;
    if (!spectra_disjoint(interp.s, reduced_a)) {
        throw SpectralError("rom_direct: sigma(S) intersects sigma(S - G L)");
    }
    const DirectMomentSolution moment = moment_direct(sys, interp);
    return StateSpaceModel(reduced_a, g_free, moment.moment);
}

StateSpaceModel rom_swapped(const StateSpaceModel& sys, const SwappedInterpolant& interp,
                            const Matrix& h_free) {
    interp.validate();
    require_finite(h_free, "H");
    require_rows(h_free, sys.p(), "H");
    require_cols(h_free, interp.q.rows(), "H");
    const Matrix reduced_a = interp.q - interp.r * h_free;
    if (!spectra_disjoint(reduced_a, interp.q)) {
        throw SpectralError("rom_swapped: sigma(Q - R H) intersects sigma(Q)");
    }
    const SwappedMomentSolution moment = moment_swapped(sys, interp);
    return StateSpaceModel(reduced_a, moment.moment, h_free);
}

namespace {

Matrix ladder(Eigen::Index order) {
    Matrix target = Matrix::Zero(order, order);
    for (Eigen::Index i = 0; i < order; ++i) target(i, i) = -1.0 - static_cast<double>(i);
    return target;
}

}  // namespace

Matrix default_input_map(const DirectInterpolant& interp, std::uint64_t seed) {
    interp.validate();
    const Matrix k = place_poles(interp.s.transpose(), interp.l.transpose(), ladder(interp.s.rows()), {.seed = seed});
    return -k.transpose();
}

Matrix default_output_map(const SwappedInterpolant& interp, std::uint64_t seed) {
    interp.validate();
    return -place_poles(interp.q, interp.r, ladder(interp.q.rows()), {.seed = seed});
}

StateSpaceModel rom_two_sided(const StateSpaceModel& sys, const DirectInterpolant& di,
                              const SwappedInterpolant& si, TwoSidedForm form) {
    di.validate();
    si.validate();
    if (di.s.rows() != si.q.rows()) {
        throw DimensionError("rom_two_sided: S and Q must have the same order");
    }
    if (!spectra_disjoint(di.s, si.q)) {
        throw SpectralError("rom_two_sided: sigma(S) intersects sigma(Q)");
    }
    const DirectMomentSolution direct = moment_direct(sys, di);
    const SwappedMomentSolution swapped = moment_swapped(sys, si);
    const Matrix coupling = swapped.upsilon * direct.pi;

    Eigen::JacobiSVD<Matrix> svd(coupling);
    const auto& sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (smin == 0.0 || sv(0) / smin > kTwoSidedConditionLimit) {
        throw NumericalError("rom_two_sided: Ups Pi is singular or ill-conditioned");
    }
    const auto lu = coupling.partialPivLu();
    if (form == TwoSidedForm::InputMap) {
        const Matrix g = lu.solve(swapped.moment);
        return StateSpaceModel(di.s - g * di.l, g, direct.moment);
    }
    const Matrix h = coupling.transpose().partialPivLu().solve(direct.moment.transpose()).transpose();
    return StateSpaceModel(si.q - si.r * h, swapped.moment, h);
}

ComplexMatrix transfer_eval(const StateSpaceModel& sys, Complex s) {
    const Eigen::Index n = sys.n();
    const ComplexMatrix resolvent_arg =
        s * ComplexMatrix::Identity(n, n) - sys.a().cast<Complex>();
    Eigen::PartialPivLU<ComplexMatrix> lu(resolvent_arg);
    if (!(lu.rcond() > 1e-12)) {
        throw SpectralError("transfer_eval: evaluation point is at or near an eigenvalue of A");
    }
    const ComplexMatrix b = sys.b().cast<Complex>();
    ComplexMatrix x(n, b.cols());
    for (Eigen::Index j = 0; j < b.cols(); ++j) x.col(j) = lu.solve(b.col(j));
    return sys.c().cast<Complex>() * x;
}

StateSpaceModel limiting_direct(const DirectMomentSolution& moment, const DirectInterpolant& interp) {
    interp.validate();
    return StateSpaceModel(interp.s, Matrix::Zero(interp.s.rows(), interp.l.rows()), moment.moment);
}

StateSpaceModel limiting_swapped(const SwappedMomentSolution& moment,
                                 const SwappedInterpolant& interp) {
    interp.validate();
    const Eigen::Index order = interp.q.rows();
    return StateSpaceModel(interp.q, moment.moment, Matrix::Identity(order, order));
}

double direct_interpolation_error(const StateSpaceModel& full, const StateSpaceModel& rom,
                                  const DirectInterpolant& interp) {
    interp.validate();
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(interp.s.cast<Complex>());
    double worst = 0.0;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const Complex lambda = solver.eigenvalues()(k);
        const ComplexVector direction = interp.l.cast<Complex>() * solver.eigenvectors().col(k);
        const ComplexMatrix want = transfer_eval(full, lambda) * direction;
        const ComplexMatrix got = transfer_eval(rom, lambda) * direction;
        worst = std::max(worst, complex_relative(got, want));
    }
    return worst;
}

double swapped_interpolation_error(const StateSpaceModel& full, const StateSpaceModel& rom,
                                   const SwappedInterpolant& interp) {
    interp.validate();
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(interp.q.transpose().cast<Complex>());
    double worst = 0.0;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
        const Complex lambda = solver.eigenvalues()(k);
        const ComplexMatrix direction =
            solver.eigenvectors().col(k).transpose() * interp.r.cast<Complex>();
        const ComplexMatrix want = direction * transfer_eval(full, lambda);
        const ComplexMatrix got = direction * transfer_eval(rom, lambda);
        worst = std::max(worst, complex_relative(got, want));
    }
    return worst;
}

}  // namespace mmashc
