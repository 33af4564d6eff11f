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

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace mmashc {

namespace {

constexpr double kIdentityTol = 1e-9;

double scaled_residual(const Matrix& lhs, const Matrix& rhs) {
    return (lhs - rhs).norm() / std::max(1.0, rhs.norm());
}

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

void require_shape(const Matrix& m, Eigen::Index rows, Eigen::Index cols, const std::string& name) {
    require_finite(m, name);
    if (m.rows() != rows || m.cols() != cols) {
        throw DimensionError(name + ": expected " + std::to_string(rows) + "x" +
                             std::to_string(cols) + ", got " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()));
    }
}

Matrix resolve_r_hat(const RHatChoice& choice, const Matrix& p, const StateSpaceModel& sys,
                     const StateSpaceModel& abstract) {
    if (std::holds_alternative<RHatAllOnes>(choice)) {
        return Matrix::Ones(sys.m(), abstract.m());
    }
    if (std::holds_alternative<RHatOptimize>(choice)) {
        return optimize_r_hat(p, sys.b(), abstract.b()).r_hat;
    }
    const Matrix& given = std::get<Matrix>(choice);
    require_shape(given, sys.m(), abstract.m(), "R^");
    return given;
}

}  // namespace

SimulationCertificate synth_certificate_with_p(const StateSpaceModel& sys,
                                               const StateSpaceModel& abstract, const Matrix& p,
                                               const Matrix& l_hat, const Matrix& k,
                                               const CertificateOptions& options) {
    const Eigen::Index n = sys.n();
    const Eigen::Index order = abstract.n();
    require_shape(p, n, order, "P");
    require_shape(l_hat, sys.m(), order, "L^");
    require_shape(k, sys.m(), n, "K");
    if (abstract.p() != sys.p()) {
        throw DimensionError("certificate: abstract output dimension differs from the plant's");
    }
    if (!(options.lambda_fraction > 0.0 && options.lambda_fraction < 1.0)) {
        throw PreconditionError("lambda_fraction in (0,1)", "certificate: lambda fraction out of range");
    }

    const Matrix& a = sys.a();
    const Matrix& b = sys.b();
    const Matrix& c = sys.c();
    if (scaled_residual(p * abstract.a(), a * p + b * l_hat) > kIdentityTol) {
        throw PreconditionError("P F = A P + B L^", "certificate: P and L^ do not solve P F = A P + B L^");
    }
    if (scaled_residual(c * p, abstract.c()) > kIdentityTol) {
        throw PreconditionError("H = C P",
                                "certificate: abstract output map H differs from C P, no certificate exists");
    }

    const Matrix a_cl = a + b * k;
    const SpectrumReport closed_loop = eigenvalues(a_cl);
    if (!closed_loop.hurwitz()) {
        throw SpectralError("certificate: K is not stabilizing (A + B K not Hurwitz)");
    }

    SimulationCertificate cert;
    cert.p = p;
    cert.l_hat = l_hat;
    cert.k = k;
    cert.lambda = options.lambda_fraction * (-closed_loop.max_real_part);

    const Matrix ctc = c.transpose() * c;
    const Matrix ident = Matrix::Identity(n, n);
    const double epsilon = 1e-6 * (1.0 + max_symmetric_eigenvalue(ctc));
    const Matrix w0 = solve_lyapunov(a_cl + cert.lambda * ident, ctc + epsilon * ident);

    // Smallest alpha >= 1 with alpha W0 >= C^T C: the generalized eigenvalue
    // lambda_max(C^T C, W0) computed through the Cholesky factor of W0.
    Eigen::LLT<Matrix> llt(w0);
    if (llt.info() != Eigen::Success) {
        throw NumericalError("certificate: Lyapunov solution is not positive definite");
    }
    const Matrix lower_inv = llt.matrixL().solve(ident);
    const double generalized = max_symmetric_eigenvalue(lower_inv * ctc * lower_inv.transpose());
    const double alpha = std::max(1.0, generalized);
    cert.w = alpha * w0;
    cert.w = 0.5 * (cert.w + cert.w.transpose());

    cert.r_hat = resolve_r_hat(options.r_hat, p, sys, abstract);
    const Matrix mismatch = b * cert.r_hat - p * abstract.b();
    cert.gamma_gain = spectral_norm(symmetric_sqrt(cert.w) * mismatch) / cert.lambda;
    return cert;
}

SimulationCertificate synth_certificate(const StateSpaceModel& sys, const StateSpaceModel& abstract,
                                        const Matrix& l_hat, const Matrix& k,
                                        const CertificateOptions& options) {
    require_shape(l_hat, sys.m(), abstract.n(), "L^");
    if (!spectra_disjoint(abstract.a(), sys.a())) {
        throw SpectralError("certificate: sigma(F) intersects sigma(A), P is not unique");
    }
    // P F = A P + B L^  <=>  A P - P F = -B L^
    const Matrix p = solve_sylvester(sys.a(), abstract.a(), -sys.b() * l_hat);
    return synth_certificate_with_p(sys, abstract, p, l_hat, k, options);
}

std::vector<NamedResidual> certificate_residuals(const SimulationCertificate& cert,
                                                 const StateSpaceModel& sys,
                                                 const StateSpaceModel& abstract) {
    const Matrix a_cl = sys.a() + sys.b() * cert.k;
    const Matrix lmi = a_cl.transpose() * cert.w + cert.w * a_cl + 2.0 * cert.lambda * cert.w;
    const Matrix ctc = sys.c().transpose() * sys.c();
    std::vector<NamedResidual> out;
    out.push_back({"P F = A P + B L^",
                   scaled_residual(cert.p * abstract.a(), sys.a() * cert.p + sys.b() * cert.l_hat),
                   kIdentityTol});
    out.push_back({"H = C P", scaled_residual(sys.c() * cert.p, abstract.c()), kIdentityTol});
    out.push_back({"W >= C^T C (negated min eigenvalue)", -min_symmetric_eigenvalue(cert.w - ctc),
                   kIdentityTol});
    out.push_back({"decay LMI max eigenvalue", max_symmetric_eigenvalue(lmi), kIdentityTol});
    out.push_back({"closed-loop spectral abscissa", eigenvalues(a_cl).max_real_part,
                   -kZeroRealPartTol});
    return out;
}

double simulation_fn_value(const SimulationCertificate& cert, const Vector& xi, const Vector& x) {
    const Vector e = cert.p * xi - x;
    return std::sqrt(std::max(0.0, e.dot(cert.w * e)));
}

Vector interface_eval(const SimulationCertificate& cert, const Vector& v, const Vector& xi,
                      const Vector& x) {
    return cert.r_hat * v + cert.l_hat * xi + cert.k * (x - cert.p * xi);
}

Vector stabilizing_link(const SimulationCertificate& cert, const Vector& v, const Vector& xi) {
    return cert.r_hat * v + (cert.l_hat - cert.k * cert.p) * xi;
}

double simulation_fn_derivative(const SimulationCertificate& cert, const StateSpaceModel& sys,
                                const StateSpaceModel& abstract, const Vector& xi, const Vector& x,
                                const Vector& v) {
    const double value = simulation_fn_value(cert, xi, x);
    if (value == 0.0) return 0.0;
    const Vector e = cert.p * xi - x;
    const Vector xi_dot = abstract.a() * xi + abstract.b() * v;
    const Vector x_dot = sys.a() * x + sys.b() * interface_eval(cert, v, xi, x);
    return (cert.w * e).dot(cert.p * xi_dot - x_dot) / value;
}

RHatFit optimize_r_hat(const Matrix& p, const Matrix& b, const Matrix& g) {
    require_finite(b, "B");
    require_shape(p, b.rows(), p.cols(), "P");
    require_shape(g, p.cols(), g.cols(), "G");
    RHatFit fit;
    fit.b_rank_deficient = numerical_rank(b) < b.cols();
    fit.r_hat = pseudo_inverse(b) * p * g;
    fit.residual = (b * fit.r_hat - p * g).norm();
    return fit;
}

Matrix closed_loop_projection(const SimulationCertificate& cert, const StateSpaceModel& sys,
                              const Matrix& f) {
    const Matrix a_cl = sys.a() + sys.b() * cert.k;
    // Pbar F = A_cl Pbar + B (L^ - K P)  <=>  A_cl Pbar - Pbar F = -B (L^ - K P)
    return solve_sylvester(a_cl, f, -sys.b() * (cert.l_hat - cert.k * cert.p));
}

AbstractionDesign design_abstraction(const StateSpaceModel& sys, const Matrix& p) {
    const Eigen::Index n = sys.n();
    const Eigen::Index m = sys.m();
    require_finite(p, "P");
    if (p.rows() != n || p.cols() > n) {
        throw DimensionError("design_abstraction: P must be n x n^ with n^ <= n");
    }
    const Eigen::Index order = p.cols();
    const Matrix& a = sys.a();
    const Matrix& b = sys.b();
    const Matrix& c = sys.c();
    const Matrix ap = a * p;

    if (numerical_rank(p) != order) {
        throw PreconditionError("P injective", "design_abstraction: P is not injective");
    }
    Matrix pb(n, order + m);
    pb << p, b;
    Matrix pbap(n, 2 * order + m);
    pbap << p, b, ap;
    if (numerical_rank(pb) != numerical_rank(pbap)) {
        throw PreconditionError("im(AP) in im(P)+im(B)",
                                "design_abstraction: im(A P) is not contained in im(P) + im(B)");
    }
    const Matrix kernel = kernel_basis(c);
    Matrix pk(n, order + kernel.cols());
    pk << p, kernel;
    if (numerical_rank(pk) != n) {
        throw PreconditionError("im(P)+ker(C)=R^n",
                                "design_abstraction: im(P) + ker(C) does not span R^n");
    }

    // Greedy pivoted completion of im(P) by kernel directions.
    const Eigen::Index extra = n - order;
    Eigen::HouseholderQR<Matrix> qr(p);
    Matrix span = qr.householderQ() * Matrix::Identity(n, order);
    std::vector<bool> chosen(static_cast<std::size_t>(kernel.cols()), false);
    for (Eigen::Index step = 0; step < extra; ++step) {
        Eigen::Index best = -1;
        double best_norm = 0.0;
        Vector best_residual;
        for (Eigen::Index j = 0; j < kernel.cols(); ++j) {
            if (chosen[static_cast<std::size_t>(j)]) continue;
            const Vector residual = kernel.col(j) - span * (span.transpose() * kernel.col(j));
            const double norm = residual.norm();
            if (best < 0 || norm > best_norm * (1.0 + 1e-10)) {
                best = j;
                best_norm = norm;
                best_residual = residual;
            }
        }
        if (best < 0 || best_norm <= 1e-12) {
            throw PreconditionError("im(P)+ker(C)=R^n",
                                    "design_abstraction: cannot complete im(P) inside ker(C)");
        }
        chosen[static_cast<std::size_t>(best)] = true;
        span.conservativeResize(Eigen::NoChange, span.cols() + 1);
        span.col(span.cols() - 1) = best_residual / best_norm;
    }

    AbstractionDesign design;
    design.p = p;
    design.d = Matrix(n, extra);
    for (Eigen::Index j = 0, col = 0; j < kernel.cols(); ++j) {
        if (chosen[static_cast<std::size_t>(j)]) design.d.col(col++) = kernel.col(j);
    }

    Matrix basis(n, n);
    basis << p, design.d;
    const Eigen::FullPivLU<Matrix> basis_lu(basis);
    if (!basis_lu.isInvertible()) {
        throw PreconditionError("im(P)+im(D)=R^n", "design_abstraction: [P D] is singular");
    }
    const Matrix inverse = basis_lu.inverse();
    design.m_map = inverse.topRows(order);
    design.e = inverse.bottomRows(extra);

    // A P = P F - B L^. Multiplying by E (E P = 0) isolates L^; M then gives F.
    if (extra == 0) {
        design.l_hat = Matrix::Zero(m, order);
    } else {
        const Matrix eb = design.e * b;
        design.l_hat = eb.completeOrthogonalDecomposition().solve(-design.e * ap);
    }
    design.f = design.m_map * (ap + b * design.l_hat);
    if (scaled_residual(p * design.f - b * design.l_hat, ap) > kIdentityTol) {
        throw PreconditionError("im(AP) in im(P)+im(B)",
                                "design_abstraction: A P = P F - B L^ has no solution");
    }

    design.h = c * p;
    design.g = Matrix(order, m + extra);
    design.g << design.m_map * b, design.m_map * a * design.d;
    design.n_map = Matrix(m + extra, n);
    design.n_map << -design.l_hat * design.m_map, design.e;
    design.gamma = Matrix::Zero(m + extra, m);
    design.gamma.topRows(m) = Matrix::Identity(m, m);
    return design;
}

std::vector<NamedResidual> design_residuals(const AbstractionDesign& design,
                                            const StateSpaceModel& sys, double tol) {
    const Eigen::Index n = sys.n();
    const Eigen::Index order = design.p.cols();
    Matrix g_expected(order, design.g.cols());
    g_expected << design.m_map * sys.b(), design.m_map * sys.a() * design.d;

    std::vector<NamedResidual> out;
    out.push_back({"M P = I", scaled_residual(design.m_map * design.p, Matrix::Identity(order, order)),
                   tol});
    out.push_back({"P M + D E = I",
                   scaled_residual(design.p * design.m_map + design.d * design.e, Matrix::Identity(n, n)),
                   tol});
    out.push_back({"C D = 0", design.d.size() ? (sys.c() * design.d).norm() : 0.0, tol});
    out.push_back({"A P = P F - B L^",
                   scaled_residual(design.p * design.f - sys.b() * design.l_hat, sys.a() * design.p),
                   tol});
    out.push_back({"H = C P", scaled_residual(design.h, sys.c() * design.p), tol});
    out.push_back({"G = [MB | MAD]", scaled_residual(design.g, g_expected), tol});
    const auto relation = m_relation_residuals(sys, design.abstract_system(), design.m_map,
                                               design.n_map, design.gamma, tol);
    out.insert(out.end(), relation.begin(), relation.end());
    return out;
}

std::vector<NamedResidual> m_relation_residuals(const StateSpaceModel& sys,
                                                const StateSpaceModel& abstract,
                                                const Matrix& m_map, const Matrix& n_map,
                                                const Matrix& gamma, double tol) {
    const Matrix ma = m_map * sys.a();
    const Matrix mb = m_map * sys.b();
    return {
        {"M A = F M + G N", scaled_residual(abstract.a() * m_map + abstract.b() * n_map, ma),
         tol},
        {"G Gamma = M B", scaled_residual(abstract.b() * gamma, mb), tol},
        {"C = H M", scaled_residual(abstract.c() * m_map, sys.c()), tol},
    };
}

MRelationReport check_m_relation(const StateSpaceModel& sys, const StateSpaceModel& abstract,
                                 const Matrix& m_map, double tol) {
    require_shape(m_map, abstract.n(), sys.n(), "M");
    if (abstract.p() != sys.p()) {
        throw DimensionError("check_m_relation: output dimensions differ");
    }
    const auto cod = abstract.b().completeOrthogonalDecomposition();
    MRelationReport report;
    report.n_map = cod.solve(m_map * sys.a() - abstract.a() * m_map);
    report.gamma = cod.solve(m_map * sys.b());
    const auto residuals =
        m_relation_residuals(sys, abstract, m_map, report.n_map, report.gamma, tol);
    report.state_residual = residuals[0].value;
    report.input_residual = residuals[1].value;
    report.output_residual = residuals[2].value;
    for (const auto& r : residuals) {
        if (!r.pass()) {
            report.failing = r.name;
            break;
        }
    }
    report.accepted = report.failing.empty();
    return report;
}

StateSpaceModel final_abstraction(const AbstractionDesign& design, const StateSpaceModel& sys) {
    return StateSpaceModel(design.f, design.m_map * sys.b(), sys.c() * design.p);
}

Vector link_eval(const StabilizedLink& link, const Matrix& m_map, const Vector& x, const Vector& u,
                 const Vector& xi) {
    Vector v = link.n_map * x + link.gamma * u;
    if (link.k_hat.size() > 0) v += link.k_hat * (xi - m_map * x);
    return v;
}

}  // namespace mmashc
