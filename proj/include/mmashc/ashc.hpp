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
#ifndef MMASHC_ASHC_HPP
#define MMASHC_ASHC_HPP

// Approximate-simulation hierarchical control: simulation-function
// certificates, interfaces, the geometric abstraction construction and
// M-relation witnesses.
//
// Concrete system  x' = A x + B u,  y = C x      (n states, m inputs)
// Abstract system  xi' = F xi + G v, psi = H xi  (n^ states, m^ inputs)

#include "mmashc/lti_core.hpp"

#include <string>
#include <variant>
#include <vector>

namespace mmashc {

/// Simulation function V(xi, x) = sqrt((P xi - x)^T W (P xi - x)) together
/// with the interface u = R^ v + L^ xi + K (x - P xi).
struct SimulationCertificate {
    Matrix p;       ///< n x n^, solves P F = A P + B L^
    Matrix l_hat;   ///< m x n^
    Matrix w;       ///< n x n, W >= C^T C
    double lambda;  ///< decay rate of V, 1/s
    Matrix k;       ///< m x n, A + B K Hurwitz
    Matrix r_hat;   ///< m x m^
    /// Slope c of the linear class-K gain gamma(r) = c r, with
    /// c = ||W^{1/2} (B R^ - P G)||_2 / lambda.
    double gamma_gain;

    double gamma(double r) const { return gamma_gain * r; }
};

struct RHatAllOnes {};
struct RHatOptimize {};
using RHatChoice = std::variant<RHatAllOnes, RHatOptimize, Matrix>;

struct CertificateOptions {
    double lambda_fraction = 0.9;
    RHatChoice r_hat = RHatAllOnes{};
};

/// Solves P from P F = A P + B L^ (sigma(F) and sigma(A) disjoint), checks
/// H = C P and builds W, lambda and gamma for the given stabilizing K.
SimulationCertificate synth_certificate(const StateSpaceModel& sys, const StateSpaceModel& abstract,
                                        const Matrix& l_hat, const Matrix& k,
                                        const CertificateOptions& options = {});

/// Same as synth_certificate but with P supplied (e.g. from design_abstraction);
/// P F = A P + B L^ is verified instead of solved.
SimulationCertificate synth_certificate_with_p(const StateSpaceModel& sys,
                                               const StateSpaceModel& abstract, const Matrix& p,
                                               const Matrix& l_hat, const Matrix& k,
                                               const CertificateOptions& options = {});

struct NamedResidual {
    std::string name;
    double value;
    double threshold;
    bool pass() const { return value <= threshold; }
};

/// Residuals of the certificate identities: P F - A P - B L^, H - C P,
/// -(lambda_min(W - C^T C)), lambda_max of the decay LMI, and the spectral
/// abscissa of A + B K.
std::vector<NamedResidual> certificate_residuals(const SimulationCertificate& cert,
                                                 const StateSpaceModel& sys,
                                                 const StateSpaceModel& abstract);

double simulation_fn_value(const SimulationCertificate& cert, const Vector& xi, const Vector& x);

/// u_v = R^ v + L^ xi + K (x - P xi).
Vector interface_eval(const SimulationCertificate& cert, const Vector& v, const Vector& xi,
                      const Vector& x);

/// The link part u_v* = R^ v + (L^ - K P) xi of u_v = K x + u_v*.
Vector stabilizing_link(const SimulationCertificate& cert, const Vector& v, const Vector& xi);

/// dV/dxi (F xi + G v) + dV/dx (A x + B u_v). Zero on the manifold x = P xi.
double simulation_fn_derivative(const SimulationCertificate& cert, const StateSpaceModel& sys,
                                const StateSpaceModel& abstract, const Vector& xi, const Vector& x,
                                const Vector& v);

struct RHatFit {
    Matrix r_hat;
    double residual;  ///< ||B R^ - P G||_F
    bool b_rank_deficient;
};

/// Frobenius minimizer R^ = pinv(B) P G of ||B R^ - P G||_F.
RHatFit optimize_r_hat(const Matrix& p, const Matrix& b, const Matrix& g);

/// Unique solution of Pbar F = (A + B K) Pbar + B (L^ - K P). Equals P.
Matrix closed_loop_projection(const SimulationCertificate& cert, const StateSpaceModel& sys,
                              const Matrix& f);

struct AbstractionDesign {
    Matrix p;      ///< n x n^
    Matrix d;      ///< n x (m^ - m)
    Matrix e;      ///< (m^ - m) x n
    Matrix m_map;  ///< n^ x n
    Matrix f;      ///< n^ x n^
    Matrix l_hat;  ///< m x n^
    Matrix h;      ///< p x n^
    Matrix g;      ///< n^ x m^
    Matrix n_map;  ///< m^ x n
    Matrix gamma;  ///< m^ x m

    StateSpaceModel abstract_system() const { return StateSpaceModel(f, g, h); }
};

/// Geometric construction of an M-related abstraction from an injective P
/// with im(A P) in im(P) + im(B) and im(P) + ker(C) = R^n. Throws
/// PreconditionError naming the failing condition.
AbstractionDesign design_abstraction(const StateSpaceModel& sys, const Matrix& p);

/// Every defining identity of a design, as residuals against `tol`.
std::vector<NamedResidual> design_residuals(const AbstractionDesign& design,
                                            const StateSpaceModel& sys, double tol = 1e-9);

/// Residuals of M A = F M + G N, G Gamma = M B and C = H M.
std::vector<NamedResidual> m_relation_residuals(const StateSpaceModel& sys,
                                                const StateSpaceModel& abstract,
                                                const Matrix& m_map, const Matrix& n_map,
                                                const Matrix& gamma, double tol = 1e-9);

struct MRelationReport {
    bool accepted = false;
    Matrix n_map;
    Matrix gamma;
    double state_residual = 0.0;
    double input_residual = 0.0;
    double output_residual = 0.0;
    std::string failing;  ///< empty when accepted
};

/// Least-squares search for N and Gamma; accepted iff all three residuals
/// are within `tol`.
MRelationReport check_m_relation(const StateSpaceModel& sys, const StateSpaceModel& abstract,
                                 const Matrix& m_map, double tol = 1e-8);

/// xi' = F xi + M B u, psi = C P xi.
StateSpaceModel final_abstraction(const AbstractionDesign& design, const StateSpaceModel& sys);

/// Link v = N x + Gamma u + K^ (xi - M x); K^ may be zero.
struct StabilizedLink {
    Matrix n_map;  ///< m^ x n
    Matrix gamma;  ///< m^ x m
    Matrix k_hat;  ///< m^ x n^

    bool stabilized() const { return k_hat.size() > 0 && !k_hat.isZero(0.0); }
};

Vector link_eval(const StabilizedLink& link, const Matrix& m_map, const Vector& x, const Vector& u,
                 const Vector& xi);

}  // namespace mmashc

#endif  // MMASHC_ASHC_HPP
