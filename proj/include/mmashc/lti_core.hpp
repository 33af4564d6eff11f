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
#ifndef MMASHC_LTI_CORE_HPP
#define MMASHC_LTI_CORE_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace mmashc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kSpectralDisjointTol = 1e-8;
inline constexpr double kSimpleEigenvalueTol = 1e-8;
inline constexpr double kZeroRealPartTol = 1e-9;
inline constexpr double kSylvesterResidualTol = 1e-10;

/// Throws DimensionError if `m` is empty or carries NaN/Inf entries.
void require_finite(const Matrix& m, std::string_view name);
void require_square(const Matrix& m, std::string_view name);

/// Continuous-time LTI model x' = A x + B u, y = C x. Also used for
/// abstract systems (F, G, H) and interpolation-data limiting models.
class StateSpaceModel {
public:
    StateSpaceModel() = default;

    /// Validates shapes and finiteness. Rank conditions are not enforced
    /// here; call require_full_rank() where a caller needs them.
    StateSpaceModel(Matrix a, Matrix b, Matrix c);

    const Matrix& a() const noexcept { return a_; }
    const Matrix& b() const noexcept { return b_; }
    const Matrix& c() const noexcept { return c_; }

    Eigen::Index n() const noexcept { return a_.rows(); }
    Eigen::Index m() const noexcept { return b_.cols(); }
    Eigen::Index p() const noexcept { return c_.rows(); }

    /// Throws PreconditionError unless rank(B) = m and rank(C) = p.
    void require_full_rank() const;

private:
    Matrix a_;
    Matrix b_;
    Matrix c_;
};

enum class RealPartClass { Negative, Zero, Positive };

struct SpectrumReport {
    std::vector<Complex> eigenvalues;
    std::vector<RealPartClass> classes;
    bool all_simple = true;
    double max_real_part = 0.0;

    bool hurwitz() const;
    /// Every eigenvalue classified as having zero real part.
    bool on_imaginary_axis() const;
    std::size_t size() const noexcept { return eigenvalues.size(); }
};

/// Eigenvalues through Eigen's real-Schur based EigenSolver.
SpectrumReport eigenvalues(const Matrix& m, double zero_tol = kZeroRealPartTol,
                           double simple_tol = kSimpleEigenvalueTol);

bool spectra_disjoint(const Matrix& m1, const Matrix& m2, double tol = kSpectralDisjointTol);

/// Largest distance between paired eigenvalues, pairing each eigenvalue of
/// `expected` greedily with the nearest unused eigenvalue of `actual`.
double spectrum_mismatch(const std::vector<Complex>& actual, const std::vector<Complex>& expected);

/// Solves A X - X B = C by Kronecker vectorization and dense LU.
Matrix solve_sylvester(const Matrix& a, const Matrix& b, const Matrix& c);

/// Solves A_cl^T W + W A_cl = -Q for Hurwitz A_cl and symmetric Q.
Matrix solve_lyapunov(const Matrix& a_cl, const Matrix& q);

/// sigma_max * max(rows, cols) * 1e-12.
double default_rank_tol(const Matrix& m);
double default_rank_tol(const ComplexMatrix& m);
Eigen::Index numerical_rank(const Matrix& m, std::optional<double> tol = std::nullopt);
Eigen::Index numerical_rank(const ComplexMatrix& m, std::optional<double> tol = std::nullopt);

/// PBH observability of (S, L): rank [lambda I - S; L] = n for every lambda in sigma(S).
bool pbh_observable(const Matrix& s, const Matrix& l, std::optional<double> tol = std::nullopt);
/// PBH reachability of (Q, R): rank [lambda I - Q, R] = n for every lambda in sigma(Q).
bool pbh_reachable(const Matrix& q, const Matrix& r, std::optional<double> tol = std::nullopt);

/// Krylov rank test: [w0, S w0, ..., S^{n-1} w0] has full rank.
bool excitable(const Matrix& s, const Vector& w0, std::optional<double> tol = std::nullopt);

struct PolePlacementOptions {
    std::uint64_t seed = 0;
    int max_attempts = 16;
    double spectrum_tol = 1e-6;
};

/// Returns K with sigma(A + B K) = sigma(target). A random K0 is drawn,
/// A X - X T = -B K0 is solved and K = K0 X^{-1}; a fresh K0 is drawn
/// whenever X is numerically singular or the placed spectrum misses.
Matrix place_poles(const Matrix& a, const Matrix& b, const Matrix& target,
                   const PolePlacementOptions& options = {});

/// Moore-Penrose inverse; singular values below tol * sigma_max are dropped.
Matrix pseudo_inverse(const Matrix& m, double tol = 1e-12);

/// Real 2x2 block [[re, im], [-im, re]] with eigenvalues re +- i im.
Matrix rotation_block(double re, double im);

/// Real block-diagonal matrix whose spectrum is `poles`. Complex poles must
/// come in conjugate pairs; each pair yields one rotation block.
Matrix real_block_diagonal(const std::vector<Complex>& poles);

Matrix block_diagonal(const std::vector<Matrix>& blocks);

/// Orthonormal basis of ker(m), built by pivoted Gram-Schmidt over the
/// projections of the standard basis vectors so the result is canonical.
Matrix kernel_basis(const Matrix& m, std::optional<double> tol = std::nullopt);

/// Smallest eigenvalue of the symmetric part of `m`.
double min_symmetric_eigenvalue(const Matrix& m);
double max_symmetric_eigenvalue(const Matrix& m);

/// Principal square root of a symmetric positive semidefinite matrix.
Matrix symmetric_sqrt(const Matrix& m);

}  // namespace mmashc

#endif  // MMASHC_LTI_CORE_HPP
