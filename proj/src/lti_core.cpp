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
#include "mmashc/lti_core.hpp"

#include "mmashc/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

namespace mmashc {

namespace {

std::string shape(const Matrix& m) {
    std::ostringstream os;
    os << m.rows() << "x" << m.cols();
    return os.str();
}

bool complex_less(const Complex& x, const Complex& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
}

Eigen::VectorXd singular_values(const ComplexMatrix& m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues();
}

}  // namespace

void require_finite(const Matrix& m, std::string_view name) {
    if (m.rows() == 0 || m.cols() == 0) {
        throw DimensionError(std::string(name) + ": empty matrix (" + shape(m) + ")");
    }
    if (!m.allFinite()) {
        throw DimensionError(std::string(name) + ": non-finite entry");
    }
}

void require_square(const Matrix& m, std::string_view name) {
    require_finite(m, name);
    if (m.rows() != m.cols()) {
        throw DimensionError(std::string(name) + ": expected square matrix, got " + shape(m));
    }
}

StateSpaceModel::StateSpaceModel(Matrix a, Matrix b, Matrix c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    require_square(a_, "A");
    require_finite(b_, "B");
    require_finite(c_, "C");
    if (b_.rows() != a_.rows()) {
        throw DimensionError("B: expected " + std::to_string(a_.rows()) + " rows, got " + shape(b_));
    }
    if (c_.cols() != a_.rows()) {
        throw DimensionError("C: expected " + std::to_string(a_.rows()) + " columns, got " +
                             shape(c_));
    }
}

void StateSpaceModel::require_full_rank() const {
    if (numerical_rank(b_) != m()) {
        throw PreconditionError("rank(B)=m", "input matrix B is not full column rank");
    }
    if (numerical_rank(c_) != p()) {
        throw PreconditionError("rank(C)=p", "output matrix C is not full row rank");
    }
}

bool SpectrumReport::hurwitz() const {
    return std::all_of(classes.begin(), classes.end(),
                       [](RealPartClass c) { return c == RealPartClass::Negative; });
}

bool SpectrumReport::on_imaginary_axis() const {
    return std::all_of(classes.begin(), classes.end(),
                       [](RealPartClass c) { return c == RealPartClass::Zero; });
}

SpectrumReport eigenvalues(const Matrix& m, double zero_tol, double simple_tol) {
    require_square(m, "eigenvalues");
    Eigen::EigenSolver<Matrix> solver(m, false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigenvalues: real Schur iteration did not converge");
    }
    SpectrumReport report;
    const auto& values = solver.eigenvalues();
    report.eigenvalues.assign(values.data(), values.data() + values.size());
    std::sort(report.eigenvalues.begin(), report.eigenvalues.end(), complex_less);

    report.max_real_part = -std::numeric_limits<double>::infinity();
    for (const Complex& ev : report.eigenvalues) {
        report.max_real_part = std::max(report.max_real_part, ev.real());
        if (std::abs(ev.real()) <= zero_tol) {
            report.classes.push_back(RealPartClass::Zero);
        } else {
            report.classes.push_back(ev.real() < 0.0 ? RealPartClass::Negative
                                                     : RealPartClass::Positive);
        }
    }
    for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
        for (std::size_t j = i + 1; j < report.eigenvalues.size(); ++j) {
            if (std::abs(report.eigenvalues[i] - report.eigenvalues[j]) <= simple_tol) {
                report.all_simple = false;
            }
        }
    }
    return report;
}

bool spectra_disjoint(const Matrix& m1, const Matrix& m2, double tol) {
    const SpectrumReport s1 = eigenvalues(m1);
    const SpectrumReport s2 = eigenvalues(m2);
    for (const Complex& x : s1.eigenvalues) {
        for (const Complex& y : s2.eigenvalues) {
            if (std::abs(x - y) <= tol) return false;
        }
    }
    return true;
}

double spectrum_mismatch(const std::vector<Complex>& actual, const std::vector<Complex>& expected) {
    if (actual.size() != expected.size()) return std::numeric_limits<double>::infinity();
    std::vector<bool> used(actual.size(), false);
    double worst = 0.0;
    for (const Complex& target : expected) {
        std::size_t best = actual.size();
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < actual.size(); ++i) {
            if (used[i]) continue;
            const double d = std::abs(actual[i] - target);
            if (d < best_dist) {
                best_dist = d;
                best = i;
            }
        }
        used[best] = true;
        worst = std::max(worst, best_dist);
    }
    return worst;
}

Matrix solve_sylvester(const Matrix& a, const Matrix& b, const Matrix& c) {
    require_square(a, "sylvester A");
    require_square(b, "sylvester B");
    require_finite(c, "sylvester C");
    const Eigen::Index n = a.rows();
    const Eigen::Index k = b.rows();
    if (c.rows() != n || c.cols() != k) {
        throw DimensionError("sylvester C: expected " + std::to_string(n) + "x" + std::to_string(k) +
                             ", got " + shape(c));
    }
    if (!spectra_disjoint(a, b)) {
        throw SpectralError("sylvester: spectra of A and B intersect, no unique solution");
    }

    // (I_k (x) A - B^T (x) I_n) vec(X) = vec(C), column-major vec.
    const Eigen::Index nk = n * k;
    Matrix kron = Matrix::Zero(nk, nk);
    for (Eigen::Index j = 0; j < k; ++j) {
        kron.block(j * n, j * n, n, n) += a;
        for (Eigen::Index i = 0; i < k; ++i) {
            const double bij = b(j, i);  // (B^T)(i, j)
            if (bij != 0.0) {
                kron.block(i * n, j * n, n, n).diagonal().array() -= bij;
            }
        }
    }
    Eigen::PartialPivLU<Matrix> lu(kron);
    if (lu.rcond() < 1e-14) {
        throw NumericalError("sylvester: Kronecker system is ill-conditioned (rcond " +
                             std::to_string(lu.rcond()) + ")");
    }
    const Vector rhs = Eigen::Map<const Vector>(c.data(), nk);
    Vector x = lu.solve(rhs);
    for (int refine = 0; refine < 2; ++refine) {
        const Vector r = rhs - kron * x;
        x += lu.solve(r);
    }
    Matrix result = Eigen::Map<const Matrix>(x.data(), n, k);

    const double residual = (a * result - result * b - c).norm();
    if (residual > kSylvesterResidualTol * std::max(1.0, result.norm())) {
        throw NumericalError("sylvester: residual " + std::to_string(residual) +
                             " exceeds tolerance");
    }
    return result;
}

Matrix solve_lyapunov(const Matrix& a_cl, const Matrix& q) {
    require_square(a_cl, "lyapunov A_cl");
    require_square(q, "lyapunov Q");
    if (q.rows() != a_cl.rows()) {
        throw DimensionError("lyapunov: Q must match A_cl, got " + shape(q));
    }
    if ((q - q.transpose()).norm() > 1e-12 * std::max(1.0, q.norm())) {
        throw DimensionError("lyapunov: Q is not symmetric");
    }
    if (!eigenvalues(a_cl).hurwitz()) {
        throw SpectralError("lyapunov: A_cl is not Hurwitz");
    }
    // A^T W - W (-A) = -Q
    const Matrix w = solve_sylvester(a_cl.transpose(), -a_cl, -q);
    return 0.5 * (w + w.transpose());
}

double default_rank_tol(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    return smax * static_cast<double>(std::max(m.rows(), m.cols())) * 1e-12;
}

double default_rank_tol(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    const Eigen::VectorXd sv = singular_values(m);
    const double smax = sv.size() ? sv(0) : 0.0;
    return smax * static_cast<double>(std::max(m.rows(), m.cols())) * 1e-12;
}

Eigen::Index numerical_rank(const Matrix& m, std::optional<double> tol) {
    if (m.size() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double threshold =
        tol.value_or(sv(0) * static_cast<double>(std::max(m.rows(), m.cols())) * 1e-12);
    return (sv.array() > threshold).count();
}

Eigen::Index numerical_rank(const ComplexMatrix& m, std::optional<double> tol) {
    if (m.size() == 0) return 0;
    const Eigen::VectorXd sv = singular_values(m);
    const double threshold =
        tol.value_or(sv(0) * static_cast<double>(std::max(m.rows(), m.cols())) * 1e-12);
    return (sv.array() > threshold).count();
}

bool pbh_observable(const Matrix& s, const Matrix& l, std::optional<double> tol) {
    require_square(s, "pbh S");
    require_finite(l, "pbh L");
    const Eigen::Index n = s.rows();
    if (l.cols() != n) {
        throw DimensionError("pbh_observable: L must have " + std::to_string(n) + " columns");
    }
    const SpectrumReport spec = eigenvalues(s);
    for (const Complex& lambda : spec.eigenvalues) {
        ComplexMatrix stacked(n + l.rows(), n);
        stacked.topRows(n) = lambda * ComplexMatrix::Identity(n, n) - s.cast<Complex>();
        stacked.bottomRows(l.rows()) = l.cast<Complex>();
        if (numerical_rank(stacked, tol) < n) return false;
    }
    return true;
}

bool pbh_reachable(const Matrix& q, const Matrix& r, std::optional<double> tol) {
    require_square(q, "pbh Q");
    require_finite(r, "pbh R");
    const Eigen::Index n = q.rows();
    if (r.rows() != n) {
        throw DimensionError("pbh_reachable: R must have " + std::to_string(n) + " rows");
    }
    const SpectrumReport spec = eigenvalues(q);
    for (const Complex& lambda : spec.eigenvalues) {
        ComplexMatrix stacked(n, n + r.cols());
        stacked.leftCols(n) = lambda * ComplexMatrix::Identity(n, n) - q.cast<Complex>();
        stacked.rightCols(r.cols()) = r.cast<Complex>();
        if (numerical_rank(stacked, tol) < n) return false;
    }
    return true;
}

bool excitable(const Matrix& s, const Vector& w0, std::optional<double> tol) {
    require_square(s, "excitable S");
    const Eigen::Index n = s.rows();
    if (w0.size() != n) {
        throw DimensionError("excitable: initial condition must have " + std::to_string(n) +
                             " entries");
    }
    if (!w0.allFinite()) throw DimensionError("excitable: non-finite initial condition");
    Matrix krylov(n, n);
    Vector column = w0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double norm = column.norm();
        if (norm == 0.0) return false;
        // Column scaling does not change the rank and keeps S^k w0 comparable.
        column /= norm;
        krylov.col(k) = column;
        column = s * column;
    }
    return numerical_rank(krylov, tol) == n;
}

Matrix place_poles(const Matrix& a, const Matrix& b, const Matrix& target,
                   const PolePlacementOptions& options) {
    require_square(a, "place_poles A");
    require_finite(b, "place_poles B");
    require_square(target, "place_poles target");
    if (b.rows() != a.rows() || target.rows() != a.rows()) {
        throw DimensionError("place_poles: inconsistent dimensions");
    }
    if (!pbh_reachable(a, b)) {
        throw PreconditionError("controllable", "place_poles: (A, B) is not controllable");
    }
    if (!spectra_disjoint(a, target)) {
        throw SpectralError("place_poles: target spectrum intersects sigma(A)");
    }
    const std::vector<Complex> wanted = eigenvalues(target).eigenvalues;

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
        Matrix k0(b.cols(), a.rows());
        for (Eigen::Index j = 0; j < k0.cols(); ++j) {
            for (Eigen::Index i = 0; i < k0.rows(); ++i) k0(i, j) = normal(rng);
        }
        const Matrix x = solve_sylvester(a, target, -b * k0);
        Eigen::JacobiSVD<Matrix> svd(x);
        const auto& sv = svd.singularValues();
        if (sv(sv.size() - 1) <= 1e-12 * sv(0)) continue;

        const Matrix k = x.transpose().partialPivLu().solve(k0.transpose()).transpose();
        const SpectrumReport placed = eigenvalues(a + b * k);
        if (spectrum_mismatch(placed.eigenvalues, wanted) <= options.spectrum_tol) return k;
    }
    throw NumericalError("place_poles: retry budget exhausted");
}

Matrix pseudo_inverse(const Matrix& m, double tol) {
    require_finite(m, "pseudo_inverse");
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = sv.size() ? tol * sv(0) : 0.0;
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > cutoff && sv(i) > 0.0) inv(i) = 1.0 / sv(i);
    }
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Matrix rotation_block(double re, double im) {
    Matrix block(2, 2);
    block << re, im, -im, re;
    return block;
}

Matrix real_block_diagonal(const std::vector<Complex>& poles) {
    std::vector<Matrix> blocks;
    std::vector<bool> used(poles.size(), false);
    for (std::size_t i = 0; i < poles.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        const Complex p = poles[i];
        if (p.imag() == 0.0) {
            blocks.push_back(Matrix::Constant(1, 1, p.real()));
            continue;
        }
        bool paired = false;
        for (std::size_t j = i + 1; j < poles.size(); ++j) {
            if (!used[j] && std::abs(poles[j] - std::conj(p)) <= 1e-12 * std::max(1.0, std::abs(p))) {
                used[j] = true;
                paired = true;
                break;
            }
        }
        if (!paired) {
            throw SpectralError("real_block_diagonal: complex pole without conjugate partner");
        }
        blocks.push_back(rotation_block(p.real(), std::abs(p.imag())));
    }
    return block_diagonal(blocks);
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    for (const Matrix& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    Matrix out = Matrix::Zero(rows, cols);
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    for (const Matrix& b : blocks) {
        out.block(r, c, b.rows(), b.cols()) = b;
        r += b.rows();
        c += b.cols();
    }
    return out;
}

Matrix kernel_basis(const Matrix& m, std::optional<double> tol) {
    require_finite(m, "kernel_basis");
    const Eigen::Index n = m.cols();
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const Eigen::Index rank = numerical_rank(m, tol);
    const Eigen::Index dim = n - rank;
    if (dim == 0) return Matrix(n, 0);

    const Matrix z = svd.matrixV().rightCols(dim);
    Matrix candidates = z * z.transpose();  // projections of e_1..e_n onto ker(m)
    Matrix basis(n, dim);
    std::vector<bool> taken(static_cast<std::size_t>(n), false);
    for (Eigen::Index k = 0; k < dim; ++k) {
        Eigen::Index best = -1;
        double best_norm = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (taken[static_cast<std::size_t>(i)]) continue;
            const double norm = candidates.col(i).norm();
            // ties resolve to the lowest index
            if (best < 0 || norm > best_norm * (1.0 + 1e-10)) {
                best = i;
                best_norm = norm;
            }
        }
        taken[static_cast<std::size_t>(best)] = true;
        const Vector q = candidates.col(best) / best_norm;
        basis.col(k) = q;
        candidates -= q * (q.transpose() * candidates);
    }
    return basis;
}

double min_symmetric_eigenvalue(const Matrix& m) {
    require_square(m, "min_symmetric_eigenvalue");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

double max_symmetric_eigenvalue(const Matrix& m) {
    require_square(m, "max_symmetric_eigenvalue");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(solver.eigenvalues().size() - 1);
}

Matrix symmetric_sqrt(const Matrix& m) {
    require_square(m, "symmetric_sqrt");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.transpose()));
    const Vector root = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * root.asDiagonal() * solver.eigenvectors().transpose();
}

}  // namespace mmashc
