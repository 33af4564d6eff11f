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
#include "mmashc/random_models.hpp"

#include "mmashc/errors.hpp"

#include <cmath>

namespace mmashc {

namespace {

constexpr int kMaxDraws = 1000;

}  // namespace

Matrix ModelSampler::normal_matrix(Eigen::Index rows, Eigen::Index cols) {
    Matrix out(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = normal();
    }
    return out;
}

Vector ModelSampler::normal_vector(Eigen::Index n) {
    Vector out(n);
    for (Eigen::Index i = 0; i < n; ++i) out(i) = normal();
    return out;
}

Matrix ModelSampler::orthogonal(Eigen::Index n) {
    const Eigen::HouseholderQR<Matrix> qr(normal_matrix(n, n));
    return qr.householderQ() * Matrix::Identity(n, n);
}

StateSpaceModel ModelSampler::stable_system(Eigen::Index n, Eigen::Index m, Eigen::Index p) {
    if (n < 1 || m < 1 || p < 1 || m > n || p > n) {
        throw DimensionError("stable_system: need 1 <= m, p <= n");
    }
    std::vector<Matrix> blocks;
    Eigen::Index filled = 0;
    while (filled < n) {
        if (n - filled >= 2 && uniform(0.0, 1.0) < 0.5) {
            blocks.push_back(rotation_block(uniform(-3.0, -1.0), uniform(0.5, 5.0)));
            filled += 2;
        } else {
            blocks.push_back(Matrix::Constant(1, 1, uniform(-3.0, -1.0)));
            filled += 1;
        }
    }
    const Matrix q = orthogonal(n);
    const Matrix a = q * block_diagonal(blocks) * q.transpose();
    for (int draw = 0; draw < kMaxDraws; ++draw) {
        Matrix b = normal_matrix(n, m);
        Matrix c = normal_matrix(p, n);
        if (numerical_rank(b) == m && numerical_rank(c) == p) return StateSpaceModel(a, b, c);
    }
    throw NumericalError("stable_system: could not draw full-rank B, C");
}

Matrix ModelSampler::imaginary_axis_generator(Eigen::Index order, const std::vector<double>& avoid) {
    if (order < 1) throw DimensionError("imaginary_axis_generator: order must be positive");
    std::vector<double> taken = avoid;
    std::vector<Matrix> blocks;
    for (Eigen::Index k = 0; k < order / 2; ++k) {
        double w = 0.0;
        bool ok = false;
        for (int draw = 0; draw < kMaxDraws && !ok; ++draw) {
            w = uniform(0.5, 5.0);
            ok = true;
            for (double t : taken) ok = ok && std::abs(w - t) >= 0.2;
        }
        if (!ok) throw NumericalError("imaginary_axis_generator: no admissible frequency");
        taken.push_back(w);
        blocks.push_back(rotation_block(0.0, w));
    }
    if (order % 2 == 1) blocks.push_back(Matrix::Zero(1, 1));
    return block_diagonal(blocks);
}

DirectInterpolant ModelSampler::direct_interpolant(Eigen::Index order, Eigen::Index m,
                                                   const std::vector<double>& avoid) {
    const Matrix s = imaginary_axis_generator(order, avoid);
    for (int draw = 0; draw < kMaxDraws; ++draw) {
        Matrix l = normal_matrix(m, order);
        if (pbh_observable(s, l)) return {s, l};
    }
    throw NumericalError("direct_interpolant: no observable L found");
}

SwappedInterpolant ModelSampler::swapped_interpolant(Eigen::Index order, Eigen::Index p,
                                                     const std::vector<double>& avoid) {
    const Matrix q = imaginary_axis_generator(order, avoid);
    for (int draw = 0; draw < kMaxDraws; ++draw) {
        Matrix r = normal_matrix(order, p);
        if (pbh_reachable(q, r)) return {q, r};
    }
    throw NumericalError("swapped_interpolant: no reachable R found");
}

Vector ModelSampler::excitable_vector(const Matrix& s) {
    for (int draw = 0; draw < kMaxDraws; ++draw) {
        Vector w0 = normal_vector(s.rows());
        if (excitable(s, w0)) return w0;
    }
    throw NumericalError("excitable_vector: S admits no excitable vector");
}

SignalSpec ModelSampler::smooth_signal(Eigen::Index dim, double amplitude) {
    std::vector<std::vector<SignalTerm>> channels;
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double a1 = amplitude * normal();
        const double w1 = uniform(0.5, 5.0);
        const double a2 = amplitude * normal();
        const double w2 = uniform(0.5, 5.0);
        channels.push_back({SignalTerm::sine(a1, w1, uniform(0.0, 6.283185307179586)),
                            SignalTerm::cosine(a2, w2)});
    }
    return SignalSpec(std::move(channels));
}

SignalSpec ModelSampler::decaying_signal(Eigen::Index dim, double amplitude) {
    std::vector<std::vector<SignalTerm>> channels;
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double a = amplitude * normal();
        channels.push_back({SignalTerm::exp_decay(a, uniform(0.5, 2.0))});
    }
    return SignalSpec(std::move(channels));
}

std::vector<Complex> ModelSampler::stable_poles(Eigen::Index count) {
    std::vector<Complex> poles;
    while (static_cast<Eigen::Index>(poles.size()) + 1 < count) {
        const double re = uniform(-4.0, -1.0);
        const double im = uniform(0.5, 3.0);
        poles.emplace_back(re, im);
        poles.emplace_back(re, -im);
    }
    if (static_cast<Eigen::Index>(poles.size()) < count) poles.emplace_back(uniform(-4.0, -1.0), 0.0);
    return poles;
}

std::vector<double> imaginary_parts(const Matrix& m) {
    std::vector<double> out;
    for (const Complex& z : eigenvalues(m).eigenvalues) out.push_back(std::abs(z.imag()));
    return out;
}

}  // namespace mmashc
