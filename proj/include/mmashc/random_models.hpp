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
#ifndef MMASHC_RANDOM_MODELS_HPP
#define MMASHC_RANDOM_MODELS_HPP

#include "mmashc/moments.hpp"
#include "mmashc/signals.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace mmashc {

/// Seeded source of random test systems. Same seed, same sequence.
class ModelSampler {
public:
    explicit ModelSampler(std::uint64_t seed = 0) : engine_(seed) {}

    double normal() { return normal_(engine_); }
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

    Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols);
    Vector normal_vector(Eigen::Index n);
    Matrix orthogonal(Eigen::Index n);

    /// Normal A = Q D Q^T with every eigenvalue's real part in [-3, -1];
    /// B, C standard normal with full rank.
    StateSpaceModel stable_system(Eigen::Index n, Eigen::Index m, Eigen::Index p);

    /// Real block-diagonal matrix with simple eigenvalues +-i w, w drawn in
    /// [0.5, 5] at least 0.2 apart and from every |Im| in `avoid`. An odd
    /// order adds an eigenvalue at 0.
    Matrix imaginary_axis_generator(Eigen::Index order, const std::vector<double>& avoid = {});

    /// Observable (S, L) with S from imaginary_axis_generator.
    DirectInterpolant direct_interpolant(Eigen::Index order, Eigen::Index m,
                                         const std::vector<double>& avoid = {});
    /// Reachable (Q, R) with Q from imaginary_axis_generator.
    SwappedInterpolant swapped_interpolant(Eigen::Index order, Eigen::Index p,
                                           const std::vector<double>& avoid = {});

    /// Vector excitable for `s`.
    Vector excitable_vector(const Matrix& s);

    /// Each channel a sum of one sine and one cosine of random amplitude
    /// and frequency in [0.5, 5].
    SignalSpec smooth_signal(Eigen::Index dim, double amplitude);
    /// Each channel a random exponential decay with rate in [0.5, 2].
    SignalSpec decaying_signal(Eigen::Index dim, double amplitude);

    /// Complex-conjugate pole set in the open left half plane, real parts in
    /// [-4, -1]; `count` may be odd.
    std::vector<Complex> stable_poles(Eigen::Index count);

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// |Im| of every eigenvalue, for use as `avoid`.
std::vector<double> imaginary_parts(const Matrix& m);

}  // namespace mmashc

#endif  // MMASHC_RANDOM_MODELS_HPP
