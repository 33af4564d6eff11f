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
#ifndef MMASHC_SIGNALS_HPP
#define MMASHC_SIGNALS_HPP

#include "mmashc/lti_core.hpp"

#include <vector>

namespace mmashc {

/// One additive term of an exogenous signal channel. Frequencies in rad/s,
/// rates in 1/s.
struct SignalTerm {
    enum class Kind { Zero, Constant, Sine, Cosine, SignSine, ExpDecay };

    Kind kind = Kind::Zero;
    double amplitude = 0.0;
    double omega = 0.0;  ///< Sine, Cosine, SignSine
    double phase = 0.0;  ///< Sine, Cosine
    double rate = 0.0;   ///< ExpDecay

    static SignalTerm zero() { return {}; }
    static SignalTerm constant(double c) { return {Kind::Constant, c, 0.0, 0.0, 0.0}; }
    static SignalTerm sine(double amp, double omega, double phase = 0.0) {
        return {Kind::Sine, amp, omega, phase, 0.0};
    }
    static SignalTerm cosine(double amp, double omega, double phase = 0.0) {
        return {Kind::Cosine, amp, omega, phase, 0.0};
    }
    /// amp * sign(sin(omega t)), sign(0) = 0.
    static SignalTerm sign_sine(double amp, double omega) {
        return {Kind::SignSine, amp, omega, 0.0, 0.0};
    }
    static SignalTerm exp_decay(double amp, double rate) {
        return {Kind::ExpDecay, amp, 0.0, 0.0, rate};
    }

    double operator()(double t) const;
};

/// Vector-valued signal: each channel is a sum of terms.
class SignalSpec {
public:
    SignalSpec() = default;
    explicit SignalSpec(std::vector<std::vector<SignalTerm>> channels);

    /// `dim` channels that are identically zero.
    static SignalSpec zeros(Eigen::Index dim);

    Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(channels_.size()); }
    const std::vector<std::vector<SignalTerm>>& channels() const noexcept { return channels_; }

    Vector operator()(double t) const;

    /// Every term is Zero or an ExpDecay with positive rate.
    bool exponentially_decaying() const;
    /// Every term is Zero or has zero amplitude.
    bool identically_zero() const;

    /// Largest Euclidean norm over the sample grid k * step, k = 0..round(horizon/step).
    double sampled_sup_norm(double horizon, double step) const;

private:
    std::vector<std::vector<SignalTerm>> channels_;
};

}  // namespace mmashc

#endif  // MMASHC_SIGNALS_HPP
