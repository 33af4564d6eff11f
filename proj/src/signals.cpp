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
#include "mmashc/signals.hpp"

#include "mmashc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace mmashc {

double SignalTerm::operator()(double t) const {
    switch (kind) {
        case Kind::Zero:
            return 0.0;
        case Kind::Constant:
            return amplitude;
        case Kind::Sine:
            return amplitude * std::sin(omega * t + phase);
        case Kind::Cosine:
            return amplitude * std::cos(omega * t + phase);
        case Kind::SignSine: {
            const double s = std::sin(omega * t);
            return s > 0.0 ? amplitude : (s < 0.0 ? -amplitude : 0.0);
        }
        case Kind::ExpDecay:
            return amplitude * std::exp(-rate * t);
    }
    return 0.0;
}

SignalSpec::SignalSpec(std::vector<std::vector<SignalTerm>> channels) : channels_(std::move(channels)) {
    for (const auto& channel : channels_) {
        if (channel.empty()) throw DimensionError("signal: every channel needs at least one term");
        for (const SignalTerm& term : channel) {
            if (!std::isfinite(term.amplitude) || !std::isfinite(term.omega) ||
                !std::isfinite(term.phase) || !std::isfinite(term.rate)) {
                throw DimensionError("signal: non-finite term parameter");
            }
        }
    }
}

SignalSpec SignalSpec::zeros(Eigen::Index dim) {
    return SignalSpec(std::vector<std::vector<SignalTerm>>(static_cast<std::size_t>(dim),
                                                           {SignalTerm::zero()}));
}

Vector SignalSpec::operator()(double t) const {
    Vector out(dim());
    for (Eigen::Index i = 0; i < dim(); ++i) {
        double value = 0.0;
        for (const SignalTerm& term : channels_[static_cast<std::size_t>(i)]) value += term(t);
        out(i) = value;
    }
    return out;
}

bool SignalSpec::exponentially_decaying() const {
    for (const auto& channel : channels_) {
        for (const SignalTerm& term : channel) {
            const bool ok = term.kind == SignalTerm::Kind::Zero || term.amplitude == 0.0 ||
                            (term.kind == SignalTerm::Kind::ExpDecay && term.rate > 0.0);
            if (!ok) return false;
        }
    }
    return true;
}

bool SignalSpec::identically_zero() const {
    for (const auto& channel : channels_) {
        for (const SignalTerm& term : channel) {
            if (term.kind != SignalTerm::Kind::Zero && term.amplitude != 0.0) return false;
        }
    }
    return true;
}

double SignalSpec::sampled_sup_norm(double horizon, double step) const {
    const auto steps = static_cast<long long>(std::llround(horizon / step));
    double sup = 0.0;
    for (long long k = 0; k <= steps; ++k) {
        sup = std::max(sup, (*this)(static_cast<double>(k) * step).norm());
    }
    return sup;
}

}  // namespace mmashc
