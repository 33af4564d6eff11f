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
#ifndef MMASHC_ERRORS_HPP
#define MMASHC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mmashc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shape mismatch, empty matrix, or non-finite entries.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A spectral hypothesis failed: overlapping spectra, non-Hurwitz matrix,
/// evaluation point on an eigenvalue.
class SpectralError : public Error {
public:
    using Error::Error;
};

/// Ill-conditioning, non-convergence, or an exhausted retry budget.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A named structural precondition (rank or subspace condition) is violated.
class PreconditionError : public Error {
public:
    PreconditionError(std::string condition, const std::string& what)
        : Error(what), condition_(std::move(condition)) {}

    const std::string& condition() const noexcept { return condition_; }

private:
    std::string condition_;
};

/// Integration produced a non-finite state.
class SimulationError : public Error {
public:
    SimulationError(double time, const std::string& what) : Error(what), time_(time) {}

    /// First sample time at which the state was non-finite.
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Malformed input file.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace mmashc

#endif  // MMASHC_ERRORS_HPP
