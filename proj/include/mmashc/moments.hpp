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
#ifndef MMASHC_MOMENTS_HPP
#define MMASHC_MOMENTS_HPP

// Moments of LTI systems at interpolation data and the reduced-order models
// that match them.
//
//   direct:  Pi S = A Pi + B L,   moment C Pi   at the observable pair (S, L)
//   swapped: Q Ups = Ups A + R C, moment Ups B  at the reachable pair (Q, R)

#include "mmashc/lti_core.hpp"

#include <cstdint>

namespace mmashc {

/// Signal-generator data (S, L), S is n^ x n^, L is m x n^.
struct DirectInterpolant {
    Matrix s;
    Matrix l;

    /// Shape and finiteness checks only.
    void validate() const;
};

/// Filter data (Q, R), Q is n^ x n^, R is n^ x p.
struct SwappedInterpolant {
    Matrix q;
    Matrix r;

    void validate() const;
};

struct DirectMomentSolution {
    Matrix pi;      ///< n x n^
    Matrix moment;  ///< C Pi, p x n^
};

struct SwappedMomentSolution {
    Matrix upsilon;  ///< n^ x n
    Matrix moment;   ///< Ups B, n^ x m
};

struct MomentOptions {
    /// Reject (S, L) that fails the PBH test. When false the moment is still
    /// computed; only spectral disjointness is needed for uniqueness.
    bool require_interpolant_pbh = true;
};

DirectMomentSolution moment_direct(const StateSpaceModel& sys, const DirectInterpolant& interp,
                                   const MomentOptions& options = {});
SwappedMomentSolution moment_swapped(const StateSpaceModel& sys, const SwappedInterpolant& interp,
                                     const MomentOptions& options = {});

/// xi' = (S - G L) xi + G u, psi = C Pi xi. Requires sigma(S) and sigma(S - G L) disjoint.
StateSpaceModel rom_direct(const StateSpaceModel& sys, const DirectInterpolant& interp,
                           const Matrix& g_free);

/// xi' = (Q - R H) xi + Ups B u, psi = H xi. Requires sigma(Q - R H) and sigma(Q) disjoint.
StateSpaceModel rom_swapped(const StateSpaceModel& sys, const SwappedInterpolant& interp,
                            const Matrix& h_free);

/// Free map G with sigma(S - G L) = {-1, -2, ..., -n^}.
Matrix default_input_map(const DirectInterpolant& interp, std::uint64_t seed = 0);
/// Free map H with sigma(Q - R H) = {-1, -2, ..., -n^}.
Matrix default_output_map(const SwappedInterpolant& interp, std::uint64_t seed = 0);

enum class TwoSidedForm {
    InputMap,   ///< direct form with G = (Ups Pi)^{-1} Ups B
    OutputMap,  ///< swapped form with H = C Pi (Ups Pi)^{-1}
};

inline constexpr double kTwoSidedConditionLimit = 1e10;

/// ROM matching the moments at both (S, L) and (Q, R).
StateSpaceModel rom_two_sided(const StateSpaceModel& sys, const DirectInterpolant& di,
                              const SwappedInterpolant& si,
                              TwoSidedForm form = TwoSidedForm::InputMap);

/// C (s I - A)^{-1} B, solved column by column.
ComplexMatrix transfer_eval(const StateSpaceModel& sys, Complex s);

/// Steady-state model omega' = S omega, y = C Pi omega.
StateSpaceModel limiting_direct(const DirectMomentSolution& moment, const DirectInterpolant& interp);

/// Error model zeta' = Q zeta + Ups B u, output zeta.
StateSpaceModel limiting_swapped(const SwappedMomentSolution& moment,
                                 const SwappedInterpolant& interp);

/// Worst relative tangential interpolation error over sigma(S): for every
/// eigenpair S v = lambda v compares W_full(lambda) L v with W_rom(lambda) L v.
/// For SISO systems this is plain interpolation of the transfer function.
double direct_interpolation_error(const StateSpaceModel& full, const StateSpaceModel& rom,
                                  const DirectInterpolant& interp);

/// Left-tangential counterpart over sigma(Q): w^T Q = lambda w^T, compares
/// w^T R W_full(lambda) with w^T R W_rom(lambda).
double swapped_interpolation_error(const StateSpaceModel& full, const StateSpaceModel& rom,
                                   const SwappedInterpolant& interp);

/// ||X - Y||_F / max(||Y||_F, 1e-12).
double relative_difference(const Matrix& x, const Matrix& y);

}  // namespace mmashc

#endif  // MMASHC_MOMENTS_HPP
