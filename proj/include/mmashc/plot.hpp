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
#ifndef MMASHC_PLOT_HPP
#define MMASHC_PLOT_HPP

#include "mmashc/sim.hpp"

#include <string>
#include <vector>

namespace mmashc {

/// Blocks drawn in the upper panel for a topology (e.g. y and psi).
std::vector<std::string> plotted_blocks(const Trajectory& traj);

/// Self-contained 900 x 600 SVG: output traces with legend on top, the
/// output error norm below. Polylines are thinned to at most `max_points`
/// vertices per channel.
std::string render_svg(const Trajectory& traj, const ErrorTrace& error, const std::string& title,
                       std::size_t max_points = 2000);

}  // namespace mmashc

#endif  // MMASHC_PLOT_HPP
