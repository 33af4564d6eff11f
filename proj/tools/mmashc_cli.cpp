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
#include "mmashc/commands.hpp"
#include "mmashc/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_common(CLI::App* cmd, mmashc::CommandOptions& opts, bool grid) {
    cmd->add_option("--out", opts.out, "Output path (file, prefix or directory, per command)");
    cmd->add_option("--tol", opts.tol, "Residual threshold")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opts.seed, "Seed for randomized internals");
    if (grid) {
        cmd->add_option("--step", opts.step, "Integration step [s]")->check(CLI::PositiveNumber);
        cmd->add_option("--horizon", opts.horizon, "Simulation horizon [s]")->check(CLI::PositiveNumber);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moment matching and approximate simulation toolkit"};
    app.require_subcommand(1);
    mmashc::CommandOptions opts;

    std::string model, interp_mode = "direct", spec, p_file, artifact;
    std::vector<std::string> interps, checks;

    auto* reduce = app.add_subcommand("reduce", "Build a moment-matching reduced model");
    reduce->add_option("model", model, "Model JSON file")->required();
    reduce->add_option("interpolants", interps, "Interpolant JSON file(s)")->required();
    reduce->add_option("--mode", interp_mode, "direct, swapped or two-sided");
    add_common(reduce, opts, false);

    auto* abstract = app.add_subcommand("abstract", "Construct an M-related abstraction from P");
    abstract->add_option("model", model, "Model JSON file")->required();
    abstract->add_option("p-file", p_file, "JSON file with the matrix p")->required();
    add_common(abstract, opts, false);

    auto* simulate = app.add_subcommand("simulate", "Integrate an interconnection scenario");
    simulate->add_option("spec", spec, "Scenario JSON file")->required();
    add_common(simulate, opts, true);

    auto* verify = app.add_subcommand("verify", "Check hypotheses and identities of an artifact");
    verify->add_option("model", model, "Model JSON file")->required();
    verify->add_option("artifact", artifact, "Artifact JSON file")->required();
    verify->add_option("--checks", checks, "Subset of checks to run")->delimiter(',');
    add_common(verify, opts, false);

    auto* example = app.add_subcommand("paper-example", "Reproduce the two-mass benchmark with all verdicts");
    add_common(example, opts, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        mmashc::RunReport report;
        if (reduce->parsed()) {
            report = mmashc::cmd_reduce(model, interps, mmashc::reduce_mode_from_name(interp_mode), opts);
        } else if (abstract->parsed()) {
            report = mmashc::cmd_abstract(model, p_file, opts);
        } else if (simulate->parsed()) {
            report = mmashc::cmd_simulate(spec, opts);
        } else if (verify->parsed()) {
            report = mmashc::cmd_verify(model, artifact, checks, opts);
        } else {
            report = mmashc::cmd_spring_mass_example(opts);
        }
        std::cout << report.to_text();
        return report.all_pass() ? 0 : 1;
    } catch (const mmashc::SimulationError& e) {
        std::cerr << "error: simulation diverged at t = " << e.time() << " s: " << e.what() << "\n";
    } catch (const mmashc::PreconditionError& e) {
        std::cerr << "error: precondition '" << e.condition() << "' failed: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}
