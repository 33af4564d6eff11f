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
#include "mmashc/acceptance.hpp"
#include "mmashc/commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria for the two-mass benchmark and the random suites"};
    std::string work_dir = "acceptance_runs";
    mmashc::AcceptanceOptions opts;
    app.add_option("--work-dir", work_dir, "Directory for the determinism runs");
    app.add_option("--seed", opts.seed, "Seed for gains and random suites");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        std::vector<mmashc::CriterionResult> results = mmashc::run_numeric_criteria(opts);

        int run = 0;
        const mmashc::OutputProducer produce = [&]() {
            const fs::path dir = fs::path(work_dir) / ("run" + std::to_string(++run));
            fs::remove_all(dir);
            mmashc::CommandOptions copts;
            copts.out = dir.string();
            copts.seed = opts.seed;
            const mmashc::RunReport report = mmashc::cmd_spring_mass_example(copts);
            std::map<std::string, std::string> files;
            for (const auto& path : report.outputs) {
                const fs::path p(path);
                if (p.extension() == ".csv" || p.extension() == ".svg" || p.filename() == "artifact.json") {
                    files[p.filename().string()] = mmashc::read_text_file(path);
                }
            }
            return files;
        };
        results.push_back(mmashc::check_determinism(produce));

        bool all = true;
        for (const auto& r : results) {
            std::cout << r.summary_line() << "\n";
            for (const auto& note : r.notes) std::cout << "       note: " << note << "\n";
            all = all && r.passed();
        }
        std::size_t passed = 0;
        for (const auto& r : results) passed += r.passed() ? 1 : 0;
        std::cout << passed << "/" << results.size() << " criteria passed\n";
        return all ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
