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
#include "mmashc/random_models.hpp"
#include "mmashc/spring_mass.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace mmashc;
using mmashc::testing::max_abs;
using mmashc::testing::TempDir;

namespace {

namespace fs = std::filesystem;

void write_json(const std::string& path, const Json& j) { write_text_file(path, j.dump(2)); }

std::string write_plant(const TempDir& dir) {
    const std::string path = dir.file("plant.json");
    write_model_file(path, {"two-mass", "concrete", spring_mass_plant()});
    return path;
}

Json artifact_json(const SpringMassSetup& s) {
    const SpringMassData& d = s.data;
    Json j;
    j["f"] = matrix_to_json(d.f);
    j["g"] = matrix_to_json(d.g);
    j["h"] = matrix_to_json(d.h);
    j["p"] = matrix_to_json(d.p);
    j["l_hat"] = matrix_to_json(d.l_hat);
    j["m"] = matrix_to_json(d.m_map);
    j["n"] = matrix_to_json(s.n_constructed);
    j["gamma"] = matrix_to_json(d.gamma);
    j["k"] = matrix_to_json(s.k);
    j["r_hat"] = matrix_to_json(d.r_hat);
    j["x0"] = vector_to_json(d.x0);
    j["xi0"] = vector_to_json(d.xi0);
    return j;
}

double last_output_error(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, last;
    while (std::getline(in, line)) {
        if (!line.empty()) last = line;
    }
    return std::stod(last.substr(last.rfind(',') + 1));
}

int cli_status(const std::string& args) {
    const std::string command = std::string(MMASHC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int raw = std::system(command.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

bool has_note(const RunReport& report, const std::string& needle) {
    for (const auto& n : report.notes) {
        if (n.find(needle) != std::string::npos) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("reduce with the two-mass abstraction as interpolant") {
    TempDir dir;
    const SpringMassData d = spring_mass_data();
    const std::string plant = write_plant(dir);
    Json interp;
    interp["s"] = matrix_to_json(d.f);
    interp["l"] = matrix_to_json(d.l_hat);
    write_json(dir.file("interp.json"), interp);

    CommandOptions opts;
    opts.out = dir.file("rom.json");
    const RunReport report = cmd_reduce(plant, {dir.file("interp.json")}, ReduceMode::Direct, opts);
    CHECK(report.all_pass());
    const ModelFile rom = read_model_file(opts.out);
    CHECK(max_abs(rom.model.c() - Matrix::Identity(2, 2)) < 1e-8);
    CHECK(report.input_digests.size() == 2);

    CHECK_THROWS_AS(cmd_reduce(plant, {dir.file("interp.json")}, ReduceMode::Swapped, opts), ParseError);
    CHECK_THROWS_AS(reduce_mode_from_name("sideways"), ParseError);
}

TEST_CASE("two-sided reduction of a random model") {
    TempDir dir;
    ModelSampler sampler(61);
    const StateSpaceModel sys = sampler.stable_system(8, 1, 1);
    const DirectInterpolant di = sampler.direct_interpolant(4, 1);
    std::vector<double> avoid = imaginary_parts(di.s);
    const SwappedInterpolant si = sampler.swapped_interpolant(4, 1, avoid);
    write_model_file(dir.file("sys.json"), {"random", "concrete", sys});
    Json direct, swapped;
    direct["s"] = matrix_to_json(di.s);
    direct["l"] = matrix_to_json(di.l);
    swapped["q"] = matrix_to_json(si.q);
    swapped["r"] = matrix_to_json(si.r);
    write_json(dir.file("direct.json"), direct);
    write_json(dir.file("swapped.json"), swapped);

    CommandOptions opts;
    opts.out = dir.file("rom.json");
    opts.tol = 1e-7;
    const RunReport report =
        cmd_reduce(dir.file("sys.json"), {dir.file("direct.json"), dir.file("swapped.json")}, ReduceMode::TwoSided, opts);
    CHECK(report.residuals.size() == 4);
    for (const auto& r : report.residuals) CHECK_MESSAGE(r.pass(), r.name << " = " << r.value);
    CHECK(read_model_file(opts.out).model.n() == 4);
}

TEST_CASE("abstract command") {
    TempDir dir;
    const SpringMassData d = spring_mass_data();
    const std::string plant = write_plant(dir);
    Json pj;
    pj["p"] = matrix_to_json(d.p);
    write_json(dir.file("p.json"), pj);
    CommandOptions opts;
    opts.out = dir.file("abs");
    const RunReport report = cmd_abstract(plant, dir.file("p.json"), opts);
    CHECK(report.all_pass());
    const Json design = read_json_file(dir.file("abs/design.json"));
    CHECK(max_abs(require_matrix(design, "l_hat") - d.l_hat) < 1e-9);
    CHECK(max_abs(require_matrix(design, "f") - d.f) < 1e-12);
    CHECK(read_model_file(dir.file("abs/abstraction.json")).model.n() == 2);

    Matrix e3 = Matrix::Zero(4, 1);
    e3(2, 0) = 1.0;
    write_json(dir.file("bad.json"), matrix_to_json(e3));
    try {
        cmd_abstract(plant, dir.file("bad.json"), opts);
        FAIL("expected an inadmissible P to be rejected");
    } catch (const PreconditionError& e) {
        CHECK(e.condition() == "im(AP) in im(P)+im(B)");
    }
}

TEST_CASE("simulate scenario files") {
    TempDir dir;
    const SpringMassSetup s = spring_mass_setup();
    const SpringMassData& d = s.data;

    Json bounded;
    bounded["topology"] = "hierarchical";
    bounded["horizon"] = 10.0;
    bounded["step"] = 1e-3;
    bounded["plant"] = model_to_json({"plant", "concrete", d.plant});
    bounded["abstract"] = model_to_json({"abstract", "abstract", d.abstract()});
    bounded["l_hat"] = matrix_to_json(d.l_hat);
    bounded["k"] = matrix_to_json(s.k);
    bounded["x0"] = vector_to_json(d.x0);
    bounded["xi0"] = vector_to_json(d.xi0);
    write_json(dir.file("bounded.json"), bounded);

    CommandOptions opts;
    opts.out = dir.file("runs/bounded");
    const RunReport report = cmd_simulate(dir.file("bounded.json"), opts);
    CHECK(report.all_pass());
    const std::string csv = read_text_file(dir.file("runs/bounded.csv"));
    CHECK(fs::exists(dir.file("runs/bounded.svg")));
    CHECK(csv.rfind("time,xi1,xi2,", 0) == 0);
    CHECK(last_output_error(csv) < 1e-6);

    Json related;
    related["topology"] = "m-direct-stabilized";
    related["horizon"] = 10.0;
    related["step"] = 1e-3;
    related["plant"] = model_to_json({"plant", "concrete", d.plant});
    related["abstract"] = model_to_json({"abstract", "abstract", s.design.abstract_system()});
    related["m"] = matrix_to_json(d.m_map);
    related["k_hat"] = matrix_to_json(s.k_hat);
    related["u"] = signal_to_json(d.u);
    related["x0"] = vector_to_json(d.x0);
    related["xi0"] = vector_to_json(d.xi0);
    write_json(dir.file("related.json"), related);
    opts.out = dir.file("related");
    const RunReport m_report = cmd_simulate(dir.file("related.json"), opts);
    CHECK(m_report.all_pass());
    CHECK(last_output_error(read_text_file(dir.file("related.csv"))) < 1e-6);

    opts.horizon = 0.0;
    CHECK_THROWS_AS(cmd_simulate(dir.file("related.json"), opts), DimensionError);
}

TEST_CASE("verify artifacts") {
    TempDir dir;
    const SpringMassSetup s = spring_mass_setup();
    const std::string plant = write_plant(dir);
    const Json good = artifact_json(s);
    write_json(dir.file("good.json"), good);
    CHECK(cmd_verify(plant, dir.file("good.json"), {}, {}).all_pass());

    Json perturbed = good;
    Matrix p = s.data.p;
    p(0, 0) += 1e-3;
    perturbed["p"] = matrix_to_json(p);
    write_json(dir.file("perturbed.json"), perturbed);
    CHECK_FALSE(cmd_verify(plant, dir.file("perturbed.json"), {"simulation-identities"}, {}).all_pass());

    Json unobservable;
    unobservable["s"] = matrix_to_json(s.data.f);
    unobservable["l"] = matrix_to_json(Matrix::Zero(2, 2));
    write_json(dir.file("unobservable.json"), unobservable);
    CHECK_FALSE(cmd_verify(plant, dir.file("unobservable.json"), {"pbh"}, {}).all_pass());

    CHECK_THROWS_AS(cmd_verify(plant, dir.file("good.json"), {"telepathy"}, {}), ParseError);
    CHECK_THROWS_AS(cmd_verify(plant, dir.file("unobservable.json"), {"certificate"}, {}), ParseError);

    CHECK(cli_status("verify " + plant + " " + dir.file("good.json")) == 0);
    CHECK(cli_status("verify " + plant + " " + dir.file("perturbed.json")) == 1);
    CHECK(cli_status("verify " + plant + " " + dir.file("unobservable.json") + " --checks pbh") == 1);
    CHECK(cli_status("verify " + plant + " " + dir.file("good.json") + " --checks telepathy") == 2);
    CHECK(cli_status("verify " + plant + " " + dir.file("missing.json")) == 2);
    CHECK(cli_status("frobnicate") == 2);
}

TEST_CASE("two-mass example run") {
    TempDir dir;
    CommandOptions opts;
    opts.out = dir.file("first");
    const RunReport first = cmd_spring_mass_example(opts);
    CHECK(first.all_pass());
    CHECK(first.criteria.size() == 12);
    CHECK(has_note(first, "N matrix: entry (1,1)"));

    std::size_t csv = 0, svg = 0;
    for (const auto& entry : fs::directory_iterator(opts.out)) {
        if (entry.path().extension() == ".csv") ++csv;
        if (entry.path().extension() == ".svg") ++svg;
    }
    CHECK(csv == 4);
    CHECK(svg == 4);
    for (const char* name : {"plant.json", "artifact.json", "report.txt", "report.json"}) {
        CHECK(fs::exists(fs::path(opts.out) / name));
    }

    opts.out = dir.file("second");
    cmd_spring_mass_example(opts);
    for (const char* name : {"hierarchical_v_zero.csv", "hierarchical_v_nonzero.csv", "m_direct_u_zero.csv",
                             "m_direct_u_nonzero.csv", "artifact.json"}) {
        CHECK_MESSAGE(read_text_file(dir.file(std::string("first/") + name)) ==
                          read_text_file(dir.file(std::string("second/") + name)),
                      name);
    }
    const Json report = read_json_file(dir.file("first/report.json"));
    CHECK(report.at("csv_schema_version") == kCsvSchemaVersion);
}
