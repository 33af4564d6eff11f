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
#include "mmashc/errors.hpp"
#include "mmashc/model_io.hpp"
#include "mmashc/plot.hpp"
#include "mmashc/random_models.hpp"
#include "mmashc/spring_mass.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <sstream>

using namespace mmashc;
using mmashc::testing::max_abs;
using mmashc::testing::TempDir;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("matrix and model round trip") {
    ModelSampler sampler(41);
    const StateSpaceModel sys = sampler.stable_system(4, 2, 3);
    TempDir dir;
    write_model_file(dir.file("m.json"), ModelFile{"rand", "abstract", sys});
    const ModelFile back = read_model_file(dir.file("m.json"));
    CHECK(back.name == "rand");
    CHECK(back.role == "abstract");
    CHECK(max_abs(back.model.a() - sys.a()) == 0.0);
    CHECK(max_abs(back.model.b() - sys.b()) == 0.0);
    CHECK(max_abs(back.model.c() - sys.c()) == 0.0);

    const Matrix empty_cols = Matrix::Zero(3, 0);
    const Matrix restored = matrix_from_json(matrix_to_json(empty_cols), "d");
    CHECK(restored.rows() == 3);
    CHECK(restored.cols() == 0);
    CHECK(max_abs(vector_from_json(vector_to_json(Vector::Ones(3)), "v") - Vector::Ones(3)) == 0.0);
}

TEST_CASE("malformed inputs raise ParseError") {
    try {
        parse_json("{\"a\": [[1, 2],\n [3 4]]}", "broken.json");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        const std::string what = e.what();
        CHECK(what.find("broken.json") != std::string::npos);
        CHECK(what.find("line") != std::string::npos);
    }
    CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1, 2], [3]]"), "a"), ParseError);
    CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1, \"x\"]]"), "a"), ParseError);
    CHECK_THROWS_AS(model_from_json(Json::parse(R"({"a": [[1]], "b": [[1]]})")), ParseError);
    CHECK_THROWS_AS(model_from_json(Json::parse(R"({"role": "x", "a": [[1]], "b": [[1]], "c": [[1]]})")),
                    ParseError);
    CHECK_THROWS_AS(signal_from_json(Json::parse(R"([[{"type": "square"}]])"), "u"), ParseError);
    CHECK_THROWS_AS(read_text_file("/nonexistent/path.json"), ParseError);
    CHECK_THROWS_AS(interconnection_from_json(Json::parse(R"({"topology": "loop"})")), ParseError);
}

TEST_CASE("signal round trip") {
    const SignalSpec s({{SignalTerm::sine(2.0, 3.0, 0.5), SignalTerm::constant(1.0)},
                        {SignalTerm::sign_sine(1.5, 2.0)},
                        {SignalTerm::exp_decay(4.0, 0.5), SignalTerm::cosine(1.0, 1.0)},
                        {SignalTerm::zero()}});
    const SignalSpec back = signal_from_json(signal_to_json(s), "s");
    REQUIRE(back.dim() == 4);
    for (double t : {0.0, 0.3, 1.7, 4.2}) CHECK(max_abs(back(t) - s(t)) == 0.0);
    const SignalSpec bare = signal_from_json(Json::parse("[2.5, 0]"), "u");
    CHECK(bare(1.0)(0) == 2.5);
    CHECK(bare(1.0)(1) == 0.0);
}

TEST_CASE("pole lists") {
    const std::vector<Complex> poles{{-1.0, 2.0}, {-1.0, -2.0}, {-3.0, 0.0}};
    CHECK(spectrum_mismatch(poles_from_json(poles_to_json(poles), "p"), poles) == 0.0);
    const auto reals = poles_from_json(Json::parse("[-1, -2]"), "p");
    CHECK(reals.size() == 2);
    CHECK(reals[1] == Complex(-2.0, 0.0));
}

TEST_CASE("scenario files") {
    const SpringMassData d = spring_mass_data();
    Json j;
    j["topology"] = "hierarchical";
    j["horizon"] = 2.0;
    j["step"] = 0.01;
    j["plant"] = model_to_json({"plant", "concrete", d.plant});
    j["abstract"] = model_to_json({"abstract", "abstract", d.abstract()});
    j["l_hat"] = matrix_to_json(d.l_hat);
    j["k_poles"] = poles_to_json(d.k_poles);
    j["x0"] = vector_to_json(d.x0);
    j["xi0"] = vector_to_json(d.xi0);
    j["wiring"] = "stabilizing-link";
    const InterconnectionSpec spec = interconnection_from_json(j);
    CHECK(spec.topology() == Topology::Hierarchical);
    CHECK(spec.grid.horizon == 2.0);
    const auto& h = std::get<HierarchicalScenario>(spec.scenario);
    CHECK(h.wiring == HierarchicalWiring::StabilizingLink);
    CHECK(max_abs(h.cert.p - d.p) < 1e-9);
    CHECK(h.v.identically_zero());

    j["wiring"] = "loop";
    CHECK_THROWS_AS(interconnection_from_json(j), ParseError);
}

TEST_CASE("CSV output") {
    Trajectory traj;
    traj.topology = Topology::Custom;
    traj.step = 0.5;
    traj.times = {0.0, 0.5, 1.0};
    Matrix y(3, 2);
    y << 1.0 / 3.0, 0.0, -2.0, 1e-300, 5.0, 6.0;
    traj.add_block("y", y);
    traj.add_block("z", Matrix::Ones(3, 1));
    CHECK(trajectory_csv_header(traj) ==
          std::vector<std::string>{"time", "y1", "y2", "z1", "state_error_norm", "output_error_norm"});

    ErrorTrace error;
    error.times = traj.times;
    error.output_norm = {0.1, 0.2, 0.3};
    const auto rows = lines(trajectory_csv(traj, error));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "time,y1,y2,z1,state_error_norm,output_error_norm");
    CHECK(rows[1] == "0,0.33333333333333331,0,1,nan,0.10000000000000001");
    CHECK(rows[2] == "0.5,-2,1e-300,1,nan,0.20000000000000001");
    CHECK(format_double(0.1) == "0.10000000000000001");

    error.output_norm.pop_back();
    CHECK_THROWS_AS(trajectory_csv(traj, error), DimensionError);
}

TEST_CASE("FNV-1a digests") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_hex("foobar") == "85944171f73967e8");
    TempDir dir;
    write_text_file(dir.file("x.txt"), "foobar");
    CHECK(file_digest(dir.file("x.txt")) == "85944171f73967e8");
}

TEST_CASE("SVG rendering") {
    const SpringMassSetup setup = spring_mass_setup();
    const HierarchicalScenario s = spring_mass_hierarchical(setup, true);
    const SimulationResult run = run_hierarchical(s.plant, s.abstract, s.cert, s.v, s.x0, s.xi0, TimeGrid{2.0, 1e-3});
    CHECK(plotted_blocks(run.trajectory) == std::vector<std::string>{"y", "psi"});
    const std::string svg = render_svg(run.trajectory, run.error, "bounded error", 500);
    CHECK(svg.find("width=\"900\" height=\"600\"") != std::string::npos);
    CHECK(svg.rfind("</svg>") != std::string::npos);
    CHECK(count(svg, "<polyline") == 5);
    CHECK(svg.find("bounded error") != std::string::npos);
    CHECK(render_svg(run.trajectory, run.error, "bounded error", 500) == svg);
}
