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
#include "mmashc/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>

namespace mmashc {

namespace {

namespace fs = std::filesystem;

std::string complex_text(const Complex& z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
    return buf;
}

std::string number_text(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

void add_input(RunReport& report, const std::string& path) {
    report.input_digests.emplace_back(path, file_digest(path));
}

void add_spectrum(RunReport& report, const std::string& name, const Matrix& m) {
    report.spectra.emplace_back(name, eigenvalues(m).eigenvalues);
}

void ensure_directory(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create directory '" + dir + "': " + ec.message());
}

std::string join_path(const std::string& dir, const std::string& file) {
    return (fs::path(dir) / file).string();
}

Measurement flag(const std::string& name, bool holds) {
    return {name, holds ? 1.0 : 0.0, 1.0, false};
}

double min_separation(const std::vector<Complex>& values) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) best = std::min(best, std::abs(values[i] - values[j]));
    }
    return best;
}

double spectral_distance(const std::vector<Complex>& x, const std::vector<Complex>& y) {
    double best = std::numeric_limits<double>::infinity();
    for (const Complex& a : x) {
        for (const Complex& b : y) best = std::min(best, std::abs(a - b));
    }
    return best;
}

Json merge_files(RunReport& report, const std::vector<std::string>& paths) {
    Json merged = Json::object();
    for (const auto& path : paths) {
        const Json j = read_json_file(path);
        if (!j.is_object()) throw ParseError(path + ": expected a JSON object");
        add_input(report, path);
        for (auto it = j.begin(); it != j.end(); ++it) merged[it.key()] = it.value();
    }
    return merged;
}

std::optional<DirectInterpolant> direct_from(const Json& j) {
    if (!j.contains("s") || !j.contains("l")) return std::nullopt;
    DirectInterpolant d{require_matrix(j, "s"), require_matrix(j, "l")};
    d.validate();
    return d;
}

std::optional<SwappedInterpolant> swapped_from(const Json& j) {
    if (!j.contains("q") || !j.contains("r")) return std::nullopt;
    SwappedInterpolant s{require_matrix(j, "q"), require_matrix(j, "r")};
    s.validate();
    return s;
}

std::optional<StateSpaceModel> abstract_from(const Json& j) {
    if (j.contains("abstract")) return model_from_json(j.at("abstract")).model;
    if (j.contains("f") && j.contains("g") && j.contains("h")) {
        return StateSpaceModel(require_matrix(j, "f"), require_matrix(j, "g"), require_matrix(j, "h"));
    }
    return std::nullopt;
}

std::optional<Matrix> gain_from(const Json& j, const std::string& key, const Matrix& a, const Matrix& b,
                                std::uint64_t seed) {
    if (j.contains(key)) return require_matrix(j, key);
    if (j.contains(key + "_poles")) {
        return place_poles(a, b, real_block_diagonal(poles_from_json(j.at(key + "_poles"), key + "_poles")),
                           {.seed = seed});
    }
    return std::nullopt;
}

Json design_to_json(const AbstractionDesign& d) {
    return Json{{"p", matrix_to_json(d.p)},         {"d", matrix_to_json(d.d)},
                {"e", matrix_to_json(d.e)},         {"m", matrix_to_json(d.m_map)},
                {"f", matrix_to_json(d.f)},         {"l_hat", matrix_to_json(d.l_hat)},
                {"h", matrix_to_json(d.h)},         {"g", matrix_to_json(d.g)},
                {"n", matrix_to_json(d.n_map)},     {"gamma", matrix_to_json(d.gamma)}};
}

void add_residuals(RunReport& report, const std::vector<NamedResidual>& residuals) {
    report.residuals.insert(report.residuals.end(), residuals.begin(), residuals.end());
}

void add_simulation_notes(RunReport& report, const SimulationResult& res, const std::string& tag) {
    const ErrorTrace& e = res.error;
    std::string line = tag + "sup output error " + number_text(e.sup_norm) + ", terminal " +
                       number_text(e.terminal_norm) + ", trailing window " + number_text(e.window_sup);
    if (e.decay_rate) line += ", fitted decay rate " + number_text(*e.decay_rate);
    report.notes.push_back(line);
    if (res.bound) {
        report.notes.push_back(tag + "V(xi0, x0) = " + number_text(*res.initial_value) + ", gamma(||v||_inf) = " +
                               number_text(*res.gamma_term) + ", bound = " + number_text(*res.bound));
    }
    for (const auto& h : res.hypotheses) {
        report.notes.push_back(tag + "hypothesis '" + h.name + "': " + (h.holds ? "holds" : "fails"));
    }
    for (const auto& w : res.warnings) report.notes.push_back(tag + "warning: " + w);
}

void add_simulation_verdicts(RunReport& report, const SimulationResult& res, const std::string& tag) {
    if (res.bound) report.verdicts.push_back({tag + "sup output error within bound", res.error.sup_norm, *res.bound});
    if (res.error_dynamics_mismatch) {
        report.verdicts.push_back({tag + "error dynamics mismatch", *res.error_dynamics_mismatch, 1e-6});
    }
}

TimeGrid grid_with_overrides(TimeGrid grid, const CommandOptions& opts) {
    if (opts.step) grid.step = *opts.step;
    if (opts.horizon) grid.horizon = *opts.horizon;
    grid.validate();
    return grid;
}

struct BenchmarkRun {
    std::string name;
    std::string title;
    SimulationResult result;
};

std::vector<BenchmarkRun> run_benchmark(const SpringMassSetup& setup, const TimeGrid& grid) {
    std::vector<BenchmarkRun> runs;
    for (bool with_input : {false, true}) {
        const HierarchicalScenario s = spring_mass_hierarchical(setup, with_input);
        runs.push_back({with_input ? "hierarchical_v_nonzero" : "hierarchical_v_zero",
                        with_input ? "Interface interconnection, v != 0" : "Interface interconnection, v = 0",
                        run_hierarchical(s.plant, s.abstract, s.cert, s.v, s.x0, s.xi0, grid, s.wiring)});
    }
    for (bool with_input : {false, true}) {
        const MDirectScenario s = spring_mass_m_direct(setup, with_input);
        runs.push_back({with_input ? "m_direct_u_nonzero" : "m_direct_u_zero",
                        with_input ? "Stabilized M-relation link, u != 0" : "Stabilized M-relation link, u = 0",
                        run_m_direct(s.plant, s.abstract, s.m_map, s.link, s.u, s.x0, s.xi0, grid)});
    }
    return runs;
}

}  // namespace

bool RunReport::all_pass() const {
    return std::all_of(residuals.begin(), residuals.end(), [](const auto& r) { return r.pass(); }) &&
           std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.pass(); }) &&
           std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.passed(); });
}

Json RunReport::to_json() const {
    Json j;
    j["command"] = command;
    j["inputs"] = Json::array();
    for (const auto& [path, digest] : input_digests) j["inputs"].push_back({{"path", path}, {"fnv1a", digest}});
    j["residuals"] = Json::array();
    for (const auto& r : residuals) {
        j["residuals"].push_back({{"name", r.name}, {"value", r.value}, {"threshold", r.threshold}, {"pass", r.pass()}});
    }
    j["spectra"] = Json::object();
    for (const auto& [name, values] : spectra) j["spectra"][name] = poles_to_json(values);
    j["verdicts"] = Json::array();
    for (const auto& v : verdicts) {
        j["verdicts"].push_back({{"name", v.name}, {"value", v.value}, {"threshold", v.threshold},
                                 {"relation", v.upper_bound ? "<=" : ">="}, {"pass", v.pass()}});
    }
    j["criteria"] = Json::array();
    for (const auto& c : criteria) {
        Json cj{{"id", c.id}, {"name", c.name}, {"pass", c.passed()}, {"seconds", c.seconds}, {"notes", c.notes}};
        cj["measurements"] = Json::array();
        for (const auto& m : c.measurements) {
            cj["measurements"].push_back({{"name", m.name}, {"value", m.value}, {"threshold", m.threshold},
                                          {"relation", m.upper_bound ? "<=" : ">="}, {"pass", m.pass()}});
        }
        j["criteria"].push_back(std::move(cj));
    }
    j["outputs"] = outputs;
    j["notes"] = notes;
    j["csv_schema_version"] = kCsvSchemaVersion;
    j["pass"] = all_pass();
    return j;
}

std::string RunReport::to_text() const {
    std::string out = "command: " + command + "\n";
    if (!input_digests.empty()) {
        out += "inputs:\n";
        for (const auto& [path, digest] : input_digests) out += "  " + digest + "  " + path + "\n";
    }
    if (!residuals.empty()) {
        out += "residuals:\n";
        for (const auto& r : residuals) {
            out += std::string(r.pass() ? "  [PASS] " : "  [FAIL] ") + r.name + " = " + number_text(r.value) +
                   " (<= " + number_text(r.threshold) + ")\n";
        }
    }
    if (!spectra.empty()) {
        out += "spectra:\n";
        for (const auto& [name, values] : spectra) {
            out += "  " + name + ": {";
            for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + complex_text(values[i]);
            out += "}\n";
        }
    }
    if (!verdicts.empty()) {
        out += "checks:\n";
        for (const auto& v : verdicts) {
            out += std::string(v.pass() ? "  [PASS] " : "  [FAIL] ") + v.name + " = " + number_text(v.value) +
                   (v.upper_bound ? " (<= " : " (>= ") + number_text(v.threshold) + ")\n";
        }
    }
    if (!criteria.empty()) {
        out += "criteria:\n";
        for (const auto& c : criteria) {
            out += "  " + c.summary_line() + "\n";
            for (const auto& n : c.notes) out += "         " + n + "\n";
        }
    }
    if (!outputs.empty()) {
        out += "outputs:\n";
        for (const auto& o : outputs) out += "  " + o + "\n";
    }
    if (!notes.empty()) {
        out += "notes:\n";
        for (const auto& n : notes) out += "  " + n + "\n";
    }
    out += std::string("overall: ") + (all_pass() ? "PASS" : "FAIL") + "\n";
    return out;
}

ReduceMode reduce_mode_from_name(const std::string& name) {
    if (name == "direct") return ReduceMode::Direct;
    if (name == "swapped") return ReduceMode::Swapped;
    if (name == "two-sided") return ReduceMode::TwoSided;
    throw ParseError("unknown reduction mode '" + name + "' (direct, swapped, two-sided)");
}

RunReport cmd_reduce(const std::string& model_path, const std::vector<std::string>& interpolant_paths,
                     ReduceMode mode, const CommandOptions& opts) {
    RunReport report;
    report.command = "reduce " + model_path;
    for (const auto& p : interpolant_paths) report.command += " " + p;
    const ModelFile model = read_model_file(model_path);
    add_input(report, model_path);
    const StateSpaceModel& sys = model.model;
    const Json data = merge_files(report, interpolant_paths);
    const auto di = direct_from(data);
    const auto si = swapped_from(data);
    add_spectrum(report, "sigma(A)", sys.a());

    StateSpaceModel rom;
    if (mode != ReduceMode::Swapped && !di) throw ParseError("interpolant files provide no 's' and 'l'");
    if (mode != ReduceMode::Direct && !si) throw ParseError("interpolant files provide no 'q' and 'r'");
    if (mode == ReduceMode::Direct) {
        const Matrix g = data.contains("g") ? require_matrix(data, "g") : default_input_map(*di, opts.seed);
        rom = rom_direct(sys, *di, g);
    } else if (mode == ReduceMode::Swapped) {
        const Matrix h = data.contains("h") ? require_matrix(data, "h") : default_output_map(*si, opts.seed);
        rom = rom_swapped(sys, *si, h);
    } else {
        const bool output_form = data.contains("form") && data.at("form").get<std::string>() == "output-map";
        rom = rom_two_sided(sys, *di, *si, output_form ? TwoSidedForm::OutputMap : TwoSidedForm::InputMap);
    }
    if (di && mode != ReduceMode::Swapped) {
        add_spectrum(report, "sigma(S)", di->s);
        report.residuals.push_back({"direct moment relative error",
                                    relative_difference(moment_direct(rom, *di).moment, moment_direct(sys, *di).moment),
                                    opts.tol});
        report.residuals.push_back({"right-tangential interpolation relative error",
                                    direct_interpolation_error(sys, rom, *di), opts.tol});
    }
    if (si && mode != ReduceMode::Direct) {
        add_spectrum(report, "sigma(Q)", si->q);
        report.residuals.push_back({"swapped moment relative error",
                                    relative_difference(moment_swapped(rom, *si).moment, moment_swapped(sys, *si).moment),
                                    opts.tol});
        report.residuals.push_back({"left-tangential interpolation relative error",
                                    swapped_interpolation_error(sys, rom, *si), opts.tol});
    }
    add_spectrum(report, "sigma(reduced A)", rom.a());

    const std::string out = opts.out.empty() ? "rom.json" : opts.out;
    write_model_file(out, {model.name.empty() ? "reduced" : model.name + "-reduced", "abstract", rom});
    report.outputs.push_back(out);
    return report;
}

RunReport cmd_abstract(const std::string& model_path, const std::string& p_path, const CommandOptions& opts) {
    RunReport report;
    report.command = "abstract " + model_path + " " + p_path;
    const ModelFile model = read_model_file(model_path);
    add_input(report, model_path);
    const Json pj = read_json_file(p_path);
    add_input(report, p_path);
    const Matrix p = pj.is_object() ? require_matrix(pj, "p") : matrix_from_json(pj, "p");
    const StateSpaceModel& sys = model.model;

    const AbstractionDesign design = design_abstraction(sys, p);
    add_residuals(report, design_residuals(design, sys, opts.tol));
    add_residuals(report, m_relation_residuals(sys, design.abstract_system(), design.m_map, design.n_map,
                                               design.gamma, opts.tol));
    add_spectrum(report, "sigma(A)", sys.a());
    add_spectrum(report, "sigma(F)", design.f);

    const std::string dir = opts.out.empty() ? "abstraction" : opts.out;
    ensure_directory(dir);
    const std::string design_path = join_path(dir, "design.json");
    write_text_file(design_path, design_to_json(design).dump(2) + "\n");
    const std::string final_path = join_path(dir, "abstraction.json");
    write_model_file(final_path, {model.name.empty() ? "abstraction" : model.name + "-abstraction", "abstract",
                                  final_abstraction(design, sys)});
    report.outputs = {design_path, final_path};
    return report;
}

RunReport cmd_simulate(const std::string& spec_path, const CommandOptions& opts) {
    RunReport report;
    report.command = "simulate " + spec_path;
    const Json j = read_json_file(spec_path);
    add_input(report, spec_path);
    InterconnectionSpec spec = interconnection_from_json(j, opts.seed);
    spec.grid = grid_with_overrides(spec.grid, opts);
    const SimulationResult res = integrate(spec);

    const std::string prefix = opts.out.empty() ? "sim" : opts.out;
    const fs::path parent = fs::path(prefix).parent_path();
    if (!parent.empty()) ensure_directory(parent.string());
    const std::string csv_path = prefix + ".csv";
    const std::string svg_path = prefix + ".svg";
    write_text_file(csv_path, trajectory_csv(res.trajectory, res.error));
    write_text_file(svg_path, render_svg(res.trajectory, res.error,
                                         std::string(topology_name(res.trajectory.topology)) + " run"));
    report.outputs = {csv_path, svg_path};
    add_simulation_verdicts(report, res, "");
    add_simulation_notes(report, res, "");
    return report;
}

const std::vector<std::string>& verify_check_names() {
    static const std::vector<std::string> names{"spectra",  "pbh",        "excitability",
                                                "simulation-identities", "m-relation", "certificate"};
    return names;
}

RunReport cmd_verify(const std::string& model_path, const std::string& artifact_path,
                     const std::vector<std::string>& checks, const CommandOptions& opts) {
    for (const auto& c : checks) {
        const auto& known = verify_check_names();
        if (std::find(known.begin(), known.end(), c) == known.end()) {
            throw ParseError("unknown check '" + c + "'");
        }
    }
    RunReport report;
    report.command = "verify " + model_path + " " + artifact_path;
    const ModelFile model = read_model_file(model_path);
    add_input(report, model_path);
    const Json art = read_json_file(artifact_path);
    add_input(report, artifact_path);
    if (!art.is_object()) throw ParseError(artifact_path + ": expected a JSON object");
    const StateSpaceModel& sys = model.model;

    const auto di = direct_from(art);
    const auto si = swapped_from(art);
    const auto abstract = abstract_from(art);
    const bool has_p = art.contains("p");
    const bool has_l_hat = art.contains("l_hat");
    const bool has_m = art.contains("m");
    const bool has_k = art.contains("k") || art.contains("k_poles");

    const auto wanted = [&](const std::string& name, bool applicable) {
        if (checks.empty()) return applicable;
        if (std::find(checks.begin(), checks.end(), name) == checks.end()) return false;
        if (!applicable) throw ParseError("check '" + name + "' needs matrices the artifact does not provide");
        return true;
    };

    if (wanted("spectra", true)) {
        const auto plant = eigenvalues(sys.a()).eigenvalues;
        add_spectrum(report, "sigma(A)", sys.a());
        const auto generator = [&](const std::string& label, const Matrix& m) {
            const SpectrumReport s = eigenvalues(m);
            add_spectrum(report, "sigma(" + label + ")", m);
            report.verdicts.push_back({"sigma(" + label + ") eigenvalue separation", min_separation(s.eigenvalues),
                                       kSimpleEigenvalueTol, false});
            double worst_real = 0.0;
            for (const Complex& z : s.eigenvalues) worst_real = std::max(worst_real, std::abs(z.real()));
            report.verdicts.push_back({"sigma(" + label + ") largest |real part|", worst_real, kZeroRealPartTol});
            report.verdicts.push_back({"distance sigma(" + label + ") to sigma(A)",
                                       spectral_distance(s.eigenvalues, plant), kSpectralDisjointTol, false});
        };
        if (di) generator("S", di->s);
        if (si) generator("Q", si->q);
        if (abstract) generator("F", abstract->a());
    }
    if (wanted("pbh", true)) {
        report.verdicts.push_back(flag("(A, B) controllable", pbh_reachable(sys.a(), sys.b())));
        if (di) report.verdicts.push_back(flag("(S, L) observable", pbh_observable(di->s, di->l)));
        if (si) report.verdicts.push_back(flag("(Q, R) reachable", pbh_reachable(si->q, si->r)));
        if (abstract) report.verdicts.push_back(flag("(F, G) controllable", pbh_reachable(abstract->a(), abstract->b())));
        if (abstract && has_l_hat) {
            report.verdicts.push_back(flag("(F, L^) observable", pbh_observable(abstract->a(), require_matrix(art, "l_hat"))));
        }
    }
    const bool has_initial = (di && art.contains("w0")) || (abstract && art.contains("xi0")) || art.contains("x0");
    if (wanted("excitability", has_initial)) {
        if (di && art.contains("w0")) {
            report.verdicts.push_back(flag("(S, w0) excitable", excitable(di->s, require_vector(art, "w0"))));
        }
        if (abstract && art.contains("xi0")) {
            report.verdicts.push_back(flag("(F, xi0) excitable", excitable(abstract->a(), require_vector(art, "xi0"))));
        }
        if (art.contains("x0")) {
            report.verdicts.push_back(flag("(A, x0) excitable", excitable(sys.a(), require_vector(art, "x0"))));
        }
    }
    if (wanted("simulation-identities", abstract && has_p && has_l_hat)) {
        const Matrix p = require_matrix(art, "p");
        const Matrix l_hat = require_matrix(art, "l_hat");
        const Matrix rhs = sys.a() * p + sys.b() * l_hat;
        report.residuals.push_back({"P F = A P + B L^", (p * abstract->a() - rhs).norm() / std::max(1.0, rhs.norm()),
                                    opts.tol});
        const Matrix cp = sys.c() * p;
        report.residuals.push_back({"H = C P", (abstract->c() - cp).norm() / std::max(1.0, cp.norm()), opts.tol});
    }
    if (wanted("m-relation", abstract && has_m)) {
        const Matrix m_map = require_matrix(art, "m");
        if (art.contains("n") && art.contains("gamma")) {
            add_residuals(report, m_relation_residuals(sys, *abstract, m_map, require_matrix(art, "n"),
                                                       require_matrix(art, "gamma"), opts.tol));
        } else {
            const MRelationReport rel = check_m_relation(sys, *abstract, m_map, opts.tol);
            report.residuals.push_back({"M A = F M + G N (least squares)", rel.state_residual, opts.tol});
            report.residuals.push_back({"G Gamma = M B (least squares)", rel.input_residual, opts.tol});
            report.residuals.push_back({"C = H M", rel.output_residual, opts.tol});
        }
    }
    if (wanted("certificate", abstract && has_l_hat && has_k)) {
        const Matrix l_hat = require_matrix(art, "l_hat");
        const Matrix k = *gain_from(art, "k", sys.a(), sys.b(), opts.seed);
        CertificateOptions copts;
        if (art.contains("lambda_fraction")) copts.lambda_fraction = art.at("lambda_fraction").get<double>();
        if (art.contains("r_hat")) copts.r_hat = require_matrix(art, "r_hat");
        try {
            const SimulationCertificate cert = has_p
                ? synth_certificate_with_p(sys, *abstract, require_matrix(art, "p"), l_hat, k, copts)
                : synth_certificate(sys, *abstract, l_hat, k, copts);
            add_residuals(report, certificate_residuals(cert, sys, *abstract));
            report.notes.push_back("certificate: lambda = " + number_text(cert.lambda) + ", gamma(r) = " +
                                   number_text(cert.gamma_gain) + " r");
            add_spectrum(report, "sigma(A + B K)", sys.a() + sys.b() * k);
        } catch (const PreconditionError& e) {
            report.verdicts.push_back(flag("certificate construction: " + e.condition(), false));
            report.notes.push_back(std::string("certificate: ") + e.what());
        } catch (const SpectralError& e) {
            report.verdicts.push_back(flag("certificate construction", false));
            report.notes.push_back(std::string("certificate: ") + e.what());
        }
    }
    return report;
}

std::map<std::string, std::string> spring_mass_csv_outputs(const SpringMassSetup& setup, const TimeGrid& grid) {
    std::map<std::string, std::string> files;
    for (const auto& run : run_benchmark(setup, grid)) {
        files[run.name + ".csv"] = trajectory_csv(run.result.trajectory, run.result.error);
    }
    return files;
}

RunReport cmd_spring_mass_example(const CommandOptions& opts) {
    RunReport report;
    report.command = "paper-example";
    const TimeGrid grid = grid_with_overrides(TimeGrid{}, opts);
    const std::string dir = opts.out.empty() ? "spring_mass_example" : opts.out;
    ensure_directory(dir);

    const SpringMassSetup setup = spring_mass_setup(opts.seed);
    const SpringMassData& d = setup.data;

    const auto write_json = [&](const std::string& name, const Json& j) {
        const std::string path = join_path(dir, name);
        write_text_file(path, j.dump(2) + "\n");
        report.outputs.push_back(path);
    };
    write_json("plant.json", model_to_json({"two-mass", "concrete", d.plant}));
    write_json("abstraction.json", model_to_json({"two-mass-abstraction", "abstract", d.abstract()}));
    write_json("design.json", design_to_json(setup.design));
    write_json("data.json", Json{{"k1", d.params.k1},
                                 {"k2", d.params.k2},
                                 {"m1", d.params.m1},
                                 {"m2", d.params.m2},
                                 {"p", matrix_to_json(d.p)},
                                 {"l_hat", matrix_to_json(d.l_hat)},
                                 {"m", matrix_to_json(d.m_map)},
                                 {"d", matrix_to_json(d.d)},
                                 {"r_hat", matrix_to_json(d.r_hat)},
                                 {"n_listed", matrix_to_json(d.n_printed)},
                                 {"gamma", matrix_to_json(d.gamma)},
                                 {"x0", vector_to_json(d.x0)},
                                 {"xi0", vector_to_json(d.xi0)},
                                 {"k_poles", poles_to_json(d.k_poles)},
                                 {"k_hat_poles", poles_to_json(d.k_hat_poles)},
                                 {"v", signal_to_json(d.v)},
                                 {"u", signal_to_json(d.u)},
                                 {"k", matrix_to_json(setup.k)},
                                 {"k_hat", matrix_to_json(setup.k_hat)},
                                 {"w", matrix_to_json(setup.cert.w)},
                                 {"lambda", setup.cert.lambda},
                                 {"gamma_gain", setup.cert.gamma_gain},
                                 {"seed", opts.seed}});

    write_json("artifact.json", Json{{"f", matrix_to_json(d.f)},
                                     {"g", matrix_to_json(d.g)},
                                     {"h", matrix_to_json(d.h)},
                                     {"p", matrix_to_json(d.p)},
                                     {"l_hat", matrix_to_json(d.l_hat)},
                                     {"m", matrix_to_json(d.m_map)},
                                     {"n", matrix_to_json(setup.n_constructed)},
                                     {"gamma", matrix_to_json(d.gamma)},
                                     {"k", matrix_to_json(setup.k)},
                                     {"r_hat", matrix_to_json(d.r_hat)},
                                     {"lambda_fraction", 0.9},
                                     {"x0", vector_to_json(d.x0)},
                                     {"xi0", vector_to_json(d.xi0)}});

    add_spectrum(report, "sigma(A)", d.plant.a());
    add_spectrum(report, "sigma(F)", d.f);
    add_spectrum(report, "sigma(A + B K)", d.plant.a() + d.plant.b() * setup.k);
    add_spectrum(report, "sigma(F + G K^)", d.f + d.g * setup.k_hat);
    add_residuals(report, certificate_residuals(setup.cert, d.plant, d.abstract()));
    add_residuals(report, design_residuals(setup.design, d.plant));

    for (const auto& run : run_benchmark(setup, grid)) {
        const std::string csv = join_path(dir, run.name + ".csv");
        const std::string svg = join_path(dir, run.name + ".svg");
        write_text_file(csv, trajectory_csv(run.result.trajectory, run.result.error));
        write_text_file(svg, render_svg(run.result.trajectory, run.result.error, run.title));
        report.outputs.push_back(csv);
        report.outputs.push_back(svg);
        add_simulation_verdicts(report, run.result, run.name + ": ");
        add_simulation_notes(report, run.result, run.name + ": ");
    }

    const Matrix& n_built = setup.n_constructed;
    for (Eigen::Index i = 0; i < n_built.rows(); ++i) {
        for (Eigen::Index c = 0; c < n_built.cols(); ++c) {
            if (std::abs(n_built(i, c) - d.n_printed(i, c)) > 1e-8) {
                report.notes.push_back("N matrix: entry (" + std::to_string(i + 1) + "," + std::to_string(c + 1) +
                                       ") of the constructed N = [-L^ M; E] is " + number_text(n_built(i, c)) +
                                       ", the listed N has " + number_text(d.n_printed(i, c)) +
                                       "; the constructed value satisfies M A = F M + G N");
            }
        }
    }

    const AcceptanceOptions aopts{opts.seed, grid};
    report.criteria = run_numeric_criteria(aopts);
    report.criteria.push_back(check_determinism([&] { return spring_mass_csv_outputs(setup, grid); }));

    const std::string text_path = join_path(dir, "report.txt");
    const std::string json_path = join_path(dir, "report.json");
    report.outputs.push_back(text_path);
    report.outputs.push_back(json_path);
    write_text_file(text_path, report.to_text());
    write_text_file(json_path, report.to_json().dump(2) + "\n");
    return report;
}

}  // namespace mmashc
