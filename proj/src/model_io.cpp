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
#include "mmashc/model_io.hpp"

#include "mmashc/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mmashc {

namespace {

const Json& member(const Json& j, const std::string& key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError("missing field '" + key + "'");
    return j.at(key);
}

double number(const Json& j, const std::string& name) {
    if (!j.is_number()) throw ParseError(name + ": expected a number");
    return j.get<double>();
}

double number_or(const Json& j, const std::string& key, double fallback) {
    return j.contains(key) ? number(j.at(key), key) : fallback;
}

StateSpaceModel model_field(const Json& j, const std::string& key) {
    return model_from_json(member(j, key)).model;
}

SignalSpec signal_or_zero(const Json& j, const std::string& key, Eigen::Index dim) {
    return j.contains(key) ? signal_from_json(j.at(key), key) : SignalSpec::zeros(dim);
}

Matrix gain_field(const Json& j, const std::string& key, const Matrix& a, const Matrix& b,
                  std::uint64_t seed) {
    if (j.contains(key)) return matrix_from_json(j.at(key), key);
    const std::string poles_key = key + "_poles";
    if (j.contains(poles_key)) {
        const Matrix target = real_block_diagonal(poles_from_json(j.at(poles_key), poles_key));
        return place_poles(a, b, target, {.seed = seed});
    }
    throw ParseError("missing field '" + key + "' or '" + poles_key + "'");
}

RHatChoice r_hat_field(const Json& j) {
    if (!j.contains("r_hat")) return RHatAllOnes{};
    const Json& r = j.at("r_hat");
    if (r.is_string()) {
        const auto s = r.get<std::string>();
        if (s == "ones") return RHatAllOnes{};
        if (s == "optimize") return RHatOptimize{};
        throw ParseError("r_hat: expected a matrix, \"ones\" or \"optimize\"");
    }
    return matrix_from_json(r, "r_hat");
}

}  // namespace

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed for '" + path + "'");
}

Json parse_json(std::string_view text, const std::string& source) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw ParseError(source + ": " + e.what());
    }
}

Json read_json_file(const std::string& path) {
    return parse_json(read_text_file(path), path);
}

Matrix matrix_from_json(const Json& j, const std::string& name) {
    if (!j.is_array()) throw ParseError(name + ": expected an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) return Matrix(0, 0);
    if (!j.front().is_array()) throw ParseError(name + ": expected an array of rows");
    const auto cols = static_cast<Eigen::Index>(j.front().size());
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json& row = j.at(static_cast<std::size_t>(i));
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw ParseError(name + ": row " + std::to_string(i + 1) + " is not " +
                             std::to_string(cols) + " entries long");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(i, c) = number(row.at(static_cast<std::size_t>(c)), name);
        }
    }
    return m;
}

Vector vector_from_json(const Json& j, const std::string& name) {
    if (!j.is_array()) throw ParseError(name + ": expected an array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j.at(i), name);
    return v;
}

Json matrix_to_json(const Matrix& m) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
        out.push_back(std::move(row));
    }
    return out;
}

Json vector_to_json(const Vector& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

Matrix require_matrix(const Json& j, const std::string& key) {
    return matrix_from_json(member(j, key), key);
}

Vector require_vector(const Json& j, const std::string& key) {
    return vector_from_json(member(j, key), key);
}

ModelFile model_from_json(const Json& j) {
    ModelFile file;
    if (j.contains("name")) file.name = j.at("name").get<std::string>();
    if (j.contains("role")) {
        file.role = j.at("role").get<std::string>();
        if (file.role != "concrete" && file.role != "abstract" && file.role != "interpolant") {
            throw ParseError("role: expected concrete, abstract or interpolant");
        }
    }
    file.model = StateSpaceModel(require_matrix(j, "a"), require_matrix(j, "b"), require_matrix(j, "c"));
    return file;
}

Json model_to_json(const ModelFile& file) {
    Json j;
    j["name"] = file.name;
    j["role"] = file.role;
    j["a"] = matrix_to_json(file.model.a());
    j["b"] = matrix_to_json(file.model.b());
    j["c"] = matrix_to_json(file.model.c());
    return j;
}

ModelFile read_model_file(const std::string& path) {
    const Json j = read_json_file(path);
    try {
        return model_from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_model_file(const std::string& path, const ModelFile& file) {
    write_text_file(path, model_to_json(file).dump(2) + "\n");
}

SignalSpec signal_from_json(const Json& j, const std::string& name) {
    if (!j.is_array()) throw ParseError(name + ": expected an array of channels");
    std::vector<std::vector<SignalTerm>> channels;
    for (const Json& channel : j) {
        std::vector<SignalTerm> terms;
        const Json list = channel.is_array() ? channel : Json::array({channel});
        for (const Json& t : list) {
            if (t.is_number()) {
                terms.push_back(SignalTerm::constant(t.get<double>()));
                continue;
            }
            const std::string type = member(t, "type").get<std::string>();
            const double amp = number_or(t, "amplitude", 0.0);
            if (type == "zero") {
                terms.push_back(SignalTerm::zero());
            } else if (type == "constant") {
                terms.push_back(SignalTerm::constant(number_or(t, "value", amp)));
            } else if (type == "sine") {
                terms.push_back(SignalTerm::sine(amp, number(member(t, "omega"), "omega"), number_or(t, "phase", 0.0)));
            } else if (type == "cosine") {
                terms.push_back(SignalTerm::cosine(amp, number(member(t, "omega"), "omega"), number_or(t, "phase", 0.0)));
            } else if (type == "sign_sine") {
                terms.push_back(SignalTerm::sign_sine(amp, number(member(t, "omega"), "omega")));
            } else if (type == "exp_decay") {
                terms.push_back(SignalTerm::exp_decay(amp, number(member(t, "rate"), "rate")));
            } else {
                throw ParseError(name + ": unknown signal term '" + type + "'");
            }
        }
        channels.push_back(std::move(terms));
    }
    return SignalSpec(std::move(channels));
}

Json signal_to_json(const SignalSpec& s) {
    Json out = Json::array();
    for (const auto& channel : s.channels()) {
        Json terms = Json::array();
        for (const SignalTerm& t : channel) {
            switch (t.kind) {
                case SignalTerm::Kind::Zero: terms.push_back({{"type", "zero"}}); break;
                case SignalTerm::Kind::Constant:
                    terms.push_back({{"type", "constant"}, {"value", t.amplitude}});
                    break;
                case SignalTerm::Kind::Sine:
                    terms.push_back({{"type", "sine"}, {"amplitude", t.amplitude}, {"omega", t.omega}, {"phase", t.phase}});
                    break;
                case SignalTerm::Kind::Cosine:
                    terms.push_back({{"type", "cosine"}, {"amplitude", t.amplitude}, {"omega", t.omega}, {"phase", t.phase}});
                    break;
                case SignalTerm::Kind::SignSine:
                    terms.push_back({{"type", "sign_sine"}, {"amplitude", t.amplitude}, {"omega", t.omega}});
                    break;
                case SignalTerm::Kind::ExpDecay:
                    terms.push_back({{"type", "exp_decay"}, {"amplitude", t.amplitude}, {"rate", t.rate}});
                    break;
            }
        }
        out.push_back(std::move(terms));
    }
    return out;
}

std::vector<Complex> poles_from_json(const Json& j, const std::string& name) {
    if (!j.is_array()) throw ParseError(name + ": expected an array of poles");
    std::vector<Complex> poles;
    for (const Json& p : j) {
        if (p.is_number()) {
            poles.emplace_back(p.get<double>(), 0.0);
        } else if (p.is_array() && p.size() == 2) {
            poles.emplace_back(number(p.at(0), name), number(p.at(1), name));
        } else {
            throw ParseError(name + ": each pole is a number or [re, im]");
        }
    }
    return poles;
}

Json poles_to_json(const std::vector<Complex>& poles) {
    Json out = Json::array();
    for (const Complex& p : poles) out.push_back(Json::array({p.real(), p.imag()}));
    return out;
}

InterconnectionSpec interconnection_from_json(const Json& j, std::uint64_t seed) {
    InterconnectionSpec spec;
    spec.grid.horizon = number_or(j, "horizon", spec.grid.horizon);
    spec.grid.step = number_or(j, "step", spec.grid.step);
    const Topology topology = topology_from_name(member(j, "topology").get<std::string>());

    switch (topology) {
        case Topology::DirectGenerator: {
            DirectGeneratorScenario s{model_field(j, "plant"),
                                      {require_matrix(j, "s"), require_matrix(j, "l")},
                                      require_vector(j, "w0"),
                                      Vector()};
            s.x0 = j.contains("x0") ? require_vector(j, "x0") : Vector::Zero(s.plant.n());
            spec.scenario = std::move(s);
            break;
        }
        case Topology::SwappedFilter: {
            SwappedFilterScenario s{model_field(j, "plant"),
                                    {require_matrix(j, "q"), require_matrix(j, "r")},
                                    SignalSpec()};
            s.u = signal_or_zero(j, "u", s.plant.m());
            spec.scenario = std::move(s);
            break;
        }
        case Topology::Hierarchical: {
            const StateSpaceModel plant = model_field(j, "plant");
            const StateSpaceModel abstract = model_field(j, "abstract");
            const Matrix l_hat = require_matrix(j, "l_hat");
            const Matrix k = gain_field(j, "k", plant.a(), plant.b(), seed);
            const CertificateOptions opts{number_or(j, "lambda_fraction", 0.9), r_hat_field(j)};
            SimulationCertificate cert =
                j.contains("p") ? synth_certificate_with_p(plant, abstract, require_matrix(j, "p"), l_hat, k, opts)
                                : synth_certificate(plant, abstract, l_hat, k, opts);
            HierarchicalWiring wiring = HierarchicalWiring::Interface;
            if (j.contains("wiring")) {
                const auto w = j.at("wiring").get<std::string>();
                if (w == "stabilizing-link") {
                    wiring = HierarchicalWiring::StabilizingLink;
                } else if (w != "interface") {
                    throw ParseError("wiring: expected interface or stabilizing-link");
                }
            }
            spec.scenario = HierarchicalScenario{plant, abstract, std::move(cert),
                                                 signal_or_zero(j, "v", abstract.m()),
                                                 require_vector(j, "x0"), require_vector(j, "xi0"), wiring};
            break;
        }
        case Topology::MDirect:
        case Topology::MDirectStabilized: {
            const StateSpaceModel plant = model_field(j, "plant");
            const StateSpaceModel abstract = model_field(j, "abstract");
            const Matrix m_map = require_matrix(j, "m");
            StabilizedLink link;
            if (j.contains("n") && j.contains("gamma")) {
                link.n_map = require_matrix(j, "n");
                link.gamma = require_matrix(j, "gamma");
            } else {
                const MRelationReport rel = check_m_relation(plant, abstract, m_map);
                if (!rel.accepted) throw PreconditionError(rel.failing, "abstract system is not M-related: " + rel.failing);
                link.n_map = rel.n_map;
                link.gamma = rel.gamma;
            }
            link.k_hat = topology == Topology::MDirectStabilized
                             ? gain_field(j, "k_hat", abstract.a(), abstract.b(), seed)
                             : Matrix::Zero(abstract.m(), abstract.n());
            spec.scenario = MDirectScenario{plant, abstract, m_map, std::move(link),
                                            signal_or_zero(j, "u", plant.m()),
                                            require_vector(j, "x0"), require_vector(j, "xi0")};
            break;
        }
        case Topology::MSwapped: {
            const StateSpaceModel plant = model_field(j, "plant");
            spec.scenario = MSwappedScenario{plant, require_matrix(j, "f"), require_matrix(j, "g"),
                                             require_matrix(j, "m"), signal_or_zero(j, "u", plant.m())};
            break;
        }
        case Topology::Custom:
            throw ParseError("topology: custom scenarios cannot be read from a file");
    }
    return spec;
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<std::string> trajectory_csv_header(const Trajectory& traj) {
    std::vector<std::string> header{"time"};
    for (const auto& block : traj.blocks) header.insert(header.end(), block.labels.begin(), block.labels.end());
    header.emplace_back("state_error_norm");
    header.emplace_back("output_error_norm");
    return header;
}

std::string trajectory_csv(const Trajectory& traj, const ErrorTrace& error) {
    if (error.output_norm.size() != traj.size() ||
        (!error.state_norm.empty() && error.state_norm.size() != traj.size())) {
        throw DimensionError("trajectory_csv: error trace does not match the trajectory");
    }
    std::string out;
    const auto header = trajectory_csv_header(traj);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (std::size_t k = 0; k < traj.size(); ++k) {
        out += format_double(traj.times[k]);
        for (const auto& block : traj.blocks) {
            for (Eigen::Index c = 0; c < block.samples.cols(); ++c) {
                out += ',';
                out += format_double(block.samples(static_cast<Eigen::Index>(k), c));
            }
        }
        out += ',';
        out += error.state_norm.empty() ? std::string("nan") : format_double(error.state_norm[k]);
        out += ',';
        out += format_double(error.output_norm[k]);
        out += '\n';
    }
    return out;
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_digest(const std::string& path) {
    return fnv1a_hex(read_text_file(path));
}

}  // namespace mmashc
