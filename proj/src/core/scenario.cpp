// Copyright 2026 The vnpointer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vnp/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

#include "vnp/error.hpp"

namespace vnp {

namespace {

using nlohmann::json;

constexpr double kLoadNormTolerance = 1e-8;

[[noreturn]] void invalid(const std::string &path, const std::string &message) {
    fail(ErrorCode::InvalidConfig, path + ": " + message);
}

const json &require(const json &obj, const char *key, const std::string &path) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        invalid(path.empty() ? key : path + "." + key, "missing required field");
    }
    return *it;
}

void reject_unknown_keys(const json &obj, const std::set<std::string> &allowed,
                         const std::string &path) {
    for (const auto &[key, value] : obj.items()) {
        if (!allowed.contains(key)) {
            invalid(path.empty() ? key : path + "." + key, "unknown field");
        }
    }
}

double parse_real(const json &j, const std::string &path) {
    if (!j.is_number()) {
        invalid(path, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        invalid(path, "expected a finite number");
    }
    return v;
}

Complex parse_complex(const json &j, const std::string &path) {
    if (j.is_number()) {
        return {parse_real(j, path), 0.0};
    }
    if (!j.is_array() || j.size() != 2) {
        invalid(path, "expected a complex number as [re, im]");
    }
    return {parse_real(j[0], path + "[0]"), parse_real(j[1], path + "[1]")};
}

Vector parse_vector(const json &j, std::size_t dim, const std::string &path) {
    if (!j.is_array()) {
        invalid(path, "expected an array of [re, im] pairs");
    }
    if (j.size() != dim) {
        invalid(path, "expected " + std::to_string(dim) + " entries, got " +
                          std::to_string(j.size()));
    }
    Vector v(static_cast<Eigen::Index>(dim));
    for (std::size_t k = 0; k < dim; ++k) {
        v(static_cast<Eigen::Index>(k)) = parse_complex(j[k], path + "[" + std::to_string(k) + "]");
    }
    return v;
}

// Normalizes after a 1e-8 check. Vectors already normalized to rounding are
// left untouched so that dump/reload is exact.
Vector normalize_loaded(Vector v, const std::string &path) {
    const double norm = v.norm();
    if (std::abs(norm - 1.0) > kLoadNormTolerance) {
        invalid(path, "vector is not normalized (norm = " + std::to_string(norm) + ")");
    }
    const double guard = 4.0 * static_cast<double>(v.size()) *
                         std::numeric_limits<double>::epsilon();
    if (std::abs(norm - 1.0) > guard) {
        v /= norm;
    }
    return v;
}

using nlohmann::ordered_json;

ordered_json complex_json(Complex z) { return ordered_json::array({z.real(), z.imag()}); }

ordered_json vector_json(const Vector &v) {
    ordered_json out = ordered_json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        out.push_back(complex_json(v(k)));
    }
    return out;
}

std::optional<Artifact> artifact_from_name(std::string_view name) {
    for (Artifact a : {Artifact::PsDensity, Artifact::PpsDensity, Artifact::WeakValue,
                       Artifact::Oracle, Artifact::Momentum, Artifact::Interference}) {
        if (artifact_name(a) == name) {
            return a;
        }
    }
    return std::nullopt;
}

} // namespace

std::string_view artifact_name(Artifact a) noexcept {
    switch (a) {
    case Artifact::PsDensity: return "ps_density";
    case Artifact::PpsDensity: return "pps_density";
    case Artifact::WeakValue: return "weak_value";
    case Artifact::Oracle: return "oracle";
    case Artifact::Momentum: return "momentum";
    case Artifact::Interference: return "interference";
    }
    return "unknown";
}

bool artifact_needs_postselection(Artifact a) noexcept {
    return a == Artifact::PpsDensity || a == Artifact::WeakValue;
}

bool ProjectorSpec::operator==(const ProjectorSpec &other) const {
    if (kind != other.kind) {
        return false;
    }
    if (kind == Kind::Matrix) {
        return matrix.rows() == other.matrix.rows() && matrix.cols() == other.matrix.cols() &&
               matrix == other.matrix;
    }
    return state.size() == other.state.size() && state == other.state;
}

bool Scenario::operator==(const Scenario &other) const {
    const auto same_vector = [](const Vector &a, const Vector &b) {
        return a.size() == b.size() && a == b;
    };
    if (postselection.has_value() != other.postselection.has_value()) {
        return false;
    }
    if (postselection && !same_vector(*postselection, *other.postselection)) {
        return false;
    }
    return name == other.name && system_dim == other.system_dim &&
           projector == other.projector && same_vector(preselection, other.preselection) &&
           pointer == other.pointer && gamma == other.gamma && hbar == other.hbar &&
           outputs == other.outputs;
}

Projector Scenario::build_projector() const {
    if (projector.kind == ProjectorSpec::Kind::State) {
        return make_projector_from_state(SystemState::normalized(projector.state));
    }
    return Projector::from_matrix(projector.matrix);
}

SystemState Scenario::build_preselection() const { return SystemState::normalized(preselection); }

std::optional<SystemState> Scenario::build_postselection() const {
    if (!postselection) {
        return std::nullopt;
    }
    return SystemState::normalized(*postselection);
}

PointerGrid Scenario::build_grid() const {
    return PointerGrid::from_extent(pointer.q_min, pointer.q_max, pointer.n);
}

PointerWavefunction Scenario::build_pointer() const {
    return gaussian_pointer(build_grid(), pointer.center, pointer.sigma);
}

MeasurementConfig Scenario::build_config() const {
    MeasurementConfig cfg;
    cfg.gamma = gamma;
    cfg.hbar = hbar;
    return cfg;
}

std::vector<Artifact> Scenario::selected_outputs() const {
    if (!outputs.empty()) {
        return outputs;
    }
    std::vector<Artifact> all;
    for (Artifact a : {Artifact::PsDensity, Artifact::PpsDensity, Artifact::WeakValue,
                       Artifact::Oracle, Artifact::Momentum, Artifact::Interference}) {
        if (postselection || !artifact_needs_postselection(a)) {
            all.push_back(a);
        }
    }
    return all;
}

Scenario scenario_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error &e) {
        fail(ErrorCode::InvalidConfig, std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        invalid("<root>", "expected a JSON object");
    }
    reject_unknown_keys(doc,
                        {"name", "system_dim", "projector", "preselection", "postselection",
                         "pointer", "gamma", "hbar", "outputs"},
                        "");

    Scenario s;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) {
            invalid("name", "expected a string");
        }
        s.name = doc["name"].get<std::string>();
    }

    const json &dim = require(doc, "system_dim", "");
    if (!dim.is_number_integer() || dim.get<long long>() < 2 || dim.get<long long>() > 64) {
        invalid("system_dim", "expected an integer in [2, 64]");
    }
    s.system_dim = dim.get<std::size_t>();

    const json &proj = require(doc, "projector", "");
    if (!proj.is_object()) {
        invalid("projector", "expected an object with either \"state\" or \"matrix\"");
    }
    reject_unknown_keys(proj, {"state", "matrix"}, "projector");
    if (proj.contains("state") == proj.contains("matrix")) {
        invalid("projector", "specify exactly one of \"state\" or \"matrix\"");
    }
    if (proj.contains("state")) {
        s.projector.kind = ProjectorSpec::Kind::State;
        s.projector.state = normalize_loaded(
            parse_vector(proj["state"], s.system_dim, "projector.state"), "projector.state");
    } else {
        s.projector.kind = ProjectorSpec::Kind::Matrix;
        const json &rows = proj["matrix"];
        if (!rows.is_array() || rows.size() != s.system_dim) {
            invalid("projector.matrix",
                    "expected " + std::to_string(s.system_dim) + " rows");
        }
        const auto d = static_cast<Eigen::Index>(s.system_dim);
        s.projector.matrix = Matrix(d, d);
        for (std::size_t i = 0; i < s.system_dim; ++i) {
            const std::string row_path = "projector.matrix[" + std::to_string(i) + "]";
            const Vector row = parse_vector(rows[i], s.system_dim, row_path);
            s.projector.matrix.row(static_cast<Eigen::Index>(i)) = row.transpose();
        }
        try {
            (void)Projector::from_matrix(s.projector.matrix);
        } catch (const Error &e) {
            fail(e.code(), std::string("projector.matrix: ") + e.what());
        }
    }

    s.preselection = normalize_loaded(
        parse_vector(require(doc, "preselection", ""), s.system_dim, "preselection"),
        "preselection");
    if (doc.contains("postselection") && !doc["postselection"].is_null()) {
        s.postselection = normalize_loaded(
            parse_vector(doc["postselection"], s.system_dim, "postselection"), "postselection");
    }

    if (doc.contains("pointer")) {
        const json &p = doc["pointer"];
        if (!p.is_object()) {
            invalid("pointer", "expected an object");
        }
        reject_unknown_keys(p, {"q_min", "q_max", "n", "sigma", "center"}, "pointer");
        if (p.contains("q_min")) s.pointer.q_min = parse_real(p["q_min"], "pointer.q_min");
        if (p.contains("q_max")) s.pointer.q_max = parse_real(p["q_max"], "pointer.q_max");
        if (p.contains("sigma")) s.pointer.sigma = parse_real(p["sigma"], "pointer.sigma");
        if (p.contains("center")) s.pointer.center = parse_real(p["center"], "pointer.center");
        if (p.contains("n")) {
            if (!p["n"].is_number_unsigned()) {
                invalid("pointer.n", "expected a positive integer");
            }
            s.pointer.n = p["n"].get<std::size_t>();
        }
        if (!(s.pointer.sigma > 0.0)) {
            invalid("pointer.sigma", "must be positive");
        }
    }
    try {
        (void)s.build_grid();
    } catch (const Error &e) {
        invalid("pointer", e.what());
    }

    s.gamma = parse_real(require(doc, "gamma", ""), "gamma");
    if (doc.contains("hbar")) {
        s.hbar = parse_real(doc["hbar"], "hbar");
        if (!(s.hbar > 0.0)) {
            invalid("hbar", "must be positive");
        }
    }

    if (doc.contains("outputs")) {
        const json &outs = doc["outputs"];
        if (!outs.is_array()) {
            invalid("outputs", "expected an array of artifact names");
        }
        for (std::size_t k = 0; k < outs.size(); ++k) {
            const std::string path = "outputs[" + std::to_string(k) + "]";
            if (!outs[k].is_string()) {
                invalid(path, "expected a string");
            }
            const auto name = outs[k].get<std::string>();
            const auto artifact = artifact_from_name(name);
            if (!artifact) {
                invalid(path, "unknown artifact \"" + name + "\"");
            }
            if (artifact_needs_postselection(*artifact) && !s.postselection) {
                invalid(path, "artifact \"" + name +
                                  "\" requires a postselection vector; add \"postselection\" "
                                  "or remove the selector");
            }
            s.outputs.push_back(*artifact);
        }
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorCode::IoError, "cannot open scenario file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return scenario_from_json(buffer.str());
}

std::string scenario_to_json(const Scenario &s) {
    ordered_json doc = ordered_json::object();
    doc["name"] = s.name;
    doc["system_dim"] = s.system_dim;
    if (s.projector.kind == ProjectorSpec::Kind::State) {
        doc["projector"] = {{"state", vector_json(s.projector.state)}};
    } else {
        ordered_json rows = ordered_json::array();
        for (Eigen::Index i = 0; i < s.projector.matrix.rows(); ++i) {
            rows.push_back(vector_json(s.projector.matrix.row(i).transpose()));
        }
        doc["projector"] = {{"matrix", rows}};
    }
    doc["preselection"] = vector_json(s.preselection);
    if (s.postselection) {
        doc["postselection"] = vector_json(*s.postselection);
    }
    doc["pointer"] = {{"q_min", s.pointer.q_min},
                      {"q_max", s.pointer.q_max},
                      {"n", s.pointer.n},
                      {"sigma", s.pointer.sigma},
                      {"center", s.pointer.center}};
    doc["gamma"] = s.gamma;
    doc["hbar"] = s.hbar;
    ordered_json outs = ordered_json::array();
    for (Artifact a : s.outputs) {
        outs.push_back(std::string(artifact_name(a)));
    }
    doc["outputs"] = outs;
    return doc.dump(2) + "\n";
}

} // namespace vnp
