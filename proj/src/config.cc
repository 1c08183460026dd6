// Copyright 2026 The qmt Authors
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

#include "qmt/config.h"

#include <initializer_list>
#include <memory>

#include "qmt/io.h"

namespace qmt {

using nlohmann::json;

namespace {

void check_keys(const json &j, std::initializer_list<const char *> allowed, const std::string &where) {
    if (!j.is_object()) {
        throw ConfigError(where + ": expected an object");
    }
    for (const auto &[key, value] : j.items()) {
        bool known = false;
        for (const char *a : allowed) {
            known |= key == a;
        }
        if (!known) {
            throw ConfigError(where + ": unknown key '" + key + "'");
        }
    }
}

const json &require(const json &j, const char *key, const std::string &where) {
    if (!j.contains(key)) {
        throw ConfigError(where + ": missing '" + key + "'");
    }
    return j.at(key);
}

template <typename T>
T get_as(const json &j, const char *key, const std::string &where) {
    const json &v = require(j, key, where);
    try {
        if constexpr (std::is_unsigned_v<T>) {
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
                throw ConfigError(where + ": '" + key + "' must be a non-negative integer");
            }
        }
        return v.get<T>();
    } catch (const json::exception &e) {
        throw ConfigError(where + ": bad '" + key + "': " + e.what());
    }
}

ComplexMatrix matrix_field(const json &j, const char *key, const std::string &where) {
    try {
        return matrix_from_json(require(j, key, where));
    } catch (const FormatError &e) {
        throw ConfigError(where + ": '" + key + "': " + e.what());
    }
}

}  // namespace

PovmSpec povm_spec_from_json(const json &j) {
    const std::string where = "povm";
    std::string kind = get_as<std::string>(j, "kind", where);
    PovmSpec s;
    if (kind == "computational") {
        check_keys(j, {"kind", "dim"}, where);
        s.kind = PovmSpec::Kind::computational;
        s.dim = get_as<std::size_t>(j, "dim", where);
    } else if (kind == "rotated") {
        check_keys(j, {"kind", "unitary"}, where);
        s.kind = PovmSpec::Kind::rotated;
        s.unitaries.push_back(matrix_field(j, "unitary", where));
        s.dim = static_cast<std::size_t>(s.unitaries[0].rows());
    } else if (kind == "sic_qubit") {
        check_keys(j, {"kind"}, where);
        s.kind = PovmSpec::Kind::sic_qubit;
        s.dim = 2;
    } else if (kind == "depolarized") {
        check_keys(j, {"kind", "base", "p"}, where);
        s.kind = PovmSpec::Kind::depolarized;
        s.p = get_as<double>(j, "p", where);
        auto base = std::make_shared<PovmSpec>(povm_spec_from_json(require(j, "base", where)));
        s.dim = base->dim;
        s.base = std::move(base);
    } else if (kind == "random") {
        check_keys(j, {"kind", "dim", "outcomes", "seed"}, where);
        s.kind = PovmSpec::Kind::random;
        s.dim = get_as<std::size_t>(j, "dim", where);
        s.outcomes = get_as<std::size_t>(j, "outcomes", where);
        s.seed = get_as<std::uint64_t>(j, "seed", where);
    } else if (kind == "packing_op") {
        check_keys(j, {"kind", "unitary", "epsilon", "flat_outcomes", "projector"}, where);
        s.kind = PovmSpec::Kind::packing_op;
        s.unitaries.push_back(matrix_field(j, "unitary", where));
        s.dim = static_cast<std::size_t>(s.unitaries[0].rows());
        s.epsilon = get_as<double>(j, "epsilon", where);
        s.outcomes = get_as<std::size_t>(j, "flat_outcomes", where);
        if (j.contains("projector")) {
            s.projector = matrix_field(j, "projector", where);
        }
    } else if (kind == "packing_av") {
        check_keys(j, {"kind", "unitaries", "epsilon", "projector"}, where);
        s.kind = PovmSpec::Kind::packing_av;
        const json &list = require(j, "unitaries", where);
        if (!list.is_array() || list.empty()) {
            throw ConfigError(where + ": 'unitaries' must be a non-empty array");
        }
        for (const auto &u : list) {
            try {
                s.unitaries.push_back(matrix_from_json(u));
            } catch (const FormatError &e) {
                throw ConfigError(where + ": 'unitaries': " + e.what());
            }
        }
        s.dim = static_cast<std::size_t>(s.unitaries[0].rows());
        s.outcomes = 2 * s.unitaries.size();
        s.epsilon = get_as<double>(j, "epsilon", where);
        if (j.contains("projector")) {
            s.projector = matrix_field(j, "projector", where);
        }
    } else {
        throw ConfigError(where + ": unknown kind '" + kind + "'");
    }
    return s;
}

EnsembleSpec ensemble_spec_from_json(const json &j) {
    const std::string where = "ensemble";
    std::string kind = get_as<std::string>(j, "kind", where);
    EnsembleSpec s;
    if (kind == "pauli6_product" || kind == "sic_qubit_product") {
        check_keys(j, {"kind", "n_qubits"}, where);
        s.kind = kind == "pauli6_product" ? EnsembleSpec::Kind::pauli6_product : EnsembleSpec::Kind::sic_qubit_product;
        s.n_qubits = get_as<std::size_t>(j, "n_qubits", where);
        s.dim = s.n_qubits < 63 ? std::size_t{1} << s.n_qubits : 0;
    } else if (kind == "mub") {
        check_keys(j, {"kind", "dim"}, where);
        s.kind = EnsembleSpec::Kind::mub;
        s.dim = get_as<std::size_t>(j, "dim", where);
    } else if (kind == "sic_qubit") {
        check_keys(j, {"kind"}, where);
        s.kind = EnsembleSpec::Kind::sic_qubit;
        s.dim = 2;
    } else if (kind == "explicit") {
        check_keys(j, {"kind", "states"}, where);
        s.kind = EnsembleSpec::Kind::explicit_states;
        const json &list = require(j, "states", where);
        if (!list.is_array() || list.empty()) {
            throw ConfigError(where + ": 'states' must be a non-empty array");
        }
        for (const auto &v : list) {
            try {
                s.states.push_back(vector_from_json(v));
            } catch (const FormatError &e) {
                throw ConfigError(where + ": 'states': " + e.what());
            }
        }
        s.dim = static_cast<std::size_t>(s.states[0].size());
    } else {
        throw ConfigError(where + ": unknown kind '" + kind + "'");
    }
    return s;
}

ProjectionMetric projection_metric_from_string(const std::string &s) {
    if (s == "frobenius") {
        return ProjectionMetric::frobenius;
    }
    if (s == "dav") {
        return ProjectionMetric::dav;
    }
    throw ConfigError("unknown projection metric '" + s + "' (expected frobenius or dav)");
}

std::string projection_metric_name(ProjectionMetric m) {
    return m == ProjectionMetric::dav ? "dav" : "frobenius";
}

ExperimentConfig parse_config(const json &j, const std::filesystem::path &base_dir) {
    check_keys(j,
               {"povm", "ensemble", "shots", "seed", "projection", "output_dir", "delta", "epsilon",
                "lower_bound_subsets"},
               "config");
    ExperimentConfig c;

    const json &pj = require(j, "povm", "config");
    if (pj.is_object() && pj.value("kind", "") == "file") {
        check_keys(pj, {"kind", "path"}, "povm");
        std::filesystem::path p = get_as<std::string>(pj, "path", "povm");
        c.povm_file = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
    } else {
        c.povm = povm_spec_from_json(pj);
    }

    c.ensemble_json = require(j, "ensemble", "config");
    c.ensemble = ensemble_spec_from_json(c.ensemble_json);

    c.shots = get_as<std::uint64_t>(j, "shots", "config");
    if (j.contains("seed")) {
        c.seed = get_as<std::uint64_t>(j, "seed", "config");
    }
    if (j.contains("projection")) {
        const json &o = j.at("projection");
        check_keys(o, {"metric", "tol_feasibility", "tol_step", "max_iterations"}, "projection");
        if (o.contains("metric")) {
            c.projection.metric = projection_metric_from_string(get_as<std::string>(o, "metric", "projection"));
        }
        if (o.contains("tol_feasibility")) {
            c.projection.tol_feasibility = get_as<double>(o, "tol_feasibility", "projection");
        }
        if (o.contains("tol_step")) {
            c.projection.tol_step = get_as<double>(o, "tol_step", "projection");
        }
        if (o.contains("max_iterations")) {
            c.projection.max_iterations = get_as<std::size_t>(o, "max_iterations", "projection");
        }
    }
    if (j.contains("output_dir")) {
        c.output_dir = get_as<std::string>(j, "output_dir", "config");
    }
    if (j.contains("delta")) {
        c.delta = get_as<double>(j, "delta", "config");
    }
    if (j.contains("epsilon")) {
        c.epsilon = get_as<double>(j, "epsilon", "config");
    }
    if (j.contains("lower_bound_subsets")) {
        c.lower_bound_subsets = get_as<std::size_t>(j, "lower_bound_subsets", "config");
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error &e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_config(j, path.parent_path());
}

Povm build_target(const ExperimentConfig &config) {
    if (config.povm_file) {
        return read_povm_file(*config.povm_file);
    }
    return build_povm(config.povm);
}

void check_config(const ExperimentConfig &config) {
    if (config.shots < 1) {
        throw ConfigError("config: shots must be at least 1");
    }
    if (!(config.delta > 0 && config.delta < 1)) {
        throw ConfigError("config: delta must lie in (0, 1)");
    }
    if (config.epsilon && !(*config.epsilon > 0)) {
        throw ConfigError("config: epsilon must be positive");
    }
    try {
        config.projection.check();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    Povm target = build_target(config);
    ProbeEnsemble ensemble = build_ensemble(config.ensemble);
    if (target.dim() != ensemble.dim()) {
        throw ConfigError(
            "config: target dimension " + std::to_string(target.dim()) + " does not match ensemble dimension " +
            std::to_string(ensemble.dim()));
    }
}

}  // namespace qmt
