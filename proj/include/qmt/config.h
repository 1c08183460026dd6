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

#ifndef QMT_CONFIG_H
#define QMT_CONFIG_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "qmt/frames.h"
#include "qmt/povm.h"
#include "qmt/tomography.h"

namespace qmt {

/// Raised for malformed or inconsistent experiment configs.
class ConfigError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// One experiment: a target measurement, a probe ensemble, a shot budget and
/// solver settings. See README.md for the JSON schema.
struct ExperimentConfig {
    /// Target recipe. Ignored when povm_file is set.
    PovmSpec povm;
    std::optional<std::filesystem::path> povm_file;
    EnsembleSpec ensemble;
    /// The "ensemble" object as written in the config, keys sorted. Its
    /// hash ties counts files to the ensemble that produced them.
    nlohmann::json ensemble_json;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    ProjectionOptions projection;
    std::filesystem::path output_dir = "out";
    /// Failure probability used for the sample-size columns of the report.
    double delta = 0.05;
    /// Optional accuracy target; adds required shot counts to the report.
    std::optional<double> epsilon;
    /// Random subsets for the d_op lower bound when L exceeds the
    /// enumeration limit.
    std::size_t lower_bound_subsets = 256;
};

PovmSpec povm_spec_from_json(const nlohmann::json &j);
EnsembleSpec ensemble_spec_from_json(const nlohmann::json &j);
ProjectionMetric projection_metric_from_string(const std::string &s);
std::string projection_metric_name(ProjectionMetric m);

/// Parses without the cross-field checks of check_config. Relative
/// "file" paths are resolved against `base_dir`.
ExperimentConfig parse_config(const nlohmann::json &j, const std::filesystem::path &base_dir = {});
ExperimentConfig load_config(const std::filesystem::path &path);

/// Target measurement of the config.
Povm build_target(const ExperimentConfig &config);

/// Throws ConfigError unless shots >= 1, the solver options are valid, and
/// the target and ensemble have the same dimension.
void check_config(const ExperimentConfig &config);

}  // namespace qmt

#endif
