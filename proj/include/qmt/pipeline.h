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

#ifndef QMT_PIPELINE_H
#define QMT_PIPELINE_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmt/config.h"
#include "qmt/distances.h"
#include "qmt/frames.h"
#include "qmt/packing_lab.h"
#include "qmt/povm.h"
#include "qmt/tomography.h"

namespace qmt {

/// Estimate plus its errors against a known target.
struct Reconstruction {
    RawEstimate raw;
    ProjectionResult projected;
    DistanceReport d_op;
    DistanceReport d_av;
    UpperSurrogates surrogates;
    /// Operational distance of the unprojected estimate from the target.
    DistanceReport d_op_raw;
};

/// lse_estimate -> project_onto_povms -> distances against `target`.
/// d_op is exact up to kMaxEnumeratedOutcomes outcomes, a seeded lower bound
/// beyond that.
Reconstruction reconstruct(const Povm &target, const ProbeEnsemble &ensemble, const FrequencyTable &table,
                           const ProjectionOptions &opts, std::size_t lower_bound_subsets, std::uint64_t seed);

/// Seed used for shot simulation in a reconstruction run.
std::uint64_t simulation_seed(std::uint64_t seed);

/// Writes counts.csv (+ sidecar) for the config into its output directory.
/// Returns the CSV path.
std::filesystem::path run_simulation(const ExperimentConfig &config);

struct ReconstructionRun {
    std::filesystem::path povm_path;
    std::filesystem::path report_path;
    nlohmann::json report;
};

/// Full pipeline. Simulates shots, or ingests `from_counts` when given (its
/// sidecar must name the config's ensemble). Writes estimate.povm.json and
/// report.json into the output directory. Output bytes depend only on the
/// config.
ReconstructionRun run_reconstruction(const ExperimentConfig &config,
                                     const std::optional<std::filesystem::path> &from_counts = std::nullopt);

struct ScalingRow {
    std::uint64_t shots = 0;
    std::size_t trial = 0;
    double d_op = 0;
    double d_av = 0;
    double runtime_ms = 0;
};

struct LogLogFit {
    double slope = 0;
    double intercept = 0;
};

struct ScalingResult {
    std::vector<ScalingRow> rows;
    /// Strictly increasing shot counts.
    std::vector<std::uint64_t> shots;
    std::vector<double> median_d_op;
    std::vector<double> median_d_av;
    /// Least-squares fit of log(median error) against log(N).
    LogLogFit fit_d_op;
    LogLogFit fit_d_av;
};

/// Runs the pipeline for every (N, trial) with seeds derived from the config
/// seed. Needs at least 3 distinct N and 5 trials.
ScalingResult run_scaling(const ExperimentConfig &config, std::vector<std::uint64_t> shot_list, std::size_t trials);

/// "N,trial,d_op,d_av,runtime_ms" rows. With `timing` off the runtime column
/// is written as 0 so the file is reproducible byte for byte.
std::string scaling_csv(const ScalingResult &result, bool timing = true);
nlohmann::json scaling_summary(const ScalingResult &result);

LogLogFit fit_log_log(const std::vector<double> &x, const std::vector<double> &y);

/// One CSV row per seed: build_packing then verify_separation.
std::string packing_csv(PackingKind kind, std::size_t d, std::size_t outcomes, double epsilon, std::size_t members,
                        std::uint64_t seed, std::size_t seeds);

/// Haar moment rows "dim,trials,f2_mean,f2_target,f2_stderr,z_f2,f4_mean,f4_target,f4_stderr,z_f4".
std::string haar_moments_csv(const std::vector<std::size_t> &dims, std::size_t trials, std::uint64_t seed);

/// JSON view of a distance report.
nlohmann::json distance_json(const DistanceReport &r);

/// d_op (exact or lower bound), d_av and the surrogates between two effect
/// lists.
nlohmann::json compare_effects(const std::vector<ComplexMatrix> &a, const std::vector<ComplexMatrix> &b,
                               std::size_t lower_bound_subsets, std::uint64_t seed);

/// Shortest round-trip text for doubles in CSV cells.
std::string format_double(double x);

}  // namespace qmt

#endif
