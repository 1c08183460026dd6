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

#include "qmt/pipeline.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>

#include "qmt/io.h"
#include "qmt/rng.h"

namespace qmt {

using nlohmann::json;

namespace {

// Ensembles larger than this skip the per-outcome Bernstein enumeration.
constexpr std::uint64_t kMaxBernsteinStates = 4096;

json finite_or_null(double x) {
    return std::isfinite(x) ? json(x) : json(nullptr);
}

DistanceReport op_distance(const Povm &target, std::span<const ComplexMatrix> other, bool complete,
                           std::size_t lower_bound_subsets, std::uint64_t seed) {
    if (target.outcomes() <= kMaxEnumeratedOutcomes) {
        return d_op_exact(target.elements(), other, complete);
    }
    return d_op_lower(target.elements(), other, lower_bound_subsets, seed);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

SampleSizeQuery base_query(const Povm &target, const ProbeEnsemble &ensemble, double delta) {
    SampleSizeQuery q;
    q.dim = target.dim();
    q.outcomes = target.outcomes();
    q.delta = delta;
    if (ensemble.kind() == EnsembleKind::local_product) {
        q.frame = FrameKind::local;
        q.n_qubits = ensemble.n_qubits();
    }
    return q;
}

json sample_size_section(const ExperimentConfig &config, const Povm &target, const ProbeEnsemble &ensemble,
                         std::uint64_t shots, const Reconstruction &rec) {
    SampleSizeQuery q = base_query(target, ensemble, config.delta);
    json out;
    out["delta"] = config.delta;
    out["frame"] = q.frame == FrameKind::global ? "global" : "local";
    out["observed"] = {{"d_op", rec.d_op.value}, {"d_av", rec.d_av.value}};

    struct Row {
        const char *name;
        DistanceTarget distance;
        BoundVariant variant;
    };
    std::vector<Row> rows = {{"op", DistanceTarget::op, BoundVariant::theorem}};
    rows.push_back({"av", DistanceTarget::av, BoundVariant::theorem});
    if (q.frame == FrameKind::global) {
        rows.push_back({"av_proof", DistanceTarget::av, BoundVariant::proof});
    }

    json guaranteed = json::object();
    json required = json::object();
    for (const auto &row : rows) {
        SampleSizeQuery r = q;
        r.distance = row.distance;
        r.variant = row.variant;
        try {
            guaranteed[row.name] = finite_or_null(guaranteed_epsilon(r, shots));
            if (config.epsilon) {
                r.epsilon = *config.epsilon;
                required[row.name] = sample_size(r);
            }
        } catch (const std::exception &e) {
            guaranteed[row.name] = nullptr;
        }
    }
    out["guaranteed_epsilon_at_shots"] = std::move(guaranteed);
    if (config.epsilon) {
        out["epsilon"] = *config.epsilon;
        out["required_shots"] = std::move(required);
    }
    return out;
}

json bernstein_section(const Povm &target, const ProbeEnsemble &ensemble) {
    if (ensemble.size() > kMaxBernsteinStates) {
        return nullptr;
    }
    json out = json::array();
    for (std::size_t j = 0; j < target.outcomes(); j++) {
        std::size_t subset[] = {j};
        BernsteinDiagnostics b = bernstein_diagnostics(target, ensemble, subset);
        out.push_back({{"subset", {j}},
                       {"k_emp", b.k_emp},
                       {"k_bound", b.k_bound},
                       {"sigma2_emp", b.sigma2_emp},
                       {"sigma2_bound", b.sigma2_bound},
                       {"within_bounds", b.within_bounds}});
    }
    return out;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

json distance_json(const DistanceReport &r) {
    json out;
    out["value"] = r.value;
    out["kind"] = std::string(distance_kind_name(r.kind));
    if (r.witness) {
        out["witness"] = *r.witness;
    }
    if (r.witness_state) {
        out["witness_state"] = vector_to_json(*r.witness_state);
    }
    return out;
}

json compare_effects(const std::vector<ComplexMatrix> &a, const std::vector<ComplexMatrix> &b,
                     std::size_t lower_bound_subsets, std::uint64_t seed) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("compare_effects: outcome counts differ");
    }
    bool complete = validate(a).ok && validate(b).ok;
    DistanceReport op = a.size() <= kMaxEnumeratedOutcomes ? d_op_exact(a, b, complete)
                                                           : d_op_lower(a, b, lower_bound_subsets, seed);
    UpperSurrogates s = upper_surrogates(a, b);
    json out;
    out["d_op"] = distance_json(op);
    out["d_av"] = distance_json(d_av(a, b));
    out["frob_sum"] = s.frob_sum;
    out["spec_sum"] = s.spec_sum;
    return out;
}

Reconstruction reconstruct(const Povm &target, const ProbeEnsemble &ensemble, const FrequencyTable &table,
                           const ProjectionOptions &opts, std::size_t lower_bound_subsets, std::uint64_t seed) {
    RawEstimate raw = lse_estimate(table, ensemble);
    if (raw.outcomes() != target.outcomes() || raw.dim() != target.dim()) {
        throw std::invalid_argument("reconstruct: estimate shape does not match the target");
    }
    ProjectionResult projected = project_onto_povms(raw, opts);
    DistanceReport op = op_distance(target, projected.elements, true, lower_bound_subsets, derive_seed(seed, 1));
    DistanceReport av = d_av(target.elements(), projected.elements);
    UpperSurrogates s = upper_surrogates(target.elements(), projected.elements);
    DistanceReport op_raw = op_distance(target, raw.elements(), false, lower_bound_subsets, derive_seed(seed, 2));
    return {std::move(raw), std::move(projected), std::move(op), std::move(av), s, std::move(op_raw)};
}

std::uint64_t simulation_seed(std::uint64_t seed) {
    return derive_seed(seed, 0);
}

std::filesystem::path run_simulation(const ExperimentConfig &config) {
    check_config(config);
    Povm target = build_target(config);
    ProbeEnsemble ensemble = build_ensemble(config.ensemble);
    FrequencyTable table = simulate_shots(target, ensemble, config.shots, simulation_seed(config.seed));
    std::filesystem::path csv = config.output_dir / "counts.csv";
    write_counts(csv, table, spec_hash(config.ensemble_json));
    return csv;
}

ReconstructionRun run_reconstruction(const ExperimentConfig &config,
                                     const std::optional<std::filesystem::path> &from_counts) {
    check_config(config);
    Povm target = build_target(config);
    ProbeEnsemble ensemble = build_ensemble(config.ensemble);
    std::string hash = spec_hash(config.ensemble_json);

    std::optional<FrequencyTable> table;
    if (from_counts) {
        CountsFile counts = read_counts(*from_counts);
        if (counts.metadata.ensemble_hash != hash) {
            throw ConfigError("counts file was produced with a different ensemble (hash " +
                              counts.metadata.ensemble_hash + ", config has " + hash + ")");
        }
        if (counts.table.num_states() != ensemble.size() || counts.table.num_outcomes() != target.outcomes()) {
            throw ConfigError("counts file shape does not match the ensemble size and target outcome count");
        }
        table = std::move(counts.table);
    } else {
        table = simulate_shots(target, ensemble, config.shots, simulation_seed(config.seed));
    }

    Reconstruction rec =
        reconstruct(target, ensemble, *table, config.projection, config.lower_bound_subsets, config.seed);
    Povm estimate = rec.projected.povm();
    ValidationReport raw_check = validate(rec.raw.elements(), kDefaultPovmTol);

    json report;
    report["source"] = from_counts ? "counts" : "simulated";
    report["shots"] = table->shots();
    report["seed"] = config.seed;
    report["target"] = {{"dim", target.dim()}, {"outcomes", target.outcomes()}};
    report["ensemble"] = {{"kind", ensemble.kind() == EnsembleKind::global_2design ? "global_2design" : "local_product"},
                          {"size", ensemble.size()},
                          {"n_qubits", ensemble.n_qubits()},
                          {"hash", hash}};
    const ProjectionDiagnostics &diag = rec.projected.diagnostics;
    report["projection"] = {{"metric", projection_metric_name(config.projection.metric)},
                            {"tol_feasibility", config.projection.tol_feasibility},
                            {"tol_step", config.projection.tol_step},
                            {"max_iterations", config.projection.max_iterations},
                            {"iterations", diag.iterations},
                            {"final_residual", diag.final_residual},
                            {"final_step", diag.final_step},
                            {"converged", diag.converged}};
    report["raw_estimate"] = {{"min_eigenvalue", raw_check.min_eigenvalue},
                              {"completeness_residual", raw_check.completeness_residual},
                              {"d_op", distance_json(rec.d_op_raw)}};
    report["distances"] = {{"d_op", distance_json(rec.d_op)},
                           {"d_av", distance_json(rec.d_av)},
                           {"frob_sum", rec.surrogates.frob_sum},
                           {"spec_sum", rec.surrogates.spec_sum}};
    report["bernstein"] = bernstein_section(target, ensemble);
    report["sample_size"] = sample_size_section(config, target, ensemble, table->shots(), rec);

    ReconstructionRun run;
    run.povm_path = config.output_dir / "estimate.povm.json";
    run.report_path = config.output_dir / "report.json";
    write_povm_file(run.povm_path, estimate);
    write_text_file(run.report_path, report.dump(2) + "\n");
    run.report = std::move(report);
    return run;
}

LogLogFit fit_log_log(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("fit_log_log: need at least two points");
    }
    double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); i++) {
        if (!(x[i] > 0 && y[i] > 0)) {
            throw std::invalid_argument("fit_log_log: values must be positive");
        }
        double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double den = n * sxx - sx * sx;
    if (den == 0) {
        throw std::invalid_argument("fit_log_log: x values must not all be equal");
    }
    LogLogFit f;
    f.slope = (n * sxy - sx * sy) / den;
    f.intercept = (sy - f.slope * sx) / n;
    return f;
}

ScalingResult run_scaling(const ExperimentConfig &config, std::vector<std::uint64_t> shot_list, std::size_t trials) {
    std::sort(shot_list.begin(), shot_list.end());
    shot_list.erase(std::unique(shot_list.begin(), shot_list.end()), shot_list.end());
    if (shot_list.size() < 3) {
        throw std::invalid_argument("run_scaling: need at least 3 distinct shot counts");
    }
    if (shot_list.front() < 1) {
        throw std::invalid_argument("run_scaling: shot counts must be positive");
    }
    if (trials < 5) {
        throw std::invalid_argument("run_scaling: need at least 5 trials");
    }
    check_config(config);
    Povm target = build_target(config);
    ProbeEnsemble ensemble = build_ensemble(config.ensemble);

    ScalingResult result;
    result.shots = shot_list;
    for (std::uint64_t n : shot_list) {
        std::vector<double> ops, avs;
        for (std::size_t t = 0; t < trials; t++) {
            std::uint64_t trial_seed = derive_seed(derive_seed(config.seed, n), t);
            auto start = std::chrono::steady_clock::now();
            FrequencyTable table = simulate_shots(target, ensemble, n, simulation_seed(trial_seed));
            Reconstruction rec =
                reconstruct(target, ensemble, table, config.projection, config.lower_bound_subsets, trial_seed);
            auto stop = std::chrono::steady_clock::now();
            double ms = std::chrono::duration<double, std::milli>(stop - start).count();
            result.rows.push_back({n, t, rec.d_op.value, rec.d_av.value, ms});
            ops.push_back(rec.d_op.value);
            avs.push_back(rec.d_av.value);
        }
        result.median_d_op.push_back(median(ops));
        result.median_d_av.push_back(median(avs));
    }
    std::vector<double> xs(shot_list.begin(), shot_list.end());
    result.fit_d_op = fit_log_log(xs, result.median_d_op);
    result.fit_d_av = fit_log_log(xs, result.median_d_av);
    return result;
}

std::string scaling_csv(const ScalingResult &result, bool timing) {
    std::ostringstream out;
    out << "N,trial,d_op,d_av,runtime_ms\n";
    for (const auto &r : result.rows) {
        out << r.shots << ',' << r.trial << ',' << format_double(r.d_op) << ',' << format_double(r.d_av) << ','
            << (timing ? format_double(r.runtime_ms) : std::string("0")) << '\n';
    }
    return out.str();
}

json scaling_summary(const ScalingResult &result) {
    json out;
    out["shots"] = result.shots;
    out["median_d_op"] = result.median_d_op;
    out["median_d_av"] = result.median_d_av;
    out["fit_d_op"] = {{"slope", result.fit_d_op.slope}, {"intercept", result.fit_d_op.intercept}};
    out["fit_d_av"] = {{"slope", result.fit_d_av.slope}, {"intercept", result.fit_d_av.intercept}};
    return out;
}

std::string packing_csv(PackingKind kind, std::size_t d, std::size_t outcomes, double epsilon, std::size_t members,
                        std::uint64_t seed, std::size_t seeds) {
    std::ostringstream out;
    out << "kind,dim,outcomes,epsilon,members,seed,draws,rejections,min_pairwise,threshold,ok\n";
    for (std::size_t s = 0; s < seeds; s++) {
        std::uint64_t member_seed = derive_seed(seed, s);
        PackingFamily family = build_packing(kind, d, outcomes, epsilon, members, member_seed);
        SeparationReport rep = verify_separation(family);
        out << (kind == PackingKind::op_family ? "op" : "av") << ',' << d << ',' << outcomes << ','
            << format_double(epsilon) << ',' << members << ',' << member_seed << ',' << family.draws << ','
            << family.rejections << ',' << format_double(rep.min_pairwise) << ',' << format_double(rep.threshold)
            << ',' << (rep.ok ? 1 : 0) << '\n';
    }
    return out.str();
}

std::string haar_moments_csv(const std::vector<std::size_t> &dims, std::size_t trials, std::uint64_t seed) {
    std::ostringstream out;
    out << "dim,trials,f2_mean,f2_target,f2_stderr,z_f2,f4_mean,f4_target,f4_stderr,z_f4\n";
    for (std::size_t d : dims) {
        HaarMomentReport r = haar_moment_check(d, trials, derive_seed(seed, d));
        out << d << ',' << trials << ',' << format_double(r.f2_mean) << ',' << format_double(r.f2_target) << ','
            << format_double(r.f2_stderr) << ',' << format_double(r.z_f2) << ',' << format_double(r.f4_mean) << ','
            << format_double(r.f4_target) << ',' << format_double(r.f4_stderr) << ',' << format_double(r.z_f4)
            << '\n';
    }
    return out.str();
}

}  // namespace qmt
