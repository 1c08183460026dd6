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

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmt/config.h"
#include "qmt/io.h"
#include "qmt/pipeline.h"

using nlohmann::json;

namespace {

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;
    std::optional<std::string> out;
    std::optional<std::string> metric;
    std::optional<double> tol;
};

void add_overrides(CLI::App *cmd, Overrides &o, bool with_shots = true) {
    cmd->add_option("--config", o.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "Override the config seed");
    if (with_shots) {
        cmd->add_option("--shots", o.shots, "Override the shot count N");
    }
    cmd->add_option("--out", o.out, "Override the output directory");
    cmd->add_option("--metric", o.metric, "Projection metric")->check(CLI::IsMember({"frobenius", "dav"}));
    cmd->add_option("--tol", o.tol, "Projection feasibility tolerance (step tolerance is tol/10)");
}

qmt::ExperimentConfig resolve(const Overrides &o) {
    qmt::ExperimentConfig c = qmt::load_config(o.config);
    if (o.seed) {
        c.seed = *o.seed;
    }
    if (o.shots) {
        c.shots = *o.shots;
    }
    if (o.out) {
        c.output_dir = *o.out;
    }
    if (o.metric) {
        c.projection.metric = qmt::projection_metric_from_string(*o.metric);
    }
    if (o.tol) {
        c.projection.tol_feasibility = *o.tol;
        c.projection.tol_step = *o.tol / 10;
    }
    return c;
}

std::vector<std::uint64_t> parse_n_list(const std::string &s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &pos);
        } catch (const std::exception &) {
            pos = 0;
        }
        if (pos == 0 || pos != item.size() || item.front() == '-') {
            throw std::invalid_argument("--n-list: bad entry '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

void emit(const json &j) {
    std::cout << j.dump(2) << "\n";
}

int report_error(const std::string &type, const std::string &message) {
    json err;
    err["error"] = {{"type", type}, {"message", message}};
    std::cerr << err.dump() << "\n";
    return 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Measurement tomography by projected least squares"};
    app.require_subcommand(1);

    // simulate
    Overrides sim;
    auto *simulate = app.add_subcommand("simulate", "Simulate shot counts for a config");
    add_overrides(simulate, sim);

    // reconstruct
    Overrides rec;
    std::optional<std::string> from_counts;
    auto *reconstruct = app.add_subcommand("reconstruct", "Estimate the POVM and write a report");
    add_overrides(reconstruct, rec);
    reconstruct->add_option("--from-counts", from_counts, "Ingest a counts CSV instead of simulating")
        ->check(CLI::ExistingFile);

    // distance
    std::string dist_a, dist_b;
    std::size_t dist_subsets = 256;
    std::uint64_t dist_seed = 0;
    auto *distance = app.add_subcommand("distance", "Distances between two POVM files");
    distance->add_option("--a", dist_a, "First POVM file")->required()->check(CLI::ExistingFile);
    distance->add_option("--b", dist_b, "Second POVM file (may be an unconstrained estimate)")
        ->required()
        ->check(CLI::ExistingFile);
    distance->add_option("--subsets", dist_subsets, "Random subsets for the d_op lower bound beyond 24 outcomes");
    distance->add_option("--seed", dist_seed, "Seed for the d_op lower bound");

    // scaling
    Overrides scal;
    std::string n_list = "1024,4096,16384,65536";
    std::size_t trials = 20;
    bool no_timing = false;
    auto *scaling = app.add_subcommand("scaling", "Error versus N study");
    add_overrides(scaling, scal, false);
    scaling->add_option("--n-list", n_list, "Comma-separated shot counts");
    scaling->add_option("--trials", trials, "Trials per shot count");
    scaling->add_flag("--no-timing", no_timing, "Write 0 in the runtime_ms column");

    // bounds
    qmt::SampleSizeQuery bq;
    std::string b_frame = "global", b_distance = "op", b_variant = "theorem";
    std::optional<std::uint64_t> b_shots;
    auto *bounds = app.add_subcommand("bounds", "Sample-size calculator");
    bounds->add_option("--dim", bq.dim, "Hilbert-space dimension d")->required();
    bounds->add_option("--outcomes", bq.outcomes, "Number of outcomes L")->required();
    bounds->add_option("--epsilon", bq.epsilon, "Target accuracy");
    bounds->add_option("--delta", bq.delta, "Failure probability");
    bounds->add_option("--frame", b_frame, "Probe frame")->check(CLI::IsMember({"global", "local"}));
    bounds->add_option("--n-qubits", bq.n_qubits, "Qubit count for the local frame");
    bounds->add_option("--distance", b_distance, "Distance")->check(CLI::IsMember({"op", "av"}));
    bounds->add_option("--variant", b_variant, "Bound variant")->check(CLI::IsMember({"theorem", "proof"}));
    bounds->add_option("--shots", b_shots, "Also report the accuracy guaranteed by this many shots");

    // packing
    std::string p_kind = "op";
    std::size_t p_dim = 8, p_outcomes = 2, p_members = 20, p_seeds = 10, p_trials = 10000;
    double p_epsilon = 0.4;
    std::uint64_t p_seed = 0;
    std::vector<std::size_t> p_dims = {2, 4, 6};
    std::optional<std::string> p_out;
    auto *packing = app.add_subcommand("packing", "Packing separation and Haar moment checks");
    packing->add_option("--kind", p_kind, "op, av or moments")->check(CLI::IsMember({"op", "av", "moments"}));
    packing->add_option("--dim", p_dim, "Dimension (even)");
    packing->add_option("--outcomes", p_outcomes, "Flat outcomes (op) or outcomes (av)");
    packing->add_option("--epsilon", p_epsilon, "Packing parameter");
    packing->add_option("--members", p_members, "Family size R");
    packing->add_option("--seed", p_seed, "Base seed");
    packing->add_option("--seeds", p_seeds, "Number of derived seeds (one row each)");
    packing->add_option("--trials", p_trials, "Haar pairs per dimension (moments)");
    packing->add_option("--dims", p_dims, "Dimensions for moments")->delimiter(',');
    packing->add_option("--out", p_out, "CSV output path (default stdout)");

    // channel
    std::string c_ideal, c_estimate;
    std::optional<std::string> c_out;
    auto *channel = app.add_subcommand("channel", "Measurement channel in the Pauli basis");
    channel->add_option("--ideal", c_ideal, "Ideal POVM file")->required()->check(CLI::ExistingFile);
    channel->add_option("--estimate", c_estimate, "Estimated POVM file")->required()->check(CLI::ExistingFile);
    channel->add_option("--out", c_out, "JSON output path (default stdout)");

    // validate
    std::optional<std::string> v_povm, v_config;
    double v_tol = qmt::kDefaultPovmTol;
    auto *validate = app.add_subcommand("validate", "Check a POVM file or an experiment config");
    auto *v_povm_opt = validate->add_option("--povm", v_povm, "POVM file")->check(CLI::ExistingFile);
    auto *v_config_opt = validate->add_option("--config", v_config, "Experiment config")->check(CLI::ExistingFile);
    v_povm_opt->excludes(v_config_opt);
    validate->add_option("--tol", v_tol, "Positivity and completeness tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        report_error("usage", e.what());
        return 2;
    }

    try {
        if (*simulate) {
            auto path = qmt::run_simulation(resolve(sim));
            emit({{"counts", path.string()}, {"metadata", qmt::metadata_path(path).string()}});
        } else if (*reconstruct) {
            std::optional<std::filesystem::path> counts;
            if (from_counts) {
                counts = *from_counts;
            }
            qmt::ReconstructionRun run = qmt::run_reconstruction(resolve(rec), counts);
            emit({{"povm", run.povm_path.string()},
                  {"report", run.report_path.string()},
                  {"d_op", run.report["distances"]["d_op"]["value"]},
                  {"d_av", run.report["distances"]["d_av"]["value"]}});
        } else if (*distance) {
            emit(qmt::compare_effects(qmt::read_effects_file(dist_a), qmt::read_effects_file(dist_b), dist_subsets,
                                      dist_seed));
        } else if (*scaling) {
            qmt::ExperimentConfig c = resolve(scal);
            qmt::ScalingResult r = qmt::run_scaling(c, parse_n_list(n_list), trials);
            qmt::write_text_file(c.output_dir / "scaling.csv", qmt::scaling_csv(r, !no_timing));
            json summary = qmt::scaling_summary(r);
            qmt::write_text_file(c.output_dir / "scaling_summary.json", summary.dump(2) + "\n");
            emit(summary);
        } else if (*bounds) {
            bq.frame = b_frame == "local" ? qmt::FrameKind::local : qmt::FrameKind::global;
            bq.distance = b_distance == "av" ? qmt::DistanceTarget::av : qmt::DistanceTarget::op;
            bq.variant = b_variant == "proof" ? qmt::BoundVariant::proof : qmt::BoundVariant::theorem;
            json out = {{"bound", qmt::sample_size_bound(bq)}, {"N", qmt::sample_size(bq)}};
            if (b_shots) {
                double eps = qmt::guaranteed_epsilon(bq, *b_shots);
                out["guaranteed_epsilon"] = std::isfinite(eps) ? json(eps) : json(nullptr);
            }
            emit(out);
        } else if (*packing) {
            std::string csv = p_kind == "moments"
                                  ? qmt::haar_moments_csv(p_dims, p_trials, p_seed)
                                  : qmt::packing_csv(p_kind == "op" ? qmt::PackingKind::op_family
                                                                    : qmt::PackingKind::av_family,
                                                     p_dim, p_outcomes, p_epsilon, p_members, p_seed, p_seeds);
            if (p_out) {
                qmt::write_text_file(*p_out, csv);
            } else {
                std::cout << csv;
            }
        } else if (*channel) {
            qmt::ComplexMatrix m =
                qmt::measurement_channel(qmt::read_povm_file(c_ideal), qmt::read_povm_file(c_estimate));
            json out = {{"basis", "pauli"}, {"matrix", qmt::matrix_to_json(m)}};
            if (c_out) {
                qmt::write_text_file(*c_out, out.dump(2) + "\n");
            } else {
                emit(out);
            }
        } else if (*validate) {
            if (v_config) {
                qmt::check_config(qmt::load_config(*v_config));
                emit({{"ok", true}});
                return 0;
            }
            if (!v_povm) {
                throw std::invalid_argument("validate: pass --povm or --config");
            }
            auto elements = qmt::read_effects_file(*v_povm);
            qmt::ValidationReport r = qmt::validate(elements, v_tol);
            emit({{"ok", r.ok},
                  {"min_eigenvalue", r.min_eigenvalue},
                  {"completeness_residual", r.completeness_residual}});
            return r.ok ? 0 : 1;
        }
    } catch (const qmt::ConfigError &e) {
        return report_error("config", e.what());
    } catch (const qmt::FormatError &e) {
        return report_error("format", e.what());
    } catch (const std::invalid_argument &e) {
        return report_error("invalid_argument", e.what());
    } catch (const std::out_of_range &e) {
        return report_error("out_of_range", e.what());
    } catch (const std::length_error &e) {
        return report_error("length", e.what());
    } catch (const std::exception &e) {
        return report_error("runtime", e.what());
    }
    return 0;
}
