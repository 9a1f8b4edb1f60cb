// Copyright 2026 The kraus Authors
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

// Command-line front end: figures, summary, variances, sweep.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "kraus/errors.hpp"
#include "kraus/runner.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

struct RawOptions {
    std::string s = "1/2";
    std::string j = "7";
    double g = 0.25;
    std::string theta = "pi/6";
    std::size_t samples = 100000;
    std::uint64_t seed = 1;
    std::string out = ".";
    std::string format = "csv";
    unsigned threads = 1;
    std::string export_ensemble;
};

void add_common(CLI::App *cmd, RawOptions &o, bool with_probe) {
    if (with_probe) {
        cmd->add_option("--j", o.j, "probe spin (integer or half-integer)")->capture_default_str();
        cmd->add_option("--g", o.g, "coupling strength")->capture_default_str();
        cmd->add_option("--theta", o.theta, "probe polar angle, e.g. pi/6")->capture_default_str();
    }
    cmd->add_option("--samples", o.samples, "Haar ensemble size")->capture_default_str();
    cmd->add_option("--seed", o.seed, "ensemble seed")->capture_default_str();
    cmd->add_option("--out", o.out, "output directory")->capture_default_str();
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--threads", o.threads, "worker threads (output is identical for any value)")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
}

kraus::ExperimentConfig to_config(const RawOptions &o) {
    kraus::ExperimentConfig cfg;
    cfg.spin.s = kraus::parse_spin(o.s);
    cfg.spin.j = kraus::parse_spin(o.j);
    cfg.spin.g = o.g;
    cfg.spin.theta = kraus::parse_angle(o.theta);
    cfg.theta_text = o.theta;
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    cfg.outputs = o.out;
    cfg.format = o.format == "json" ? kraus::OutputFormat::Json : kraus::OutputFormat::Csv;
    cfg.validate();
    return cfg;
}

void report(const std::vector<std::filesystem::path> &paths) {
    for (const auto &p : paths) std::cout << p.string() << '\n';
}

void maybe_export(const RawOptions &o, const kraus::ExperimentConfig &cfg) {
    if (o.export_ensemble.empty()) return;
    const auto e = kraus::sample_haar(cfg.spin.system_dim(), cfg.samples, cfg.seed, cfg.threads);
    std::ofstream out(o.export_ensemble, std::ios::binary | std::ios::trunc);
    if (!out) throw kraus::KrausError(kraus::ErrorCode::InvalidArgument, "cannot write " + o.export_ensemble);
    kraus::write_ensemble(out, e);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Sequential Kraus measurement simulator"};
    app.set_version_flag("--version", std::string(kraus::kVersion));
    app.require_subcommand(1);

    RawOptions fig, sum, var, swp;
    std::string sweep_axis = "g";
    std::string sweep_values;

    auto *figures = app.add_subcommand("figures", "per-outcome tables fig1..fig4");
    figures->add_option("--s", fig.s, "system spin")->capture_default_str();
    add_common(figures, fig, true);
    figures->add_option("--export-ensemble", fig.export_ensemble, "also write the sampled states to this file");

    auto *summary = app.add_subcommand("summary", "headline scalars, inequalities and regime diagnostics");
    summary->add_option("--s", sum.s, "system spin")->capture_default_str();
    add_common(summary, sum, true);

    auto *variances = app.add_subcommand("variances", "Monte Carlo ensemble moments against closed forms");
    var.s = "1/2,1,3/2";
    variances->add_option("--s", var.s, "comma-separated list of system spins")->capture_default_str();
    add_common(variances, var, false);

    auto *sweep = app.add_subcommand("sweep", "long-format table over one parameter");
    sweep->add_option("--s", swp.s, "system spin")->capture_default_str();
    add_common(sweep, swp, true);
    sweep->add_option("--axis", sweep_axis, "g, j or theta")
        ->check(CLI::IsMember({"g", "j", "theta"}))
        ->capture_default_str();
    sweep->add_option("--values", sweep_values, "comma-separated values (theta accepts pi fractions)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitValidation;
    }

    try {
        if (*figures) {
            const auto cfg = to_config(fig);
            const auto t = kraus::run_figures(cfg);
            report(kraus::write_job(cfg.outputs, "figures", {t.fig1, t.fig2, t.fig3, t.fig4},
                                    kraus::job_metadata(cfg, "figures"), cfg.format));
            maybe_export(fig, cfg);
        } else if (*summary) {
            const auto cfg = to_config(sum);
            const auto t = kraus::run_summary(cfg);
            report(kraus::write_job(cfg.outputs, "summary", {t}, kraus::job_metadata(cfg, "summary"), cfg.format));
        } else if (*variances) {
            std::vector<kraus::HalfInt> spins;
            for (const auto &item : kraus::split_list(var.s)) spins.push_back(kraus::parse_spin(item));
            if (spins.empty()) throw kraus::KrausError(kraus::ErrorCode::InvalidArgument, "--s list is empty");
            RawOptions echo = var;
            echo.s = kraus::split_list(var.s).front();
            auto cfg = to_config(echo);
            const auto t = kraus::run_variances(spins, cfg.samples, cfg.seed, cfg.threads);
            auto meta = kraus::job_metadata(cfg, "variances");
            meta.erase(meta.begin() + 2, meta.begin() + 7);  // probe fields do not apply
            meta.insert(meta.begin() + 2, {"s_list", var.s});
            report(kraus::write_job(cfg.outputs, "variances", {t}, meta, cfg.format));
        } else if (*sweep) {
            const auto cfg = to_config(swp);
            const auto axis = kraus::parse_axis(sweep_axis);
            std::vector<double> values;
            for (const auto &item : kraus::split_list(sweep_values)) {
                if (axis == kraus::SweepAxis::Theta) values.push_back(kraus::parse_angle(item));
                else if (axis == kraus::SweepAxis::J) values.push_back(kraus::parse_spin(item).value());
                else values.push_back(kraus::parse_angle(item));
            }
            if (values.empty()) throw kraus::KrausError(kraus::ErrorCode::InvalidArgument, "--values is empty");
            const auto t = kraus::run_sweep(cfg, axis, values);
            auto meta = kraus::job_metadata(cfg, "sweep");
            meta.emplace_back("axis", sweep_axis);
            meta.emplace_back("values", sweep_values);
            report(kraus::write_job(cfg.outputs, "sweep", {t}, meta, cfg.format));
        }
    } catch (const kraus::KrausError &e) {
        std::cerr << "error [" << kraus::to_string(e.code()) << "]: " << e.what() << '\n';
        return kraus::is_numeric_contract(e.code()) ? kExitNumeric : kExitValidation;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return 0;
}
