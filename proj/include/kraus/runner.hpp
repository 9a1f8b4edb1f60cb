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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "kraus/spin_probe.hpp"
#include "kraus/table.hpp"

namespace kraus {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::size_t kMinFigureSamples = 1000;

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    SpinProbeConfig spin{HalfInt::from_twice(1), HalfInt::integer(7), 0.25, 3.14159265358979323846 / 6.0};
    std::string theta_text = "pi/6";  // echoed verbatim in output metadata
    std::size_t samples = 100000;
    std::uint64_t seed = 1;
    unsigned threads = 1;  // does not affect any output byte
    std::filesystem::path outputs = ".";
    OutputFormat format = OutputFormat::Csv;

    /// InvalidArgument when samples < kMinFigureSamples or the spin config is invalid.
    void validate() const;
};

/// "pi/6", "5pi/6", "2*pi/3", "-pi", "0.5236" -> radians.
double parse_angle(std::string_view text);
/// "1/2", "3/2", "7", "0.5" -> half-integer spin.
HalfInt parse_spin(std::string_view text);
std::vector<std::string> split_list(std::string_view text, char sep = ',');

/// Everything the figure, summary and sweep jobs draw from one ensemble.
struct ProbeAnalysis {
    SpinProbeConfig spin;
    StageStatistics first;               // over m
    std::vector<StageStatistics> second;  // per m (outcome order), over mu, conjugate probe set
    std::vector<double> p_preferred;      // p(mu0 = m | m)
    std::vector<double> fidelity_opt;     // F_opt(m)
    std::vector<PreferredBranch> preferred;  // closed-form F(m, mu0), I(m, mu0)
    double F = 0, I = 0, F_prime = 0, I_prime = 0;
    double preferred_info = 0;  // sum_m p(m) I(m, mu0)
};

ProbeAnalysis analyze_probe(const SpinProbeConfig &spin, const PureStateEnsemble &e, unsigned threads = 1);

struct FigureTables {
    Table fig1, fig2, fig3, fig4;
};

FigureTables run_figures(const ExperimentConfig &cfg);
Table run_summary(const ExperimentConfig &cfg);
Table run_variances(const std::vector<HalfInt> &spins, std::size_t samples, std::uint64_t seed,
                    unsigned threads = 1);

enum class SweepAxis { G, J, Theta };
SweepAxis parse_axis(std::string_view text);
std::string_view to_string(SweepAxis axis);
Table run_sweep(const ExperimentConfig &base, SweepAxis axis, const std::vector<double> &values);

/// Config echo, seed, sample count and library version.
Metadata job_metadata(const ExperimentConfig &cfg, std::string_view job);

/// Writes <dir>/<name>.csv per table, or one <dir>/<job>.json; returns the paths.
std::vector<std::filesystem::path> write_job(const std::filesystem::path &dir, std::string_view job,
                                             const std::vector<Table> &tables, const Metadata &meta,
                                             OutputFormat format);

}  // namespace kraus
