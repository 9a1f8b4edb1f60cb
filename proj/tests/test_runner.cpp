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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "kraus/errors.hpp"
#include "kraus/runner.hpp"

using namespace kraus;
constexpr double pi = std::numbers::pi;

namespace {

ExperimentConfig small_config(double g = 0.25, std::size_t samples = 5000) {
    ExperimentConfig cfg;
    cfg.spin.g = g;
    cfg.samples = samples;
    return cfg;
}

double summary_value(const Table &t, const std::string &metric) {
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        if (std::get<std::string>(t.rows[r][0]) == metric) return t.number(r, "value");
    ADD_FAILURE() << "missing " << metric;
    return std::nan("");
}

std::string summary_text(const Table &t, const std::string &metric) {
    for (const auto &row : t.rows)
        if (std::get<std::string>(row[0]) == metric) return std::get<std::string>(row[1]);
    ADD_FAILURE() << "missing " << metric;
    return {};
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(Parse, Angles) {
    EXPECT_EQ(parse_angle("pi/6"), pi / 6);
    EXPECT_EQ(parse_angle("5pi/6"), 5 * pi / 6);
    EXPECT_EQ(parse_angle("2*pi/3"), 2 * pi / 3);
    EXPECT_EQ(parse_angle("-pi"), -pi);
    EXPECT_EQ(parse_angle("pi"), pi);
    EXPECT_EQ(parse_angle(" 0.5 "), 0.5);
    EXPECT_EQ(parse_angle("0"), 0.0);
    for (const char *bad : {"", "pie", "pi/0", "pi*2", "abc", "1/2pi", "pi/x"}) EXPECT_THROW(parse_angle(bad), KrausError) << bad;
}

TEST(Parse, Spins) {
    EXPECT_EQ(parse_spin("1/2"), HalfInt::from_twice(1));
    EXPECT_EQ(parse_spin("3/2"), HalfInt::from_twice(3));
    EXPECT_EQ(parse_spin("7"), HalfInt::integer(7));
    EXPECT_EQ(parse_spin("0.5"), HalfInt::from_twice(1));
    EXPECT_EQ(parse_spin("4/2"), HalfInt::integer(2));
    for (const char *bad : {"1/3", "0.3", "-1", "x", "1/0"}) EXPECT_THROW(parse_spin(bad), KrausError) << bad;
    EXPECT_EQ(split_list("1/2, 1 ,,3/2"), (std::vector<std::string>{"1/2", "1", "3/2"}));
}

TEST(Config, SampleFloor) {
    ExperimentConfig cfg = small_config(0.25, 999);
    EXPECT_THROW(cfg.validate(), KrausError);
    EXPECT_THROW(run_figures(cfg), KrausError);
    EXPECT_THROW(run_variances({HalfInt::from_twice(1)}, 10, 1), KrausError);
    cfg.samples = 1000;
    EXPECT_NO_THROW(cfg.validate());
}

TEST(Figures, ShapesAndMarginals) {
    const FigureTables t = run_figures(small_config());
    ASSERT_EQ(t.fig1.rows.size(), 15u);
    ASSERT_EQ(t.fig4.rows.size(), 225u);
    double total = 0.0;
    for (std::size_t r = 0; r < 15; ++r) total += t.fig1.number(r, "p_m");
    EXPECT_NEAR(total, 1.0, 1e-8);
    for (std::size_t i = 0; i < 15; ++i) {
        double f = 0, info = 0, psum = 0;
        for (std::size_t k = 0; k < 15; ++k) {
            const std::size_t r = 15 * i + k;
            const double p = t.fig4.number(r, "p_mu_given_m");
            f += p * t.fig4.number(r, "F_m_mu");
            info += p * t.fig4.number(r, "I_m_mu");
            psum += p;
            if (t.fig4.number(r, "mu") == t.fig4.number(r, "m")) {
                EXPECT_NEAR(p, t.fig1.number(i, "p_mu0_given_m"), 1e-15);
            }
            // s = 1/2: the mu = -m branch undoes the first measurement
            if (t.fig4.number(r, "mu") == -t.fig4.number(r, "m")) {
                EXPECT_NEAR(t.fig4.number(r, "F_m_mu"), 1.0, 1e-8);
                EXPECT_NEAR(t.fig4.number(r, "I_m_mu"), 0.0, 1e-8);
            }
        }
        EXPECT_NEAR(psum, 1.0, 1e-9);
        EXPECT_NEAR(f, t.fig2.number(i, "F_prime_m"), 1e-9);
        EXPECT_NEAR(info, t.fig3.number(i, "I_prime_m"), 1e-9);
    }
}

TEST(Figures, ZeroCouplingIsTrivial) {
    const FigureTables t = run_figures(small_config(0.0, 2000));
    for (std::size_t r = 0; r < 15; ++r) {
        EXPECT_NEAR(t.fig2.number(r, "F_m"), 1.0, 1e-12);
        EXPECT_NEAR(t.fig2.number(r, "F_prime_m"), 1.0, 1e-12);
        EXPECT_NEAR(t.fig3.number(r, "I_m"), 0.0, 1e-15);
        EXPECT_NEAR(t.fig3.number(r, "I_prime_m"), 0.0, 1e-15);
    }
}

TEST(Summary, ZeroCouplingReportsTies) {
    const Table t = run_summary(small_config(0.0, 2000));
    EXPECT_NEAR(summary_value(t, "F"), 1.0, 1e-12);
    EXPECT_NEAR(summary_value(t, "F_prime"), 1.0, 1e-12);
    EXPECT_NEAR(summary_value(t, "I"), 0.0, 1e-15);
    EXPECT_NEAR(summary_value(t, "I_prime"), 0.0, 1e-15);
    EXPECT_EQ(summary_text(t, "F_prime_gt_F"), "tie");
    EXPECT_EQ(summary_text(t, "I_prime_gt_I"), "tie");
}

TEST(Summary, WeakCouplingRatios) {
    const ExperimentConfig cfg = small_config(0.01, 20000);
    const Table t = run_summary(cfg);
    // I'(m) ~ 2 I(m) + (leading I at m with mu + m = 0 excluded) gives the
    // ratio of summed predictions; the preferred branch alone is ~4x.
    using P = PerturbativePrediction;
    const double predicted = P::mean_info_after(cfg.spin) / P::mean_info(cfg.spin);
    EXPECT_NEAR(summary_value(t, "I_prime_over_I") / predicted, 1.0, 0.02);
    EXPECT_NEAR(summary_value(t, "preferred_info_over_I"), 4.0, 0.2);
    EXPECT_EQ(summary_text(t, "F_prime_gt_F"), "pass");
}

TEST(Variances, TargetsAndScores) {
    const Table t = run_variances({HalfInt::from_twice(1), HalfInt::integer(1)}, 100000, 1);
    ASSERT_EQ(t.rows.size(), 10u);
    const std::vector<double> expected{1.0 / 12, 1.0 / 6, 1.0 / 2, 1.0 / 3, 1.0 / 6,
                                       1.0 / 6,  1.0 / 2, 1.0 / 3, 1.0 / 6, 1.0 / 12};
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        EXPECT_NEAR(t.number(r, "closed_form"), expected[r], 1e-15);
        EXPECT_LT(std::abs(t.number(r, "z_score")), 4.0);
    }
    EXPECT_THROW(run_variances({HalfInt::integer(0)}, 1000, 1), KrausError);
}

TEST(Sweep, CouplingMonotonicity) {
    const Table t = run_sweep(small_config(0.25, 5000), SweepAxis::G, {0.0, 0.05, 0.25});
    std::vector<double> f, i;
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto &metric = std::get<std::string>(t.rows[r][t.column("metric")]);
        if (metric == "F") f.push_back(t.number(r, "result"));
        if (metric == "I") i.push_back(t.number(r, "result"));
    }
    ASSERT_EQ(f.size(), 3u);
    EXPECT_GT(f[0], f[1]);
    EXPECT_GT(f[1], f[2]);
    EXPECT_LT(i[0], i[1]);
    EXPECT_LT(i[1], i[2]);
    EXPECT_EQ(t.rows.size(), 18u);
}

TEST(Sweep, PhaseLinearInProbeSpin) {
    const Table t = run_sweep(small_config(0.05, 2000), SweepAxis::J, {1, 3, 7});
    std::vector<double> phase;
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        if (std::get<std::string>(t.rows[r][t.column("metric")]) == "phase") phase.push_back(t.number(r, "result"));
    ASSERT_EQ(phase.size(), 3u);
    EXPECT_NEAR(phase[1] / phase[0], 3.0, 1e-12);
    EXPECT_NEAR(phase[2] / phase[0], 7.0, 1e-12);
    EXPECT_THROW(run_sweep(small_config(), SweepAxis::J, {1.3}), KrausError);
    EXPECT_THROW(run_sweep(small_config(), SweepAxis::G, {INFINITY}), KrausError);
}

TEST(Sweep, EquatorHasNoPhaseAndOptimalFidelity) {
    ExperimentConfig cfg = small_config(0.1, 5000);
    cfg.spin.theta = pi / 2;
    const PureStateEnsemble e = sample_haar(2, cfg.samples, cfg.seed);
    const ProbeAnalysis a = analyze_probe(cfg.spin, e);
    for (std::size_t i = 0; i < 15; ++i)
        EXPECT_NEAR(*a.first.outcomes[i].fidelity, a.fidelity_opt[i], 1e-12);
    EXPECT_LT(regime_diagnostics(cfg.spin).phase, 1e-12);
    EXPECT_EQ(parse_axis("theta"), SweepAxis::Theta);
    EXPECT_THROW(parse_axis("s"), KrausError);
}

TEST(Output, DeterministicAcrossThreadsAndRuns) {
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "kraus_runner_test";
    fs::remove_all(base);
    std::vector<std::string> bodies;
    for (unsigned threads : {1u, 1u, 4u}) {
        ExperimentConfig cfg = small_config(0.25, 9000);
        cfg.threads = threads;
        const FigureTables t = run_figures(cfg);
        const fs::path dir = base / std::to_string(bodies.size());
        const auto paths = write_job(dir, "figures", {t.fig1, t.fig2, t.fig3, t.fig4},
                                     job_metadata(cfg, "figures"), OutputFormat::Csv);
        ASSERT_EQ(paths.size(), 4u);
        std::string all;
        for (const auto &p : paths) all += slurp(p);
        bodies.push_back(all);
    }
    EXPECT_EQ(bodies[0], bodies[1]);
    EXPECT_EQ(bodies[0], bodies[2]);
    EXPECT_NE(bodies[0].find("# seed: 1\n"), std::string::npos);
    EXPECT_NE(bodies[0].find("# samples: 9000\n"), std::string::npos);
    EXPECT_NE(bodies[0].find("# version: " + std::string(kVersion) + "\n"), std::string::npos);
    fs::remove_all(base);
}

TEST(Output, JsonDocument) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "kraus_runner_json";
    fs::remove_all(dir);
    const ExperimentConfig cfg = small_config(0.25, 1000);
    const Table t = run_summary(cfg);
    const auto paths = write_job(dir, "summary", {t}, job_metadata(cfg, "summary"), OutputFormat::Json);
    ASSERT_EQ(paths.size(), 1u);
    const auto doc = nlohmann::json::parse(slurp(paths[0]));
    EXPECT_EQ(doc["meta"]["seed"], "1");
    EXPECT_EQ(doc["meta"]["theta"], "pi/6");
    EXPECT_EQ(doc["tables"]["summary"]["columns"][0], "metric");
    EXPECT_EQ(doc["tables"]["summary"]["rows"][0][0], "F");
    fs::remove_all(dir);
}

TEST(Output, CsvFormatting) {
    Table t{"x", {"a", "b", "c", "d"}, {}};
    t.add_row({0.1, std::string("p,q"), true, std::monostate{}});
    t.add_row({INFINITY, std::string("say \"hi\""), false, -0.0});
    const std::string csv = to_csv(t, {{"k", "v"}});
    EXPECT_EQ(csv, "# table: x\n# k: v\na,b,c,d\n0.10000000000000001,\"p,q\",true,\ninf,\"say \"\"hi\"\"\",false,-0\n");
    EXPECT_THROW(t.add_row({1.0}), KrausError);
    EXPECT_THROW(t.column("zz"), KrausError);
}
