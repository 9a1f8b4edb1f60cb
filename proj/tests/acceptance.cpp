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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria (0 when all pass).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "kraus/errors.hpp"
#include "kraus/runner.hpp"
#include "support.hpp"

using namespace kraus;
constexpr double pi = std::numbers::pi;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

SpinProbeConfig reference_spin(double g = 0.25) {
    return SpinProbeConfig{HalfInt::from_twice(1), HalfInt::integer(7), g, pi / 6};
}

ExperimentConfig reference_config(double g = 0.25) {
    ExperimentConfig cfg;
    cfg.spin = reference_spin(g);
    cfg.samples = 100000;
    cfg.seed = 1;
    cfg.threads = 1;
    return cfg;
}

std::string fmt(const char *f, auto... xs) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, xs...);
    return buf;
}

double metric(const Table &t, const std::string &name) {
    for (std::size_t r = 0; r < t.rows.size(); ++r)
        if (std::get<std::string>(t.rows[r][0]) == name) return t.number(r, "value");
    return std::nan("");
}

// The summary is shared by criteria 1 and 2.
struct SummaryRun {
    Table table;
    double seconds;
};

const SummaryRun &reference_summary() {
    static const SummaryRun run = [] {
        const auto t0 = std::chrono::steady_clock::now();
        Table t = run_summary(reference_config());
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return SummaryRun{std::move(t), s};
    }();
    return run;
}

Verdict headline() {
    const auto &r = reference_summary();
    const double f = metric(r.table, "F"), i = metric(r.table, "I");
    const bool ok = f >= 0.525 && f <= 0.545 && i >= 0.040 && i <= 0.050 && r.seconds < 60.0;
    return {ok, fmt("F=%.6f in [0.525,0.545], I=%.6f bits in [0.040,0.050], %.2f s single-threaded (< 60)", f, i,
                    r.seconds)};
}

Verdict post_conjugate() {
    const auto &r = reference_summary();
    const double f = metric(r.table, "F"), i = metric(r.table, "I");
    const double fp = metric(r.table, "F_prime"), ip = metric(r.table, "I_prime");
    const bool ok = fp >= 0.956 && fp <= 0.976 && ip >= 0.073 && ip <= 0.089 && fp > f && ip > i;
    return {ok, fmt("F'=%.6f in [0.956,0.976], I'=%.6f in [0.073,0.089], F'>F %s, I'>I %s", fp, ip,
                    fp > f ? "yes" : "no", ip > i ? "yes" : "no")};
}

Verdict perfect_reversal() {
    const SpinProbeConfig spin = reference_spin();
    const PureStateEnsemble e = sample_haar(2, 100000, 1);
    const KrausSet forward = build_forward(spin);
    double worst_f = 0, worst_i = 0, worst_w = 0;
    for (const SecondStageSpec &spec : build_reversing_probe(spin)) {
        const StageStatistics st = two_stage_statistics(forward, spec.source_outcome, spec.set, e);
        const OutcomeStatistics &o = st.at(spec.preferred_label);
        worst_f = std::max(worst_f, std::abs(*o.fidelity - 1.0));
        worst_i = std::max(worst_i, std::abs(*o.info_gain));
        const ComplexMatrix composite = spec.preferred() * forward.op(spec.source_outcome);
        const BranchSamples s = branch_samples(composite, composite.adjoint() * composite, e);
        const auto [lo, hi] = std::minmax_element(s.likelihood.begin(), s.likelihood.end());
        worst_w = std::max(worst_w, (*hi - *lo) / *hi);
    }
    const bool ok = worst_f <= 1e-8 && worst_i <= 1e-8 && worst_w <= 1e-10;
    return {ok, fmt("max |F(m,nu0)-1|=%.2e, max |I(m,nu0)|=%.2e bits, max weight spread=%.2e (rel)", worst_f,
                    worst_i, worst_w)};
}

Verdict factor_of_four() {
    const SpinProbeConfig spin = reference_spin(0.01);
    const PureStateEnsemble e = sample_haar(2, 100000, 1);
    const KrausSet forward = build_forward(spin);
    const StageStatistics first = stage_statistics(forward, e);
    bool ok = true;
    std::ostringstream d;
    for (int mi = -3; mi <= 3; ++mi) {
        const Label m = Label::integer(mi);
        const double im = *first.at(m).info_gain;
        const double ip = conjugate_preferred_closed_form(forward, m, e).info_gain;
        if (mi == 0) {
            // N_0 is proportional to the identity for s = 1/2: both gains vanish
            const bool zero = im <= 1e-12 && ip <= 1e-12;
            ok = ok && zero;
            d << fmt("m=0: I=%.1e, I(m,mu0)=%.1e (0/0); ", im, ip);
            continue;
        }
        const double ratio = ip / im;
        ok = ok && ratio >= 3.8 && ratio <= 4.2;
        d << fmt("m=%d: %.4f; ", mi, ratio);
    }
    return {ok, "I(m,mu0)/I(m) in [3.8,4.2]: " + d.str()};
}

Verdict appendix_moments() {
    const Table t = run_variances({HalfInt::from_twice(1), HalfInt::integer(1), HalfInt::from_twice(3)}, 100000, 1);
    double worst = 0;
    for (std::size_t r = 0; r < t.rows.size(); ++r) worst = std::max(worst, std::abs(t.number(r, "z_score")));
    return {worst < 4.0, fmt("15 estimates (V_I, V_F, C, D, E for s = 1/2, 1, 3/2), max |z| = %.3f (< 4)", worst)};
}

Verdict structural() {
    double completeness = 0, adjoint = 0, proportional = 0;
    for (int ts : {1, 2, 3})
        for (int tj : {1, 2, 6, 14})
            for (double g : {0.0, 0.01, 0.1, 0.25})
                for (double th : {pi / 6, pi / 3, pi / 2, 2.0}) {
                    const SpinProbeConfig c{HalfInt::from_twice(ts), HalfInt::from_twice(tj), g, th};
                    const KrausSet f = build_forward(c);
                    completeness = std::max(completeness, validate_completeness(f));
                    for (const SecondStageSpec &spec : build_conjugate_probe(c)) {
                        completeness = std::max(completeness, validate_completeness(spec.set));
                        const Label m = spec.source_outcome;
                        const double sign = ((c.j + m).twice() / 2) % 2 == 0 ? 1.0 : -1.0;
                        adjoint = std::max(adjoint, max_abs_diff(probe_operator(c, pi - th, m),
                                                                 Complex(sign) * f.op(m).adjoint()));
                        const ComplexMatrix n = polar_decompose(f.op(m)).positive;
                        proportional = std::max(proportional, max_abs_diff(spec.preferred() * f.op(m),
                                                                           spec.scale * n * n));
                        const SecondStageSpec minimal = build_conjugate_minimal(f, m);
                        completeness = std::max(completeness, validate_completeness(minimal.set));
                        proportional = std::max(proportional, max_abs_diff(minimal.preferred() * f.op(m),
                                                                           minimal.scale * n * n));
                    }
                }
    std::mt19937_64 rng(6);
    double polar = 0;
    for (int t = 0; t < 1000; ++t) {
        const ComplexMatrix m = test_support::random_matrix(rng, 1 + t % 8);
        const PolarParts p = polar_decompose(m);
        polar = std::max(polar, max_abs_diff(p.unitary * p.positive, m));
    }
    const bool ok = completeness < 1e-9 && adjoint <= 1e-10 && proportional <= 1e-10 && polar <= 1e-9;
    return {ok, fmt("completeness %.1e (< 1e-9), adjoint identity %.1e, C M - kappa N^2 %.1e (<= 1e-10), "
                    "polar UN-M %.1e over 1000 matrices (<= 1e-9)",
                    completeness, adjoint, proportional, polar)};
}

Verdict regime() {
    const PureStateEnsemble e = sample_haar(2, 100000, 1);
    const RegimeReport r = regime_diagnostics(reference_spin(), &e);
    bool ok = true;
    std::ostringstream d;
    for (const auto &o : r.outcomes) {
        const bool want = std::abs(o.m.value()) <= 5;
        ok = ok && o.condition_holds == want;
        if (o.m.twice() >= 0) d << fmt("m=%s:%.3f ", o.m.str().c_str(), *o.disturbance_ratio);
    }
    return {ok, "(1-F(m))/(1-F_opt(m)) > 4 exactly for |m| <= 5; ratios " + d.str()};
}

Verdict oracle_equivalence() {
    std::mt19937_64 rng(8);
    double gain = 0, two_stage = 0;
    for (int t = 0; t < 300; ++t) {
        const std::size_t d = 2 + t % 3;
        const PureStateEnsemble e = test_support::explicit_ensemble(rng, d, 1 + t % 8);
        const KrausSet k1(test_support::random_kraus_operators(rng, d, 1 + t % 4));
        const KrausSet k2(test_support::random_kraus_operators(rng, d, 1 + (t / 4) % 3));
        const StageStatistics first = stage_statistics(k1, e);
        for (std::size_t m = 0; m < k1.size(); ++m) {
            const auto o = test_support::oracle_branch({&k1.operators()[m]}, e);
            gain = std::max(gain, std::abs(*first.outcomes[m].info_gain - o.info_gain));
            const StageStatistics st = two_stage_statistics(k1, k1.labels()[m], k2, e);
            for (std::size_t mu = 0; mu < k2.size(); ++mu) {
                const auto b = test_support::oracle_branch({&k1.operators()[m], &k2.operators()[mu]}, e);
                const OutcomeStatistics &s = st.outcomes[mu];
                two_stage = std::max({two_stage, std::abs(s.joint_probability - b.probability),
                                      std::abs(*s.fidelity - b.fidelity), std::abs(*s.info_gain - b.info_gain)});
            }
        }
    }
    return {gain <= 1e-10 && two_stage <= 1e-10,
            fmt("300 enumerated ensembles (<= 8 states): info-gain vs H0-H(m) %.1e, two-stage vs direct %.1e "
                "(<= 1e-10)",
                gain, two_stage)};
}

struct PertError {
    double f = 0, i = 0, i_zero = 0;
    Label worst_m, worst_mu;
};

PertError perturbative_error(const SpinProbeConfig &spin) {
    const PureStateEnsemble e = sample_haar(2, 100000, 1);
    const KrausSet f = build_forward(spin), r = build_reflected(spin);
    PertError out;
    for (Label m : spin.outcomes()) {
        const StageStatistics st = two_stage_statistics(f, m, r, e);
        for (Label mu : spin.outcomes()) {
            const int k = std::abs((mu + m).twice() / 2);
            if (k > 4) continue;
            const OutcomeStatistics &o = st.at(mu);
            out.f = std::max(out.f, std::abs(*o.fidelity / PerturbativePrediction::fidelity_pair(spin, m, mu) - 1));
            if (k == 0) {
                out.i_zero = std::max(out.i_zero, std::abs(*o.info_gain));
                continue;
            }
            const double rel = std::abs(*o.info_gain / PerturbativePrediction::info_pair(spin, m, mu) - 1);
            if (rel > out.i) {
                out.i = rel;
                out.worst_m = m;
                out.worst_mu = mu;
            }
        }
    }
    return out;
}

Verdict perturbative() {
    const PertError at_ref = perturbative_error(reference_spin());
    const PertError weak = perturbative_error(reference_spin(0.01));
    const bool at_ref_ok = at_ref.f <= 0.15 && at_ref.i <= 0.15 && at_ref.i_zero <= 1e-8;
    const bool weak_ok = weak.f <= 0.01 && weak.i <= 0.01 && weak.i_zero <= 1e-8;
    return {at_ref_ok && weak_ok,
            fmt("|mu+m| <= 4; g=0.25: max rel err F %.4f, I %.4f (at m=%s, mu=%s; tol 0.15); "
                "g=0.01: F %.5f, I %.5f (tol 0.01); |I| at mu=-m <= %.1e",
                at_ref.f, at_ref.i, at_ref.worst_m.str().c_str(), at_ref.worst_mu.str().c_str(), weak.f, weak.i,
                std::max(at_ref.i_zero, weak.i_zero))};
}

Verdict determinism() {
    std::string reference;
    bool same = true;
    int runs = 0;
    for (unsigned threads : {1u, 1u, 2u, 8u}) {
        ExperimentConfig cfg = reference_config();
        cfg.threads = threads;
        const FigureTables f = run_figures(cfg);
        const Table s = run_summary(cfg);
        const Metadata meta = job_metadata(cfg, "figures");
        std::string all;
        for (const Table *t : {&f.fig1, &f.fig2, &f.fig3, &f.fig4, &s}) all += to_csv(*t, meta);
        const std::vector<Table> tables{f.fig1, f.fig2, f.fig3, f.fig4};
        all += to_json(tables, meta);
        if (runs++ == 0) reference = all;
        else same = same && all == reference;
    }
    return {same, fmt("%d runs (threads 1, 1, 2, 8) of figures + summary, CSV and JSON text byte-identical", runs)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<Verdict()>>> criteria{
        {"headline scalars", headline},
        {"post-conjugate scalars", post_conjugate},
        {"perfect reversal", perfect_reversal},
        {"factor of four", factor_of_four},
        {"ensemble moments", appendix_moments},
        {"structural identities", structural},
        {"regime condition", regime},
        {"oracle equivalence", oracle_equivalence},
        {"perturbative agreement", perturbative},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t n = 0; n < criteria.size(); ++n) {
        Verdict v;
        try {
            v = criteria[n].second();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("%s  criterion %2zu  %-24s %s\n", v.pass ? "PASS" : "FAIL", n + 1, criteria[n].first,
                    v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed;
}
