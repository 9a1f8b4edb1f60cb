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

#include "kraus/runner.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "kraus/errors.hpp"
#include "kraus/parallel.hpp"
#include "kraus/tolerances.hpp"

namespace kraus {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view text, std::string_view what) {
    const std::string s(trim(text));
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(s, &used);
    } catch (const std::exception &) {
        used = std::string::npos;
    }
    if (s.empty() || used != s.size() || !std::isfinite(x))
        throw KrausError(ErrorCode::InvalidArgument, "cannot parse " + std::string(what) + " '" + s + "'");
    return x;
}

struct MeanSe {
    double mean;
    double se;
};

MeanSe mean_and_se(std::span<const double> v) {
    const double n = static_cast<double>(v.size());
    const double mean = blocked_sum(v) / n;
    std::vector<double> dev(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) dev[i] = (v[i] - mean) * (v[i] - mean);
    const double var = blocked_sum(dev) / (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

Cell optional_cell(const std::optional<double> &x) {
    if (x) return *x;
    return std::monostate{};
}

std::string inequality(double after, double before) {
    if (std::abs(after - before) <= 1e-12) return "tie";
    return after > before ? "pass" : "fail";
}

std::size_t outcome_index(const SpinProbeConfig &spin, Label m) {
    return static_cast<std::size_t>((m.twice() + spin.j.twice()) / 2);
}

}  // namespace

void ExperimentConfig::validate() const {
    spin.validate();
    if (spin.s.twice() < 1) throw KrausError(ErrorCode::InvalidArgument, "system spin must be >= 1/2");
    if (samples < kMinFigureSamples)
        throw KrausError(ErrorCode::InvalidArgument,
                         "samples must be >= " + std::to_string(kMinFigureSamples) + " for ensemble jobs");
}

double parse_angle(std::string_view text) {
    const std::string_view t = trim(text);
    const std::size_t at = t.find("pi");
    if (at == std::string_view::npos) return parse_number(t, "angle");
    std::string_view coef = trim(t.substr(0, at));
    if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
    double numerator = 1.0;
    if (coef == "-") numerator = -1.0;
    else if (coef == "+") numerator = 1.0;
    else if (!coef.empty()) numerator = parse_number(coef, "angle coefficient");
    std::string_view rest = trim(t.substr(at + 2));
    double denominator = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') throw KrausError(ErrorCode::InvalidArgument, "cannot parse angle '" + std::string(t) + "'");
        denominator = parse_number(rest.substr(1), "angle denominator");
        if (denominator == 0.0) throw KrausError(ErrorCode::InvalidArgument, "zero angle denominator");
    }
    return numerator * std::numbers::pi / denominator;
}

HalfInt parse_spin(std::string_view text) {
    const std::string_view t = trim(text);
    double twice = 0.0;
    if (const std::size_t slash = t.find('/'); slash != std::string_view::npos) {
        const double num = parse_number(t.substr(0, slash), "spin numerator");
        const double den = parse_number(t.substr(slash + 1), "spin denominator");
        if (den != 1.0 && den != 2.0)
            throw KrausError(ErrorCode::InvalidArgument, "spin must be an integer or half-integer");
        twice = 2.0 * num / den;
    } else {
        twice = 2.0 * parse_number(t, "spin");
    }
    if (std::abs(twice - std::round(twice)) > 1e-9 || twice < 0.0)
        throw KrausError(ErrorCode::InvalidArgument, "spin must be a nonnegative integer or half-integer");
    return HalfInt::from_twice(static_cast<int>(std::lround(twice)));
}

std::vector<std::string> split_list(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find(sep, start), text.size());
        const std::string_view item = trim(text.substr(start, end - start));
        if (!item.empty()) out.emplace_back(item);
        start = end + 1;
    }
    return out;
}

ProbeAnalysis analyze_probe(const SpinProbeConfig &spin, const PureStateEnsemble &e, unsigned threads) {
    const KrausSet forward = build_forward(spin);
    const KrausSet reflected = build_reflected(spin);
    ProbeAnalysis a;
    a.spin = spin;
    a.first = stage_statistics(forward, e, threads);
    a.F = a.first.mean_fidelity;
    a.I = a.first.mean_info;
    for (Label m : spin.outcomes()) {
        const OutcomeStatistics &o = a.first.at(m);
        if (!o.fidelity) {
            a.second.emplace_back();
            a.p_preferred.push_back(0.0);
            a.fidelity_opt.push_back(std::nan(""));
            a.preferred.push_back({std::nan(""), std::nan("")});
            continue;
        }
        StageStatistics st = two_stage_statistics(forward, m, reflected, e, threads);
        a.F_prime += o.probability * st.mean_fidelity;
        a.I_prime += o.probability * st.mean_info;
        a.p_preferred.push_back(st.at(m).probability);
        a.second.push_back(std::move(st));
        a.fidelity_opt.push_back(optimal_fidelity(forward, e, m, threads));
        a.preferred.push_back(conjugate_preferred_closed_form(forward, m, e, threads));
        a.preferred_info += o.probability * a.preferred.back().info_gain;
    }
    return a;
}

Metadata job_metadata(const ExperimentConfig &cfg, std::string_view job) {
    return {
        {"job", std::string(job)},
        {"version", std::string(kVersion)},
        {"s", cfg.spin.s.str()},
        {"j", cfg.spin.j.str()},
        {"g", format_double(cfg.spin.g)},
        {"theta", cfg.theta_text},
        {"theta_rad", format_double(cfg.spin.theta)},
        {"samples", std::to_string(cfg.samples)},
        {"seed", std::to_string(cfg.seed)},
    };
}

FigureTables run_figures(const ExperimentConfig &cfg) {
    cfg.validate();
    const SpinProbeConfig &spin = cfg.spin;
    const PureStateEnsemble e = sample_haar(spin.system_dim(), cfg.samples, cfg.seed, cfg.threads);
    const ProbeAnalysis a = analyze_probe(spin, e, cfg.threads);
    using P = PerturbativePrediction;

    FigureTables t;
    t.fig1 = Table{"fig1", {"m", "p_m", "p_mu0_given_m", "q_m_sq", "p_mu0_given_m_pert"}, {}};
    t.fig2 = Table{"fig2", {"m", "F_m", "F_prime_m", "F_opt_m", "F_m_pert", "F_prime_m_pert", "F_opt_m_pert"}, {}};
    t.fig3 = Table{"fig3", {"m", "I_m", "I_prime_m", "I_m_mu0", "I_m_pert", "I_prime_m_pert"}, {}};
    t.fig4 = Table{"fig4",
                   {"m", "mu", "F_m_mu", "I_m_mu", "F_m_mu_gt_F_m", "I_m_mu_gt_I_m", "p_mu_given_m", "branch",
                    "F_m_mu_pert", "I_m_mu_pert"},
                   {}};
    for (Label m : spin.outcomes()) {
        const std::size_t i = outcome_index(spin, m);
        const OutcomeStatistics &o = a.first.at(m);
        const double q = probe_q(spin.j, m);
        Cell predicted = std::monostate{};
        try {
            predicted = predicted_conditional_success(spin, m, e, cfg.threads);
        } catch (const KrausError &err) {
            if (err.code() != ErrorCode::ZeroModulusEntry) throw;
        }
        t.fig1.add_row({m.value(), o.probability, a.p_preferred[i], q * q, predicted});
        const bool defined = o.fidelity.has_value();
        t.fig2.add_row({m.value(), optional_cell(o.fidelity),
                        defined ? Cell(a.second[i].mean_fidelity) : Cell(std::monostate{}),
                        defined ? Cell(a.fidelity_opt[i]) : Cell(std::monostate{}), P::fidelity_first(spin, m),
                        P::fidelity_after(spin, m), P::fidelity_opt(spin, m)});
        t.fig3.add_row({m.value(), optional_cell(o.info_gain),
                        defined ? Cell(a.second[i].mean_info) : Cell(std::monostate{}),
                        defined ? Cell(a.preferred[i].info_gain) : Cell(std::monostate{}), P::info_first(spin, m),
                        P::info_after(spin, m)});
        for (Label mu : spin.outcomes()) {
            std::string branch = "other";
            if (mu == m) branch = "conjugate_preferred";
            else if (mu == -m) branch = "reversing_preferred";
            if (!defined) {
                t.fig4.add_row({m.value(), mu.value(), std::monostate{}, std::monostate{}, std::monostate{},
                                std::monostate{}, 0.0, branch, P::fidelity_pair(spin, m, mu),
                                P::info_pair(spin, m, mu)});
                continue;
            }
            const OutcomeStatistics &b = a.second[i].at(mu);
            Cell f_gt = std::monostate{}, i_gt = std::monostate{};
            if (b.fidelity) f_gt = *b.fidelity > *o.fidelity;
            if (b.info_gain) i_gt = *b.info_gain > *o.info_gain;
            t.fig4.add_row({m.value(), mu.value(), optional_cell(b.fidelity), optional_cell(b.info_gain), f_gt, i_gt,
                            b.probability, branch, P::fidelity_pair(spin, m, mu), P::info_pair(spin, m, mu)});
        }
    }
    return t;
}

Table run_summary(const ExperimentConfig &cfg) {
    cfg.validate();
    const SpinProbeConfig &spin = cfg.spin;
    const PureStateEnsemble e = sample_haar(spin.system_dim(), cfg.samples, cfg.seed, cfg.threads);
    const ProbeAnalysis a = analyze_probe(spin, e, cfg.threads);
    const RegimeReport regime = regime_diagnostics(spin, &e, cfg.threads);
    using P = PerturbativePrediction;

    std::string holding;
    for (const auto &row : regime.outcomes)
        if (row.condition_holds) holding += (holding.empty() ? "" : " ") + row.m.str();
    std::string a_sq_flagged;
    for (const auto &row : regime.outcomes)
        if (row.a_sq_warning) a_sq_flagged += (a_sq_flagged.empty() ? "" : " ") + row.m.str();

    Table t{"summary", {"metric", "value"}, {}};
    t.add_row({std::string("F"), a.F});
    t.add_row({std::string("I"), a.I});
    t.add_row({std::string("F_prime"), a.F_prime});
    t.add_row({std::string("I_prime"), a.I_prime});
    t.add_row({std::string("F_prime_gt_F"), inequality(a.F_prime, a.F)});
    t.add_row({std::string("I_prime_gt_I"), inequality(a.I_prime, a.I)});
    t.add_row({std::string("I_prime_over_I"), a.I > 0.0 ? Cell(a.I_prime / a.I) : Cell(std::monostate{})});
    t.add_row({std::string("preferred_info_over_I"),
               a.I > 0.0 ? Cell(a.preferred_info / a.I) : Cell(std::monostate{})});
    t.add_row({std::string("F_pert"), P::mean_fidelity(spin)});
    t.add_row({std::string("I_pert"), P::mean_info(spin)});
    t.add_row({std::string("F_prime_pert"), P::mean_fidelity_after(spin)});
    t.add_row({std::string("I_prime_pert"), P::mean_info_after(spin)});
    t.add_row({std::string("weakness"), regime.weakness});
    t.add_row({std::string("weakness_warning"), regime.weakness_warning});
    t.add_row({std::string("phase"), regime.phase});
    t.add_row({std::string("phase_over_pi"), regime.phase / std::numbers::pi});
    t.add_row({std::string("disturbance_condition_m"), holding});
    t.add_row({std::string("a_sq_gt_3_4_m"), a_sq_flagged});
    return t;
}

Table run_variances(const std::vector<HalfInt> &spins, std::size_t samples, std::uint64_t seed,
                    unsigned threads) {
    if (samples < kMinFigureSamples)
        throw KrausError(ErrorCode::InvalidArgument, "samples must be >= " + std::to_string(kMinFigureSamples));
    Table t{"variances", {"s", "quantity", "estimate", "std_error", "closed_form", "z_score"}, {}};
    for (HalfInt s : spins) {
        if (s.twice() < 1) throw KrausError(ErrorCode::InvalidArgument, "2s must be a positive integer");
        const std::size_t d = static_cast<std::size_t>(s.twice()) + 1;
        const PureStateEnsemble e = sample_haar(d, samples, seed, threads);
        const ComplexMatrix sz = spin_z(s);
        const ComplexMatrix sz2 = sz * sz;
        std::vector<double> mean_sz(samples), quantum_var(samples), top(samples), top2(samples), cross(samples);
        parallel_blocks(samples, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
            for (std::size_t a = begin; a < end; ++a) {
                const auto psi = e.state(a);
                const double x = expectation(sz, psi).real();
                mean_sz[a] = x;
                quantum_var[a] = expectation(sz2, psi).real() - x * x;
                const double ct = std::norm(psi[d - 1]);  // sigma = s
                const double cb = std::norm(psi[0]);      // sigma = -s
                top[a] = ct;
                top2[a] = ct * ct;
                cross[a] = ct * cb;
            }
        });
        const double x_mean = blocked_sum(mean_sz) / static_cast<double>(samples);
        std::vector<double> spread(samples);
        for (std::size_t a = 0; a < samples; ++a) spread[a] = (mean_sz[a] - x_mean) * (mean_sz[a] - x_mean);

        const SpinMoments exact = spin_moments_closed_form(s);
        auto row = [&](const char *name, MeanSe est, double target) {
            t.add_row({s.value(), std::string(name), est.mean, est.se, target, (est.mean - target) / est.se});
        };
        row("V_I", mean_and_se(spread), exact.V_I);
        row("V_F", mean_and_se(quantum_var), exact.V_F);
        row("C", mean_and_se(top), exact.C);
        row("D", mean_and_se(top2), exact.D);
        row("E", mean_and_se(cross), exact.E);
    }
    return t;
}

SweepAxis parse_axis(std::string_view text) {
    const std::string_view t = trim(text);
    if (t == "g") return SweepAxis::G;
    if (t == "j") return SweepAxis::J;
    if (t == "theta") return SweepAxis::Theta;
    throw KrausError(ErrorCode::InvalidArgument, "sweep axis must be g, j or theta");
}

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::G: return "g";
        case SweepAxis::J: return "j";
        case SweepAxis::Theta: return "theta";
    }
    return "?";
}

Table run_sweep(const ExperimentConfig &base, SweepAxis axis, const std::vector<double> &values) {
    base.validate();
    const PureStateEnsemble e = sample_haar(base.spin.system_dim(), base.samples, base.seed, base.threads);
    Table t{"sweep", {"axis", "value", "metric", "result"}, {}};
    for (double v : values) {
        if (!std::isfinite(v)) throw KrausError(ErrorCode::InvalidArgument, "non-finite sweep value");
        SpinProbeConfig spin = base.spin;
        switch (axis) {
            case SweepAxis::G: spin.g = v; break;
            case SweepAxis::Theta: spin.theta = v; break;
            case SweepAxis::J: {
                const double twice = 2.0 * v;
                if (twice < 0.0 || std::abs(twice - std::round(twice)) > 1e-9)
                    throw KrausError(ErrorCode::InvalidArgument, "j must be a nonnegative half-integer");
                spin.j = HalfInt::from_twice(static_cast<int>(std::lround(twice)));
                break;
            }
        }
        const ProbeAnalysis a = analyze_probe(spin, e, base.threads);
        const RegimeReport regime = regime_diagnostics(spin);
        const std::string ax(to_string(axis));
        t.add_row({ax, v, std::string("F"), a.F});
        t.add_row({ax, v, std::string("I"), a.I});
        t.add_row({ax, v, std::string("F_prime"), a.F_prime});
        t.add_row({ax, v, std::string("I_prime"), a.I_prime});
        t.add_row({ax, v, std::string("weakness"), regime.weakness});
        t.add_row({ax, v, std::string("phase"), regime.phase});
    }
    return t;
}

std::vector<std::filesystem::path> write_job(const std::filesystem::path &dir, std::string_view job,
                                             const std::vector<Table> &tables, const Metadata &meta,
                                             OutputFormat format) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::filesystem::path &path, const std::string &body) {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw KrausError(ErrorCode::InvalidArgument, "cannot write " + path.string());
        out << body;
        written.push_back(path);
    };
    if (format == OutputFormat::Json) {
        emit(dir / (std::string(job) + ".json"), to_json(tables, meta));
    } else {
        for (const Table &t : tables) emit(dir / (t.name + ".csv"), to_csv(t, meta));
    }
    return written;
}

}  // namespace kraus
