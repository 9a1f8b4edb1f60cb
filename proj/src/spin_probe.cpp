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

#include "kraus/spin_probe.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "kraus/errors.hpp"
#include "kraus/parallel.hpp"
#include "kraus/tolerances.hpp"

namespace kraus {

namespace {

constexpr double kPi = std::numbers::pi;

void check_outcome(HalfInt j, Label m) {
    if (m.twice() < -j.twice() || m.twice() > j.twice() || (m.twice() - j.twice()) % 2 != 0)
        throw KrausError(ErrorCode::LabelOutOfRange, "m = " + m.str() + " for j = " + j.str());
}

void check_sigma(HalfInt s, HalfInt sigma) {
    if (sigma.twice() < -s.twice() || sigma.twice() > s.twice() || (sigma.twice() - s.twice()) % 2 != 0)
        throw KrausError(ErrorCode::LabelOutOfRange, "sigma = " + sigma.str() + " for s = " + s.str());
}

// z^n through modulus and argument; stays accurate for large n
Complex integer_power(Complex z, int n) {
    if (n == 0) return 1.0;
    return std::polar(std::pow(std::abs(z), n), n * std::arg(z));
}

double wrap_phase(double x) {
    double y = std::remainder(x, 2.0 * kPi);  // [-pi, pi]
    if (y <= -kPi) y += 2.0 * kPi;
    return y;
}

double sin2(double theta) { return std::sin(theta) * std::sin(theta); }

// g^2 s sin^2(theta); common factor of the leading-order formulas
double base(const SpinProbeConfig &cfg) { return cfg.g * cfg.g * cfg.s.value() * sin2(cfg.theta); }

}  // namespace

std::vector<Label> SpinProbeConfig::outcomes() const {
    std::vector<Label> out;
    for (int t = -j.twice(); t <= j.twice(); t += 2) out.push_back(Label::from_twice(t));
    return out;
}

std::vector<HalfInt> SpinProbeConfig::sigmas() const {
    std::vector<HalfInt> out;
    for (int t = -s.twice(); t <= s.twice(); t += 2) out.push_back(HalfInt::from_twice(t));
    return out;
}

void SpinProbeConfig::validate() const {
    if (s.twice() < 0 || j.twice() < 0) throw KrausError(ErrorCode::InvalidArgument, "spins must be >= 0");
    if (!std::isfinite(g) || !std::isfinite(theta))
        throw KrausError(ErrorCode::InvalidArgument, "g and theta must be finite");
}

double binomial_weight(HalfInt j, Label m) {
    check_outcome(j, m);
    const int n = j.twice();
    const int k = (j.twice() + m.twice()) / 2;
    if (n <= 60) {
        const int kk = std::min(k, n - k);
        std::uint64_t c = 1;
        for (int i = 1; i <= kk; ++i) c = c * static_cast<std::uint64_t>(n - kk + i) / static_cast<std::uint64_t>(i);
        return static_cast<double>(c);
    }
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

double probe_q(HalfInt j, Label m) {
    check_outcome(j, m);
    const int n = j.twice();
    const int k = (j.twice() + m.twice()) / 2;
    if (n <= 60) return std::sqrt(binomial_weight(j, m)) * std::exp2(-j.value());
    const double log_c = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    return std::exp(0.5 * log_c - j.value() * std::numbers::ln2);
}

Complex coefficient(const SpinProbeConfig &cfg, Label m, HalfInt sigma) {
    return coefficient(cfg, cfg.theta, m, sigma);
}

Complex coefficient(const SpinProbeConfig &cfg, double theta, Label m, HalfInt sigma) {
    check_outcome(cfg.j, m);
    check_sigma(cfg.s, sigma);
    const double gs = cfg.g * sigma.value();
    const Complex rot_minus = std::polar(1.0, -gs) * std::cos(0.5 * theta);
    const Complex rot_plus = Complex(0.0, 1.0) * std::polar(1.0, gs) * std::sin(0.5 * theta);
    const int up = (cfg.j.twice() - m.twice()) / 2;    // j - m
    const int down = (cfg.j.twice() + m.twice()) / 2;  // j + m
    return std::polar(probe_q(cfg.j, m), -cfg.j.value() * kPi / 2.0) *
           integer_power(rot_minus + rot_plus, up) * integer_power(rot_minus - rot_plus, down);
}

ComplexMatrix probe_operator(const SpinProbeConfig &cfg, double theta, Label m) {
    const std::vector<HalfInt> sig = cfg.sigmas();
    std::vector<Complex> diag;
    diag.reserve(sig.size());
    for (HalfInt sigma : sig) diag.push_back(coefficient(cfg, theta, m, sigma));
    return ComplexMatrix::diagonal(std::span<const Complex>(diag));
}

KrausSet build_forward(const SpinProbeConfig &cfg) {
    cfg.validate();
    std::vector<ComplexMatrix> ops;
    for (Label m : cfg.outcomes()) ops.push_back(probe_operator(cfg, cfg.theta, m));
    return KrausSet(std::move(ops), cfg.outcomes());
}

KrausSet build_reflected(const SpinProbeConfig &cfg) {
    cfg.validate();
    std::vector<ComplexMatrix> ops;
    for (Label mu : cfg.outcomes()) ops.push_back(probe_operator(cfg, kPi - cfg.theta, mu));
    return KrausSet(std::move(ops), cfg.outcomes());
}

std::vector<SecondStageSpec> build_conjugate_probe(const SpinProbeConfig &cfg) {
    const KrausSet reflected = build_reflected(cfg);
    std::vector<SecondStageSpec> family;
    for (Label m : cfg.outcomes()) {
        const int parity = ((cfg.j.twice() + m.twice()) / 2) % 2;
        const Complex sign = parity == 0 ? 1.0 : -1.0;
        family.push_back(SecondStageSpec{SecondStageKind::Conjugate, m, sign, m, reflected});
    }
    return family;
}

std::vector<SecondStageSpec> build_reversing_probe(const SpinProbeConfig &cfg) {
    const KrausSet reflected = build_reflected(cfg);
    const bool exact = cfg.s.twice() == 1;
    std::vector<SecondStageSpec> family;
    for (Label m : cfg.outcomes()) {
        // T_{-m}(pi - theta) T_m(theta) = lambda I for s = 1/2
        const Complex lambda = reflected.op(-m)(0, 0) * probe_operator(cfg, cfg.theta, m)(0, 0);
        family.push_back(SecondStageSpec{SecondStageKind::Reversing, m, lambda, -m, reflected, exact});
    }
    return family;
}

WeakQuantities weak_quantities(const SpinProbeConfig &cfg, Label m) {
    const std::vector<HalfInt> sig = cfg.sigmas();
    WeakQuantities w{m, probe_q(cfg.j, m), ComplexMatrix(sig.size()),
                     -cfg.j.value() * kPi / 2.0 - m.value() * cfg.theta, {}, 0.0};
    w.Gamma_diag.reserve(sig.size());
    for (std::size_t k = 0; k < sig.size(); ++k) {
        const Complex a = coefficient(cfg, m, sig[k]);
        const double r = std::abs(a);
        if (!(r > tol::zero_modulus * w.q)) throw KrausError(ErrorCode::ZeroModulusEntry, "m = " + m.str() + ", sigma = " + sig[k].str());
        w.epsilon(k, k) = r / w.q - 1.0;
        w.epsilon_max = std::max(w.epsilon_max, std::abs(r / w.q - 1.0));
        w.Gamma_diag.push_back(wrap_phase(std::arg(a) - w.gamma));
    }
    return w;
}

RegimeReport regime_diagnostics(const SpinProbeConfig &cfg, const PureStateEnsemble *e, unsigned threads) {
    const double s = cfg.s.value();
    const double j = cfg.j.value();
    RegimeReport r;
    r.weakness = (2.0 / 3.0) * cfg.g * cfg.g * s * (s + 1) * j * sin2(cfg.theta);
    r.weakness_warning = r.weakness > 0.1;
    r.phase = std::abs(2.0 * cfg.g * j * std::cos(cfg.theta));

    std::optional<KrausSet> forward;
    std::optional<StageStatistics> stats;
    if (e != nullptr) {
        forward = build_forward(cfg);
        stats = stage_statistics(*forward, *e, threads);
    }
    for (Label m : cfg.outcomes()) {
        RegimeReport::PerOutcome row{};
        row.m = m;
        const double q = probe_q(cfg.j, m);
        row.q_sq = q * q;
        row.a_sq = row.q_sq;  // |kappa| = 1 for the reflected probe
        row.a_sq_warning = row.a_sq > 0.75;
        // eps_m is taken from |a| directly so zero-modulus entries do not throw here
        for (HalfInt sigma : cfg.sigmas())
            row.epsilon_max = std::max(row.epsilon_max, std::abs(std::abs(coefficient(cfg, m, sigma)) / q - 1.0));
        if (stats) {
            const auto &o = stats->at(m);
            if (o.fidelity) {
                const double loss = 1.0 - *o.fidelity;
                const double loss_opt = 1.0 - optimal_fidelity(*forward, *e, m, threads);
                row.disturbance_ratio = loss_opt > 0.0 ? loss / loss_opt
                                                       : (loss > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
                row.condition_holds = *row.disturbance_ratio > 4.0;
            }
        }
        r.outcomes.push_back(row);
    }
    return r;
}

double PerturbativePrediction::fidelity_pair(const SpinProbeConfig &cfg, Label m, Label mu) {
    const double k = (m + mu).value();
    return 1.0 - base(cfg) * (2 * cfg.s.value() + 1) * k * k / 3.0;
}

double PerturbativePrediction::info_pair(const SpinProbeConfig &cfg, Label m, Label mu) {
    const double k = (m + mu).value();
    return (4.0 / 3.0) * base(cfg) * k * k / std::numbers::ln2;
}

double PerturbativePrediction::info_first(const SpinProbeConfig &cfg, Label m) {
    return (4.0 / 3.0) * base(cfg) * m.value() * m.value() / std::numbers::ln2;
}

double PerturbativePrediction::fidelity_first(const SpinProbeConfig &cfg, Label m) {
    const double s = cfg.s.value();
    const double j = cfg.j.value();
    const double c = std::cos(cfg.theta);
    return 1.0 - cfg.g * cfg.g * s * (2 * s + 1) * (j * j * c * c + m.value() * m.value() * sin2(cfg.theta)) / 3.0;
}

double PerturbativePrediction::fidelity_opt(const SpinProbeConfig &cfg, Label m) {
    return 1.0 - base(cfg) * (2 * cfg.s.value() + 1) * m.value() * m.value() / 3.0;
}

double PerturbativePrediction::fidelity_after(const SpinProbeConfig &cfg, Label m) {
    const double x = m.value() * m.value() + cfg.j.value() / 2.0;
    return 1.0 - base(cfg) * (2 * cfg.s.value() + 1) * x / 3.0;
}

double PerturbativePrediction::info_after(const SpinProbeConfig &cfg, Label m) {
    const double x = m.value() * m.value() + cfg.j.value() / 2.0;
    return (4.0 / 3.0) * base(cfg) * x / std::numbers::ln2;
}

double PerturbativePrediction::mean_info(const SpinProbeConfig &cfg) {
    return (2.0 / 3.0) * base(cfg) * cfg.j.value() / std::numbers::ln2;
}

double PerturbativePrediction::mean_fidelity(const SpinProbeConfig &cfg) {
    const double s = cfg.s.value();
    const double j = cfg.j.value();
    const double c = std::cos(cfg.theta);
    return 1.0 - cfg.g * cfg.g * s * (2 * s + 1) * (j * j * c * c + 0.5 * j * sin2(cfg.theta)) / 3.0;
}

double PerturbativePrediction::mean_info_after(const SpinProbeConfig &cfg) {
    return (4.0 / 3.0) * base(cfg) * cfg.j.value() / std::numbers::ln2;
}

double PerturbativePrediction::mean_fidelity_after(const SpinProbeConfig &cfg) {
    return 1.0 - base(cfg) * (2 * cfg.s.value() + 1) * cfg.j.value() / 3.0;
}

double predicted_conditional_success(const SpinProbeConfig &cfg, Label m, const PureStateEnsemble &e,
                                     unsigned threads) {
    const WeakQuantities w = weak_quantities(cfg, m);
    const ComplexMatrix n = w.q * (ComplexMatrix::identity(cfg.system_dim()) + w.epsilon);
    const ComplexMatrix n2 = n * n;
    const double p_m = parallel_sum(e.size(), threads,
                                    [&](std::size_t a) { return expectation(n2, e.state(a)).real(); }) /
                       static_cast<double>(e.size());
    const double kappa2 = 1.0;
    return kappa2 * (p_m + 4.0 * w.q * w.q * (variance_VF(e, w.epsilon, threads) + variance_VI(e, w.epsilon, threads)));
}

}  // namespace kraus
