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

#include <optional>
#include <string>
#include <vector>

#include "kraus/reversal.hpp"

namespace kraus {

/// Spin-s system measured by a spin-j coherent-state probe (polar angle
/// theta, azimuth pi/2) through a J_z S_z coupling of effective strength g.
struct SpinProbeConfig {
    HalfInt s = HalfInt::from_twice(1);
    HalfInt j = HalfInt::integer(7);
    double g = 0.25;
    double theta = 0.0;

    std::size_t system_dim() const { return static_cast<std::size_t>(s.twice()) + 1; }
    std::size_t outcome_count() const { return static_cast<std::size_t>(j.twice()) + 1; }
    /// m = -j..j ascending
    std::vector<Label> outcomes() const;
    /// sigma = -s..s ascending (system basis order)
    std::vector<HalfInt> sigmas() const;
    /// Throws InvalidArgument for negative spins or non-finite g/theta.
    void validate() const;
};

/// (2j)! / ((j+m)! (j-m)!), exact for 2j <= 60 and via lgamma beyond.
double binomial_weight(HalfInt j, Label m);
/// q_m = 2^-j sqrt((2j)! / ((j+m)! (j-m)!))
double probe_q(HalfInt j, Label m);

/// Diagonal entry a_{m sigma}(theta) of T_m(theta). Throws LabelOutOfRange.
Complex coefficient(const SpinProbeConfig &cfg, Label m, HalfInt sigma);
Complex coefficient(const SpinProbeConfig &cfg, double theta, Label m, HalfInt sigma);

/// T_m(theta) on the S_z eigenbasis.
ComplexMatrix probe_operator(const SpinProbeConfig &cfg, double theta, Label m);

/// {T_m(theta)}, labels m = -j..j.
KrausSet build_forward(const SpinProbeConfig &cfg);
/// {T_mu(pi - theta)}, the m-independent second-stage set.
KrausSet build_reflected(const SpinProbeConfig &cfg);

/// Conjugate family: set {T_mu(pi-theta)}, preferred mu0 = m, scale (-1)^(j+m).
std::vector<SecondStageSpec> build_conjugate_probe(const SpinProbeConfig &cfg);
/// Reversing family: same set, preferred nu0 = -m. exact == (s == 1/2).
std::vector<SecondStageSpec> build_reversing_probe(const SpinProbeConfig &cfg);

struct WeakQuantities {
    Label m;
    double q;
    ComplexMatrix epsilon;  // N_m = q (I + epsilon), diagonal
    double gamma;           // -j pi / 2 - m theta
    std::vector<double> Gamma_diag;  // arg(a_{m sigma}) - gamma wrapped to (-pi, pi]
    double epsilon_max;     // max |epsilon entry|
};

/// Throws ZeroModulusEntry when some |a_{m sigma}| vanishes.
WeakQuantities weak_quantities(const SpinProbeConfig &cfg, Label m);

struct RegimeReport {
    double weakness;        // (2/3) g^2 s(s+1) j sin^2 theta, should be << 1
    bool weakness_warning;  // weakness > 0.1
    double phase;           // |2 g j cos theta|, compare with pi
    /// Per m with an ensemble: (1 - F(m)) / (1 - F_opt(m)), and whether it exceeds 4.
    struct PerOutcome {
        Label m;
        double q_sq;
        double a_sq;          // |kappa|^2 q_m^2 for the conjugate probe
        bool a_sq_warning;    // a_sq > 3/4
        double epsilon_max;
        std::optional<double> disturbance_ratio;
        bool condition_holds = false;
    };
    std::vector<PerOutcome> outcomes;
};

RegimeReport regime_diagnostics(const SpinProbeConfig &cfg, const PureStateEnsemble *e = nullptr,
                                unsigned threads = 1);

/// Leading-order predictions, information in bits.
struct PerturbativePrediction {
    static double fidelity_pair(const SpinProbeConfig &cfg, Label m, Label mu);
    static double info_pair(const SpinProbeConfig &cfg, Label m, Label mu);
    static double info_first(const SpinProbeConfig &cfg, Label m);
    static double fidelity_first(const SpinProbeConfig &cfg, Label m);
    static double fidelity_opt(const SpinProbeConfig &cfg, Label m);
    static double fidelity_after(const SpinProbeConfig &cfg, Label m);  // F'(m)
    static double info_after(const SpinProbeConfig &cfg, Label m);      // I'(m)
    static double mean_info(const SpinProbeConfig &cfg);                // I
    static double mean_fidelity(const SpinProbeConfig &cfg);            // F
    static double mean_info_after(const SpinProbeConfig &cfg);          // I'
    static double mean_fidelity_after(const SpinProbeConfig &cfg);      // F'
};

/// |kappa|^2 {p(m) + 4 q_m^2 [V_F(eps) + V_I(eps)]}, the weak-regime p(mu0|m).
double predicted_conditional_success(const SpinProbeConfig &cfg, Label m, const PureStateEnsemble &e,
                                     unsigned threads = 1);

}  // namespace kraus
