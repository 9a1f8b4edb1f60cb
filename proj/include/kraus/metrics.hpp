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
#include <span>
#include <vector>

#include "kraus/ensemble.hpp"
#include "kraus/measurement.hpp"

namespace kraus {

/// Information gain in bits from per-state likelihoods w(a) under a uniform
/// prior: [mean(w log2 w) - mean(w) log2 mean(w)] / mean(w), 0 log 0 = 0.
/// Serves one-stage, two-stage and closed-form (w = <N^4>) gains alike.
/// Throws EmptyOrNegativeWeights.
double likelihood_info_gain(std::span<const double> weights);

/// Bayes posterior p(a|.) = w(a) / sum w.
std::vector<double> posterior(std::span<const double> weights);

struct OutcomeStatistics {
    Label label;
    double probability;        // p(m), or p(mu|m) for a second stage
    double joint_probability;  // p(m), or p(m, mu)
    // unset when the outcome is impossible (probability below the floor)
    std::optional<double> info_gain;
    std::optional<double> fidelity;
};

struct StageStatistics {
    /// 1 for a first stage; p(m) of the conditioning outcome for a second stage.
    double conditioning_probability = 1.0;
    std::vector<OutcomeStatistics> outcomes;
    double mean_info = 0.0;      // I, or I'(m) = sum_mu p(mu|m) I(m, mu)
    double mean_fidelity = 0.0;  // F, or F'(m)

    const OutcomeStatistics &at(Label label) const;
};

/// Per-state likelihood <psi|E|psi> and amplitude |<psi|A|psi>| for one branch,
/// where A is the composite operator and E = A^dagger A.
struct BranchSamples {
    std::vector<double> likelihood;
    std::vector<double> amplitude;
};

BranchSamples branch_samples(const ComplexMatrix &composite, const ComplexMatrix &effect,
                             const PureStateEnsemble &e, unsigned threads = 1);

/// sum_a sqrt(w) |<A>| / sum_a w, i.e. sum_a p(a|branch) F(branch, a).
double branch_fidelity(const BranchSamples &s);

StageStatistics stage_statistics(const KrausSet &k, const PureStateEnsemble &e, unsigned threads = 1);

/// Second stage K2 applied after outcome m of K1; statistics over the
/// second outcome mu. Throws ZeroProbabilityBranch if p(m) is below the floor.
StageStatistics two_stage_statistics(const KrausSet &k1, Label m, const KrausSet &k2,
                                     const PureStateEnsemble &e, unsigned threads = 1);

/// Fidelity the positive part N_m alone would give:
/// mean[sqrt(<N^2>) <N>] / mean <N^2>.
double optimal_fidelity(const KrausSet &k, const PureStateEnsemble &e, Label m, unsigned threads = 1);

}  // namespace kraus
