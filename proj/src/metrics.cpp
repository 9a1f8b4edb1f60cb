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

#include "kraus/metrics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "kraus/errors.hpp"
#include "kraus/parallel.hpp"
#include "kraus/tolerances.hpp"

namespace kraus {

namespace {

void check_weights(std::span<const double> w) {
    if (w.empty()) throw KrausError(ErrorCode::EmptyOrNegativeWeights, "no weights");
    bool any_positive = false;
    for (double x : w) {
        if (!(x >= -tol::probability_floor))
            throw KrausError(ErrorCode::EmptyOrNegativeWeights, "negative weight " + std::to_string(x));
        any_positive = any_positive || x > 0.0;
    }
    if (!any_positive) throw KrausError(ErrorCode::EmptyOrNegativeWeights, "all weights are zero");
}

void require_dims(const KrausSet &k, const PureStateEnsemble &e) {
    if (k.dim() != e.dim())
        throw KrausError(ErrorCode::DimensionMismatch, "Kraus set dim " + std::to_string(k.dim()) +
                                                           " vs ensemble dim " + std::to_string(e.dim()));
}

OutcomeStatistics summarize(Label label, const BranchSamples &s, double conditioning) {
    const double joint = blocked_sum(s.likelihood) / static_cast<double>(s.likelihood.size());
    OutcomeStatistics out{label, joint / conditioning, joint, std::nullopt, std::nullopt};
    if (joint > tol::probability_floor) {
        out.info_gain = likelihood_info_gain(s.likelihood);
        out.fidelity = std::min(branch_fidelity(s), 1.0);
    }
    return out;
}

void accumulate_means(StageStatistics &st) {
    st.mean_info = 0.0;
    st.mean_fidelity = 0.0;
    for (const OutcomeStatistics &o : st.outcomes) {
        if (o.info_gain) st.mean_info += o.probability * *o.info_gain;
        if (o.fidelity) st.mean_fidelity += o.probability * *o.fidelity;
    }
}

}  // namespace

double likelihood_info_gain(std::span<const double> weights) {
    check_weights(weights);
    const double n = static_cast<double>(weights.size());
    const double mean = blocked_sum(weights) / n;
    // mean(u log2 u) with u = w / mean(w); same value, no large cancellation
    std::vector<double> terms(weights.size());
    for (std::size_t a = 0; a < weights.size(); ++a) {
        const double u = std::max(weights[a], 0.0) / mean;
        terms[a] = u > 0.0 ? u * std::log2(u) : 0.0;
    }
    const double gain = blocked_sum(terms) / n;
    assert(gain >= tol::info_gain_floor);
    return std::max(gain, 0.0);
}

std::vector<double> posterior(std::span<const double> weights) {
    check_weights(weights);
    const double total = blocked_sum(weights);
    std::vector<double> out(weights.size());
    for (std::size_t a = 0; a < weights.size(); ++a) out[a] = std::max(weights[a], 0.0) / total;
    return out;
}

const OutcomeStatistics &StageStatistics::at(Label label) const {
    for (const OutcomeStatistics &o : outcomes)
        if (o.label == label) return o;
    throw KrausError(ErrorCode::UnknownLabel, label.str());
}

BranchSamples branch_samples(const ComplexMatrix &composite, const ComplexMatrix &effect,
                             const PureStateEnsemble &e, unsigned threads) {
    BranchSamples s{std::vector<double>(e.size()), std::vector<double>(e.size())};
    parallel_blocks(e.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
        for (std::size_t a = begin; a < end; ++a) {
            const auto psi = e.state(a);
            s.likelihood[a] = std::max(expectation(effect, psi).real(), 0.0);
            s.amplitude[a] = std::abs(expectation(composite, psi));
        }
    });
    return s;
}

double branch_fidelity(const BranchSamples &s) {
    std::vector<double> num(s.likelihood.size());
    for (std::size_t a = 0; a < num.size(); ++a) num[a] = std::sqrt(s.likelihood[a]) * s.amplitude[a];
    return blocked_sum(num) / blocked_sum(s.likelihood);
}

StageStatistics stage_statistics(const KrausSet &k, const PureStateEnsemble &e, unsigned threads) {
    require_dims(k, e);
    StageStatistics st;
    st.outcomes.reserve(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) {
        const BranchSamples s = branch_samples(k.operators()[i], k.effects()[i], e, threads);
        st.outcomes.push_back(summarize(k.labels()[i], s, 1.0));
    }
    accumulate_means(st);
    return st;
}

StageStatistics two_stage_statistics(const KrausSet &k1, Label m, const KrausSet &k2,
                                     const PureStateEnsemble &e, unsigned threads) {
    require_dims(k1, e);
    require_dims(k2, e);
    const ComplexMatrix &first = k1.op(m);
    const BranchSamples s1 = branch_samples(first, k1.effect(m), e, threads);
    const double p_first = blocked_sum(s1.likelihood) / static_cast<double>(e.size());
    if (!(p_first > tol::probability_floor))
        throw KrausError(ErrorCode::ZeroProbabilityBranch, "first-stage outcome " + m.str());

    StageStatistics st;
    st.conditioning_probability = p_first;
    st.outcomes.reserve(k2.size());
    for (std::size_t i = 0; i < k2.size(); ++i) {
        const ComplexMatrix composite = k2.operators()[i] * first;
        ComplexMatrix effect = first.adjoint() * k2.effects()[i] * first;
        effect = 0.5 * (effect + effect.adjoint());
        const BranchSamples s = branch_samples(composite, effect, e, threads);
        st.outcomes.push_back(summarize(k2.labels()[i], s, p_first));
    }
    accumulate_means(st);
    return st;
}

double optimal_fidelity(const KrausSet &k, const PureStateEnsemble &e, Label m, unsigned threads) {
    require_dims(k, e);
    const ComplexMatrix &effect = k.effect(m);
    const ComplexMatrix positive = positive_sqrt(effect);
    // N plays the composite role: amplitude <N>, likelihood <N^2>
    return std::min(branch_fidelity(branch_samples(positive, effect, e, threads)), 1.0);
}

}  // namespace kraus
