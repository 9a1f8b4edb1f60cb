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

#include "kraus/measurement.hpp"

#include <algorithm>
#include <set>

#include "kraus/errors.hpp"
#include "kraus/tolerances.hpp"

namespace kraus {

namespace {

std::vector<Label> default_labels(std::size_t n) {
    std::vector<Label> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(Label::integer(static_cast<int>(i)));
    return labels;
}

}  // namespace

KrausSet::KrausSet(std::vector<ComplexMatrix> operators)
    : KrausSet(std::move(operators), {}) {}

KrausSet::KrausSet(std::vector<ComplexMatrix> operators, std::vector<Label> labels)
    : operators_(std::move(operators)), labels_(std::move(labels)) {
    if (operators_.empty()) throw KrausError(ErrorCode::InvalidArgument, "empty Kraus set");
    if (labels_.empty()) labels_ = default_labels(operators_.size());
    if (labels_.size() != operators_.size())
        throw KrausError(ErrorCode::InvalidArgument, "label count does not match operator count");
    if (std::set<Label>(labels_.begin(), labels_.end()).size() != labels_.size())
        throw KrausError(ErrorCode::InvalidArgument, "duplicate outcome labels");
    for (const ComplexMatrix &m : operators_)
        if (m.dim() != operators_.front().dim())
            throw KrausError(ErrorCode::DimensionMismatch, "Kraus operators differ in dimension");
    effects_.reserve(operators_.size());
    for (const ComplexMatrix &m : operators_) {
        ComplexMatrix e = m.adjoint() * m;
        effects_.push_back(0.5 * (e + e.adjoint()));
    }
    const double residual = validate_completeness(*this);
    if (!(residual <= tol::completeness))
        throw KrausError(ErrorCode::IncompleteKrausSet,
                         "completeness residual " + std::to_string(residual));
}

std::size_t KrausSet::index_of(Label label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw KrausError(ErrorCode::UnknownLabel, label.str());
    return static_cast<std::size_t>(it - labels_.begin());
}

bool KrausSet::contains(Label label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

double validate_completeness(std::span<const ComplexMatrix> operators) {
    if (operators.empty()) return 1.0;
    ComplexMatrix sum(operators.front().dim());
    for (const ComplexMatrix &m : operators) sum += m.adjoint() * m;
    return max_abs_diff(sum, ComplexMatrix::identity(sum.dim()));
}

double validate_completeness(const KrausSet &k) {
    ComplexMatrix sum(k.dim());
    for (const ComplexMatrix &e : k.effects()) sum += e;
    return max_abs_diff(sum, ComplexMatrix::identity(sum.dim()));
}

double outcome_probability(const ComplexMatrix &rho, const KrausSet &k, Label m) {
    const ComplexMatrix &e = k.effect(m);
    if (rho.dim() != e.dim()) throw KrausError(ErrorCode::DimensionMismatch, "state vs Kraus set");
    const double p = (rho * e).trace().real();
    return std::clamp(p, 0.0, 1.0);
}

std::vector<double> outcome_probabilities(const ComplexMatrix &rho, const KrausSet &k) {
    std::vector<double> out;
    out.reserve(k.size());
    for (Label m : k.labels()) out.push_back(outcome_probability(rho, k, m));
    return out;
}

ComplexMatrix post_state(const ComplexMatrix &rho, const KrausSet &k, Label m) {
    const double p = outcome_probability(rho, k, m);
    if (!(p > tol::probability_floor))
        throw KrausError(ErrorCode::ZeroProbabilityOutcome, "outcome " + m.str());
    const ComplexMatrix &op = k.op(m);
    ComplexMatrix out = op * rho * op.adjoint();
    out *= 1.0 / p;
    return 0.5 * (out + out.adjoint());
}

OutcomeRecord measure(const ComplexMatrix &rho, const KrausSet &k, Label m) {
    return {m, outcome_probability(rho, k, m), post_state(rho, k, m)};
}

KrausSet optimal_part(const KrausSet &k) {
    std::vector<ComplexMatrix> positive;
    positive.reserve(k.size());
    for (const ComplexMatrix &e : k.effects()) positive.push_back(positive_sqrt(e));
    return KrausSet(std::move(positive), k.labels());
}

SampledOutcome sample_outcome(const ComplexMatrix &rho, const KrausSet &k, RngState rng) {
    const std::vector<double> p = outcome_probabilities(rho, k);
    // inverse CDF on a [0, total) uniform; fixed iteration order keeps it reproducible
    double total = 0.0;
    for (double v : p) total += v;
    std::uniform_real_distribution<double> uniform(0.0, total);
    const double u = uniform(rng.engine);
    double cdf = 0.0;
    std::size_t pick = p.size() - 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        cdf += p[i];
        if (u < cdf && p[i] > 0.0) {
            pick = i;
            break;
        }
    }
    while (p[pick] == 0.0 && pick > 0) --pick;
    return {k.labels()[pick], std::move(rng)};
}

}  // namespace kraus
