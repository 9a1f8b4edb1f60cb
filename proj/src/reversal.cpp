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

#include "kraus/reversal.hpp"

#include <cmath>

#include "kraus/errors.hpp"
#include "kraus/parallel.hpp"
#include "kraus/tolerances.hpp"

namespace kraus {

namespace {

// {preferred} alone, or {preferred, complement} when the complement is nonzero
KrausSet two_outcome_set(ComplexMatrix preferred, const ComplexMatrix &complement_square,
                         const std::function<ComplexMatrix(const ComplexMatrix &)> &complement_from_root) {
    const double largest = extreme_eigs(complement_square).second;
    if (largest < tol::degenerate_complement)
        return KrausSet({std::move(preferred)}, {kPreferredLabel});
    ComplexMatrix complement = complement_from_root(positive_sqrt(complement_square));
    return KrausSet({std::move(preferred), std::move(complement)}, {kPreferredLabel, kComplementLabel});
}

}  // namespace

SecondStageSpec build_reversing(const ComplexMatrix &m_op, double phase, Label source) {
    const ComplexMatrix inv = inverse(m_op);
    const ComplexMatrix povm = m_op.adjoint() * m_op;
    const double lambda2 = std::max(extreme_eigs(0.5 * (povm + povm.adjoint())).first, 0.0);
    const Complex lambda = std::polar(std::sqrt(lambda2), phase);
    ComplexMatrix preferred = lambda * inv;
    ComplexMatrix rest = ComplexMatrix::identity(m_op.dim()) - preferred.adjoint() * preferred;
    rest = 0.5 * (rest + rest.adjoint());
    KrausSet set = two_outcome_set(std::move(preferred), rest, [](const ComplexMatrix &root) { return root; });
    return SecondStageSpec{SecondStageKind::Reversing, source, lambda, kPreferredLabel, std::move(set)};
}

SecondStageSpec build_reversing(const KrausSet &k, Label m, double phase) {
    return build_reversing(k.op(m), phase, m);
}

SecondStageSpec build_conjugate_minimal(const ComplexMatrix &m_op, std::optional<Complex> kappa,
                                        Label source) {
    const PolarParts polar = polar_decompose(m_op);
    const ComplexMatrix n2 = polar.positive * polar.positive;
    const double largest = extreme_eigs(n2).second;
    if (!(largest > 0.0)) throw KrausError(ErrorCode::KappaOutOfBound, "measurement operator vanishes");
    const double bound = 1.0 / largest;
    const Complex scale = kappa.value_or(Complex(std::sqrt(bound), 0.0));
    if (std::norm(scale) > bound * (1.0 + tol::kappa_slack))
        throw KrausError(ErrorCode::KappaOutOfBound,
                         "|kappa|^2 = " + std::to_string(std::norm(scale)) + " > " + std::to_string(bound));
    ComplexMatrix preferred = scale * m_op.adjoint();
    ComplexMatrix rest = ComplexMatrix::identity(m_op.dim()) - std::norm(scale) * n2;
    rest = 0.5 * (rest + rest.adjoint());
    const ComplexMatrix u_dag = polar.unitary.adjoint();
    KrausSet set = two_outcome_set(std::move(preferred), rest,
                                   [&](const ComplexMatrix &root) { return root * u_dag; });
    return SecondStageSpec{SecondStageKind::Conjugate, source, scale, kPreferredLabel, std::move(set)};
}

SecondStageSpec build_conjugate_minimal(const KrausSet &k, Label m, std::optional<Complex> kappa) {
    return build_conjugate_minimal(k.op(m), kappa, m);
}

ComplexMatrix conjugate_complement_series(const ComplexMatrix &eps, double a2) {
    const double r = a2 / (1.0 - a2);
    const ComplexMatrix id = ComplexMatrix::identity(eps.dim());
    ComplexMatrix series = id - r * eps - (a2 / (2.0 * (1.0 - a2) * (1.0 - a2))) * (eps * eps);
    return std::sqrt(1.0 - a2) * series;
}

PreferredBranch conjugate_preferred_closed_form(const KrausSet &k, Label m, const PureStateEnsemble &e,
                                                unsigned threads) {
    if (k.dim() != e.dim()) throw KrausError(ErrorCode::DimensionMismatch, "Kraus set vs ensemble");
    const ComplexMatrix &n2 = k.effect(m);
    ComplexMatrix n4 = n2 * n2;
    n4 = 0.5 * (n4 + n4.adjoint());
    // C M is proportional to N^2: amplitude <N^2>, likelihood <N^4>
    const BranchSamples s = branch_samples(n2, n4, e, threads);
    return {std::min(branch_fidelity(s), 1.0), likelihood_info_gain(s.likelihood)};
}

double conditional_success_probability(const KrausSet &k, Label m, const PureStateEnsemble &e,
                                       const SecondStageSpec &spec, unsigned threads) {
    if (k.dim() != e.dim()) throw KrausError(ErrorCode::DimensionMismatch, "Kraus set vs ensemble");
    const ComplexMatrix &first = k.op(m);
    const ComplexMatrix &second = spec.preferred();
    const ComplexMatrix effect = first.adjoint() * (second.adjoint() * second) * first;
    const ComplexMatrix &first_effect = k.effect(m);
    const double joint = parallel_sum(e.size(), threads, [&](std::size_t a) {
        return expectation(effect, e.state(a)).real();
    });
    const double single = parallel_sum(e.size(), threads, [&](std::size_t a) {
        return expectation(first_effect, e.state(a)).real();
    });
    if (!(single > tol::probability_floor * static_cast<double>(e.size())))
        throw KrausError(ErrorCode::ZeroProbabilityBranch, "first-stage outcome " + m.str());
    return joint / single;
}

}  // namespace kraus
