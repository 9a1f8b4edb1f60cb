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

#include "kraus/metrics.hpp"

namespace kraus {

enum class SecondStageKind { Reversing, Conjugate };

/// A second-stage measurement chosen after first outcome m, with its
/// preferred outcome (the one proportional to M_m^-1 or M_m^dagger).
struct SecondStageSpec {
    SecondStageKind kind;
    Label source_outcome;
    Complex scale;  // lambda_m or kappa_m
    Label preferred_label;
    KrausSet set;
    /// false when the preferred operator is only approximately proportional
    /// to the intended one (spin reversal for s > 1/2)
    bool exact = true;

    const ComplexMatrix &preferred() const { return set.op(preferred_label); }
};

/// Labels used by the two-outcome constructors below.
inline constexpr Label kPreferredLabel = Label::integer(0);
inline constexpr Label kComplementLabel = Label::integer(1);

/// {R_0 = lambda M^-1, R_1 = sqrt(I - R_0^dagger R_0)} with the maximal
/// admissible |lambda|^2 = lambda_min(M^dagger M). lambda = |lambda| e^{i phase}.
/// A vanishing complement yields a single-outcome set. Throws NonInvertibleOperator.
SecondStageSpec build_reversing(const ComplexMatrix &m_op, double phase = 0.0,
                                Label source = Label::integer(0));
SecondStageSpec build_reversing(const KrausSet &k, Label m, double phase = 0.0);

/// Minimal two-outcome Hermitian conjugate measurement
/// {C_0 = kappa M^dagger, C_1 = sqrt(I - |kappa|^2 N^2) U^dagger}.
/// kappa unset picks the bound 1/sqrt(lambda_max(N^2)). Throws KappaOutOfBound.
SecondStageSpec build_conjugate_minimal(const ComplexMatrix &m_op,
                                        std::optional<Complex> kappa = std::nullopt,
                                        Label source = Label::integer(0));
SecondStageSpec build_conjugate_minimal(const KrausSet &k, Label m,
                                        std::optional<Complex> kappa = std::nullopt);

/// Second-order series for the complement positive factor,
/// sqrt(1-a2) (I - a2/(1-a2) eps - a2/(2(1-a2)^2) eps^2), a2 = |kappa|^2 q^2.
/// Cross-check only; it is not an exact Kraus operator.
ComplexMatrix conjugate_complement_series(const ComplexMatrix &eps, double a2);

struct PreferredBranch {
    double fidelity;
    double info_gain;
};

/// F(m, mu0) and I(m, mu0) from <N^2> and <N^4> alone.
PreferredBranch conjugate_preferred_closed_form(const KrausSet &k, Label m, const PureStateEnsemble &e,
                                                unsigned threads = 1);

/// p(preferred | m) = mean <M^dagger C^dagger C M> / p(m).
double conditional_success_probability(const KrausSet &k, Label m, const PureStateEnsemble &e,
                                       const SecondStageSpec &spec, unsigned threads = 1);

}  // namespace kraus
