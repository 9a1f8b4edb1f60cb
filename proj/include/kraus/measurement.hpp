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

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "kraus/label.hpp"
#include "kraus/linalg.hpp"

namespace kraus {

/// Ordered set of measurement operators {M_m} with outcome labels.
/// Construction enforces sum_m M_m^dagger M_m = I within tol::completeness.
class KrausSet {
  public:
    /// Labels default to 0, 1, 2, ...; throws IncompleteKrausSet or InvalidArgument.
    explicit KrausSet(std::vector<ComplexMatrix> operators);
    KrausSet(std::vector<ComplexMatrix> operators, std::vector<Label> labels);

    std::size_t size() const { return operators_.size(); }
    std::size_t dim() const { return operators_.front().dim(); }
    const std::vector<ComplexMatrix> &operators() const { return operators_; }
    const std::vector<Label> &labels() const { return labels_; }
    /// POVM elements M^dagger M, cached at construction.
    const std::vector<ComplexMatrix> &effects() const { return effects_; }

    /// Index of a label; UnknownLabel when absent.
    std::size_t index_of(Label label) const;
    bool contains(Label label) const;
    const ComplexMatrix &op(Label label) const { return operators_[index_of(label)]; }
    const ComplexMatrix &effect(Label label) const { return effects_[index_of(label)]; }

  private:
    std::vector<ComplexMatrix> operators_;
    std::vector<Label> labels_;
    std::vector<ComplexMatrix> effects_;
};

/// max |sum M^dagger M - I|. Pure diagnostic; accepts any operator list.
double validate_completeness(std::span<const ComplexMatrix> operators);
double validate_completeness(const KrausSet &k);

struct OutcomeRecord {
    Label label;
    double probability;
    ComplexMatrix post_state;
};

/// Tr(rho M^dagger M), clipped to [0, 1].
double outcome_probability(const ComplexMatrix &rho, const KrausSet &k, Label m);
std::vector<double> outcome_probabilities(const ComplexMatrix &rho, const KrausSet &k);

/// M rho M^dagger / p; ZeroProbabilityOutcome when p <= tol::probability_floor.
ComplexMatrix post_state(const ComplexMatrix &rho, const KrausSet &k, Label m);
OutcomeRecord measure(const ComplexMatrix &rho, const KrausSet &k, Label m);

/// {N_m = sqrt(M_m^dagger M_m)}: same statistics, minimal disturbance.
KrausSet optimal_part(const KrausSet &k);

/// Deterministic generator state for outcome sampling. Passed in and returned
/// by value; there is no global RNG.
struct RngState {
    std::mt19937_64 engine;
    static RngState seeded(std::uint64_t seed) { return RngState{std::mt19937_64(seed)}; }
};

struct SampledOutcome {
    Label label;
    RngState rng;
};

SampledOutcome sample_outcome(const ComplexMatrix &rho, const KrausSet &k, RngState rng);

}  // namespace kraus
