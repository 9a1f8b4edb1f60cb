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
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "kraus/label.hpp"
#include "kraus/linalg.hpp"

namespace kraus {

/// Finite uniform-weight sample of pure states standing in for the
/// continuum of all pure states. Amplitudes are stored contiguously,
/// state a occupying [a*dim, (a+1)*dim).
class PureStateEnsemble {
  public:
    /// Takes ownership of explicit states (normalized within tol::state_norm).
    PureStateEnsemble(std::size_t dim, std::vector<StateVector> states, std::uint64_t seed = 0);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return amplitudes_.size() / dim_; }
    std::uint64_t seed() const { return seed_; }
    std::span<const Complex> state(std::size_t a) const {
        return std::span<const Complex>(amplitudes_).subspan(a * dim_, dim_);
    }

  private:
    friend PureStateEnsemble sample_haar(std::size_t, std::size_t, std::uint64_t, unsigned);
    PureStateEnsemble(std::size_t dim, std::vector<Complex> amplitudes, std::uint64_t seed);

    std::size_t dim_;
    std::vector<Complex> amplitudes_;
    std::uint64_t seed_;
};

/// Haar-uniform pure states: normalized vectors of 2*dim iid standard normals.
/// State a is drawn from its own stream seeded by (seed, a), so the result is
/// identical for any thread count.
PureStateEnsemble sample_haar(std::size_t dim, std::size_t n, std::uint64_t seed,
                              unsigned threads = 1);

/// (1/N) sum_a f(psi_a)
double ensemble_average(const PureStateEnsemble &e,
                        const std::function<double(std::span<const Complex>)> &f,
                        unsigned threads = 1);

/// Classical variance over a of <A>_a.
double variance_VI(const PureStateEnsemble &e, const ComplexMatrix &a, unsigned threads = 1);
/// Average over a of the quantum variance <A^2>_a - <A>_a^2.
double variance_VF(const PureStateEnsemble &e, const ComplexMatrix &a, unsigned threads = 1);

/// S_z on the ascending basis sigma = -s..s.
ComplexMatrix spin_z(HalfInt s);

struct SpinMoments {
    HalfInt s;
    double mean_Sz;
    double mean_Sz2;    // average of <S_z^2>
    double mean_Sz_sq;  // average of <S_z>^2
    double C, D, E;
    double V_I, V_F;
};

SpinMoments spin_moments_closed_form(HalfInt s);

/// One row per state, 2*dim columns (re, im interleaved), 17 significant digits.
void write_ensemble(std::ostream &out, const PureStateEnsemble &e);
PureStateEnsemble read_ensemble(std::istream &in);

}  // namespace kraus
