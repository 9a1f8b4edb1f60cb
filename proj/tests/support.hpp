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
// Random fixtures and brute-force reference implementations shared by the
// test binaries. The references deliberately avoid the library's metric
// kernels: they work state by state with explicit vectors and Shannon
// entropies.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "kraus/ensemble.hpp"
#include "kraus/linalg.hpp"
#include "kraus/measurement.hpp"

namespace test_support {

using kraus::Complex;
using kraus::ComplexMatrix;
using kraus::StateVector;

inline ComplexMatrix random_matrix(std::mt19937_64 &rng, std::size_t d, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix m(d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) m(r, c) = scale * Complex(n(rng), n(rng));
    return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64 &rng, std::size_t d) {
    const ComplexMatrix a = random_matrix(rng, d);
    return Complex(0.5) * (a + a.adjoint());
}

inline StateVector random_state(std::mt19937_64 &rng, std::size_t d) {
    std::normal_distribution<double> n(0.0, 1.0);
    StateVector v(d);
    double s = 0.0;
    for (auto &x : v) {
        x = Complex(n(rng), n(rng));
        s += std::norm(x);
    }
    for (auto &x : v) x /= std::sqrt(s);
    return v;
}

inline ComplexMatrix random_unitary(std::mt19937_64 &rng, std::size_t d) {
    // Gram-Schmidt on Gaussian columns
    std::vector<StateVector> cols;
    for (std::size_t c = 0; c < d; ++c) {
        StateVector v = random_state(rng, d);
        for (const auto &u : cols) {
            Complex p = 0.0;
            for (std::size_t i = 0; i < d; ++i) p += std::conj(u[i]) * v[i];
            for (std::size_t i = 0; i < d; ++i) v[i] -= p * u[i];
        }
        double s = 0.0;
        for (auto &x : v) s += std::norm(x);
        for (auto &x : v) x /= std::sqrt(s);
        cols.push_back(v);
    }
    ComplexMatrix u(d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) u(r, c) = cols[c][r];
    return u;
}

/// Random complete Kraus set of n operators: A_k G^{-1/2} with G = sum A^dagger A.
std::vector<ComplexMatrix> random_kraus_operators(std::mt19937_64 &rng, std::size_t d, std::size_t n);

kraus::PureStateEnsemble explicit_ensemble(std::mt19937_64 &rng, std::size_t d, std::size_t n);

struct OracleOutcome {
    double probability;  // p(outcome) or p(mu|m)
    bool defined;
    double info_gain;  // log2 N - H(posterior)
    double fidelity;   // posterior-weighted |<psi|phi>| with phi the normalized post-state
};

/// Applies ops in order (first to last) to each state and tallies one branch.
OracleOutcome oracle_branch(const std::vector<const ComplexMatrix *> &chain, const kraus::PureStateEnsemble &e);

/// Shannon entropy in bits of a normalized distribution.
double shannon_bits(const std::vector<double> &p);

}  // namespace test_support
