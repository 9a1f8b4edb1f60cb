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

#include "support.hpp"

namespace test_support {

std::vector<ComplexMatrix> random_kraus_operators(std::mt19937_64 &rng, std::size_t d, std::size_t n) {
    std::vector<ComplexMatrix> raw;
    ComplexMatrix g(d);
    for (std::size_t k = 0; k < n; ++k) {
        raw.push_back(random_matrix(rng, d));
        g += raw.back().adjoint() * raw.back();
    }
    const ComplexMatrix g_inv_sqrt = kraus::inverse(kraus::positive_sqrt(Complex(0.5) * (g + g.adjoint())));
    for (auto &a : raw) a = a * g_inv_sqrt;
    return raw;
}

kraus::PureStateEnsemble explicit_ensemble(std::mt19937_64 &rng, std::size_t d, std::size_t n) {
    std::vector<StateVector> states;
    for (std::size_t a = 0; a < n; ++a) states.push_back(random_state(rng, d));
    return kraus::PureStateEnsemble(d, std::move(states));
}

double shannon_bits(const std::vector<double> &p) {
    double h = 0.0;
    for (double x : p)
        if (x > 0.0) h -= x * std::log2(x);
    return h;
}

OracleOutcome oracle_branch(const std::vector<const ComplexMatrix *> &chain, const kraus::PureStateEnsemble &e) {
    const std::size_t n = e.size();
    std::vector<double> w(n), overlap(n);
    for (std::size_t a = 0; a < n; ++a) {
        const auto psi = e.state(a);
        StateVector v(psi.begin(), psi.end());
        for (const ComplexMatrix *op : chain) {
            StateVector next(v.size(), 0.0);
            for (std::size_t r = 0; r < v.size(); ++r)
                for (std::size_t c = 0; c < v.size(); ++c) next[r] += (*op)(r, c) * v[c];
            v = std::move(next);
        }
        double nn = 0.0;
        Complex ov = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            nn += std::norm(v[i]);
            ov += std::conj(psi[i]) * v[i];
        }
        w[a] = nn;
        overlap[a] = nn > 0.0 ? std::abs(ov) / std::sqrt(nn) : 0.0;
    }
    double total = 0.0;
    for (double x : w) total += x;
    OracleOutcome out{total / static_cast<double>(n), total > 1e-12 * static_cast<double>(n), 0.0, 0.0};
    if (!out.defined) return out;
    std::vector<double> post(n);
    for (std::size_t a = 0; a < n; ++a) post[a] = w[a] / total;
    out.info_gain = std::log2(static_cast<double>(n)) - shannon_bits(post);
    for (std::size_t a = 0; a < n; ++a) out.fidelity += post[a] * overlap[a];
    return out;
}

}  // namespace test_support
