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

#include "kraus/ensemble.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "kraus/errors.hpp"
#include "kraus/parallel.hpp"
#include "kraus/tolerances.hpp"

namespace kraus {

namespace {

// splitmix64 finalizer; decorrelates neighbouring (seed, index) pairs
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
    return mix(mix(seed) ^ (index * 0xd1b54a32d192ed03ULL));
}

void check_normalized(std::span<const Complex> psi) {
    if (std::abs(norm(psi) - 1.0) > tol::state_norm)
        throw KrausError(ErrorCode::InvalidArgument, "ensemble state is not normalized");
}

void check_hermitian(const ComplexMatrix &a) {
    if (!a.is_hermitian(tol::hermitian)) throw KrausError(ErrorCode::NotHermitian, "observable");
}

}  // namespace

PureStateEnsemble::PureStateEnsemble(std::size_t dim, std::vector<StateVector> states,
                                     std::uint64_t seed)
    : dim_(dim), seed_(seed) {
    if (dim == 0 || states.empty())
        throw KrausError(ErrorCode::InvalidArgument, "ensemble needs dim >= 1 and at least one state");
    amplitudes_.reserve(dim * states.size());
    for (const StateVector &psi : states) {
        if (psi.size() != dim) throw KrausError(ErrorCode::DimensionMismatch, "ensemble state");
        check_normalized(psi);
        amplitudes_.insert(amplitudes_.end(), psi.begin(), psi.end());
    }
}

PureStateEnsemble::PureStateEnsemble(std::size_t dim, std::vector<Complex> amplitudes,
                                     std::uint64_t seed)
    : dim_(dim), amplitudes_(std::move(amplitudes)), seed_(seed) {}

PureStateEnsemble sample_haar(std::size_t dim, std::size_t n, std::uint64_t seed, unsigned threads) {
    if (dim < 2 || n < 1) throw KrausError(ErrorCode::InvalidArgument, "sample_haar needs dim >= 2, N >= 1");
    std::vector<Complex> amps(dim * n);
    parallel_blocks(n, threads, [&](std::size_t begin, std::size_t end, std::size_t) {
        for (std::size_t a = begin; a < end; ++a) {
            std::mt19937_64 engine(stream_seed(seed, a));
            std::normal_distribution<double> normal(0.0, 1.0);
            Complex *psi = amps.data() + a * dim;
            double norm2 = 0.0;
            for (std::size_t k = 0; k < dim; ++k) {
                const double re = normal(engine);
                const double im = normal(engine);
                psi[k] = {re, im};
                norm2 += re * re + im * im;
            }
            const double inv = 1.0 / std::sqrt(norm2);
            for (std::size_t k = 0; k < dim; ++k) psi[k] *= inv;
        }
    });
    return PureStateEnsemble(dim, std::move(amps), seed);
}

double ensemble_average(const PureStateEnsemble &e,
                        const std::function<double(std::span<const Complex>)> &f, unsigned threads) {
    const double total = parallel_sum(e.size(), threads, [&](std::size_t a) { return f(e.state(a)); });
    return total / static_cast<double>(e.size());
}

double variance_VI(const PureStateEnsemble &e, const ComplexMatrix &a, unsigned threads) {
    check_hermitian(a);
    if (a.dim() != e.dim()) throw KrausError(ErrorCode::DimensionMismatch, "observable vs ensemble");
    const double mean = ensemble_average(e, [&](auto psi) { return expectation(a, psi).real(); }, threads);
    const double var = ensemble_average(
        e,
        [&](auto psi) {
            const double d = expectation(a, psi).real() - mean;
            return d * d;
        },
        threads);
    return var;
}

double variance_VF(const PureStateEnsemble &e, const ComplexMatrix &a, unsigned threads) {
    check_hermitian(a);
    if (a.dim() != e.dim()) throw KrausError(ErrorCode::DimensionMismatch, "observable vs ensemble");
    const ComplexMatrix a2 = a * a;
    const double var = ensemble_average(
        e,
        [&](auto psi) {
            const double m1 = expectation(a, psi).real();
            return expectation(a2, psi).real() - m1 * m1;
        },
        threads);
    return std::max(var, 0.0);
}

ComplexMatrix spin_z(HalfInt s) {
    if (s.twice() < 0) throw KrausError(ErrorCode::InvalidArgument, "negative spin");
    const std::size_t d = static_cast<std::size_t>(s.twice()) + 1;
    std::vector<double> diag(d);
    for (std::size_t k = 0; k < d; ++k) diag[k] = -s.value() + static_cast<double>(k);
    return ComplexMatrix::diagonal(std::span<const double>(diag));
}

SpinMoments spin_moments_closed_form(HalfInt s) {
    if (s.twice() < 1) throw KrausError(ErrorCode::InvalidArgument, "spin must satisfy 2s >= 1");
    const double v = s.value();
    SpinMoments m{};
    m.s = s;
    m.C = 1.0 / (2 * v + 1);
    m.D = 1.0 / ((v + 1) * (2 * v + 1));
    m.E = 1.0 / (2 * (v + 1) * (2 * v + 1));
    m.mean_Sz = 0.0;
    m.mean_Sz2 = v * (v + 1) / 3.0;
    m.mean_Sz_sq = v / 6.0;
    m.V_I = m.mean_Sz_sq - m.mean_Sz * m.mean_Sz;
    m.V_F = m.mean_Sz2 - m.mean_Sz_sq;
    return m;
}

void write_ensemble(std::ostream &out, const PureStateEnsemble &e) {
    char buf[64];
    for (std::size_t a = 0; a < e.size(); ++a) {
        const auto psi = e.state(a);
        for (std::size_t k = 0; k < e.dim(); ++k) {
            std::snprintf(buf, sizeof buf, "%.17g %.17g", psi[k].real(), psi[k].imag());
            out << (k == 0 ? "" : " ") << buf;
        }
        out << '\n';
    }
}

PureStateEnsemble read_ensemble(std::istream &in) {
    std::vector<StateVector> states;
    std::size_t dim = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        std::istringstream row(line);
        std::vector<double> parts;
        double x;
        while (row >> x) parts.push_back(x);
        if (parts.empty() || parts.size() % 2 != 0)
            throw KrausError(ErrorCode::InvalidArgument, "ensemble row needs interleaved re/im pairs");
        if (dim == 0) dim = parts.size() / 2;
        if (parts.size() / 2 != dim) throw KrausError(ErrorCode::DimensionMismatch, "ragged ensemble file");
        StateVector psi(dim);
        for (std::size_t k = 0; k < dim; ++k) psi[k] = {parts[2 * k], parts[2 * k + 1]};
        states.push_back(std::move(psi));
    }
    return PureStateEnsemble(dim, std::move(states));
}

}  // namespace kraus
