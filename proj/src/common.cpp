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

#include <algorithm>
#include <thread>
#include <vector>

#include "kraus/errors.hpp"
#include "kraus/label.hpp"
#include "kraus/parallel.hpp"

namespace kraus {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotPositive: return "NotPositive";
        case ErrorCode::SingularPolar: return "SingularPolar";
        case ErrorCode::NotDensityMatrix: return "NotDensityMatrix";
        case ErrorCode::IncompleteKrausSet: return "IncompleteKrausSet";
        case ErrorCode::NonInvertibleOperator: return "NonInvertibleOperator";
        case ErrorCode::ZeroModulusEntry: return "ZeroModulusEntry";
        case ErrorCode::ZeroProbabilityOutcome: return "ZeroProbabilityOutcome";
        case ErrorCode::ZeroProbabilityBranch: return "ZeroProbabilityBranch";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::UnknownLabel: return "UnknownLabel";
        case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
        case ErrorCode::EmptyOrNegativeWeights: return "EmptyOrNegativeWeights";
        case ErrorCode::KappaOutOfBound: return "KappaOutOfBound";
    }
    return "UnknownError";
}

bool is_numeric_contract(ErrorCode code) {
    return code <= ErrorCode::ZeroProbabilityBranch;
}

std::string HalfInt::str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

std::size_t block_count(std::size_t n) { return (n + kBlockSize - 1) / kBlockSize; }

void parallel_blocks(std::size_t n, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)> &body) {
    const std::size_t blocks = block_count(n);
    auto run_block = [&](std::size_t b) {
        const std::size_t begin = b * kBlockSize;
        body(begin, std::min(n, begin + kBlockSize), b);
    };
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), blocks);
    if (workers <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) run_block(b);
        return;
    }
    // static round-robin assignment of blocks to workers
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t b = w; b < blocks; b += workers) run_block(b);
        });
    }
}

double blocked_sum(std::span<const double> values) {
    double total = 0.0;
    for (std::size_t begin = 0; begin < values.size(); begin += kBlockSize) {
        const std::size_t end = std::min(values.size(), begin + kBlockSize);
        double partial = 0.0;
        for (std::size_t i = begin; i < end; ++i) partial += values[i];
        total += partial;
    }
    return total;
}

double parallel_sum(std::size_t n, unsigned threads, const std::function<double(std::size_t)> &f) {
    std::vector<double> partials(block_count(n), 0.0);
    parallel_blocks(n, threads, [&](std::size_t begin, std::size_t end, std::size_t b) {
        double partial = 0.0;
        for (std::size_t i = begin; i < end; ++i) partial += f(i);
        partials[b] = partial;
    });
    double total = 0.0;
    for (double p : partials) total += p;
    return total;
}

}  // namespace kraus
