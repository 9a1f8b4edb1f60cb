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

namespace kraus::tol {

// Shared by library checks and tests. All matrix comparisons use the
// max-abs entry norm.
inline constexpr double hermitian = 1e-10;
inline constexpr double unitary = 1e-10;
inline constexpr double eig_clip = 1e-12;        // eigenvalues in [-eig_clip, 0) read as 0
inline constexpr double eig_reconstruct = 1e-9;
inline constexpr double sqrt_reconstruct = 1e-9;
inline constexpr double polar_reconstruct = 1e-9;
inline constexpr double polar_cutoff = 1e-10;    // relative to sigma_max
inline constexpr double invertible_cutoff = 1e-8;  // relative to sigma_max
inline constexpr double density_psd = 1e-10;
inline constexpr double density_trace = 1e-8;
inline constexpr double completeness = 1e-9;
inline constexpr double probability_floor = 1e-12;
inline constexpr double probability_sum = 1e-8;
inline constexpr double info_gain_floor = -1e-10;
inline constexpr double kappa_slack = 1e-12;
inline constexpr double degenerate_complement = 1e-12;
inline constexpr double state_norm = 1e-12;
inline constexpr double zero_modulus = 1e-12;    // |a_{m sigma}| relative to q_m

}  // namespace kraus::tol
