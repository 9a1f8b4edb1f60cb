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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace kraus {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

/// Dense square complex matrix, row-major. Carries measurement operators,
/// density matrices and every other operator in the library.
class ComplexMatrix {
  public:
    /// dim x dim zero matrix.
    explicit ComplexMatrix(std::size_t dim);
    /// Square matrix from nested rows; throws InvalidArgument on ragged,
    /// empty or non-finite input.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);
    ComplexMatrix(std::size_t dim, std::vector<Complex> row_major);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const Complex> entries);
    static ComplexMatrix diagonal(std::span<const double> entries);
    /// |psi><psi|
    static ComplexMatrix projector(std::span<const Complex> psi);

    std::size_t dim() const { return dim_; }
    Complex operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    std::span<const Complex> data() const { return data_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    /// max |entry|
    double max_abs() const;
    bool is_hermitian(double tol) const;
    bool is_diagonal(double tol = 0.0) const;

    ComplexMatrix &operator+=(const ComplexMatrix &o);
    ComplexMatrix &operator-=(const ComplexMatrix &o);
    ComplexMatrix &operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

  private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

/// max |a - b| entrywise; throws DimensionMismatch.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

StateVector apply(const ComplexMatrix &m, std::span<const Complex> psi);
/// <psi|A|psi>
Complex expectation(const ComplexMatrix &a, std::span<const Complex> psi);
Complex inner(std::span<const Complex> phi, std::span<const Complex> psi);
double norm(std::span<const Complex> psi);

struct HermitianEigen {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns are eigenvectors
};

HermitianEigen herm_eig(const ComplexMatrix &h);
std::pair<double, double> extreme_eigs(const ComplexMatrix &h);

/// PSD square root; eigenvalues in [-tol::eig_clip, 0) are treated as 0.
ComplexMatrix positive_sqrt(const ComplexMatrix &p);

struct PolarParts {
    ComplexMatrix unitary;
    ComplexMatrix positive;
};

enum class PolarCompletion { Allow, Forbid };

/// Left polar decomposition M = U N with N = sqrt(M^dagger M).
/// Singular M: U is fixed on the range of N and completed to a unitary on
/// its null space, unless completion is Forbid (then SingularPolar).
PolarParts polar_decompose(const ComplexMatrix &m,
                           PolarCompletion completion = PolarCompletion::Allow);

/// Singular values, descending.
std::vector<double> singular_values(const ComplexMatrix &m);

/// Inverse; NonInvertibleOperator when sigma_min < tol::invertible_cutoff * sigma_max.
ComplexMatrix inverse(const ComplexMatrix &m);

/// Validates a density matrix (Hermitian, PSD, unit trace); NotDensityMatrix.
void check_density_matrix(const ComplexMatrix &rho);

/// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)), clipped to [0, 1].
double fidelity(const ComplexMatrix &rho, const ComplexMatrix &sigma);
/// Pure-state fast path sqrt(<psi|sigma|psi>).
double fidelity(std::span<const Complex> psi, const ComplexMatrix &sigma);

}  // namespace kraus
