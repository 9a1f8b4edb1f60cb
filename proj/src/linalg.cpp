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

#include "kraus/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "kraus/errors.hpp"
#include "kraus/tolerances.hpp"

namespace kraus {

namespace {

using EMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EMatrix to_eigen(const ComplexMatrix &m) {
    EMatrix out(m.dim(), m.dim());
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c) out(r, c) = m(r, c);
    return out;
}

template <typename Derived>
ComplexMatrix from_eigen(const Eigen::MatrixBase<Derived> &m) {
    ComplexMatrix out(static_cast<std::size_t>(m.rows()));
    for (std::size_t r = 0; r < out.dim(); ++r)
        for (std::size_t c = 0; c < out.dim(); ++c) out(r, c) = m(r, c);
    return out;
}

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim())
        throw KrausError(ErrorCode::DimensionMismatch,
                         std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
}

void require_finite(std::span<const Complex> entries) {
    for (const Complex &z : entries)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw KrausError(ErrorCode::InvalidArgument, "non-finite matrix entry");
}

// V diag(f(lambda)) V^dagger
template <typename F>
ComplexMatrix spectral_map(const HermitianEigen &eig, F f) {
    const std::size_t d = eig.vectors.dim();
    ComplexMatrix out(d);
    for (std::size_t k = 0; k < d; ++k) {
        const double fk = f(eig.values[k]);
        if (fk == 0.0) continue;
        for (std::size_t r = 0; r < d; ++r) {
            const Complex vr = eig.vectors(r, k) * fk;
            for (std::size_t c = 0; c < d; ++c) out(r, c) += vr * std::conj(eig.vectors(c, k));
        }
    }
    return out;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) throw KrausError(ErrorCode::InvalidArgument, "matrix dimension must be >= 1");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
    if (dim_ == 0) throw KrausError(ErrorCode::InvalidArgument, "matrix dimension must be >= 1");
    data_.reserve(dim_ * dim_);
    for (const auto &row : rows) {
        if (row.size() != dim_) throw KrausError(ErrorCode::InvalidArgument, "matrix must be square");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), data_(std::move(row_major)) {
    if (dim_ == 0 || data_.size() != dim_ * dim_)
        throw KrausError(ErrorCode::InvalidArgument, "row-major data does not match dimension");
    require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix out(dim);
    for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
    return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
    ComplexMatrix out(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) out(i, i) = entries[i];
    require_finite(out.data_);
    return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
    std::vector<Complex> z(entries.begin(), entries.end());
    return diagonal(std::span<const Complex>(z));
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> psi) {
    ComplexMatrix out(psi.size());
    for (std::size_t r = 0; r < psi.size(); ++r)
        for (std::size_t c = 0; c < psi.size(); ++c) out(r, c) = psi[r] * std::conj(psi[c]);
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex &z : data_) m = std::max(m, std::abs(z));
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = r; c < dim_; ++c)
            if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
    return true;
}

bool ComplexMatrix::is_diagonal(double tol) const {
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c)
            if (r != c && std::abs((*this)(r, c)) > tol) return false;
    return true;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &o) {
    require_same_dim(*this, o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &o) {
    require_same_dim(*this, o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex s) {
    for (Complex &z : data_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b);
    const std::size_t d = a.dim();
    ComplexMatrix out(d);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < d; ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{}) continue;
            for (std::size_t c = 0; c < d; ++c) out(r, c) += ark * b(k, c);
        }
    return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

StateVector apply(const ComplexMatrix &m, std::span<const Complex> psi) {
    if (psi.size() != m.dim()) throw KrausError(ErrorCode::DimensionMismatch, "state vs operator");
    StateVector out(m.dim());
    for (std::size_t r = 0; r < m.dim(); ++r) {
        Complex acc = 0.0;
        for (std::size_t c = 0; c < m.dim(); ++c) acc += m(r, c) * psi[c];
        out[r] = acc;
    }
    return out;
}

Complex expectation(const ComplexMatrix &a, std::span<const Complex> psi) {
    if (psi.size() != a.dim()) throw KrausError(ErrorCode::DimensionMismatch, "state vs operator");
    Complex acc = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r) {
        Complex row = 0.0;
        for (std::size_t c = 0; c < a.dim(); ++c) row += a(r, c) * psi[c];
        acc += std::conj(psi[r]) * row;
    }
    return acc;
}

Complex inner(std::span<const Complex> phi, std::span<const Complex> psi) {
    if (phi.size() != psi.size()) throw KrausError(ErrorCode::DimensionMismatch, "inner product");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) acc += std::conj(phi[i]) * psi[i];
    return acc;
}

double norm(std::span<const Complex> psi) {
    double acc = 0.0;
    for (const Complex &z : psi) acc += std::norm(z);
    return std::sqrt(acc);
}

HermitianEigen herm_eig(const ComplexMatrix &h) {
    if (!h.is_hermitian(tol::hermitian))
        throw KrausError(ErrorCode::NotHermitian, "herm_eig input is not Hermitian");
    // symmetrize so the solver sees an exactly Hermitian matrix
    EMatrix e = to_eigen(h);
    EMatrix sym = 0.5 * (e + e.adjoint());
    Eigen::SelfAdjointEigenSolver<EMatrix> solver(sym);
    if (solver.info() != Eigen::Success)
        throw KrausError(ErrorCode::NotHermitian, "eigensolver failed to converge");
    HermitianEigen out{std::vector<double>(h.dim()), from_eigen(solver.eigenvectors())};
    for (std::size_t i = 0; i < h.dim(); ++i) out.values[i] = solver.eigenvalues()(i);
    return out;
}

std::pair<double, double> extreme_eigs(const ComplexMatrix &h) {
    const HermitianEigen eig = herm_eig(h);
    return {eig.values.front(), eig.values.back()};
}

ComplexMatrix positive_sqrt(const ComplexMatrix &p) {
    if (p.is_diagonal()) {
        // exact path: diagonal PSD input
        if (!p.is_hermitian(tol::hermitian))
            throw KrausError(ErrorCode::NotHermitian, "positive_sqrt input is not Hermitian");
        ComplexMatrix out(p.dim());
        for (std::size_t i = 0; i < p.dim(); ++i) {
            const double v = p(i, i).real();
            if (v < -tol::eig_clip)
                throw KrausError(ErrorCode::NotPositive, "eigenvalue " + std::to_string(v));
            out(i, i) = v > 0.0 ? std::sqrt(v) : 0.0;
        }
        return out;
    }
    const HermitianEigen eig = herm_eig(p);
    if (eig.values.front() < -tol::eig_clip)
        throw KrausError(ErrorCode::NotPositive, "eigenvalue " + std::to_string(eig.values.front()));
    return spectral_map(eig, [](double v) { return v > 0.0 ? std::sqrt(v) : 0.0; });
}

std::vector<double> singular_values(const ComplexMatrix &m) {
    Eigen::JacobiSVD<EMatrix> svd(to_eigen(m));
    std::vector<double> out(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) out[i] = svd.singularValues()(i);
    return out;
}

PolarParts polar_decompose(const ComplexMatrix &m, PolarCompletion completion) {
    const std::vector<double> s = singular_values(m);
    const double smax = s.front();
    if (completion == PolarCompletion::Forbid && (!(smax > 0.0) || !(s.back() >= tol::polar_cutoff * smax)))
        throw KrausError(ErrorCode::SingularPolar, "sigma_min below cutoff and completion disabled");

    if (m.is_diagonal()) {
        // exact entrywise; null entries complete with phase 1
        PolarParts out{ComplexMatrix::identity(m.dim()), ComplexMatrix(m.dim())};
        for (std::size_t i = 0; i < m.dim(); ++i) {
            const double r = std::abs(m(i, i));
            if (r > tol::polar_cutoff * smax) {
                out.unitary(i, i) = m(i, i) / r;
                out.positive(i, i) = r;
            }
        }
        return out;
    }

    // M = W S V^dagger  =>  U = W V^dagger, N = V S V^dagger. The full W and
    // V carry an orthonormal completion of the null space, i.e. U = M N^+ on
    // the range of N extended to a unitary.
    Eigen::JacobiSVD<EMatrix> svd(to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    Eigen::VectorXcd clipped = sv.cast<Complex>();
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) < tol::polar_cutoff * smax) clipped(i) = 0.0;
    const EMatrix &v = svd.matrixV();
    EMatrix u = svd.matrixU() * v.adjoint();
    EMatrix n = v * clipped.asDiagonal() * v.adjoint();
    n = (0.5 * (n + n.adjoint())).eval();
    return {from_eigen(u), from_eigen(n)};
}

ComplexMatrix inverse(const ComplexMatrix &m) {
    const std::vector<double> s = singular_values(m);
    if (!(s.back() >= tol::invertible_cutoff * s.front()))
        throw KrausError(ErrorCode::NonInvertibleOperator,
                         "sigma_min/sigma_max = " + std::to_string(s.back() / s.front()));
    if (m.is_diagonal()) {
        ComplexMatrix out(m.dim());
        for (std::size_t i = 0; i < m.dim(); ++i) out(i, i) = 1.0 / m(i, i);
        return out;
    }
    return from_eigen(to_eigen(m).inverse());
}

void check_density_matrix(const ComplexMatrix &rho) {
    if (!rho.is_hermitian(tol::density_psd))
        throw KrausError(ErrorCode::NotDensityMatrix, "not Hermitian");
    if (std::abs(rho.trace() - 1.0) > tol::density_trace)
        throw KrausError(ErrorCode::NotDensityMatrix, "trace != 1");
    if (extreme_eigs(rho).first < -tol::density_psd)
        throw KrausError(ErrorCode::NotDensityMatrix, "not positive semidefinite");
}

double fidelity(const ComplexMatrix &rho, const ComplexMatrix &sigma) {
    check_density_matrix(rho);
    check_density_matrix(sigma);
    require_same_dim(rho, sigma);
    // Tr sqrt(sqrt(rho) sigma sqrt(rho)) evaluated on the support of the
    // lower-rank argument. Working in the full space would add sqrt(round-off)
    // ~ 1e-8 from every null direction of a (nearly) pure state.
    const HermitianEigen er = herm_eig(rho), es = herm_eig(sigma);
    auto rank = [](const HermitianEigen &e) {
        return std::count_if(e.values.begin(), e.values.end(), [](double v) { return v > tol::eig_clip; });
    };
    const bool use_rho = rank(er) <= rank(es);
    const HermitianEigen &base = use_rho ? er : es;
    const ComplexMatrix &other = use_rho ? sigma : rho;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < base.values.size(); ++i)
        if (base.values[i] > tol::eig_clip) keep.push_back(i);
    const std::size_t d = other.dim(), k = keep.size();
    ComplexMatrix a(k);
    for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y) {
            Complex v = 0.0;
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c)
                    v += std::conj(base.vectors(r, keep[x])) * other(r, c) * base.vectors(c, keep[y]);
            a(x, y) = std::sqrt(base.values[keep[x]] * base.values[keep[y]]) * v;
        }
    a = 0.5 * (a + a.adjoint());
    double f = 0.0;
    for (double v : herm_eig(a).values) f += v > 0.0 ? std::sqrt(v) : 0.0;
    return std::clamp(f, 0.0, 1.0);
}

double fidelity(std::span<const Complex> psi, const ComplexMatrix &sigma) {
    check_density_matrix(sigma);
    const double overlap = expectation(sigma, psi).real();
    return std::clamp(std::sqrt(std::max(overlap, 0.0)), 0.0, 1.0);
}

}  // namespace kraus
