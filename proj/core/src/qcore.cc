// Copyright 2026 The hdclone Authors
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

#include "hdclone/qcore.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "hdclone/error.h"

namespace hdclone {

namespace {

constexpr double kZeroAmplitude = 1e-14;
constexpr double kEigenFloor = -1e-9;
// Round-off eigenvalues of rank-deficient states; their square roots would
// otherwise leak ~1e-8 into fidelities.
constexpr double kEigenZero = 1e-13;

void require_dim(int d) {
    if (d < 2) {
        throw Error(ErrorCode::DimensionTooSmall, "dimension must be at least 2, got " + std::to_string(d));
    }
}

void require_same_dim(int a, int b, const char *what) {
    if (a != b) {
        throw Error(
            ErrorCode::DimensionMismatch,
            std::string(what) + ": dimensions " + std::to_string(a) + " and " + std::to_string(b) + " differ");
    }
}

// Eigen-decomposition based square root with the negative-eigenvalue floor.
ComplexMatrix psd_sqrt(const ComplexMatrix &m, const char *what) {
    ComplexMatrix h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    Eigen::VectorXd values = solver.eigenvalues();
    for (Eigen::Index k = 0; k < values.size(); k++) {
        if (values(k) < kEigenFloor) {
            throw Error(
                ErrorCode::NotPositive,
                std::string(what) + " has eigenvalue " + std::to_string(values(k)));
        }
        values(k) = values(k) < kEigenZero ? 0.0 : std::sqrt(values(k));
    }
    return solver.eigenvectors() * values.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

Ket Ket::from_vector(const ComplexVector &amps) {
    if (amps.size() < 2) {
        throw Error(ErrorCode::DimensionTooSmall, "a ket needs at least two amplitudes");
    }
    if (amps.cwiseAbs().maxCoeff() < kZeroAmplitude) {
        throw Error(ErrorCode::ZeroVector, "all amplitudes are zero");
    }
    return Ket(amps / amps.norm());
}

Ket Ket::from_amplitudes(std::span<const Complex> amps) {
    ComplexVector v(static_cast<Eigen::Index>(amps.size()));
    for (size_t k = 0; k < amps.size(); k++) {
        v(static_cast<Eigen::Index>(k)) = amps[k];
    }
    return from_vector(v);
}

Ket Ket::basis(int dim, int index) {
    require_dim(dim);
    if (index < 0 || index >= dim) {
        throw Error(ErrorCode::IndexOutOfRange, "basis index " + std::to_string(index) + " outside [0, dim)");
    }
    ComplexVector v = ComplexVector::Zero(dim);
    v(index) = 1.0;
    return Ket(std::move(v));
}

Complex Ket::inner(const Ket &other) const {
    require_same_dim(dim(), other.dim(), "inner product");
    return amps_.dot(other.amps_);
}

Operator::Operator(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "operator matrix must be square");
    }
}

Operator Operator::identity(int dim) {
    return Operator(ComplexMatrix::Identity(dim, dim));
}

Operator Operator::zero(int dim) {
    return Operator(ComplexMatrix::Zero(dim, dim));
}

double Operator::max_abs_diff(const Operator &other) const {
    require_same_dim(dim(), other.dim(), "max_abs_diff");
    return (m_ - other.m_).cwiseAbs().maxCoeff();
}

bool Operator::is_hermitian(double tol) const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Eigen::VectorXd Operator::hermitian_eigenvalues() const {
    ComplexMatrix h = (m_ + m_.adjoint()) / 2.0;
    return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

bool Operator::is_density_matrix(double tol) const {
    if (!is_hermitian(tol)) {
        return false;
    }
    if (std::abs(trace() - Complex(1.0)) > tol) {
        return false;
    }
    return hermitian_eigenvalues().minCoeff() >= kEigenFloor;
}

Operator &Operator::operator+=(const Operator &other) {
    require_same_dim(dim(), other.dim(), "operator sum");
    m_ += other.m_;
    return *this;
}

Operator &Operator::operator-=(const Operator &other) {
    require_same_dim(dim(), other.dim(), "operator difference");
    m_ -= other.m_;
    return *this;
}

Operator &Operator::operator*=(Complex scale) {
    m_ *= scale;
    return *this;
}

Operator operator+(Operator a, const Operator &b) {
    a += b;
    return a;
}

Operator operator-(Operator a, const Operator &b) {
    a -= b;
    return a;
}

Operator operator*(const Operator &a, const Operator &b) {
    require_same_dim(a.dim(), b.dim(), "operator product");
    return Operator(a.matrix() * b.matrix());
}

Operator operator*(Complex scale, Operator a) {
    a *= scale;
    return a;
}

Operator maximally_mixed(int d) {
    require_dim(d);
    return Operator(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

Operator density_from_ket(const Ket &psi) {
    return Operator(psi.amplitudes() * psi.amplitudes().adjoint());
}

Operator tensor(const Operator &a, const Operator &b) {
    const int da = a.dim();
    const int db = b.dim();
    ComplexMatrix out(da * db, da * db);
    for (int r = 0; r < da; r++) {
        for (int c = 0; c < da; c++) {
            out.block(r * db, c * db, db, db) = a(r, c) * b.matrix();
        }
    }
    return Operator(std::move(out));
}

ComplexVector tensor(const Ket &a, const Ket &b) {
    ComplexVector out(a.dim() * b.dim());
    for (int i = 0; i < a.dim(); i++) {
        out.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
    }
    return out;
}

Operator partial_trace(const Operator &joint, Subsystem keep) {
    const int n = joint.dim();
    const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (d * d != n || d < 1) {
        throw Error(ErrorCode::NotBipartite, "dimension " + std::to_string(n) + " is not a perfect square");
    }
    const ComplexMatrix &m = joint.matrix();
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (int a = 0; a < d; a++) {
        for (int b = 0; b < d; b++) {
            Complex acc = 0;
            for (int k = 0; k < d; k++) {
                acc += keep == Subsystem::First ? m(a * d + k, b * d + k) : m(k * d + a, k * d + b);
            }
            out(a, b) = acc;
        }
    }
    return Operator(std::move(out));
}

Operator swap_operator(int d) {
    require_dim(d);
    ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            s(j * d + i, i * d + j) = 1.0;
        }
    }
    return Operator(std::move(s));
}

Operator symmetric_projector(int d) {
    ComplexMatrix s = swap_operator(d).matrix();
    return Operator((ComplexMatrix::Identity(d * d, d * d) + s) / 2.0);
}

double fidelity_ket(const Operator &rho, const Ket &psi) {
    require_same_dim(rho.dim(), psi.dim(), "fidelity_ket");
    double f = psi.amplitudes().dot(rho.matrix() * psi.amplitudes()).real();
    return std::clamp(f, 0.0, 1.0);
}

double fidelity_state(const Operator &rho, const Operator &sigma) {
    require_same_dim(rho.dim(), sigma.dim(), "fidelity_state");
    // tr sqrt(sqrt(rho) sigma sqrt(rho)) is the trace norm of sqrt(rho) sqrt(sigma).
    // Summing singular values avoids square roots of round-off eigenvalues.
    ComplexMatrix product = psd_sqrt(rho.matrix(), "rho") * psd_sqrt(sigma.matrix(), "sigma");
    double tr = Eigen::JacobiSVD<ComplexMatrix>(product).singularValues().sum();
    return tr * tr;
}

Ket random_ket(int d, Rng &rng) {
    require_dim(d);
    ComplexVector v(d);
    for (int k = 0; k < d; k++) {
        double re = rng.normal();
        double im = rng.normal();
        v(k) = Complex(re, im);
    }
    return Ket::from_vector(v);
}

Operator random_density_matrix(int d, Rng &rng) {
    require_dim(d);
    ComplexMatrix g(d, d);
    for (int r = 0; r < d; r++) {
        for (int c = 0; c < d; c++) {
            double re = rng.normal();
            double im = rng.normal();
            g(r, c) = Complex(re, im);
        }
    }
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace();
    return Operator((rho + rho.adjoint()) / 2.0);
}

}  // namespace hdclone
