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

#ifndef HDCLONE_QCORE_H
#define HDCLONE_QCORE_H

#include <Eigen/Dense>
#include <complex>
#include <span>

#include "hdclone/random.h"

namespace hdclone {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// A normalized state vector of a d-level system (d >= 2).
class Ket {
   public:
    /// Normalizes `amps`. Throws DimensionTooSmall for fewer than two
    /// amplitudes and ZeroVector if every amplitude is below 1e-14.
    static Ket from_amplitudes(std::span<const Complex> amps);
    static Ket from_vector(const ComplexVector &amps);

    /// Computational basis state |index>, 0-based.
    static Ket basis(int dim, int index);

    int dim() const {
        return static_cast<int>(amps_.size());
    }
    const ComplexVector &amplitudes() const {
        return amps_;
    }
    Complex operator[](int i) const {
        return amps_(i);
    }

    /// <this|other>.
    Complex inner(const Ket &other) const;

   private:
    explicit Ket(ComplexVector amps) : amps_(std::move(amps)) {
    }
    ComplexVector amps_;
};

inline Ket ket_new(std::span<const Complex> amps) {
    return Ket::from_amplitudes(amps);
}

/// A square complex matrix acting on a d-level system, or on a pair of them
/// with total dimension d*d.
class Operator {
   public:
    explicit Operator(ComplexMatrix m);

    static Operator identity(int dim);
    static Operator zero(int dim);

    int dim() const {
        return static_cast<int>(m_.rows());
    }
    const ComplexMatrix &matrix() const {
        return m_;
    }
    Complex operator()(int row, int col) const {
        return m_(row, col);
    }

    Complex trace() const {
        return m_.trace();
    }
    Operator adjoint() const {
        return Operator(m_.adjoint());
    }

    /// Largest |a_ij - b_ij|. Throws DimensionMismatch.
    double max_abs_diff(const Operator &other) const;

    bool is_hermitian(double tol = 1e-10) const;

    /// Hermitian within `tol`, unit trace within `tol`, and no eigenvalue
    /// below -1e-9.
    bool is_density_matrix(double tol = 1e-10) const;

    /// Eigenvalues of the Hermitian part, ascending.
    Eigen::VectorXd hermitian_eigenvalues() const;

    Operator &operator+=(const Operator &other);
    Operator &operator-=(const Operator &other);
    Operator &operator*=(Complex scale);

   private:
    ComplexMatrix m_;
};

Operator operator+(Operator a, const Operator &b);
Operator operator-(Operator a, const Operator &b);
Operator operator*(const Operator &a, const Operator &b);
Operator operator*(Complex scale, Operator a);

/// Which photon of a two-qudit composite. The composite index of |i1>|i2> is
/// i1 * d + i2 (row-major).
enum class Subsystem { First, Second };

/// I_d / d. Throws DimensionTooSmall for d < 2.
Operator maximally_mixed(int d);

/// |psi><psi|.
Operator density_from_ket(const Ket &psi);

/// Kronecker product a (x) b with composite index i_a * dim(b) + i_b.
Operator tensor(const Operator &a, const Operator &b);
ComplexVector tensor(const Ket &a, const Ket &b);

/// Reduced operator on `keep` after tracing out the other photon. Throws
/// NotBipartite if the dimension is not a perfect square.
Operator partial_trace(const Operator &joint, Subsystem keep);

/// SWAP on C^d (x) C^d: S|i>|j> = |j>|i>.
Operator swap_operator(int d);

/// Projector (I + SWAP) / 2 onto the symmetric two-qudit subspace.
Operator symmetric_projector(int d);

/// <psi|rho|psi>, clamped to [0, 1]. Throws DimensionMismatch.
double fidelity_ket(const Operator &rho, const Ket &psi);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
///
/// Eigenvalues below 1e-13 (including negative ones down to -1e-9) are
/// treated as zero before taking square roots; anything below -1e-9 throws
/// NotPositive.
double fidelity_state(const Operator &rho, const Operator &sigma);

/// Haar-random pure state.
Ket random_ket(int d, Rng &rng);

/// Random full-rank density matrix G G^dagger / tr(G G^dagger) with G a
/// complex Ginibre matrix.
Operator random_density_matrix(int d, Rng &rng);

}  // namespace hdclone

#endif
