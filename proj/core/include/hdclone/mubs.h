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

#ifndef HDCLONE_MUBS_H
#define HDCLONE_MUBS_H

#include <vector>

#include "hdclone/qcore.h"

namespace hdclone {

using Basis = std::vector<Ket>;

bool is_prime(int n);

/// A family of bases on C^d. `bases[0]` is the computational basis for sets
/// built by mub_set; labels alpha = 1..d+1 map to bases[alpha - 1].
struct MubSet {
    int dim = 0;
    std::vector<Basis> bases;

    const Basis &basis(int alpha) const;
    int count() const {
        return static_cast<int>(bases.size());
    }
};

/// Element n (1-based) of basis alpha in [2, d+1], from the quadratic phase
/// family
///
///   (1/sqrt d) sum_j exp[(2 pi i/d)((n-1)(d-j+1) - (alpha-2) sum_{m=j-2}^{d+1} m)] |j>
///
/// evaluated literally for every prime d. The exponent is reduced mod d in
/// integer arithmetic before conversion to a phase. Yields mutually unbiased
/// bases for odd primes; at d = 2 the alpha = 3 basis repeats alpha = 2.
/// Throws NotPrime and IndexOutOfRange.
Ket mub_vector(int d, int alpha, int n);

/// All d+1 mutually unbiased bases for prime d. alpha = 1 is the logical
/// basis and alpha >= 2 comes from mub_vector, except at d = 2 where
/// alpha = 3 is the (|1> +- i|2>)/sqrt 2 basis. Throws NotPrime.
MubSet mub_set(int d);

struct MubReport {
    double max_orthonormality_deviation = 0;
    double max_unbiasedness_deviation = 0;
    bool passed = false;
};

/// Max |<a_i|a_j> - delta_ij| within each basis and max ||<a_i|b_j>|^2 - 1/d|
/// across distinct bases; passes iff both are below `tol`.
MubReport verify_mub(const MubSet &set, double tol);

Basis computational_basis(int d);

/// |phi_n> = (1/sqrt d) sum_j exp[2 pi i (n-1)(j-1)/d] |j>. Any d >= 2.
Basis fourier_angle_basis(int d);

/// Seven-dimensional superposition proportional to exp[-(l/2)^2] over
/// l = -3..3, stored in logical order (index 0 is l = -3).
Ket gaussian_state();

/// Logical index i in [1, d] to OAM label l = i - 1 - (d-1)/2, for odd d.
/// Throws EvenDimension and IndexOutOfRange.
int oam_label(int i, int d);
int oam_index(int label, int d);

}  // namespace hdclone

#endif
