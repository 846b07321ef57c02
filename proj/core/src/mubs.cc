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

#include "hdclone/mubs.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hdclone/error.h"

namespace hdclone {

namespace {

void require_prime(int d) {
    if (!is_prime(d)) {
        throw Error(ErrorCode::NotPrime, std::to_string(d) + " is not prime");
    }
}

Complex root_of_unity(long long k, int d) {
    long long r = ((k % d) + d) % d;
    double angle = 2.0 * std::numbers::pi * static_cast<double>(r) / d;
    return std::polar(1.0, angle);
}

// sum_{m=a}^{b} m for a <= b + 1 (empty sums are zero).
long long arithmetic_series(long long a, long long b) {
    if (a > b) {
        return 0;
    }
    return (b - a + 1) * (a + b) / 2;
}

Basis qubit_circular_basis() {
    const double h = 1.0 / std::numbers::sqrt2;
    std::vector<Complex> plus{h, Complex(0, h)};
    std::vector<Complex> minus{h, Complex(0, -h)};
    return {Ket::from_amplitudes(plus), Ket::from_amplitudes(minus)};
}

}  // namespace

bool is_prime(int n) {
    if (n < 2) {
        return false;
    }
    for (int k = 2; k * k <= n; k++) {
        if (n % k == 0) {
            return false;
        }
    }
    return true;
}

const Basis &MubSet::basis(int alpha) const {
    if (alpha < 1 || alpha > count()) {
        throw Error(ErrorCode::IndexOutOfRange, "basis label " + std::to_string(alpha) + " out of range");
    }
    return bases[alpha - 1];
}

Ket mub_vector(int d, int alpha, int n) {
    require_prime(d);
    if (alpha < 2 || alpha > d + 1 || n < 1 || n > d) {
        throw Error(
            ErrorCode::IndexOutOfRange,
            "mub_vector(" + std::to_string(d) + ", " + std::to_string(alpha) + ", " + std::to_string(n) + ")");
    }
    ComplexVector amps(d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 1; j <= d; j++) {
        long long k = static_cast<long long>(n - 1) * (d - j + 1) -
                      static_cast<long long>(alpha - 2) * arithmetic_series(j - 2, d + 1);
        amps(j - 1) = norm * root_of_unity(k, d);
    }
    return Ket::from_vector(amps);
}

Basis computational_basis(int d) {
    Basis basis;
    basis.reserve(d);
    for (int i = 0; i < d; i++) {
        basis.push_back(Ket::basis(d, i));
    }
    return basis;
}

MubSet mub_set(int d) {
    require_prime(d);
    MubSet set;
    set.dim = d;
    set.bases.push_back(computational_basis(d));
    for (int alpha = 2; alpha <= d + 1; alpha++) {
        if (d == 2 && alpha == 3) {
            set.bases.push_back(qubit_circular_basis());
            continue;
        }
        Basis basis;
        for (int n = 1; n <= d; n++) {
            basis.push_back(mub_vector(d, alpha, n));
        }
        set.bases.push_back(std::move(basis));
    }
    return set;
}

MubReport verify_mub(const MubSet &set, double tol) {
    MubReport report;
    const double unbiased = 1.0 / set.dim;
    for (size_t a = 0; a < set.bases.size(); a++) {
        const Basis &ba = set.bases[a];
        for (size_t i = 0; i < ba.size(); i++) {
            for (size_t j = 0; j < ba.size(); j++) {
                double expected = i == j ? 1.0 : 0.0;
                report.max_orthonormality_deviation =
                    std::max(report.max_orthonormality_deviation, std::abs(ba[i].inner(ba[j]) - expected));
            }
        }
        for (size_t b = a + 1; b < set.bases.size(); b++) {
            for (const Ket &x : ba) {
                for (const Ket &y : set.bases[b]) {
                    report.max_unbiasedness_deviation =
                        std::max(report.max_unbiasedness_deviation, std::abs(std::norm(x.inner(y)) - unbiased));
                }
            }
        }
    }
    report.passed = report.max_orthonormality_deviation < tol && report.max_unbiasedness_deviation < tol;
    return report;
}

Basis fourier_angle_basis(int d) {
    if (d < 2) {
        throw Error(ErrorCode::DimensionTooSmall, "dimension must be at least 2, got " + std::to_string(d));
    }
    Basis basis;
    basis.reserve(d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int n = 0; n < d; n++) {
        ComplexVector amps(d);
        for (int j = 0; j < d; j++) {
            amps(j) = norm * root_of_unity(static_cast<long long>(n) * j, d);
        }
        basis.push_back(Ket::from_vector(amps));
    }
    return basis;
}

Ket gaussian_state() {
    ComplexVector amps(7);
    for (int i = 1; i <= 7; i++) {
        double l = oam_label(i, 7);
        amps(i - 1) = std::exp(-(l / 2.0) * (l / 2.0));
    }
    return Ket::from_vector(amps);
}

int oam_label(int i, int d) {
    if (d % 2 == 0) {
        throw Error(ErrorCode::EvenDimension, "OAM labels need odd d, got " + std::to_string(d));
    }
    if (i < 1 || i > d) {
        throw Error(ErrorCode::IndexOutOfRange, "logical index " + std::to_string(i) + " outside [1, d]");
    }
    return i - 1 - (d - 1) / 2;
}

int oam_index(int label, int d) {
    if (d % 2 == 0) {
        throw Error(ErrorCode::EvenDimension, "OAM labels need odd d, got " + std::to_string(d));
    }
    int half = (d - 1) / 2;
    if (label < -half || label > half) {
        throw Error(ErrorCode::IndexOutOfRange, "OAM label " + std::to_string(label) + " outside the basis");
    }
    return label + half + 1;
}

}  // namespace hdclone
