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

#include "hdclone/tomography.h"

#include <string>

#include "hdclone/error.h"
#include "hdclone/random.h"

namespace hdclone {

namespace {

void require_complete(const MubSet &set, size_t measured_bases) {
    if (set.count() != set.dim + 1 || measured_bases != static_cast<size_t>(set.dim + 1)) {
        throw Error(
            ErrorCode::IncompleteCounts,
            "linear inversion needs all " + std::to_string(set.dim + 1) + " bases, got " +
                std::to_string(measured_bases));
    }
}

}  // namespace

std::vector<std::vector<double>> exact_probabilities(const Operator &rho, const MubSet &set) {
    if (rho.dim() != set.dim) {
        throw Error(ErrorCode::DimensionMismatch, "state and basis set dimensions differ");
    }
    std::vector<std::vector<double>> probs;
    probs.reserve(set.bases.size());
    for (const Basis &basis : set.bases) {
        std::vector<double> row;
        row.reserve(basis.size());
        for (const Ket &k : basis) {
            row.push_back(k.amplitudes().dot(rho.matrix() * k.amplitudes()).real());
        }
        probs.push_back(std::move(row));
    }
    return probs;
}

MeasurementCounts simulate_measurements(const Operator &rho, const MubSet &set, uint64_t shots_per_basis, uint64_t seed) {
    if (shots_per_basis < 1) {
        throw Error(ErrorCode::InvalidShots, "shots per basis must be at least 1");
    }
    std::vector<std::vector<double>> probs = exact_probabilities(rho, set);
    MeasurementCounts out;
    out.dim = set.dim;
    out.shots_per_basis = shots_per_basis;
    for (size_t b = 0; b < probs.size(); b++) {
        Rng rng(mix_seed(seed, b));
        out.counts.push_back(CategoricalSampler(probs[b]).sample_counts(rng, shots_per_basis));
    }
    return out;
}

Operator linear_inversion(const std::vector<std::vector<double>> &frequencies, const MubSet &set) {
    require_complete(set, frequencies.size());
    const int d = set.dim;
    ComplexMatrix estimate = -ComplexMatrix::Identity(d, d);
    for (size_t b = 0; b < frequencies.size(); b++) {
        const Basis &basis = set.bases[b];
        if (frequencies[b].size() != basis.size()) {
            throw Error(ErrorCode::IncompleteCounts, "basis " + std::to_string(b + 1) + " has missing outcomes");
        }
        for (size_t i = 0; i < basis.size(); i++) {
            const ComplexVector &v = basis[i].amplitudes();
            estimate += frequencies[b][i] * (v * v.adjoint());
        }
    }
    return Operator((estimate + estimate.adjoint()) / 2.0);
}

Operator linear_inversion(const MeasurementCounts &counts, const MubSet &set) {
    require_complete(set, counts.counts.size());
    std::vector<std::vector<double>> freqs;
    freqs.reserve(counts.counts.size());
    for (size_t b = 0; b < counts.counts.size(); b++) {
        uint64_t total = 0;
        for (uint64_t c : counts.counts[b]) {
            total += c;
        }
        if (total == 0) {
            throw Error(ErrorCode::IncompleteCounts, "basis " + std::to_string(b + 1) + " has no shots");
        }
        std::vector<double> f;
        f.reserve(counts.counts[b].size());
        for (uint64_t c : counts.counts[b]) {
            f.push_back(static_cast<double>(c) / static_cast<double>(total));
        }
        freqs.push_back(std::move(f));
    }
    return linear_inversion(freqs, set);
}

Operator project_to_physical(const Operator &raw) {
    const ComplexMatrix &m = raw.matrix();
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-8) {
        throw Error(ErrorCode::NotHermitian, "estimate is not Hermitian");
    }
    ComplexMatrix h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    Eigen::VectorXd mu = solver.eigenvalues();
    const Eigen::Index n = mu.size();
    double total = mu.sum();
    if (!(total > 0)) {
        throw Error(ErrorCode::NotPositive, "estimate has non-positive trace");
    }
    mu /= total;

    // Eigenvalues are ascending; walk up from the most negative.
    Eigen::VectorXd lambda = Eigen::VectorXd::Zero(n);
    double accumulated = 0;
    Eigen::Index k = 0;
    for (; k < n; k++) {
        double remaining = static_cast<double>(n - k);
        if (mu(k) + accumulated / remaining >= 0) {
            break;
        }
        accumulated += mu(k);
    }
    double shift = k < n ? accumulated / static_cast<double>(n - k) : 0.0;
    for (Eigen::Index j = k; j < n; j++) {
        lambda(j) = mu(j) + shift;
    }
    ComplexMatrix out = solver.eigenvectors() * lambda.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
    return Operator((out + out.adjoint()) / 2.0);
}

TomographyResult tomography_pipeline(
    const Operator &rho_true, const MubSet &set, uint64_t shots, uint64_t seed, const Operator &target) {
    if (target.dim() != rho_true.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "target and true state dimensions differ");
    }
    MeasurementCounts counts = simulate_measurements(rho_true, set, shots, seed);
    Operator raw = linear_inversion(counts, set);
    Operator physical = project_to_physical(raw);
    double f = fidelity_state(physical, target);
    return TomographyResult{std::move(raw), std::move(physical), f, shots};
}

}  // namespace hdclone
