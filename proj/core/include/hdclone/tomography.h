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

#ifndef HDCLONE_TOMOGRAPHY_H
#define HDCLONE_TOMOGRAPHY_H

#include <cstdint>
#include <vector>

#include "hdclone/mubs.h"
#include "hdclone/qcore.h"

namespace hdclone {

/// Projective measurement outcomes; counts[b][i] is the number of shots in
/// basis b (0-based, alpha = b + 1) that landed on element i.
struct MeasurementCounts {
    int dim = 0;
    uint64_t shots_per_basis = 0;
    std::vector<std::vector<uint64_t>> counts;
};

struct TomographyResult {
    /// Linear-inversion estimate. Hermitian with unit trace but possibly
    /// with negative eigenvalues.
    Operator raw;
    /// Closest density matrix in the eigenvalue water-filling sense.
    Operator physical;
    double fidelity_to_target;
    uint64_t shots;
};

/// Born-rule probabilities <psi_i|rho|psi_i> for every element of every basis.
std::vector<std::vector<double>> exact_probabilities(const Operator &rho, const MubSet &set);

/// Multinomial draw of `shots_per_basis` outcomes in each basis. Basis b uses
/// the stream seed mix_seed(seed, b), so bases are independent and can be
/// simulated in any order.
MeasurementCounts simulate_measurements(const Operator &rho, const MubSet &set, uint64_t shots_per_basis, uint64_t seed);

/// sum_{alpha,i} f_i^alpha |psi_i^alpha><psi_i^alpha| - I over a complete set
/// of d+1 mutually unbiased bases. Throws IncompleteCounts.
Operator linear_inversion(const MeasurementCounts &counts, const MubSet &set);
Operator linear_inversion(const std::vector<std::vector<double>> &frequencies, const MubSet &set);

/// Nearest density matrix to a Hermitian estimate: renormalize the trace, then
/// zero the most negative eigenvalues while spreading their weight uniformly
/// over the rest until the spectrum is non-negative. Throws NotHermitian if
/// the input departs from Hermiticity by more than 1e-8.
Operator project_to_physical(const Operator &raw);

/// simulate_measurements -> linear_inversion -> project_to_physical ->
/// fidelity_state(physical, target).
TomographyResult tomography_pipeline(
    const Operator &rho_true, const MubSet &set, uint64_t shots, uint64_t seed, const Operator &target);

}  // namespace hdclone

#endif
