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

#ifndef HDCLONE_CLONING_H
#define HDCLONE_CLONING_H

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "hdclone/qcore.h"

namespace hdclone {

/// 1/2 + 1/(1+d): fidelity of each copy from the optimal symmetric 1->2
/// universal cloner.
double optimal_clone_fidelity(int d);

/// 2/(1+d): best fidelity reachable by measuring the state and re-preparing.
double estimation_fidelity(int d);

/// Weight s of the input projector in the clone s|psi><psi| + (1-s) I/d.
double shrinking_factor(int d);

struct CloneOutput {
    /// Two-photon state after post-selecting on both photons leaving the same
    /// beam-splitter port. Supported on the symmetric subspace.
    Operator joint;
    /// Probability of the bunching event, (d+1)/(2d) for any input.
    double success_prob;
    /// Single-clone state, identical for both photons.
    Operator reduced;
};

/// Symmetrizes |psi><psi| (x) I/d on the symmetric subspace and renormalizes.
CloneOutput clone_channel(const Ket &psi);

/// Closed form s|psi><psi| + (1-s) I/d of the reduced clone.
Operator clone_reduced_analytic(const Ket &psi);

/// <i j| joint |i j> for the ideal clone of psi: ordered detection of photon
/// one in |i> and photon two in |j>.
double joint_detection_prob(const Ket &psi, const Ket &i, const Ket &j);

/// Two-photon interference quality: visibility v in [0, 1], coherence width
/// tau_c > 0 and the delay tau between the photons, in the same units.
struct HomModel {
    double visibility = 1.0;
    double coherence_width = 1.0;
    double delay = 0.0;

    static HomModel ideal() {
        return {};
    }

    /// Throws InvalidModel unless v in [0,1], tau_c > 0 and both finite.
    void validate() const;

    /// lambda = v * exp(-(tau / tau_c)^2).
    double indistinguishability() const;
};

/// lambda * (symmetrized clone) + (1 - lambda) * (|psi><psi| (x) I/d +
/// I/d (x) |psi><psi|) / 2.
Operator hom_effective_joint(const Ket &psi, const HomModel &hom);

/// C(tau) = base_rate * (1 - v exp(-(tau/tau_c)^2)) at each delay.
std::vector<std::pair<double, double>> hom_dip_curve(
    const HomModel &hom, std::span<const double> delays, double base_rate);

/// R = 1 + v exp(-(tau/tau_c)^2) at the model's delay.
double coalescence_enhancement(const HomModel &hom);

/// Coincidence counts N(i, j) per detector setting (detector one projecting
/// on basis[i], detector two on basis[j]), indexed with i <= j.
///
/// Settings with i > j mirror those with i < j by the cloner's exchange
/// symmetry and are not tallied; events the sampler drew there are kept only
/// in `mirrored_events`.
struct CoincidenceRecord {
    int dim = 0;
    /// Index of the input state in `basis`, or -1 if the input is not a
    /// member of the measurement basis.
    int input_index = -1;
    std::vector<Ket> basis;
    std::map<std::pair<int, int>, uint64_t> counts;
    /// sum_i N(i,i) + 2 sum_{i<j} N(i,j); equals N(psi,psi) + 2 sum N(psi,i)
    /// when the basis contains psi.
    uint64_t n_tot = 0;
    uint64_t events = 0;
    uint64_t mirrored_events = 0;

    /// N(i, j) with either argument order.
    uint64_t count(int i, int j) const;
};

/// Draws `n_events` coincidences from hom_effective_joint(psi, hom) measured
/// in `basis` on both detectors.
///
/// Throws InvalidArgument for n_events < 1, DimensionMismatch for a basis of
/// the wrong size, BasisNotOrthonormal if the Gram matrix deviates from the
/// identity by more than 1e-8.
CoincidenceRecord simulate_coincidences(
    const Ket &psi, std::span<const Ket> basis, uint64_t n_events, uint64_t seed, const HomModel &hom);

/// (N(psi,psi) + sum_{i!=psi} N(psi,i)) / (N(psi,psi) + 2 sum_{i!=psi} N(psi,i)).
double fidelity_from_counts(const CoincidenceRecord &rec, int psi_index);

/// Entry P(|i>, |psi>) of the probability matrix: N(i, psi) / N_tot for
/// i != psi and fidelity_from_counts on the diagonal. Each row sums to one.
double detection_probability(const CoincidenceRecord &rec, int psi_index, int i);

}  // namespace hdclone

#endif
