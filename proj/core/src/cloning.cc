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

#include "hdclone/cloning.h"

#include <cmath>
#include <string>

#include "hdclone/error.h"

namespace hdclone {

namespace {

void require_dim(int d) {
    if (d < 2) {
        throw Error(ErrorCode::DimensionTooSmall, "dimension must be at least 2, got " + std::to_string(d));
    }
}

// <v| m |v> for a composite vector v.
double expectation(const ComplexMatrix &m, const ComplexVector &v) {
    return v.dot(m * v).real();
}

Operator distinguishable_joint(const Ket &psi) {
    Operator input = density_from_ket(psi);
    Operator mixed = maximally_mixed(psi.dim());
    return 0.5 * (tensor(input, mixed) + tensor(mixed, input));
}

uint64_t psi_row_total(const CoincidenceRecord &rec, int psi_index) {
    uint64_t total = rec.count(psi_index, psi_index);
    for (int i = 0; i < rec.dim; i++) {
        if (i != psi_index) {
            total += 2 * rec.count(psi_index, i);
        }
    }
    return total;
}

void require_psi_index(const CoincidenceRecord &rec, int psi_index) {
    if (psi_index < 0 || psi_index >= rec.dim) {
        throw Error(ErrorCode::IndexOutOfRange, "psi index " + std::to_string(psi_index) + " outside the basis");
    }
}

}  // namespace

double optimal_clone_fidelity(int d) {
    require_dim(d);
    return 0.5 + 1.0 / (1.0 + d);
}

double estimation_fidelity(int d) {
    require_dim(d);
    return 2.0 / (1.0 + d);
}

double shrinking_factor(int d) {
    require_dim(d);
    return (d + 2.0) / (2.0 * (d + 1.0));
}

CloneOutput clone_channel(const Ket &psi) {
    const int d = psi.dim();
    Operator projector = symmetric_projector(d);
    Operator input = tensor(density_from_ket(psi), maximally_mixed(d));
    Operator unnormalized = projector * input * projector;
    double p = unnormalized.trace().real();
    Operator joint = (1.0 / p) * unnormalized;
    Operator reduced = partial_trace(joint, Subsystem::First);
    return CloneOutput{std::move(joint), p, std::move(reduced)};
}

Operator clone_reduced_analytic(const Ket &psi) {
    const int d = psi.dim();
    double s = shrinking_factor(d);
    return s * density_from_ket(psi) + (1.0 - s) * maximally_mixed(d);
}

double joint_detection_prob(const Ket &psi, const Ket &i, const Ket &j) {
    if (i.dim() != psi.dim() || j.dim() != psi.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "detection kets must match the input dimension");
    }
    return expectation(clone_channel(psi).joint.matrix(), tensor(i, j));
}

void HomModel::validate() const {
    if (!std::isfinite(visibility) || visibility < 0.0 || visibility > 1.0) {
        throw Error(ErrorCode::InvalidModel, "visibility must lie in [0, 1]");
    }
    if (!std::isfinite(coherence_width) || coherence_width <= 0.0) {
        throw Error(ErrorCode::InvalidModel, "coherence width must be positive");
    }
    if (!std::isfinite(delay)) {
        throw Error(ErrorCode::InvalidModel, "delay must be finite");
    }
}

double HomModel::indistinguishability() const {
    validate();
    double x = delay / coherence_width;
    return visibility * std::exp(-x * x);
}

Operator hom_effective_joint(const Ket &psi, const HomModel &hom) {
    double lambda = hom.indistinguishability();
    Operator joint = clone_channel(psi).joint;
    if (lambda == 1.0) {
        return joint;
    }
    return lambda * joint + (1.0 - lambda) * distinguishable_joint(psi);
}

std::vector<std::pair<double, double>> hom_dip_curve(
    const HomModel &hom, std::span<const double> delays, double base_rate) {
    hom.validate();
    std::vector<std::pair<double, double>> curve;
    curve.reserve(delays.size());
    for (double tau : delays) {
        HomModel at = hom;
        at.delay = tau;
        curve.emplace_back(tau, base_rate * (1.0 - at.indistinguishability()));
    }
    return curve;
}

double coalescence_enhancement(const HomModel &hom) {
    return 1.0 + hom.indistinguishability();
}

uint64_t CoincidenceRecord::count(int i, int j) const {
    auto it = counts.find(i <= j ? std::pair{i, j} : std::pair{j, i});
    return it == counts.end() ? 0 : it->second;
}

CoincidenceRecord simulate_coincidences(
    const Ket &psi, std::span<const Ket> basis, uint64_t n_events, uint64_t seed, const HomModel &hom) {
    const int d = psi.dim();
    if (n_events < 1) {
        throw Error(ErrorCode::InvalidArgument, "n_events must be at least 1");
    }
    if (static_cast<int>(basis.size()) != d) {
        throw Error(ErrorCode::DimensionMismatch, "measurement basis must have exactly d elements");
    }
    for (const Ket &k : basis) {
        if (k.dim() != d) {
            throw Error(ErrorCode::DimensionMismatch, "basis ket dimension differs from the input");
        }
    }
    for (int a = 0; a < d; a++) {
        for (int b = 0; b < d; b++) {
            double expected = a == b ? 1.0 : 0.0;
            if (std::abs(basis[a].inner(basis[b]) - expected) > 1e-8) {
                throw Error(ErrorCode::BasisNotOrthonormal, "Gram matrix deviates from identity");
            }
        }
    }

    CoincidenceRecord rec;
    rec.dim = d;
    rec.basis.assign(basis.begin(), basis.end());
    for (int a = 0; a < d; a++) {
        if (std::norm(basis[a].inner(psi)) > 1.0 - 1e-10) {
            rec.input_index = a;
        }
    }

    ComplexMatrix joint = hom_effective_joint(psi, hom).matrix();
    std::vector<double> weights(static_cast<size_t>(d * d));
    for (int a = 0; a < d; a++) {
        for (int b = 0; b < d; b++) {
            weights[a * d + b] = expectation(joint, tensor(basis[a], basis[b]));
        }
    }

    Rng rng(seed);
    std::vector<uint64_t> cells = CategoricalSampler(weights).sample_counts(rng, n_events);
    for (int a = 0; a < d; a++) {
        for (int b = a; b < d; b++) {
            if (cells[a * d + b] > 0) {
                rec.counts[{a, b}] = cells[a * d + b];
            }
        }
        for (int b = 0; b < a; b++) {
            rec.mirrored_events += cells[a * d + b];
        }
    }
    rec.events = n_events;
    for (const auto &[key, n] : rec.counts) {
        rec.n_tot += key.first == key.second ? n : 2 * n;
    }
    return rec;
}

double fidelity_from_counts(const CoincidenceRecord &rec, int psi_index) {
    require_psi_index(rec, psi_index);
    uint64_t total = psi_row_total(rec, psi_index);
    if (total == 0) {
        throw Error(ErrorCode::EmptyRecord, "no coincidences involve the input state");
    }
    uint64_t numerator = rec.count(psi_index, psi_index);
    for (int i = 0; i < rec.dim; i++) {
        if (i != psi_index) {
            numerator += rec.count(psi_index, i);
        }
    }
    return static_cast<double>(numerator) / static_cast<double>(total);
}

double detection_probability(const CoincidenceRecord &rec, int psi_index, int i) {
    require_psi_index(rec, psi_index);
    require_psi_index(rec, i);
    uint64_t total = psi_row_total(rec, psi_index);
    if (total == 0) {
        throw Error(ErrorCode::EmptyRecord, "no coincidences involve the input state");
    }
    if (i == psi_index) {
        return fidelity_from_counts(rec, psi_index);
    }
    return static_cast<double>(rec.count(i, psi_index)) / static_cast<double>(total);
}

}  // namespace hdclone
