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
#include <vector>

#include "gtest/gtest.h"
#include "hdclone/mubs.h"
#include "support/oracles.h"
#include "support/test_util.h"

using namespace hdclone;
using hdclone::testing::code_of;
using hdclone::testing::three_sigma;

namespace {

ComplexMatrix random_unitary(int d, Rng &rng) {
    ComplexMatrix g(d, d);
    for (int r = 0; r < d; r++) {
        for (int c = 0; c < d; c++) {
            double re = rng.normal();
            double im = rng.normal();
            g(r, c) = Complex(re, im);
        }
    }
    return Eigen::HouseholderQR<ComplexMatrix>(g).householderQ();
}

Ket rotate(const ComplexMatrix &u, const Ket &k) {
    return Ket::from_vector(u * k.amplitudes());
}

// Delta-method standard deviation of the estimator (a + b) / (a + 2b), with
// a = N(psi,psi) and b = sum_i N(psi,i) drawn multinomially from n events.
double estimator_sigma(double pa, double pb, double n) {
    double ea = n * pa, eb = n * pb;
    double den = ea + 2 * eb;
    double ga = eb / (den * den);
    double gb = -ea / (den * den);
    double var = ga * ga * n * pa * (1 - pa) + gb * gb * n * pb * (1 - pb) - 2 * ga * gb * n * pa * pb;
    return std::sqrt(var);
}

}  // namespace

TEST(analytic_fidelity, optimal_clone) {
    EXPECT_DOUBLE_EQ(optimal_clone_fidelity(2), 5.0 / 6.0);
    EXPECT_DOUBLE_EQ(optimal_clone_fidelity(7), 0.625);
    for (int d = 2; d <= 31; d++) {
        EXPECT_GT(optimal_clone_fidelity(d), 0.5);
        EXPECT_GT(optimal_clone_fidelity(d), estimation_fidelity(d));
        EXPECT_LT(optimal_clone_fidelity(d + 1), optimal_clone_fidelity(d));
    }
    EXPECT_EQ(code_of([] { optimal_clone_fidelity(1); }), ErrorCode::DimensionTooSmall);
}

TEST(analytic_fidelity, estimation) {
    EXPECT_DOUBLE_EQ(estimation_fidelity(2), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(estimation_fidelity(7), 0.25);
    EXPECT_EQ(code_of([] { estimation_fidelity(0); }), ErrorCode::DimensionTooSmall);
}

TEST(clone_channel, success_probability_matches_trace_oracle) {
    Rng rng(11);
    for (int d = 2; d <= 7; d++) {
        for (int trial = 0; trial < 5; trial++) {
            Ket psi = random_ket(d, rng);
            double oracle_p = oracle::bunching_probability(psi);
            EXPECT_NEAR(oracle_p, (d + 1.0) / (2.0 * d), 1e-12);
            EXPECT_NEAR(clone_channel(psi).success_prob, oracle_p, 1e-12);
        }
    }
    EXPECT_NEAR(clone_channel(random_ket(2, rng)).success_prob, 0.75, 1e-12);
    EXPECT_NEAR(clone_channel(random_ket(7, rng)).success_prob, 4.0 / 7.0, 1e-12);
}

TEST(clone_channel, joint_is_symmetric_density_matrix) {
    Rng rng(12);
    for (int d = 2; d <= 7; d++) {
        Ket psi = random_ket(d, rng);
        CloneOutput out = clone_channel(psi);
        EXPECT_TRUE(out.joint.is_density_matrix(1e-10));
        Operator p = symmetric_projector(d);
        EXPECT_LT((p * out.joint * p).max_abs_diff(out.joint), 1e-10);
        Operator first = partial_trace(out.joint, Subsystem::First);
        Operator second = partial_trace(out.joint, Subsystem::Second);
        EXPECT_LT(first.max_abs_diff(second), 1e-10);
        EXPECT_LT(out.reduced.max_abs_diff(first), 1e-15);
    }
}

TEST(clone_channel, fidelity_at_d7_and_d2) {
    Rng rng(13);
    Ket psi7 = random_ket(7, rng);
    EXPECT_NEAR(fidelity_ket(clone_channel(psi7).reduced, psi7), 0.625, 1e-10);
    Ket psi2 = random_ket(2, rng);
    EXPECT_NEAR(fidelity_ket(clone_channel(psi2).reduced, psi2), 5.0 / 6.0, 1e-10);
}

TEST(clone_channel, universality) {
    Rng rng(14);
    for (int d = 2; d <= 7; d++) {
        std::vector<double> f;
        for (int trial = 0; trial < 200; trial++) {
            Ket psi = random_ket(d, rng);
            f.push_back(fidelity_ket(clone_channel(psi).reduced, psi));
        }
        double mean = 0;
        for (double x : f) mean += x;
        mean /= f.size();
        double var = 0;
        for (double x : f) var += (x - mean) * (x - mean);
        EXPECT_LT(std::sqrt(var / f.size()), 1e-10);
        EXPECT_NEAR(mean, optimal_clone_fidelity(d), 1e-10);
    }
}

TEST(clone_reduced_analytic, shrinking_factor_values) {
    // <psi|s P + (1-s) I/d|psi> = s + (1-s)/d = 1/2 + 1/(1+d), solved for s.
    EXPECT_DOUBLE_EQ(shrinking_factor(2), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(shrinking_factor(7), 9.0 / 16.0);
    for (int d = 2; d <= 7; d++) {
        double s = shrinking_factor(d);
        EXPECT_NEAR(s + (1 - s) / d, optimal_clone_fidelity(d), 1e-15);
    }
}

TEST(clone_reduced_analytic, equals_matrix_channel) {
    Rng rng(15);
    for (int d = 2; d <= 7; d++) {
        for (int trial = 0; trial < 100; trial++) {
            Ket psi = random_ket(d, rng);
            EXPECT_LT(clone_reduced_analytic(psi).max_abs_diff(clone_channel(psi).reduced), 1e-10);
        }
    }
}

TEST(joint_detection_prob, expansion_oracle_values) {
    Rng rng(16);
    Basis basis = computational_basis(7);
    Ket psi = basis[2];
    EXPECT_NEAR(oracle::joint_probability(psi, psi, psi), 0.25, 1e-12);
    EXPECT_NEAR(joint_detection_prob(psi, psi, psi), 0.25, 1e-12);
    EXPECT_NEAR(oracle::joint_probability(psi, psi, basis[5]), 0.0625, 1e-12);
    EXPECT_NEAR(joint_detection_prob(psi, psi, basis[5]), 0.0625, 1e-12);
    EXPECT_NEAR(joint_detection_prob(psi, basis[5], psi), 0.0625, 1e-12);
    EXPECT_NEAR(joint_detection_prob(psi, basis[1], basis[5]), 0.0, 1e-12);

    for (int d = 2; d <= 5; d++) {
        Ket x = random_ket(d, rng);
        Ket y = random_ket(d, rng);
        Ket z = random_ket(d, rng);
        EXPECT_NEAR(joint_detection_prob(x, y, z), oracle::joint_probability(x, y, z), 1e-12);
    }
    EXPECT_EQ(code_of([&] { joint_detection_prob(psi, Ket::basis(2, 0), psi); }), ErrorCode::DimensionMismatch);
}

TEST(joint_detection_prob, normalization_with_factor_two) {
    Rng rng(17);
    for (int d = 2; d <= 7; d++) {
        Ket psi = random_ket(d, rng);
        // Complete psi to an orthonormal basis.
        ComplexMatrix m = ComplexMatrix::Identity(d, d);
        m.col(0) = psi.amplitudes();
        ComplexMatrix q = Eigen::HouseholderQR<ComplexMatrix>(m).householderQ();
        Basis basis;
        for (int k = 0; k < d; k++) basis.push_back(Ket::from_vector(q.col(k)));
        const Ket &self = basis[0];

        double ordered_total = 0;
        for (const Ket &i : basis)
            for (const Ket &j : basis) ordered_total += joint_detection_prob(psi, i, j);
        EXPECT_NEAR(ordered_total, 1.0, 1e-10);

        double book = joint_detection_prob(psi, self, self);
        for (int i = 1; i < d; i++) book += 2 * joint_detection_prob(psi, self, basis[i]);
        EXPECT_NEAR(book, 1.0, 1e-10);
    }
}

TEST(joint_detection_prob, basis_covariance) {
    Rng rng(18);
    for (int d = 2; d <= 7; d++) {
        ComplexMatrix u = random_unitary(d, rng);
        Ket psi = random_ket(d, rng);
        Ket i = random_ket(d, rng);
        Ket j = random_ket(d, rng);
        EXPECT_NEAR(
            joint_detection_prob(rotate(u, psi), rotate(u, i), rotate(u, j)), joint_detection_prob(psi, i, j), 1e-10);
    }
}

TEST(hom_model, validation) {
    EXPECT_EQ(code_of([] { HomModel{1.1, 1.0, 0.0}.validate(); }), ErrorCode::InvalidModel);
    EXPECT_EQ(code_of([] { HomModel{-0.1, 1.0, 0.0}.validate(); }), ErrorCode::InvalidModel);
    EXPECT_EQ(code_of([] { HomModel{0.9, 0.0, 0.0}.validate(); }), ErrorCode::InvalidModel);
    EXPECT_NO_THROW(HomModel::ideal().validate());
    EXPECT_DOUBLE_EQ(HomModel::ideal().indistinguishability(), 1.0);
    EXPECT_NEAR((HomModel{0.89, 2.0, 2.0}).indistinguishability(), 0.89 * std::exp(-1.0), 1e-15);
}

TEST(hom_effective_joint, limits_and_convexity) {
    Rng rng(19);
    Ket psi7 = random_ket(7, rng);
    EXPECT_LT(hom_effective_joint(psi7, HomModel::ideal()).max_abs_diff(clone_channel(psi7).joint), 1e-15);

    HomModel off{0.0, 1.0, 0.0};
    Operator dist = hom_effective_joint(psi7, off);
    EXPECT_TRUE(dist.is_density_matrix());
    EXPECT_NEAR(fidelity_ket(partial_trace(dist, Subsystem::First), psi7), 4.0 / 7.0, 1e-12);
    EXPECT_NEAR(fidelity_ket(partial_trace(dist, Subsystem::Second), psi7), 4.0 / 7.0, 1e-12);

    Ket psi2 = random_ket(2, rng);
    double f_ideal = fidelity_ket(partial_trace(hom_effective_joint(psi2, HomModel::ideal()), Subsystem::First), psi2);
    double f_dist = fidelity_ket(partial_trace(hom_effective_joint(psi2, off), Subsystem::First), psi2);
    HomModel partial{0.89, 1.0, 0.0};
    double f = fidelity_ket(partial_trace(hom_effective_joint(psi2, partial), Subsystem::First), psi2);
    EXPECT_NEAR(f, 0.89 * f_ideal + 0.11 * f_dist, 1e-12);
    EXPECT_NEAR(f_ideal, 5.0 / 6.0, 1e-12);
    EXPECT_NEAR(f_dist, 0.75, 1e-12);
}

TEST(hom_dip_curve, endpoints) {
    HomModel model{0.89, 1.0, 0.0};
    std::vector<double> delays{0.0, 0.5, 1.0, 50.0};
    auto curve = hom_dip_curve(model, delays, 100.0);
    ASSERT_EQ(curve.size(), 4u);
    EXPECT_NEAR(curve[0].second, 11.0, 1e-12);
    EXPECT_NEAR(curve[3].second, 100.0, 1e-9);
    EXPECT_LT(curve[0].second, curve[1].second);
    EXPECT_LT(curve[1].second, curve[2].second);

    auto perfect = hom_dip_curve(HomModel{1.0, 1.0, 0.0}, delays, 100.0);
    EXPECT_DOUBLE_EQ(perfect[0].second, 0.0);
    EXPECT_EQ(code_of([&] { hom_dip_curve(HomModel{0.5, -1.0, 0.0}, delays, 1.0); }), ErrorCode::InvalidModel);
}

TEST(coalescence_enhancement, endpoints) {
    EXPECT_DOUBLE_EQ(coalescence_enhancement(HomModel{1.0, 1.0, 0.0}), 2.0);
    EXPECT_DOUBLE_EQ(coalescence_enhancement(HomModel{0.0, 1.0, 0.0}), 1.0);
    EXPECT_NEAR(coalescence_enhancement(HomModel{0.89, 1.0, 0.0}), 1.89, 1e-15);
    EXPECT_NEAR(coalescence_enhancement(HomModel{1.0, 1.0, 100.0}), 1.0, 1e-12);
}

TEST(simulate_coincidences, ideal_qubit_bunching_fraction) {
    Basis basis = computational_basis(2);
    CoincidenceRecord rec = simulate_coincidences(basis[0], basis, 1000000, 5, HomModel::ideal());
    EXPECT_EQ(rec.input_index, 0);
    EXPECT_EQ(rec.events, 1000000u);
    EXPECT_NEAR(static_cast<double>(rec.count(0, 0)) / rec.n_tot, 2.0 / 3.0, 0.005);
    EXPECT_EQ(rec.count(1, 1), 0u);
    uint64_t tallied = rec.count(0, 0) + rec.count(0, 1) + rec.mirrored_events;
    EXPECT_EQ(tallied, rec.events);
}

TEST(simulate_coincidences, contract) {
    Basis basis = computational_basis(3);
    EXPECT_EQ(code_of([&] { simulate_coincidences(basis[0], basis, 0, 1, HomModel::ideal()); }), ErrorCode::InvalidArgument);

    Basis skewed = basis;
    std::vector<Complex> tilt{1, 0.1, 0};
    skewed[1] = ket_new(tilt);
    EXPECT_EQ(
        code_of([&] { simulate_coincidences(basis[0], skewed, 10, 1, HomModel::ideal()); }),
        ErrorCode::BasisNotOrthonormal);

    Basis short_basis(basis.begin(), basis.begin() + 2);
    EXPECT_EQ(
        code_of([&] { simulate_coincidences(basis[0], short_basis, 10, 1, HomModel::ideal()); }),
        ErrorCode::DimensionMismatch);

    EXPECT_EQ(
        code_of([&] { simulate_coincidences(basis[0], basis, 10, 1, HomModel{2.0, 1.0, 0.0}); }),
        ErrorCode::InvalidModel);
}

TEST(simulate_coincidences, deterministic_for_fixed_seed) {
    Basis basis = fourier_angle_basis(5);
    CoincidenceRecord a = simulate_coincidences(basis[3], basis, 20000, 99, HomModel{0.9, 1.0, 0.3});
    CoincidenceRecord b = simulate_coincidences(basis[3], basis, 20000, 99, HomModel{0.9, 1.0, 0.3});
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_EQ(a.n_tot, b.n_tot);
    EXPECT_EQ(a.mirrored_events, b.mirrored_events);
    CoincidenceRecord c = simulate_coincidences(basis[3], basis, 20000, 100, HomModel{0.9, 1.0, 0.3});
    EXPECT_NE(a.counts, c.counts);
}

TEST(simulate_coincidences, cells_agree_with_brute_force_oracle) {
    Rng rng(20);
    for (uint64_t n : {10000ull, 100000ull, 1000000ull}) {
        Basis basis = computational_basis(4);
        Ket psi = random_ket(4, rng);
        CoincidenceRecord rec = simulate_coincidences(psi, basis, n, 7 + n, HomModel::ideal());
        EXPECT_EQ(rec.input_index, -1);
        for (int i = 0; i < 4; i++) {
            for (int j = i; j < 4; j++) {
                double p = oracle::joint_probability(psi, basis[i], basis[j]);
                EXPECT_NEAR(rec.count(i, j) / static_cast<double>(n), p, three_sigma(p, n) + 1e-12)
                    << "cell " << i << "," << j << " at n=" << n;
            }
        }
    }
}

TEST(fidelity_from_counts, hand_computed_records) {
    CoincidenceRecord rec;
    rec.dim = 2;
    rec.counts[{0, 0}] = 50;
    rec.counts[{0, 1}] = 25;
    EXPECT_DOUBLE_EQ(fidelity_from_counts(rec, 0), 0.75);
    EXPECT_DOUBLE_EQ(detection_probability(rec, 0, 1), 0.25);
    EXPECT_DOUBLE_EQ(detection_probability(rec, 0, 0) + detection_probability(rec, 0, 1), 1.0);

    CoincidenceRecord only_self;
    only_self.dim = 3;
    only_self.counts[{1, 1}] = 17;
    EXPECT_DOUBLE_EQ(fidelity_from_counts(only_self, 1), 1.0);

    CoincidenceRecord empty;
    empty.dim = 3;
    EXPECT_EQ(code_of([&] { fidelity_from_counts(empty, 0); }), ErrorCode::EmptyRecord);
    EXPECT_EQ(code_of([&] { fidelity_from_counts(only_self, 3); }), ErrorCode::IndexOutOfRange);
}

TEST(fidelity_from_counts, record_total_uses_factor_two) {
    Basis basis = computational_basis(5);
    CoincidenceRecord rec = simulate_coincidences(basis[1], basis, 50000, 3, HomModel::ideal());
    uint64_t expected = rec.count(1, 1);
    for (int i = 0; i < 5; i++) {
        if (i != 1) expected += 2 * rec.count(1, i);
    }
    EXPECT_EQ(rec.n_tot, expected);
}

TEST(fidelity_from_counts, ideal_simulation_d7) {
    Basis basis = computational_basis(7);
    CoincidenceRecord rec = simulate_coincidences(basis[4], basis, 100000, 21, HomModel::ideal());
    EXPECT_NEAR(fidelity_from_counts(rec, 4), 0.625, 0.01);
}

TEST(fidelity_from_counts, converges_at_multinomial_rate) {
    for (int d : {2, 5, 7}) {
        Basis basis = computational_basis(d);
        double pa = 2.0 / (d + 1);
        double pb = (d - 1) / (2.0 * (d + 1));
        for (uint64_t n : {10000ull, 100000ull, 1000000ull}) {
            CoincidenceRecord rec = simulate_coincidences(basis[0], basis, n, 1000 + n + d, HomModel::ideal());
            double sigma = estimator_sigma(pa, pb, static_cast<double>(n));
            EXPECT_NEAR(fidelity_from_counts(rec, 0), optimal_clone_fidelity(d), 3 * sigma)
                << "d=" << d << " n=" << n;
        }
    }
}

TEST(fidelity_from_counts, degraded_interference_lowers_estimate) {
    Basis basis = computational_basis(3);
    CoincidenceRecord ideal = simulate_coincidences(basis[0], basis, 200000, 4, HomModel::ideal());
    CoincidenceRecord poor = simulate_coincidences(basis[0], basis, 200000, 4, HomModel{0.5, 1.0, 0.0});
    EXPECT_GT(fidelity_from_counts(ideal, 0), fidelity_from_counts(poor, 0) + 0.02);
}
