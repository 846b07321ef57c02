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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "hdclone/cloning.h"
#include "support/test_util.h"

using namespace hdclone;
using hdclone::testing::code_of;
using hdclone::testing::three_sigma;

namespace {

// Euclidean projection onto the probability simplex by the sort-and-threshold
// construction; an independent route to water-filled eigenvalues.
std::vector<double> simplex_projection(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0, theta = 0;
    for (size_t j = 0; j < u.size(); j++) {
        cumulative += u[j];
        double t = (cumulative - 1.0) / (j + 1);
        if (u[j] - t > 0) theta = t;
    }
    for (double &x : v) x = std::max(x - theta, 0.0);
    return v;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace

TEST(simulate_measurements, uniform_state_counts) {
    MubSet set = mub_set(2);
    MeasurementCounts counts = simulate_measurements(maximally_mixed(2), set, 10000, 1);
    ASSERT_EQ(counts.counts.size(), 3u);
    for (const auto &basis_counts : counts.counts) {
        EXPECT_EQ(basis_counts[0] + basis_counts[1], 10000u);
        EXPECT_NEAR(basis_counts[0] / 1e4, 0.5, three_sigma(0.5, 1e4));
    }
}

TEST(simulate_measurements, eigenstate_is_deterministic_in_its_basis) {
    MubSet set = mub_set(5);
    for (int alpha = 1; alpha <= 6; alpha++) {
        Operator rho = density_from_ket(set.basis(alpha)[0]);
        MeasurementCounts counts = simulate_measurements(rho, set, 2000, 3);
        EXPECT_EQ(counts.counts[alpha - 1][0], 2000u) << "alpha=" << alpha;
    }
}

TEST(simulate_measurements, cloned_gaussian_in_logical_basis) {
    MubSet set = mub_set(7);
    Ket g = gaussian_state();
    Operator clone = clone_reduced_analytic(g);
    auto probs = exact_probabilities(clone, set);
    const double s = 9.0 / 16.0;
    for (int i = 0; i < 7; i++) {
        double expected = s * std::norm(g[i]) + (1 - s) / 7;
        EXPECT_NEAR(probs[0][i], expected, 1e-12);
    }
    const uint64_t shots = 200000;
    MeasurementCounts counts = simulate_measurements(clone, set, shots, 4);
    for (int i = 0; i < 7; i++) {
        double p = probs[0][i];
        EXPECT_NEAR(counts.counts[0][i] / static_cast<double>(shots), p, three_sigma(p, shots));
    }
}

TEST(simulate_measurements, contract_and_determinism) {
    MubSet set = mub_set(3);
    EXPECT_EQ(code_of([&] { simulate_measurements(maximally_mixed(3), set, 0, 1); }), ErrorCode::InvalidShots);
    EXPECT_EQ(code_of([&] { simulate_measurements(maximally_mixed(5), set, 10, 1); }), ErrorCode::DimensionMismatch);
    Rng rng(5);
    Operator rho = random_density_matrix(3, rng);
    EXPECT_EQ(simulate_measurements(rho, set, 5000, 8).counts, simulate_measurements(rho, set, 5000, 8).counts);
}

TEST(linear_inversion, exact_probabilities_reconstruct_the_state) {
    Rng rng(6);
    for (int d : {2, 3, 5, 7}) {
        MubSet set = mub_set(d);
        for (int trial = 0; trial < 50; trial++) {
            Operator rho = trial % 5 == 0 ? density_from_ket(random_ket(d, rng)) : random_density_matrix(d, rng);
            Operator estimate = linear_inversion(exact_probabilities(rho, set), set);
            EXPECT_LT(estimate.max_abs_diff(rho), 1e-10) << "d=" << d;
        }
        EXPECT_LT(linear_inversion(exact_probabilities(maximally_mixed(d), set), set).max_abs_diff(maximally_mixed(d)), 1e-12);
    }
}

TEST(linear_inversion, shot_noise_concentrates) {
    Rng rng(7);
    MubSet set = mub_set(7);
    Operator rho = density_from_ket(random_ket(7, rng));
    Operator estimate = linear_inversion(simulate_measurements(rho, set, 1000000, 9), set);
    EXPECT_LT(estimate.max_abs_diff(rho), 0.01);
    EXPECT_NEAR(estimate.trace().real(), 1.0, 1e-12);
    EXPECT_TRUE(estimate.is_hermitian(1e-12));
}

TEST(linear_inversion, rejects_incomplete_data) {
    MubSet set = mub_set(3);
    MeasurementCounts counts = simulate_measurements(maximally_mixed(3), set, 100, 1);
    counts.counts.pop_back();
    EXPECT_EQ(code_of([&] { linear_inversion(counts, set); }), ErrorCode::IncompleteCounts);

    MubSet partial = set;
    partial.bases.pop_back();
    EXPECT_EQ(code_of([&] { linear_inversion(exact_probabilities(maximally_mixed(3), partial), partial); }),
              ErrorCode::IncompleteCounts);

    MeasurementCounts zeroed = simulate_measurements(maximally_mixed(3), set, 100, 1);
    std::fill(zeroed.counts[2].begin(), zeroed.counts[2].end(), 0);
    EXPECT_EQ(code_of([&] { linear_inversion(zeroed, set); }), ErrorCode::IncompleteCounts);
}

TEST(project_to_physical, fixed_point_for_valid_states) {
    Rng rng(8);
    for (int d = 2; d <= 7; d++) {
        Operator rho = random_density_matrix(d, rng);
        EXPECT_LT(project_to_physical(rho).max_abs_diff(rho), 1e-12);
        Operator pure = density_from_ket(random_ket(d, rng));
        EXPECT_LT(project_to_physical(pure).max_abs_diff(pure), 1e-12);
    }
}

TEST(project_to_physical, clips_two_level_example) {
    ComplexMatrix m(2, 2);
    m << 1.2, 0, 0, -0.2;
    ComplexMatrix expected(2, 2);
    expected << 1, 0, 0, 0;
    EXPECT_LT(project_to_physical(Operator(m)).max_abs_diff(Operator(expected)), 1e-12);
}

TEST(project_to_physical, matches_simplex_projection_oracle) {
    Rng rng(9);
    for (int trial = 0; trial < 200; trial++) {
        int d = 2 + trial % 4;
        std::vector<double> spectrum(d);
        for (double &x : spectrum) x = rng.normal() * 0.4 + 1.0 / d;
        double total = std::accumulate(spectrum.begin(), spectrum.end(), 0.0);
        if (total <= 0.05) continue;
        for (double &x : spectrum) x /= total;

        Rng urng(trial);
        ComplexMatrix g(d, d);
        for (int r = 0; r < d; r++)
            for (int c = 0; c < d; c++) g(r, c) = Complex(urng.normal(), urng.normal());
        ComplexMatrix u = Eigen::HouseholderQR<ComplexMatrix>(g).householderQ();
        Eigen::VectorXd diag(d);
        for (int k = 0; k < d; k++) diag(k) = spectrum[k];
        Operator raw(u * diag.cast<Complex>().asDiagonal() * u.adjoint());

        std::vector<double> projected = simplex_projection(spectrum);
        for (int k = 0; k < d; k++) diag(k) = projected[k];
        Operator expected(u * diag.cast<Complex>().asDiagonal() * u.adjoint());

        Operator out = project_to_physical(raw);
        EXPECT_LT(out.max_abs_diff(expected), 1e-10);
        EXPECT_TRUE(out.is_density_matrix(1e-10));
        EXPECT_LT(project_to_physical(out).max_abs_diff(out), 1e-12);
    }
}

TEST(project_to_physical, rejects_non_hermitian) {
    ComplexMatrix m(2, 2);
    m << 0.5, 0.1, 0.0, 0.5;
    EXPECT_EQ(code_of([&] { project_to_physical(Operator(m)); }), ErrorCode::NotHermitian);
}

TEST(tomography_pipeline, cloned_gaussian) {
    MubSet set = mub_set(7);
    Ket g = gaussian_state();
    Operator clone = clone_reduced_analytic(g);
    TomographyResult to_clone = tomography_pipeline(clone, set, 1000000, 10, clone);
    EXPECT_GE(to_clone.fidelity_to_target, 0.99);
    EXPECT_TRUE(to_clone.physical.is_density_matrix(1e-9));
    EXPECT_EQ(to_clone.shots, 1000000u);

    TomographyResult to_input = tomography_pipeline(clone, set, 1000000, 10, density_from_ket(g));
    EXPECT_NEAR(to_input.fidelity_to_target, 0.625, 0.01);
}

TEST(tomography_pipeline, few_shots_still_physical) {
    MubSet set = mub_set(7);
    Operator clone = clone_reduced_analytic(gaussian_state());
    TomographyResult r = tomography_pipeline(clone, set, 100, 11, clone);
    EXPECT_TRUE(r.physical.is_density_matrix(1e-9));
    EXPECT_GE(r.fidelity_to_target, 0.0);
    EXPECT_LE(r.fidelity_to_target, 1.0 + 1e-9);
    EXPECT_NEAR(r.raw.trace().real(), 1.0, 1e-12);
}

TEST(tomography_pipeline, error_shrinks_with_shots) {
    MubSet set = mub_set(3);
    Rng rng(12);
    Operator rho = random_density_matrix(3, rng);
    double previous = 1e9;
    for (uint64_t shots : {1000ull, 10000ull, 100000ull, 1000000ull}) {
        std::vector<double> errors;
        for (uint64_t seed = 0; seed < 20; seed++) {
            Operator est = linear_inversion(simulate_measurements(rho, set, shots, seed * 7919 + shots), set);
            errors.push_back(est.max_abs_diff(rho));
        }
        double m = median(errors);
        EXPECT_LT(m, previous) << "shots=" << shots;
        previous = m;
    }
}

TEST(tomography_pipeline, reconstructed_clone_commutes_with_analytic) {
    MubSet set = mub_set(7);
    Operator clone = clone_reduced_analytic(gaussian_state());
    double previous = 1e9;
    for (uint64_t shots : {1000ull, 100000ull, 1000000ull}) {
        Operator est = tomography_pipeline(clone, set, shots, 13, clone).physical;
        double comm = (est * clone - clone * est).matrix().cwiseAbs().maxCoeff();
        EXPECT_LT(comm, previous);
        previous = comm;
    }
    EXPECT_LT(previous, 0.003);
}
