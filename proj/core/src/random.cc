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

#include "hdclone/random.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hdclone/error.h"

namespace hdclone {

uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

uint64_t Rng::uniform_index(uint64_t n) {
    if (n == 0) {
        throw Error(ErrorCode::InvalidArgument, "uniform_index requires n >= 1");
    }
    // Rejection sampling on the largest multiple of n.
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

double Rng::normal() {
    double u1;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

CategoricalSampler::CategoricalSampler(std::span<const double> weights) {
    if (weights.empty()) {
        throw Error(ErrorCode::InvalidArgument, "categorical distribution needs at least one outcome");
    }
    cumulative_.reserve(weights.size());
    double total = 0;
    for (double w : weights) {
        total += std::max(w, 0.0);
        cumulative_.push_back(total);
    }
    if (!(total > 0)) {
        throw Error(ErrorCode::InvalidArgument, "categorical distribution has zero total weight");
    }
    for (double &c : cumulative_) {
        c /= total;
    }
    cumulative_.back() = 1.0;
}

size_t CategoricalSampler::sample(Rng &rng) const {
    double u = rng.uniform();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<size_t>(it - cumulative_.begin(), cumulative_.size() - 1);
}

std::vector<uint64_t> CategoricalSampler::sample_counts(Rng &rng, uint64_t n) const {
    std::vector<uint64_t> counts(cumulative_.size(), 0);
    for (uint64_t k = 0; k < n; k++) {
        counts[sample(rng)]++;
    }
    return counts;
}

}  // namespace hdclone
