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

#ifndef HDCLONE_RANDOM_H
#define HDCLONE_RANDOM_H

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace hdclone {

/// SplitMix64 finalizer. Used to derive independent stream seeds.
uint64_t mix_seed(uint64_t seed, uint64_t stream);

/// Seeded 64-bit generator with bit-reproducible draws.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The derived draws below are computed by hand rather than through
/// std::*_distribution, whose algorithms are implementation-defined.
class Rng {
   public:
    explicit Rng(uint64_t seed) : engine_(seed) {
    }

    uint64_t next_u64() {
        return engine_();
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Requires n >= 1.
    uint64_t uniform_index(uint64_t n);

    /// Standard normal deviate (Box-Muller, no caching).
    double normal();

   private:
    std::mt19937_64 engine_;
};

/// Inverse-CDF sampler over a fixed discrete distribution.
///
/// Weights need not be normalized; negative weights are clamped to zero.
class CategoricalSampler {
   public:
    explicit CategoricalSampler(std::span<const double> weights);

    size_t size() const {
        return cumulative_.size();
    }

    size_t sample(Rng &rng) const;

    /// Counts of `n` independent draws.
    std::vector<uint64_t> sample_counts(Rng &rng, uint64_t n) const;

   private:
    std::vector<double> cumulative_;
};

}  // namespace hdclone

#endif
