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

#ifndef HDCLONE_QKD_H
#define HDCLONE_QKD_H

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hdclone/mubs.h"
#include "hdclone/qcore.h"

namespace hdclone {

/// Two-basis prepare-and-measure key distribution over d-level symbols.
/// Basis 0 is the computational basis, basis 1 the Fourier angle basis.
struct QkdConfig {
    int dim = 7;
    uint64_t n_rounds = 100000;
    bool eve_present = false;
    /// Probability that the channel replaces Bob's photon by I/d.
    double channel_error_rate = 0.0;
    uint64_t seed = 0;

    /// Throws InvalidConfig.
    void validate() const;
};

struct QkdRound {
    int alice_symbol = 0;
    int alice_basis = 0;
    int bob_basis = 0;
    int bob_symbol = 0;
    /// Eve's result after measuring her clone in the announced basis.
    std::optional<int> eve_symbol;
    bool sifted = false;
};

struct QkdTranscript {
    int dim = 0;
    std::vector<QkdRound> rounds;
    std::vector<int> sifted_key_alice;
    std::vector<int> sifted_key_bob;
    /// Empty unless Eve was present.
    std::vector<int> sifted_key_eve;
    /// NaN when no round was sifted.
    double qber = 0;
    double mutual_information_ab = 0;
};

std::array<Basis, 2> bb84_bases(int d);

/// Intercept-clone-resend: Eve runs the symmetric cloner on the carrier,
/// forwards photon one to Bob and keeps photon two.
struct EveAttack {
    Operator joint;
    Operator forwarded;
    Operator eve_clone;
};

EveAttack eve_clone_attack(const Ket &psi);

/// Deterministic given cfg.seed; round r draws from the stream
/// mix_seed(seed, r), so rounds may be simulated in any order.
QkdTranscript run_bb84(const QkdConfig &cfg);

/// Fraction of sifted rounds where Bob's symbol differs from Alice's.
/// Throws NoSiftedRounds.
double qber(const QkdTranscript &transcript);

/// Fraction of sifted rounds where Eve's symbol agrees with Alice's.
/// Throws NoSiftedRounds, InvalidArgument if Eve was absent.
double eve_agreement(const QkdTranscript &transcript);

/// log2 d + (1-e) log2(1-e) + e log2(e/(d-1)), with 0 log 0 = 0.
/// Throws OutOfRange for e outside [0, 1].
double mutual_information(int d, double e);

/// Coherent-attack error threshold; tabulated for d = 2 and d = 7 only.
/// Throws UnsupportedDimension otherwise.
double security_bound_coh(int d);

/// Conditional probabilities P(bob_symbol | alice_symbol) for a fixed pair of
/// bases, rows indexed by Alice's symbol.
Eigen::MatrixXd probability_matrix(const QkdConfig &cfg, int alice_basis, int bob_basis);
Eigen::MatrixXd probability_matrix(const QkdTranscript &transcript, int alice_basis, int bob_basis);

/// 2d x 2d block matrix over (alice_basis, alice_symbol) x (bob_basis,
/// bob_symbol): rows are indexed by alice_basis * d + alice_symbol.
Eigen::MatrixXd full_probability_matrix(const QkdConfig &cfg);
Eigen::MatrixXd full_probability_matrix(const QkdTranscript &transcript);

struct DitMessage {
    int base = 2;
    std::vector<int> symbols;
    /// Bytes encoded by `symbols`.
    size_t payload_length = 0;
};

/// c_i = (m_i + k_i) mod d. Throws KeyTooShort, InvalidDigit.
DitMessage otp_encrypt(const DitMessage &msg, std::span<const int> key);
DitMessage otp_decrypt(const DitMessage &msg, std::span<const int> key);

/// ceil(log_d 256).
int digits_per_byte(int d);

/// Each byte becomes digits_per_byte(d) base-d digits, most significant first.
DitMessage image_to_dits(std::span<const uint8_t> bytes, int d);

enum class DigitDecode {
    /// Throws InvalidDigit for digits >= d and for groups above 255.
    Strict,
    /// Groups above 255 saturate to 255; used for images decrypted with a
    /// corrupted key.
    Saturate,
};

std::vector<uint8_t> dits_to_image(const DitMessage &msg, DigitDecode mode = DigitDecode::Strict);

}  // namespace hdclone

#endif
