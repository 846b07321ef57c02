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

#include "hdclone/qkd.h"

#include <cmath>
#include <limits>
#include <string>

#include "hdclone/cloning.h"
#include "hdclone/error.h"
#include "hdclone/random.h"

namespace hdclone {

namespace {

double born(const ComplexMatrix &m, const ComplexVector &v) {
    return v.dot(m * v).real();
}

// Outcome distributions for every (alice_basis, alice_symbol, bob_basis).
// Without Eve an outcome is Bob's symbol; with Eve it is bob * d + eve, where
// Eve measures photon two in Alice's basis.
class OutcomeTables {
   public:
    explicit OutcomeTables(const QkdConfig &cfg) : d_(cfg.dim), eve_(cfg.eve_present) {
        auto bases = bb84_bases(d_);
        const double eps = cfg.channel_error_rate;
        for (int ab = 0; ab < 2; ab++) {
            for (int sym = 0; sym < d_; sym++) {
                const Ket &sent = bases[ab][sym];
                ComplexMatrix state;
                if (eve_) {
                    EveAttack attack = eve_clone_attack(sent);
                    state = (1.0 - eps) * attack.joint.matrix() +
                            eps * tensor(maximally_mixed(d_), attack.eve_clone).matrix();
                } else {
                    state = (1.0 - eps) * density_from_ket(sent).matrix() + eps * maximally_mixed(d_).matrix();
                }
                for (int bb = 0; bb < 2; bb++) {
                    std::vector<double> p;
                    if (eve_) {
                        for (int b = 0; b < d_; b++) {
                            for (int e = 0; e < d_; e++) {
                                p.push_back(born(state, tensor(bases[bb][b], bases[ab][e])));
                            }
                        }
                    } else {
                        for (int b = 0; b < d_; b++) {
                            p.push_back(born(state, bases[bb][b].amplitudes()));
                        }
                    }
                    probs_.push_back(std::move(p));
                }
            }
        }
        for (const auto &p : probs_) {
            samplers_.emplace_back(p);
        }
    }

    bool eve() const {
        return eve_;
    }

    const CategoricalSampler &sampler(int ab, int sym, int bb) const {
        return samplers_[index(ab, sym, bb)];
    }

    double bob_marginal(int ab, int sym, int bb, int bob) const {
        const auto &p = probs_[index(ab, sym, bb)];
        if (!eve_) {
            return p[bob];
        }
        double total = 0;
        for (int e = 0; e < d_; e++) {
            total += p[bob * d_ + e];
        }
        return total;
    }

   private:
    size_t index(int ab, int sym, int bb) const {
        return static_cast<size_t>((ab * d_ + sym) * 2 + bb);
    }

    int d_;
    bool eve_;
    std::vector<std::vector<double>> probs_;
    std::vector<CategoricalSampler> samplers_;
};

void require_basis_index(int b) {
    if (b != 0 && b != 1) {
        throw Error(ErrorCode::IndexOutOfRange, "basis index must be 0 or 1");
    }
}

void check_key(const DitMessage &msg, std::span<const int> key) {
    if (key.size() < msg.symbols.size()) {
        throw Error(
            ErrorCode::KeyTooShort,
            "key has " + std::to_string(key.size()) + " symbols, message needs " + std::to_string(msg.symbols.size()));
    }
    for (size_t k = 0; k < msg.symbols.size(); k++) {
        if (key[k] < 0 || key[k] >= msg.base || msg.symbols[k] < 0 || msg.symbols[k] >= msg.base) {
            throw Error(ErrorCode::InvalidDigit, "symbol outside [0, d) at position " + std::to_string(k));
        }
    }
}

}  // namespace

void QkdConfig::validate() const {
    if (dim < 2) {
        throw Error(ErrorCode::InvalidConfig, "dimension must be at least 2");
    }
    if (n_rounds < 1) {
        throw Error(ErrorCode::InvalidConfig, "need at least one round");
    }
    if (!(channel_error_rate >= 0.0 && channel_error_rate < 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "channel error rate must lie in [0, 1)");
    }
}

std::array<Basis, 2> bb84_bases(int d) {
    return {computational_basis(d), fourier_angle_basis(d)};
}

EveAttack eve_clone_attack(const Ket &psi) {
    CloneOutput clone = clone_channel(psi);
    Operator eve = partial_trace(clone.joint, Subsystem::Second);
    return EveAttack{std::move(clone.joint), std::move(clone.reduced), std::move(eve)};
}

QkdTranscript run_bb84(const QkdConfig &cfg) {
    cfg.validate();
    const int d = cfg.dim;
    OutcomeTables tables(cfg);
    QkdTranscript t;
    t.dim = d;
    t.rounds.reserve(cfg.n_rounds);
    for (uint64_t r = 0; r < cfg.n_rounds; r++) {
        Rng rng(mix_seed(cfg.seed, r));
        QkdRound round;
        round.alice_symbol = static_cast<int>(rng.uniform_index(d));
        round.alice_basis = static_cast<int>(rng.uniform_index(2));
        round.bob_basis = static_cast<int>(rng.uniform_index(2));
        size_t outcome = tables.sampler(round.alice_basis, round.alice_symbol, round.bob_basis).sample(rng);
        if (tables.eve()) {
            round.bob_symbol = static_cast<int>(outcome) / d;
            round.eve_symbol = static_cast<int>(outcome) % d;
        } else {
            round.bob_symbol = static_cast<int>(outcome);
        }
        round.sifted = round.alice_basis == round.bob_basis;
        if (round.sifted) {
            t.sifted_key_alice.push_back(round.alice_symbol);
            t.sifted_key_bob.push_back(round.bob_symbol);
            if (round.eve_symbol) {
                t.sifted_key_eve.push_back(*round.eve_symbol);
            }
        }
        t.rounds.push_back(round);
    }
    if (!t.sifted_key_alice.empty()) {
        t.qber = qber(t);
        t.mutual_information_ab = mutual_information(d, t.qber);
    } else {
        t.qber = std::numeric_limits<double>::quiet_NaN();
        t.mutual_information_ab = std::numeric_limits<double>::quiet_NaN();
    }
    return t;
}

double qber(const QkdTranscript &transcript) {
    uint64_t sifted = 0;
    uint64_t errors = 0;
    for (const QkdRound &r : transcript.rounds) {
        if (r.alice_basis == r.bob_basis) {
            sifted++;
            errors += r.bob_symbol != r.alice_symbol;
        }
    }
    if (sifted == 0) {
        throw Error(ErrorCode::NoSiftedRounds, "no round used matching bases");
    }
    return static_cast<double>(errors) / static_cast<double>(sifted);
}

double eve_agreement(const QkdTranscript &transcript) {
    uint64_t sifted = 0;
    uint64_t agree = 0;
    for (const QkdRound &r : transcript.rounds) {
        if (r.alice_basis == r.bob_basis) {
            if (!r.eve_symbol) {
                throw Error(ErrorCode::InvalidArgument, "transcript has no eavesdropper");
            }
            sifted++;
            agree += *r.eve_symbol == r.alice_symbol;
        }
    }
    if (sifted == 0) {
        throw Error(ErrorCode::NoSiftedRounds, "no round used matching bases");
    }
    return static_cast<double>(agree) / static_cast<double>(sifted);
}

double mutual_information(int d, double e) {
    if (d < 2) {
        throw Error(ErrorCode::DimensionTooSmall, "dimension must be at least 2");
    }
    if (!(e >= 0.0 && e <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, "error rate must lie in [0, 1]");
    }
    double info = std::log2(static_cast<double>(d));
    if (e < 1.0) {
        info += (1.0 - e) * std::log2(1.0 - e);
    }
    if (e > 0.0) {
        info += e * std::log2(e / (d - 1.0));
    }
    return info;
}

double security_bound_coh(int d) {
    switch (d) {
        case 2:
            return 0.1100;
        case 7:
            return 0.2372;
        default:
            throw Error(ErrorCode::UnsupportedDimension, "no tabulated bound for d = " + std::to_string(d));
    }
}

Eigen::MatrixXd probability_matrix(const QkdConfig &cfg, int alice_basis, int bob_basis) {
    cfg.validate();
    require_basis_index(alice_basis);
    require_basis_index(bob_basis);
    OutcomeTables tables(cfg);
    Eigen::MatrixXd m(cfg.dim, cfg.dim);
    for (int a = 0; a < cfg.dim; a++) {
        for (int b = 0; b < cfg.dim; b++) {
            m(a, b) = tables.bob_marginal(alice_basis, a, bob_basis, b);
        }
    }
    return m;
}

Eigen::MatrixXd probability_matrix(const QkdTranscript &transcript, int alice_basis, int bob_basis) {
    require_basis_index(alice_basis);
    require_basis_index(bob_basis);
    const int d = transcript.dim;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (const QkdRound &r : transcript.rounds) {
        if (r.alice_basis == alice_basis && r.bob_basis == bob_basis) {
            m(r.alice_symbol, r.bob_symbol) += 1.0;
        }
    }
    for (int a = 0; a < d; a++) {
        double row = m.row(a).sum();
        if (row > 0) {
            m.row(a) /= row;
        }
    }
    return m;
}

Eigen::MatrixXd full_probability_matrix(const QkdConfig &cfg) {
    const int d = cfg.dim;
    Eigen::MatrixXd m(2 * d, 2 * d);
    for (int ab = 0; ab < 2; ab++) {
        for (int bb = 0; bb < 2; bb++) {
            m.block(ab * d, bb * d, d, d) = probability_matrix(cfg, ab, bb);
        }
    }
    return m;
}

Eigen::MatrixXd full_probability_matrix(const QkdTranscript &transcript) {
    const int d = transcript.dim;
    Eigen::MatrixXd m(2 * d, 2 * d);
    for (int ab = 0; ab < 2; ab++) {
        for (int bb = 0; bb < 2; bb++) {
            m.block(ab * d, bb * d, d, d) = probability_matrix(transcript, ab, bb);
        }
    }
    return m;
}

DitMessage otp_encrypt(const DitMessage &msg, std::span<const int> key) {
    check_key(msg, key);
    DitMessage out = msg;
    for (size_t k = 0; k < out.symbols.size(); k++) {
        out.symbols[k] = (msg.symbols[k] + key[k]) % msg.base;
    }
    return out;
}

DitMessage otp_decrypt(const DitMessage &msg, std::span<const int> key) {
    check_key(msg, key);
    DitMessage out = msg;
    for (size_t k = 0; k < out.symbols.size(); k++) {
        out.symbols[k] = (msg.symbols[k] - key[k] + msg.base) % msg.base;
    }
    return out;
}

int digits_per_byte(int d) {
    if (d < 2) {
        throw Error(ErrorCode::DimensionTooSmall, "digit base must be at least 2");
    }
    int digits = 0;
    long long span = 1;
    while (span < 256) {
        span *= d;
        digits++;
    }
    return digits;
}

DitMessage image_to_dits(std::span<const uint8_t> bytes, int d) {
    const int k = digits_per_byte(d);
    DitMessage msg;
    msg.base = d;
    msg.payload_length = bytes.size();
    msg.symbols.resize(bytes.size() * k);
    for (size_t b = 0; b < bytes.size(); b++) {
        int value = bytes[b];
        for (int pos = k - 1; pos >= 0; pos--) {
            msg.symbols[b * k + pos] = value % d;
            value /= d;
        }
    }
    return msg;
}

std::vector<uint8_t> dits_to_image(const DitMessage &msg, DigitDecode mode) {
    const int k = digits_per_byte(msg.base);
    if (msg.symbols.size() != msg.payload_length * k) {
        throw Error(ErrorCode::InvalidDigit, "symbol count does not match the payload length");
    }
    std::vector<uint8_t> bytes(msg.payload_length);
    for (size_t b = 0; b < msg.payload_length; b++) {
        int value = 0;
        for (int pos = 0; pos < k; pos++) {
            int digit = msg.symbols[b * k + pos];
            if (digit < 0 || digit >= msg.base) {
                throw Error(ErrorCode::InvalidDigit, "digit " + std::to_string(digit) + " outside the base");
            }
            value = value * msg.base + digit;
        }
        if (value > 255) {
            if (mode == DigitDecode::Strict) {
                throw Error(ErrorCode::InvalidDigit, "digit group encodes " + std::to_string(value));
            }
            value = 255;
        }
        bytes[b] = static_cast<uint8_t>(value);
    }
    return bytes;
}

}  // namespace hdclone
