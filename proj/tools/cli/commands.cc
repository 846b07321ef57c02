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

#include "cli/commands.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "cli/pgm.h"
#include "hdclone/error.h"
#include "hdclone/mubs.h"
#include "hdclone/qkd.h"
#include "hdclone/random.h"
#include "hdclone/tomography.h"

namespace hdclone::cli {

namespace {

nlohmann::json nullable(double x) {
    return std::isnan(x) ? nlohmann::json(nullptr) : nlohmann::json(x);
}

std::string dims_text(const std::vector<int> &dims) {
    std::string s;
    for (size_t k = 0; k < dims.size(); k++) {
        s += (k ? "," : "") + std::to_string(dims[k]);
    }
    return s;
}

double ordered_cell(const Operator &joint, const Ket &a, const Ket &b) {
    ComplexVector v = tensor(a, b);
    return (v.adjoint() * joint.matrix() * v)(0, 0).real();
}

// Exact counterpart of detection_probability: the same estimator applied to
// expected counts instead of sampled ones.
std::vector<double> predicted_row(const std::vector<Ket> &basis, int psi_index, const HomModel &hom) {
    const int d = static_cast<int>(basis.size());
    Operator joint = hom_effective_joint(basis[psi_index], hom);
    double n_tot = 0;
    for (int i = 0; i < d; i++) {
        for (int j = i; j < d; j++) {
            double p = ordered_cell(joint, basis[i], basis[j]);
            n_tot += (i == j) ? p : 2 * p;
        }
    }
    std::vector<double> row(d);
    double off = 0;
    for (int i = 0; i < d; i++) {
        if (i == psi_index) continue;
        int lo = std::min(i, psi_index);
        int hi = std::max(i, psi_index);
        row[i] = ordered_cell(joint, basis[lo], basis[hi]) / n_tot;
        off += row[i];
    }
    row[psi_index] = 1.0 - off;
    return row;
}

struct CloneMatrix {
    std::vector<Row> rows;
    std::vector<double> fidelity_sim;
    std::vector<double> fidelity_predicted;
    std::vector<uint64_t> n_tot;
};

CloneMatrix clone_matrix(const std::vector<Ket> &basis, const RunConfig &cfg, uint64_t seed) {
    const int d = static_cast<int>(basis.size());
    HomModel hom = cfg.hom();
    CloneMatrix m;
    for (int k = 0; k < d; k++) {
        CoincidenceRecord rec = simulate_coincidences(basis[k], basis, cfg.events, mix_seed(seed, k), hom);
        std::vector<double> pred = predicted_row(basis, k, hom);
        for (int i = 0; i < d; i++) {
            m.rows.push_back({int64_t{k}, int64_t{i}, detection_probability(rec, k, i), pred[i]});
        }
        m.fidelity_sim.push_back(fidelity_from_counts(rec, k));
        m.fidelity_predicted.push_back(pred[k]);
        m.n_tot.push_back(rec.n_tot);
    }
    return m;
}

const std::vector<std::string> kMatrixHeader{"input", "output", "probability_sim", "probability_predicted"};
const std::vector<std::string> kDensityHeader{"row", "col", "re", "im"};

std::vector<Row> density_rows(const Operator &rho) {
    std::vector<Row> rows;
    for (int r = 0; r < rho.dim(); r++) {
        for (int c = 0; c < rho.dim(); c++) {
            Complex z = rho(r, c);
            rows.push_back({int64_t{r}, int64_t{c}, z.real(), z.imag()});
        }
    }
    return rows;
}

double min_eigenvalue(const Operator &rho) {
    Eigen::VectorXd ev = rho.hermitian_eigenvalues();
    return ev.minCoeff();
}

std::optional<double> bound_for(int d) {
    try {
        return security_bound_coh(d);
    } catch (const Error &e) {
        if (e.code() != ErrorCode::UnsupportedDimension) throw;
        return std::nullopt;
    }
}

double analytic_qber(const QkdConfig &cfg) {
    double err = 0;
    for (int b = 0; b < 2; b++) {
        Eigen::MatrixXd m = probability_matrix(cfg, b, b);
        err += 1.0 - m.trace() / cfg.dim;
    }
    return std::clamp(err / 2, 0.0, 1.0);
}

double pixel_error_rate(const std::vector<uint8_t> &a, const std::vector<uint8_t> &b) {
    size_t wrong = 0;
    for (size_t k = 0; k < a.size(); k++) {
        wrong += (k >= b.size() || a[k] != b[k]) ? 1 : 0;
    }
    return a.empty() ? 0.0 : static_cast<double>(wrong) / a.size();
}

GrayImage decrypt_image(const GrayImage &shape, const DitMessage &cipher, const std::vector<int> &key) {
    GrayImage out = shape;
    out.pixels = dits_to_image(otp_decrypt(cipher, key), DigitDecode::Saturate);
    return out;
}

}  // namespace

std::string RunConfig::to_config_text() const {
    std::string s;
    auto kv = [&](const std::string &k, const std::string &v) { s += k + "=" + v + "\n"; };
    kv("seed", std::to_string(seed));
    kv("out-dir", out_dir);
    kv("format", format_name(format));
    if (subcommand == "clone-fidelity") {
        kv("dims", dims_text(dims));
    } else {
        kv("dim", std::to_string(dim));
    }
    if (subcommand == "clone-fidelity" || subcommand == "mub") {
        kv("events", std::to_string(events));
    }
    if (subcommand == "clone-fidelity" || subcommand == "mub" || subcommand == "hom") {
        kv("visibility", format_double(visibility));
        kv("coherence-width", format_double(coherence_width));
    }
    if (subcommand == "clone-fidelity" || subcommand == "mub") {
        kv("delay", format_double(delay));
    }
    if (subcommand == "tomography") {
        kv("shots", std::to_string(shots));
    }
    if (subcommand == "hom") {
        kv("delay-min", format_double(delay_min));
        kv("delay-max", format_double(delay_max));
        kv("delay-steps", std::to_string(delay_steps));
        kv("base-rate", format_double(base_rate));
    }
    if (subcommand == "qkd") {
        kv("rounds", std::to_string(rounds));
        kv("channel-error", format_double(channel_error));
        kv("eve", eve);
        if (!image.empty()) kv("image", image);
    }
    return s;
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["seed"] = seed;
    j["out_dir"] = out_dir;
    j["format"] = format_name(format);
    j["dims"] = dims;
    j["dim"] = dim;
    j["events"] = events;
    j["shots"] = shots;
    j["rounds"] = rounds;
    j["hom"] = {{"visibility", visibility},
                {"coherence_width", coherence_width},
                {"delay", delay},
                {"delay_min", delay_min},
                {"delay_max", delay_max},
                {"delay_steps", delay_steps},
                {"base_rate", base_rate}};
    j["channel_error"] = channel_error;
    j["eve"] = eve;
    j["image"] = image;
    return j;
}

HomModel RunConfig::hom() const {
    HomModel h;
    h.visibility = visibility;
    h.coherence_width = coherence_width;
    h.delay = delay;
    h.validate();
    return h;
}

nlohmann::json cmd_clone_fidelity(const RunConfig &cfg, OutputSink &sink) {
    if (cfg.dims.empty()) {
        throw Error(ErrorCode::InvalidConfig, "dims must not be empty");
    }
    std::vector<Row> summary_rows;
    std::vector<Row> by_dim_rows;
    nlohmann::json per_dim = nlohmann::json::array();
    double max_dev = 0;
    for (int d : cfg.dims) {
        if (d < 2) {
            throw Error(ErrorCode::DimensionTooSmall, "dimension " + std::to_string(d) + " < 2");
        }
        Basis basis = computational_basis(d);
        CloneMatrix m = clone_matrix(basis, cfg, mix_seed(cfg.seed, d));
        sink.table("clone_probability_d" + std::to_string(d), kMatrixHeader, m.rows);
        double f_clo = optimal_clone_fidelity(d);
        double f_est = estimation_fidelity(d);
        double mean = 0;
        for (int k = 0; k < d; k++) {
            summary_rows.push_back({int64_t{d}, int64_t{k}, m.fidelity_sim[k], m.fidelity_predicted[k], f_clo, f_est,
                                    static_cast<int64_t>(m.n_tot[k])});
            mean += m.fidelity_sim[k] / d;
            max_dev = std::max(max_dev, std::abs(m.fidelity_sim[k] - m.fidelity_predicted[k]));
        }
        double pred = m.fidelity_predicted[0];
        by_dim_rows.push_back({int64_t{d}, mean, pred, f_clo, f_est});
        per_dim.push_back({{"dim", d},
                           {"mean_fidelity_sim", mean},
                           {"fidelity_predicted", pred},
                           {"f_clo", f_clo},
                           {"f_est", f_est}});
    }
    sink.table("clone_fidelity_summary",
               {"dim", "input", "fidelity_sim", "fidelity_predicted", "f_clo", "f_est", "n_tot"}, summary_rows);
    sink.table("clone_fidelity_by_dim", {"dim", "mean_fidelity_sim", "fidelity_predicted", "f_clo", "f_est"},
               by_dim_rows);
    return {{"command", "clone-fidelity"},
            {"seed", cfg.seed},
            {"events", cfg.events},
            {"per_dim", per_dim},
            {"max_abs_deviation_from_predicted", max_dev}};
}

nlohmann::json cmd_mub_table(const RunConfig &cfg, OutputSink &sink) {
    MubSet set = mub_set(cfg.dim);
    std::vector<Row> rows;
    for (int alpha = 1; alpha <= set.count(); alpha++) {
        const Basis &b = set.basis(alpha);
        for (int n = 0; n < cfg.dim; n++) {
            for (int j = 0; j < cfg.dim; j++) {
                Complex z = b[n][j];
                rows.push_back({int64_t{alpha}, int64_t{n + 1}, int64_t{j + 1}, z.real(), z.imag()});
            }
        }
    }
    sink.table("mub_vectors_d" + std::to_string(cfg.dim), {"alpha", "n", "j", "re", "im"}, rows);
    MubReport rep = verify_mub(set, 1e-10);
    return {{"command", "mub-table"},
            {"seed", cfg.seed},
            {"dim", cfg.dim},
            {"bases", set.count()},
            {"max_orthonormality_deviation", rep.max_orthonormality_deviation},
            {"max_unbiasedness_deviation", rep.max_unbiasedness_deviation},
            {"passed", rep.passed}};
}

nlohmann::json cmd_mub(const RunConfig &cfg, OutputSink &sink) {
    MubSet set = mub_set(cfg.dim);
    MubReport rep = verify_mub(set, 1e-10);
    std::vector<Row> summary_rows;
    double f_clo = optimal_clone_fidelity(cfg.dim);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double max_dev = 0;
    for (int alpha = 1; alpha <= set.count(); alpha++) {
        CloneMatrix m = clone_matrix(set.basis(alpha), cfg, mix_seed(cfg.seed, alpha));
        sink.table("mub_probability_d" + std::to_string(cfg.dim) + "_alpha" + std::to_string(alpha), kMatrixHeader,
                   m.rows);
        for (int k = 0; k < cfg.dim; k++) {
            summary_rows.push_back({int64_t{alpha}, int64_t{k}, m.fidelity_sim[k], m.fidelity_predicted[k], f_clo});
            lo = std::min(lo, m.fidelity_sim[k]);
            hi = std::max(hi, m.fidelity_sim[k]);
            max_dev = std::max(max_dev, std::abs(m.fidelity_sim[k] - m.fidelity_predicted[k]));
        }
    }
    sink.table("mub_fidelity_summary", {"alpha", "input", "fidelity_sim", "fidelity_predicted", "f_clo"}, summary_rows);
    return {{"command", "mub"},
            {"seed", cfg.seed},
            {"dim", cfg.dim},
            {"events", cfg.events},
            {"bases", set.count()},
            {"f_clo", f_clo},
            {"min_fidelity_sim", lo},
            {"max_fidelity_sim", hi},
            {"max_abs_deviation_from_predicted", max_dev},
            {"verify",
             {{"max_orthonormality_deviation", rep.max_orthonormality_deviation},
              {"max_unbiasedness_deviation", rep.max_unbiasedness_deviation},
              {"passed", rep.passed}}}};
}

nlohmann::json cmd_tomography(const RunConfig &cfg, OutputSink &sink) {
    Ket g = gaussian_state();
    const int d = g.dim();
    MubSet set = mub_set(d);
    Operator input = density_from_ket(g);
    Operator clone = clone_channel(g).reduced;

    TomographyResult before = tomography_pipeline(input, set, cfg.shots, mix_seed(cfg.seed, 0), input);
    TomographyResult after = tomography_pipeline(clone, set, cfg.shots, mix_seed(cfg.seed, 1), clone);
    double after_to_input = fidelity_state(after.physical, input);
    double f_clo = optimal_clone_fidelity(d);

    sink.table("density_before", kDensityHeader, density_rows(before.physical));
    sink.table("density_after", kDensityHeader, density_rows(after.physical));
    sink.table("density_before_raw", kDensityHeader, density_rows(before.raw));
    sink.table("density_after_raw", kDensityHeader, density_rows(after.raw));
    sink.table("density_before_theory", kDensityHeader, density_rows(input));
    sink.table("density_after_theory", kDensityHeader, density_rows(clone));
    sink.table("tomography_summary", {"quantity", "value_sim", "value_predicted"},
               {
                   {std::string("fidelity_before"), before.fidelity_to_target, 1.0},
                   {std::string("fidelity_after_to_clone"), after.fidelity_to_target, 1.0},
                   {std::string("fidelity_after_to_input"), after_to_input, f_clo},
               });
    return {{"command", "tomography"},
            {"seed", cfg.seed},
            {"dim", d},
            {"shots_per_basis", cfg.shots},
            {"fidelity_before", before.fidelity_to_target},
            {"fidelity_after_to_clone", after.fidelity_to_target},
            {"fidelity_after_to_input", after_to_input},
            {"fidelity_after_to_input_predicted", f_clo},
            {"raw_min_eigenvalue_before", min_eigenvalue(before.raw)},
            {"raw_min_eigenvalue_after", min_eigenvalue(after.raw)}};
}

nlohmann::json cmd_hom(const RunConfig &cfg, OutputSink &sink) {
    HomModel hom;
    hom.visibility = cfg.visibility;
    hom.coherence_width = cfg.coherence_width;
    hom.validate();
    if (cfg.delay_steps < 1) {
        throw Error(ErrorCode::InvalidConfig, "delay-steps must be >= 1");
    }
    if (!(cfg.delay_max >= cfg.delay_min)) {
        throw Error(ErrorCode::InvalidConfig, "delay-max must be >= delay-min");
    }
    if (!(cfg.base_rate > 0) || !std::isfinite(cfg.base_rate)) {
        throw Error(ErrorCode::InvalidConfig, "base-rate must be positive");
    }
    std::vector<double> delays(cfg.delay_steps);
    for (int k = 0; k < cfg.delay_steps; k++) {
        delays[k] = cfg.delay_steps == 1
                        ? cfg.delay_min
                        : cfg.delay_min + (cfg.delay_max - cfg.delay_min) * k / (cfg.delay_steps - 1);
    }
    auto dip = hom_dip_curve(hom, delays, cfg.base_rate);
    std::vector<Row> dip_rows;
    std::vector<Row> enh_rows;
    double min_rate = std::numeric_limits<double>::infinity();
    double max_enh = 0;
    for (size_t k = 0; k < delays.size(); k++) {
        HomModel at = hom;
        at.delay = delays[k];
        double r = coalescence_enhancement(at);
        dip_rows.push_back({dip[k].first, dip[k].second});
        enh_rows.push_back({delays[k], r});
        min_rate = std::min(min_rate, dip[k].second);
        max_enh = std::max(max_enh, r);
    }
    sink.table("hom_dip", {"delay", "coincidence_rate"}, dip_rows);
    sink.table("hom_enhancement", {"delay", "enhancement"}, enh_rows);
    return {{"command", "hom"},
            {"seed", cfg.seed},
            {"visibility", cfg.visibility},
            {"coherence_width", cfg.coherence_width},
            {"base_rate", cfg.base_rate},
            {"min_rate_over_base", min_rate / cfg.base_rate},
            {"min_rate_over_base_predicted", 1.0 - cfg.visibility},
            {"max_enhancement", max_enh},
            {"max_enhancement_predicted", 1.0 + cfg.visibility}};
}

nlohmann::json cmd_qkd(const RunConfig &cfg, OutputSink &sink) {
    if (cfg.eve != "on" && cfg.eve != "off" && cfg.eve != "both") {
        throw Error(ErrorCode::InvalidConfig, "eve must be on, off or both");
    }
    GrayImage img = cfg.image.empty() ? test_pattern() : read_pgm(cfg.image);
    sink.binary("image_original.pgm", encode_pgm(img));
    DitMessage msg = image_to_dits(img.pixels, cfg.dim);
    std::optional<double> bound = bound_for(cfg.dim);

    nlohmann::json out = {{"command", "qkd"},
                          {"seed", cfg.seed},
                          {"dim", cfg.dim},
                          {"rounds", cfg.rounds},
                          {"channel_error", cfg.channel_error},
                          {"image_width", img.width},
                          {"image_height", img.height},
                          {"message_dits", msg.symbols.size()},
                          {"bound", bound ? nlohmann::json(*bound) : nlohmann::json(nullptr)}};

    std::vector<bool> modes;
    if (cfg.eve != "on") modes.push_back(false);
    if (cfg.eve != "off") modes.push_back(true);
    std::vector<Row> summary_rows;
    for (bool eve : modes) {
        const std::string tag = eve ? "on" : "off";
        QkdConfig q;
        q.dim = cfg.dim;
        q.n_rounds = cfg.rounds;
        q.eve_present = eve;
        q.channel_error_rate = cfg.channel_error;
        q.seed = mix_seed(cfg.seed, eve ? 1 : 0);
        q.validate();
        QkdTranscript t = run_bb84(q);

        Eigen::MatrixXd sim = full_probability_matrix(t);
        Eigen::MatrixXd ana = full_probability_matrix(q);
        std::vector<Row> rows;
        for (int ab = 0; ab < 2; ab++) {
            for (int a = 0; a < cfg.dim; a++) {
                for (int bb = 0; bb < 2; bb++) {
                    for (int b = 0; b < cfg.dim; b++) {
                        int r = ab * cfg.dim + a;
                        int c = bb * cfg.dim + b;
                        rows.push_back({int64_t{ab}, int64_t{a}, int64_t{bb}, int64_t{b}, sim(r, c), ana(r, c)});
                    }
                }
            }
        }
        sink.table("qkd_probability_eve_" + tag,
                   {"alice_basis", "alice_symbol", "bob_basis", "bob_symbol", "probability_sim",
                    "probability_predicted"},
                   rows);

        DitMessage cipher = otp_encrypt(msg, t.sifted_key_alice);
        GrayImage cipher_img = img;
        cipher_img.pixels = dits_to_image(cipher, DigitDecode::Saturate);
        sink.binary("image_cipher_eve_" + tag + ".pgm", encode_pgm(cipher_img));
        GrayImage bob_img = decrypt_image(img, cipher, t.sifted_key_bob);
        sink.binary("image_bob_eve_" + tag + ".pgm", encode_pgm(bob_img));

        double e = t.qber;
        double e_pred = analytic_qber(q);
        double mi_pred = mutual_information(cfg.dim, e_pred);
        nlohmann::json run = {{"qber", nullable(e)},
                              {"qber_predicted", e_pred},
                              {"mutual_information_bits", nullable(t.mutual_information_ab)},
                              {"mutual_information_bits_predicted", mi_pred},
                              {"sifted_length", t.sifted_key_alice.size()},
                              {"bob_pixel_error_rate", pixel_error_rate(img.pixels, bob_img.pixels)},
                              {"bob_image_exact", bob_img.pixels == img.pixels}};
        if (bound) {
            run["secure"] = e < *bound;
        } else {
            run["secure"] = nullptr;
        }
        if (eve) {
            GrayImage eve_img = decrypt_image(img, cipher, t.sifted_key_eve);
            sink.binary("image_eve_copy.pgm", encode_pgm(eve_img));
            run["eve_agreement"] = eve_agreement(t);
            run["eve_agreement_predicted"] = optimal_clone_fidelity(cfg.dim);
            run["eve_pixel_error_rate"] = pixel_error_rate(img.pixels, eve_img.pixels);
        }
        summary_rows.push_back({tag, e, e_pred, t.mutual_information_ab, mi_pred,
                                static_cast<int64_t>(t.sifted_key_alice.size())});
        out["qber_" + tag] = nullable(e);
        out["I_ab_" + tag] = nullable(t.mutual_information_ab);
        out["secure_" + tag] = run["secure"];
        out["eve_" + tag] = run;
    }
    sink.table("qkd_summary",
               {"eve", "qber_sim", "qber_predicted", "mutual_information_sim", "mutual_information_predicted",
                "sifted_length"},
               summary_rows);
    return out;
}

}  // namespace hdclone::cli
