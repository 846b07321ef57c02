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

#include "cli/app.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cli/commands.h"
#include "hdclone/error.h"

#ifndef HDCLONE_VERSION
#define HDCLONE_VERSION "0.0.0"
#endif

namespace hdclone::cli {

namespace {

const std::vector<std::string> kSubcommands{"clone-fidelity", "mub-table", "mub", "tomography", "hom", "qkd"};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Each line "key = value" becomes "--key=value". Blank lines and '#' comments
// are skipped.
std::vector<std::string> load_config(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw UsageError("cannot read config file " + path);
    }
    std::vector<std::string> out;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        auto ws = [](unsigned char c) { return std::isspace(c); };
        s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
        s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
        return s;
    };
    while (std::getline(f, line)) {
        lineno++;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty() || key == "config") {
            throw UsageError(path + ":" + std::to_string(lineno) + ": invalid key");
        }
        out.push_back("--" + key + "=" + value);
    }
    return out;
}

// Splices config-file values in right after the subcommand token so that
// later command-line occurrences win under the take-last policy.
std::vector<std::string> expand_config(const std::vector<std::string> &args) {
    auto sub = std::find_if(args.begin(), args.end(), [](const std::string &a) {
        return std::find(kSubcommands.begin(), kSubcommands.end(), a) != kSubcommands.end();
    });
    if (sub == args.end()) return args;
    std::vector<std::string> injected;
    for (auto it = sub + 1; it != args.end(); ++it) {
        std::string path;
        if (*it == "--config") {
            if (it + 1 == args.end()) break;
            path = *(it + 1);
        } else if (it->rfind("--config=", 0) == 0) {
            path = it->substr(9);
        } else {
            continue;
        }
        auto more = load_config(path);
        injected.insert(injected.end(), more.begin(), more.end());
    }
    std::vector<std::string> out(args.begin(), sub + 1);
    out.insert(out.end(), injected.begin(), injected.end());
    out.insert(out.end(), sub + 1, args.end());
    return out;
}

std::vector<int> parse_dims(const std::string &text) {
    std::vector<int> dims;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception &) {
            throw UsageError("bad dimension list '" + text + "'");
        }
        if (used != item.size()) throw UsageError("bad dimension list '" + text + "'");
        dims.push_back(v);
    }
    if (dims.empty()) throw UsageError("empty dimension list");
    return dims;
}

CLI::Validator count_validator() {
    return CLI::Validator(
        [](std::string &s) -> std::string {
            uint64_t v = 0;
            if (!parse_count(s, v)) return "expected a non-negative integer count, got '" + s + "'";
            s = std::to_string(v);
            return {};
        },
        "COUNT");
}

struct Preset {
    std::string flag;
    bool enabled = false;
    // option name -> value applied when that option was not given.
    std::vector<std::pair<std::string, std::string>> values;
};

struct Parsed {
    RunConfig cfg;
    std::string dims_text = "2,3,4,5,6,7";
    double baseline_qber = std::nan("");
    std::vector<Preset> presets;
};

void add_common(CLI::App *sub, Parsed &p, std::string &format_text, std::string &config_path) {
    sub->add_option("--seed", p.cfg.seed, "RNG seed (required)")->required();
    sub->add_option("--out-dir", p.cfg.out_dir, "output directory")->capture_default_str();
    sub->add_option("--format", format_text, "csv | json | both")
        ->check(CLI::IsMember({"csv", "json", "both"}))
        ->capture_default_str();
    sub->add_option("--config", config_path, "key=value file; command-line flags override it");
}

void add_hom(CLI::App *sub, RunConfig &cfg, bool with_delay) {
    sub->add_option("--visibility", cfg.visibility, "HOM visibility in [0, 1]")->capture_default_str();
    sub->add_option("--coherence-width", cfg.coherence_width, "coherence width (> 0)")->capture_default_str();
    if (with_delay) {
        sub->add_option("--delay", cfg.delay, "two-photon delay")->capture_default_str();
    }
}

bool dims_ok_for_presets(const std::vector<int> &dims) {
    return std::all_of(dims.begin(), dims.end(), [](int d) { return d >= 2 && d <= 7; });
}

nlohmann::json dispatch(const RunConfig &cfg, OutputSink &sink) {
    const std::string &s = cfg.subcommand;
    if (s == "clone-fidelity") return cmd_clone_fidelity(cfg, sink);
    if (s == "mub-table") return cmd_mub_table(cfg, sink);
    if (s == "mub") return cmd_mub(cfg, sink);
    if (s == "tomography") return cmd_tomography(cfg, sink);
    if (s == "hom") return cmd_hom(cfg, sink);
    if (s == "qkd") return cmd_qkd(cfg, sink);
    throw UsageError("unknown subcommand " + s);
}

}  // namespace

bool parse_count(const std::string &text, uint64_t &value) {
    if (text.empty() || text[0] == '-' || text[0] == '+') return false;
    bool plain = std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); });
    if (plain) {
        if (text.size() > 18) return false;
        value = std::stoull(text);
        return true;
    }
    size_t used = 0;
    double x = 0;
    try {
        x = std::stod(text, &used);
    } catch (const std::exception &) {
        return false;
    }
    if (used != text.size() || !std::isfinite(x) || x < 0 || x >= 9.2e18 || std::floor(x) != x) return false;
    value = static_cast<uint64_t>(x);
    return true;
}

int run_cli(const std::vector<std::string> &raw_args, std::ostream &out, std::ostream &err) {
    Parsed p;
    std::string format_text = "both";
    std::string config_path;

    CLI::App app{"Simulate high-dimensional quantum cloning experiments and emit plot-ready data.", "hdclone"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.set_version_flag("--version", HDCLONE_VERSION);

    auto preset = [&](const std::string &flag, std::vector<std::pair<std::string, std::string>> values) {
        p.presets.push_back({flag, false, std::move(values)});
        return flag;
    };

    // Preset flags are bound after all presets are registered so the vector
    // does not reallocate under the bound pointers.
    std::vector<std::pair<CLI::App *, std::string>> preset_flags;

    auto *clone = app.add_subcommand("clone-fidelity", "cloning fidelity for each computational-basis input");
    add_common(clone, p, format_text, config_path);
    clone->add_option("--dims", p.dims_text, "comma-separated dimensions")->capture_default_str();
    clone->add_option("--events", p.cfg.events, "coincidence events per input")
        ->transform(count_validator())
        ->capture_default_str();
    add_hom(clone, p.cfg, true);
    preset_flags.emplace_back(clone, preset("--figure2",
                                            {{"dims", "2,3,4,5,6,7"},
                                             {"events", "100000"},
                                             {"visibility", "1"},
                                             {"coherence-width", "1"},
                                             {"delay", "0"}}));

    auto *table = app.add_subcommand("mub-table", "list every vector of the prime-dimension MUB set");
    add_common(table, p, format_text, config_path);
    table->add_option("--dim", p.cfg.dim, "prime dimension")->capture_default_str();

    auto *mub = app.add_subcommand("mub", "cloning probability matrices in every MUB");
    add_common(mub, p, format_text, config_path);
    mub->add_option("--dim", p.cfg.dim, "prime dimension")->capture_default_str();
    mub->add_option("--events", p.cfg.events, "coincidence events per input")
        ->transform(count_validator())
        ->capture_default_str();
    add_hom(mub, p.cfg, true);
    preset_flags.emplace_back(mub, preset("--figure3a",
                                          {{"dim", "7"},
                                           {"events", "100000"},
                                           {"visibility", "1"},
                                           {"coherence-width", "1"},
                                           {"delay", "0"}}));

    auto *tomo = app.add_subcommand("tomography", "reconstruct the Gaussian state before and after cloning");
    add_common(tomo, p, format_text, config_path);
    tomo->add_option("--shots", p.cfg.shots, "shots per measurement basis")
        ->transform(count_validator())
        ->capture_default_str();
    preset_flags.emplace_back(tomo, preset("--figure3b", {{"shots", "1000000"}}));

    auto *hom = app.add_subcommand("hom", "Hong-Ou-Mandel dip and coalescence enhancement curves");
    add_common(hom, p, format_text, config_path);
    add_hom(hom, p.cfg, false);
    hom->add_option("--delay-min", p.cfg.delay_min, "first delay of the grid")->capture_default_str();
    hom->add_option("--delay-max", p.cfg.delay_max, "last delay of the grid")->capture_default_str();
    hom->add_option("--delay-steps", p.cfg.delay_steps, "grid points")->capture_default_str();
    hom->add_option("--base-rate", p.cfg.base_rate, "coincidence rate far from the dip")->capture_default_str();
    preset_flags.emplace_back(hom, preset("--figureS1",
                                          {{"visibility", "0.89"},
                                           {"coherence-width", "1"},
                                           {"delay-min", "-3"},
                                           {"delay-max", "3"},
                                           {"delay-steps", "61"},
                                           {"base-rate", "1"}}));

    auto *qkd = app.add_subcommand("qkd", "d-dimensional BB84 with and without a cloning eavesdropper");
    add_common(qkd, p, format_text, config_path);
    qkd->add_option("--dim", p.cfg.dim, "dimension")->capture_default_str();
    qkd->add_option("--rounds", p.cfg.rounds, "protocol rounds")
        ->transform(count_validator())
        ->capture_default_str();
    auto *eps = qkd->add_option("--channel-error", p.cfg.channel_error, "depolarizing probability on Bob's photon")
                    ->capture_default_str();
    qkd->add_option("--baseline-qber", p.baseline_qber, "set the channel error so the Eve-free QBER equals this")
        ->excludes(eps);
    qkd->add_option("--eve", p.cfg.eve, "on | off | both")
        ->check(CLI::IsMember({"on", "off", "both"}))
        ->capture_default_str();
    qkd->add_option("--image", p.cfg.image, "8-bit PGM image to encrypt (default: built-in 64x64 pattern)");
    preset_flags.emplace_back(qkd, preset("--figure4",
                                          {{"dim", "7"}, {"rounds", "100000"}, {"channel-error", "0"}, {"eve", "both"}}));

    for (size_t k = 0; k < preset_flags.size(); k++) {
        preset_flags[k].first->add_flag(p.presets[k].flag, p.presets[k].enabled, "use the published parameter set");
    }

    std::vector<std::string> args;
    try {
        args = expand_config(raw_args);
    } catch (const UsageError &e) {
        err << "hdclone: " << e.what() << "\n";
        return kExitUsage;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        CLI::App *sub = app.get_subcommands().front();
        for (size_t k = 0; k < preset_flags.size(); k++) {
            if (preset_flags[k].first != sub || !p.presets[k].enabled) continue;
            for (const auto &[name, value] : p.presets[k].values) {
                CLI::Option *opt = sub->get_option("--" + name);
                if (opt->count() == 0) {
                    opt->clear();
                    opt->add_result(value);
                    opt->run_callback();
                }
            }
            if (sub == clone && !dims_ok_for_presets(parse_dims(p.dims_text))) {
                throw UsageError("preset dimensions must lie in 2..7");
            }
        }
        p.cfg.subcommand = sub->get_name();
        p.cfg.format = parse_format(format_text);
        if (sub == clone) {
            p.cfg.dims = parse_dims(p.dims_text);
        }
        if (sub == qkd && !std::isnan(p.baseline_qber)) {
            if (p.cfg.dim < 2) throw UsageError("dim must be >= 2");
            p.cfg.channel_error = p.baseline_qber * p.cfg.dim / (p.cfg.dim - 1);
        }
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const UsageError &e) {
        err << "hdclone: " << e.what() << "\n";
        return kExitUsage;
    }

    auto start = std::chrono::steady_clock::now();
    std::filesystem::path dir(p.cfg.out_dir);
    nlohmann::json manifest;
    manifest["tool"] = "hdclone";
    manifest["version"] = HDCLONE_VERSION;
    manifest["subcommand"] = p.cfg.subcommand;
    manifest["config"] = p.cfg.to_json();

    std::unique_ptr<OutputSink> sink;
    int code = kExitOk;
    try {
        sink = std::make_unique<OutputSink>(dir, p.cfg.format);
        sink->text("run.cfg", p.cfg.to_config_text());
        nlohmann::json summary = dispatch(p.cfg, *sink);
        sink->summary(summary);
        manifest["complete"] = true;
        out << summary.dump(2) << "\n";
    } catch (const std::exception &e) {
        err << "hdclone: " << e.what() << "\n";
        manifest["complete"] = false;
        manifest["error"] = e.what();
        code = kExitContract;
    }
    manifest["files"] = sink ? sink->files() : std::vector<std::string>{};
    manifest["duration_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (sink) {
        try {
            write_atomically(dir / "manifest.json", manifest.dump(2) + "\n");
        } catch (const std::exception &e) {
            err << "hdclone: " << e.what() << "\n";
            code = kExitContract;
        }
    }
    return code;
}

}  // namespace hdclone::cli
