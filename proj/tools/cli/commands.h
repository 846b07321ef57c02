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

#ifndef HDCLONE_CLI_COMMANDS_H
#define HDCLONE_CLI_COMMANDS_H

#include <cstdint>
#include <string>
#include <vector>

#include "cli/output.h"
#include "hdclone/cloning.h"
#include "json.hpp"

namespace hdclone::cli {

struct RunConfig {
    std::string subcommand;
    uint64_t seed = 0;
    std::string out_dir = "out";
    Format format = Format::Both;

    // clone-fidelity uses dims; everything else uses dim.
    std::vector<int> dims{2, 3, 4, 5, 6, 7};
    int dim = 7;
    uint64_t events = 100000;
    uint64_t shots = 1000000;
    uint64_t rounds = 100000;

    double visibility = 1.0;
    double coherence_width = 1.0;
    double delay = 0.0;
    double delay_min = -3.0;
    double delay_max = 3.0;
    int delay_steps = 61;
    double base_rate = 1.0;

    double channel_error = 0.0;
    std::string eve = "both";
    std::string image;

    /// Reloadable with --config; keys match long option names.
    std::string to_config_text() const;
    nlohmann::json to_json() const;
    HomModel hom() const;
};

nlohmann::json cmd_clone_fidelity(const RunConfig &cfg, OutputSink &sink);
nlohmann::json cmd_mub_table(const RunConfig &cfg, OutputSink &sink);
nlohmann::json cmd_mub(const RunConfig &cfg, OutputSink &sink);
nlohmann::json cmd_tomography(const RunConfig &cfg, OutputSink &sink);
nlohmann::json cmd_hom(const RunConfig &cfg, OutputSink &sink);
nlohmann::json cmd_qkd(const RunConfig &cfg, OutputSink &sink);

}  // namespace hdclone::cli

#endif
