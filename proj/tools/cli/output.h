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

#ifndef HDCLONE_CLI_OUTPUT_H
#define HDCLONE_CLI_OUTPUT_H

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace hdclone::cli {

enum class Format { Csv, Json, Both };

Format parse_format(const std::string &name);
std::string format_name(Format f);

using Cell = std::variant<int64_t, double, std::string, bool>;
using Row = std::vector<Cell>;

/// 17 significant digits, "%.17g".
std::string format_double(double x);

/// Writes every emitted file under one directory and remembers what it wrote.
/// Tables become `<name>.csv` and/or `<name>.json` depending on the format.
class OutputSink {
   public:
    OutputSink(std::filesystem::path dir, Format format);

    void table(const std::string &name, const std::vector<std::string> &header, const std::vector<Row> &rows);
    void summary(const nlohmann::json &summary);
    void text(const std::string &filename, const std::string &contents);
    void binary(const std::string &filename, const std::vector<uint8_t> &bytes);

    const std::filesystem::path &dir() const {
        return dir_;
    }
    const std::vector<std::string> &files() const {
        return files_;
    }

   private:
    void write_file(const std::string &filename, const std::string &contents);

    std::filesystem::path dir_;
    Format format_;
    std::vector<std::string> files_;
};

/// Writes to `<path>.tmp` then renames over `path`.
void write_atomically(const std::filesystem::path &path, const std::string &contents);

}  // namespace hdclone::cli

#endif
