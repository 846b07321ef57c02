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

#include "cli/output.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hdclone/error.h"

namespace hdclone::cli {

namespace {

std::string cell_text(const Cell &c) {
    struct Visitor {
        std::string operator()(int64_t v) const {
            return std::to_string(v);
        }
        std::string operator()(double v) const {
            return format_double(v);
        }
        std::string operator()(const std::string &v) const {
            return v;
        }
        std::string operator()(bool v) const {
            return v ? "true" : "false";
        }
    };
    return std::visit(Visitor{}, c);
}

nlohmann::json cell_json(const Cell &c) {
    return std::visit([](const auto &v) { return nlohmann::json(v); }, c);
}

void flatten(const std::string &prefix, const nlohmann::json &j, std::vector<std::pair<std::string, std::string>> &out) {
    if (j.is_object()) {
        for (const auto &[k, v] : j.items()) {
            flatten(prefix.empty() ? k : prefix + "." + k, v, out);
        }
    } else if (j.is_number_float()) {
        out.emplace_back(prefix, format_double(j.get<double>()));
    } else if (j.is_string()) {
        out.emplace_back(prefix, j.get<std::string>());
    } else {
        out.emplace_back(prefix, j.dump());
    }
}

}  // namespace

Format parse_format(const std::string &name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    if (name == "both") return Format::Both;
    throw Error(ErrorCode::InvalidConfig, "unknown format '" + name + "'");
}

std::string format_name(Format f) {
    switch (f) {
        case Format::Csv:
            return "csv";
        case Format::Json:
            return "json";
        case Format::Both:
            return "both";
    }
    return "both";
}

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

OutputSink::OutputSink(std::filesystem::path dir, Format format) : dir_(std::move(dir)), format_(format) {
    std::filesystem::create_directories(dir_);
}

void OutputSink::table(const std::string &name, const std::vector<std::string> &header, const std::vector<Row> &rows) {
    if (format_ != Format::Json) {
        std::ostringstream csv;
        for (size_t k = 0; k < header.size(); k++) {
            csv << (k ? "," : "") << header[k];
        }
        csv << "\n";
        for (const Row &row : rows) {
            for (size_t k = 0; k < row.size(); k++) {
                csv << (k ? "," : "") << cell_text(row[k]);
            }
            csv << "\n";
        }
        write_file(name + ".csv", csv.str());
    }
    if (format_ != Format::Csv) {
        nlohmann::json arr = nlohmann::json::array();
        for (const Row &row : rows) {
            nlohmann::json obj = nlohmann::json::object();
            for (size_t k = 0; k < row.size() && k < header.size(); k++) {
                obj[header[k]] = cell_json(row[k]);
            }
            arr.push_back(std::move(obj));
        }
        write_file(name + ".json", arr.dump(2) + "\n");
    }
}

void OutputSink::summary(const nlohmann::json &summary) {
    if (format_ != Format::Csv) {
        write_file("summary.json", summary.dump(2) + "\n");
    }
    if (format_ != Format::Json) {
        std::vector<std::pair<std::string, std::string>> flat;
        flatten("", summary, flat);
        std::string csv = "key,value\n";
        for (const auto &[k, v] : flat) {
            csv += k + "," + v + "\n";
        }
        write_file("summary.csv", csv);
    }
}

void OutputSink::text(const std::string &filename, const std::string &contents) {
    write_file(filename, contents);
}

void OutputSink::binary(const std::string &filename, const std::vector<uint8_t> &bytes) {
    write_file(filename, std::string(bytes.begin(), bytes.end()));
}

void OutputSink::write_file(const std::string &filename, const std::string &contents) {
    std::ofstream f(dir_ / filename, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("cannot write " + (dir_ / filename).string());
    }
    f << contents;
    files_.push_back(filename);
}

void write_atomically(const std::filesystem::path &path, const std::string &contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        f << contents;
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace hdclone::cli
