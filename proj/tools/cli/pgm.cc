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

#include "cli/pgm.h"

#include <cctype>
#include <fstream>
#include <sstream>

#include "hdclone/error.h"

namespace hdclone::cli {

namespace {

[[noreturn]] void bad(const std::string &msg) {
    throw Error(ErrorCode::ImageParse, msg);
}

class HeaderReader {
   public:
    explicit HeaderReader(const std::string &s) : s_(s) {}

    void skip_space_and_comments() {
        while (pos_ < s_.size()) {
            if (s_[pos_] == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') pos_++;
            } else if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
                pos_++;
            } else {
                break;
            }
        }
    }

    long next_int() {
        skip_space_and_comments();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) pos_++;
        if (start == pos_) bad("expected an integer in PGM header");
        if (pos_ - start > 9) bad("PGM header value too large");
        return std::stol(s_.substr(start, pos_ - start));
    }

    size_t &pos() {
        return pos_;
    }

   private:
    const std::string &s_;
    size_t pos_ = 0;
};

}  // namespace

GrayImage parse_pgm(const std::string &bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
        bad("not a PGM file (magic must be P5 or P2)");
    }
    bool binary = bytes[1] == '5';
    HeaderReader h(bytes);
    h.pos() = 2;
    long w = h.next_int();
    long ht = h.next_int();
    long maxval = h.next_int();
    if (w <= 0 || ht <= 0) bad("PGM dimensions must be positive");
    if (maxval <= 0 || maxval > 255) bad("only 8-bit PGM (maxval 1..255) is supported");

    GrayImage img;
    img.width = static_cast<int>(w);
    img.height = static_cast<int>(ht);
    size_t n = static_cast<size_t>(w) * static_cast<size_t>(ht);
    img.pixels.reserve(n);
    if (binary) {
        size_t &p = h.pos();
        if (p >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[p]))) {
            bad("missing whitespace after PGM header");
        }
        p++;
        if (bytes.size() - p < n) bad("PGM pixel data truncated");
        for (size_t k = 0; k < n; k++) {
            auto v = static_cast<uint8_t>(bytes[p + k]);
            if (v > maxval) bad("PGM pixel exceeds maxval");
            img.pixels.push_back(v);
        }
    } else {
        for (size_t k = 0; k < n; k++) {
            long v = h.next_int();
            if (v > maxval) bad("PGM pixel exceeds maxval");
            img.pixels.push_back(static_cast<uint8_t>(v));
        }
    }
    return img;
}

GrayImage read_pgm(const std::filesystem::path &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) bad("cannot open image " + path.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_pgm(ss.str());
}

std::vector<uint8_t> encode_pgm(const GrayImage &img) {
    std::string header = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    std::vector<uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    return out;
}

GrayImage test_pattern(int width, int height) {
    GrayImage img;
    img.width = width;
    img.height = height;
    img.pixels.resize(static_cast<size_t>(width) * height);
    // Concentric rings over a diagonal ramp; easy to recognise when scrambled.
    double cx = (width - 1) / 2.0;
    double cy = (height - 1) / 2.0;
    for (int y = 0; y < height; y++) {
        for (int x = 0; x < width; x++) {
            double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
            int ring = static_cast<int>(r2) / 48 % 2;
            int ramp = (x + y) * 255 / (width + height - 2);
            img.pixels[static_cast<size_t>(y) * width + x] = static_cast<uint8_t>(ring ? 255 - ramp / 2 : ramp / 3);
        }
    }
    return img;
}

}  // namespace hdclone::cli
