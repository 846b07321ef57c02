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

#ifndef HDCLONE_CLI_PGM_H
#define HDCLONE_CLI_PGM_H

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hdclone::cli {

/// 8-bit grayscale raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> pixels;
};

/// Binary (P5) or ASCII (P2) PGM with maxval <= 255. Throws ImageParse.
GrayImage parse_pgm(const std::string &bytes);
GrayImage read_pgm(const std::filesystem::path &path);

/// Always binary P5, maxval 255.
std::vector<uint8_t> encode_pgm(const GrayImage &img);

/// Deterministic stand-in used when no image is supplied.
GrayImage test_pattern(int width = 64, int height = 64);

}  // namespace hdclone::cli

#endif
