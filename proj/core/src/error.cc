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

#include "hdclone/error.h"

namespace hdclone {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroVector:
            return "ZeroVector";
        case ErrorCode::DimensionTooSmall:
            return "DimensionTooSmall";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::NotBipartite:
            return "NotBipartite";
        case ErrorCode::NotPositive:
            return "NotPositive";
        case ErrorCode::NotHermitian:
            return "NotHermitian";
        case ErrorCode::NotPrime:
            return "NotPrime";
        case ErrorCode::EvenDimension:
            return "EvenDimension";
        case ErrorCode::IndexOutOfRange:
            return "IndexOutOfRange";
        case ErrorCode::BasisNotOrthonormal:
            return "BasisNotOrthonormal";
        case ErrorCode::InvalidArgument:
            return "InvalidArgument";
        case ErrorCode::InvalidModel:
            return "InvalidModel";
        case ErrorCode::InvalidShots:
            return "InvalidShots";
        case ErrorCode::InvalidConfig:
            return "InvalidConfig";
        case ErrorCode::IncompleteCounts:
            return "IncompleteCounts";
        case ErrorCode::EmptyRecord:
            return "EmptyRecord";
        case ErrorCode::NoSiftedRounds:
            return "NoSiftedRounds";
        case ErrorCode::OutOfRange:
            return "OutOfRange";
        case ErrorCode::UnsupportedDimension:
            return "UnsupportedDimension";
        case ErrorCode::KeyTooShort:
            return "KeyTooShort";
        case ErrorCode::InvalidDigit:
            return "InvalidDigit";
        case ErrorCode::ImageParse:
            return "ImageParse";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

}  // namespace hdclone
