// Copyright 2026 The PAAS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PAAS_ERROR_HPP
#define PAAS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace paas {

struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParameterError : std::runtime_error {
    explicit ParameterError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Kurtosis is undefined on (near-)constant regions.
struct DegenerateVarianceError : DataError {
    explicit DegenerateVarianceError(const std::string& msg) : DataError(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : IoError {
    explicit ParseError(const std::string& msg) : IoError(msg) {}
};

}  // namespace paas

#endif  // PAAS_ERROR_HPP
