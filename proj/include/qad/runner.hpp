// Copyright 2026 The qadsim developers
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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace qad::cli {

enum class Method { Density, Gauss, Proximity };
enum class Mode { Exact, Sampled };
enum class SweepParameter { Shots, Bits };

/// One experiment's configuration, mirroring the command-line flags.
struct RunConfig {
    Method method = Method::Density;
    std::string data_path;
    /// Either a row index into the data file (the row stays in the training
    /// set) or a path to a one-row CSV with the test point.
    std::string test_spec;
    double epsilon = 1e-3;
    double kappa = 8.0;
    std::optional<int> bits;                  ///< phase-estimation bits
    std::optional<double> auto_bits_epsilon;  ///< derive bits via precision_for
    Mode mode = Mode::Exact;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    bool header = false;
    bool normalize = true;  ///< false runs the classical detector only
    std::string out_path;   ///< empty writes no file
};

/// run()'s verdict: the versioned JSON report plus the process exit code
/// (0 = labels agree, 2 = disagree; errors are thrown).
struct RunResult {
    std::string report_json;  ///< serialized report, LF line endings
    int exit_code = 0;
};

/// Executes the configured classical oracle and quantum pipeline, compares
/// them, and writes the report to config.out_path when set. Throws Error
/// with the originating stage named on any failure.
RunResult run(const RunConfig& config);

/// Re-runs the experiment once per parameter value (seed advanced by the
/// value's index) and tabulates quantum score, classical score, absolute
/// difference and wall time as CSV. Writes to config.out_path when set.
std::string sweep(const RunConfig& config, SweepParameter parameter,
                  const std::vector<std::uint64_t>& values);

const char* to_string(Method method);
const char* to_string(Mode mode);

}  // namespace qad::cli
