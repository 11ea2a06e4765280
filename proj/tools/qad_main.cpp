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

#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qad/error.hpp"
#include "qad/runner.hpp"

namespace {

void add_common_options(CLI::App* cmd, qad::cli::RunConfig& config) {
    const std::map<std::string, qad::cli::Method> methods{
        {"density", qad::cli::Method::Density},
        {"gauss", qad::cli::Method::Gauss},
        {"proximity", qad::cli::Method::Proximity}};
    const std::map<std::string, qad::cli::Mode> modes{{"exact", qad::cli::Mode::Exact},
                                                      {"sampled", qad::cli::Mode::Sampled}};

    cmd->add_option("--method", config.method, "Detector: density, gauss or proximity")
        ->required()
        ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
    cmd->add_option("--data", config.data_path, "Training CSV (one sample per row)")->required();
    cmd->add_option("--test", config.test_spec,
                    "Test point: a row index into the data file or a one-row CSV path")
        ->required();
    cmd->add_option("--epsilon", config.epsilon, "Decision threshold probability");
    cmd->add_option("--kappa", config.kappa, "Effective condition number (gauss/proximity)");

    auto* bits = cmd->add_option("--bits", config.bits, "Phase-estimation bits");
    cmd->add_option("--auto-bits", config.auto_bits_epsilon,
                    "Derive bits from a target error via the kappa^2 precision rule")
        ->excludes(bits);

    cmd->add_option("--mode", config.mode, "Estimator mode: exact or sampled")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    cmd->add_option("--shots", config.shots, "Shot count (sampled mode)");
    cmd->add_option("--seed", config.seed, "Base seed for sampled mode");
    cmd->add_flag("--header", config.header, "Skip the first CSV line");
    cmd->add_flag("!--no-normalize", config.normalize,
                  "Keep raw row scales (classical detector only)");
    cmd->add_option("--out", config.out_path, "Write the report to this file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum anomaly detection simulator: classical detectors vs. their "
                 "statevector-simulated quantum counterparts"};
    app.require_subcommand(1);

    qad::cli::RunConfig run_config;
    auto* run_cmd = app.add_subcommand("run", "Run one detection and emit a JSON comparison report");
    add_common_options(run_cmd, run_config);

    qad::cli::RunConfig sweep_config;
    std::string sweep_parameter;
    std::vector<std::uint64_t> sweep_values;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Re-run one detection over a parameter grid, emit CSV");
    add_common_options(sweep_cmd, sweep_config);
    sweep_cmd->add_option("--parameter", sweep_parameter, "Swept parameter: shots or bits")
        ->required()
        ->check(CLI::IsMember({"shots", "bits"}, CLI::ignore_case));
    sweep_cmd->add_option("--values", sweep_values, "Comma-separated parameter values")
        ->required()
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            const auto result = qad::cli::run(run_config);
            std::cout << result.report_json;
            return result.exit_code;
        }
        const auto parameter = sweep_parameter == "shots" ? qad::cli::SweepParameter::Shots
                                                          : qad::cli::SweepParameter::Bits;
        std::cout << qad::cli::sweep(sweep_config, parameter, sweep_values);
        return 0;
    } catch (const qad::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
