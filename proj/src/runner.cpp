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

#include "qad/runner.hpp"

#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "qad/classical.hpp"
#include "qad/density_pipeline.hpp"
#include "qad/encoding.hpp"
#include "qad/gauss_pipeline.hpp"

namespace qad::cli {

namespace {

using nlohmann::ordered_json;

template <typename F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(fmt::format("[{}] {}", name, e.what()));
    } catch (const std::exception& e) {
        throw Error(fmt::format("[{}] {}", name, e.what()));
    }
}

bool is_row_index(const std::string& spec) {
    if (spec.empty()) return false;
    for (const char c : spec) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

struct TestPoint {
    Eigen::VectorXd model_point;    ///< genuine-width point in model space
    encode::NormedVector quantum;   ///< unit amplitudes over the padded register, scale 1
};

encode::Dataset load_data(const RunConfig& config) {
    return stage("load-dataset", [&] {
        std::ifstream in(config.data_path);
        if (!in) throw Error(fmt::format("cannot open data file '{}'", config.data_path));
        return encode::load_dataset(in, {config.normalize, config.header});
    });
}

TestPoint resolve_test_point(const RunConfig& config, const encode::Dataset& data) {
    return stage("load-test-point", [&]() -> TestPoint {
        Eigen::VectorXd raw;
        if (is_row_index(config.test_spec)) {
            const Eigen::Index row = std::stoll(config.test_spec);
            if (row < 0 || row >= data.sample_count()) {
                throw Error(fmt::format("test row index {} out of range (dataset has {} rows)",
                                        row, data.sample_count()));
            }
            raw = data.genuine_vector(data.rows().row(row).transpose());
            if (data.normalized()) raw *= data.row_scales()[row];
        } else {
            std::ifstream in(config.test_spec);
            if (!in) throw Error(fmt::format("cannot open test file '{}'", config.test_spec));
            raw = encode::load_test_row(in, {false, config.header});
        }

        TestPoint point;
        const encode::NormedVector encoded = encode::encode_test_point(raw, data);
        if (data.normalized()) {
            // Normalized pipelines compare at the unit point.
            point.model_point = encode::to_real(encoded.unit).head(data.genuine_dim());
            point.quantum = encode::NormedVector{encoded.unit, 1.0};
        } else {
            point.model_point = raw;
            point.quantum = encoded;
        }
        return point;
    });
}

int resolve_bits(const RunConfig& config) {
    if (config.bits && config.auto_bits_epsilon) {
        throw Error("[config] --bits and --auto-bits are mutually exclusive");
    }
    if (config.bits) return *config.bits;
    if (config.auto_bits_epsilon) {
        return gauss::precision_for(*config.auto_bits_epsilon, config.kappa);
    }
    throw Error("[config] gauss and proximity methods require --bits or --auto-bits");
}

core::EstimatorMode estimator_mode(const RunConfig& config) {
    if (config.mode == Mode::Exact) {
        if (config.shots != 0) throw Error("[config] --shots only applies to sampled mode");
        return core::EstimatorMode::exact();
    }
    if (config.shots < 1) throw Error("[config] sampled mode requires --shots >= 1");
    return core::EstimatorMode::sampled(config.shots, config.seed);
}

struct Evaluation {
    double classical_score = 0.0;
    double classical_threshold = 0.0;
    classical::Label classical_label = classical::Label::Normal;
    bool has_quantum = false;
    double quantum_score = 0.0;
    double quantum_threshold = 0.0;
    classical::Label quantum_label = classical::Label::Normal;
    ordered_json quantum_extras = ordered_json::object();
    std::optional<int> resolved_bits;
};

Evaluation evaluate(const RunConfig& config) {
    if (config.method == Method::Density && (config.bits || config.auto_bits_epsilon)) {
        throw Error("[config] --bits/--auto-bits do not apply to the density method");
    }
    const encode::Dataset data = load_data(config);
    const TestPoint point = resolve_test_point(config, data);
    const core::EstimatorMode mode = estimator_mode(config);

    Evaluation eval;
    switch (config.method) {
        case Method::Density: {
            stage("classical-density", [&] {
                const auto model = classical::fit_density(data);
                const auto decision = classical::classify_density(model, point.model_point,
                                                                  config.epsilon);
                eval.classical_score = decision.score;
                eval.classical_threshold = std::log(config.epsilon);
                eval.classical_label = decision.label;
                return 0;
            });
            if (!config.normalize) break;
            stage("quantum-density", [&] {
                const auto report =
                    density::detect_density(data, point.quantum, config.epsilon, mode);
                eval.has_quantum = true;
                eval.quantum_score = report.log_p;
                eval.quantum_threshold = std::log(config.epsilon);
                eval.quantum_label = report.label;
                eval.quantum_extras["m1"] = report.m1;
                eval.quantum_extras["m2"] = report.m2;
                ordered_json probs = ordered_json::object();
                probs["mean_state"] = report.prep[0].success_probability;
                probs["difference_state"] = report.prep[1].success_probability;
                if (report.prep.size() > 2) {
                    probs["test_difference_state"] = report.prep[2].success_probability;
                }
                eval.quantum_extras["success_probabilities"] = probs;
                return 0;
            });
            break;
        }
        case Method::Gauss: {
            eval.resolved_bits = resolve_bits(config);
            stage("classical-gauss", [&] {
                const auto model =
                    classical::fit_gaussian(data, classical::CovDivisor::SamplesMinusOne);
                const auto decision =
                    classical::classify_gaussian(model, point.model_point, config.epsilon);
                eval.classical_score = decision.p_test;
                eval.classical_threshold = decision.threshold;
                eval.classical_label = decision.label;
                return 0;
            });
            if (!config.normalize) break;
            stage("quantum-gauss", [&] {
                const core::PhaseEstimationConfig pe{*eval.resolved_bits, config.kappa};
                const auto report =
                    gauss::detect_gaussian(data, point.quantum, config.epsilon, pe, mode);
                eval.has_quantum = true;
                eval.quantum_score = report.p_test;
                eval.quantum_threshold = report.threshold;
                eval.quantum_label = report.label;
                eval.quantum_extras["log_det"] = report.log_det;
                eval.quantum_extras["discarded_weight"] = report.discarded_weight;
                return 0;
            });
            break;
        }
        case Method::Proximity: {
            eval.resolved_bits = resolve_bits(config);
            const Eigen::MatrixXd rows = data.genuine_rows();
            const Eigen::VectorXd mu = rows.colwise().sum() / static_cast<double>(rows.rows());
            const Eigen::VectorXd diff = point.model_point - mu;
            if (diff.norm() <= 0.0) {
                throw Error("[proximity] test point equals the mean; centered state undefined");
            }
            const Eigen::VectorXd z0 = diff / diff.norm();
            stage("classical-proximity", [&] {
                eval.classical_score = classical::proximity_classical(data, z0);
                eval.classical_threshold = config.epsilon;
                eval.classical_label = eval.classical_score > config.epsilon
                                           ? classical::Label::Anomaly
                                           : classical::Label::Normal;
                return 0;
            });
            if (!config.normalize) break;
            stage("quantum-proximity", [&] {
                const core::PhaseEstimationConfig pe{*eval.resolved_bits, config.kappa};
                const auto cov = gauss::build_proximity_covariance(data);
                const encode::NormedVector z0_nv{z0.cast<std::complex<double>>(), diff.norm()};
                eval.quantum_score = gauss::proximity_quantum(cov, z0_nv, pe, mode);
                eval.has_quantum = true;
                eval.quantum_threshold = config.epsilon;
                eval.quantum_label = eval.quantum_score > config.epsilon
                                         ? classical::Label::Anomaly
                                         : classical::Label::Normal;
                return 0;
            });
            break;
        }
    }
    return eval;
}

ordered_json config_echo(const RunConfig& config, const Evaluation& eval) {
    ordered_json echo;
    echo["method"] = to_string(config.method);
    echo["data"] = config.data_path;
    echo["test"] = config.test_spec;
    echo["epsilon"] = config.epsilon;
    if (eval.resolved_bits) {
        echo["kappa"] = config.kappa;
        echo["bits"] = *eval.resolved_bits;
    }
    echo["mode"] = to_string(config.mode);
    if (config.mode == Mode::Sampled) {
        echo["shots"] = config.shots;
        echo["seed"] = config.seed;
    }
    echo["header"] = config.header;
    echo["normalize"] = config.normalize;
    return echo;
}

void write_if_requested(const std::string& path, const std::string& text) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(fmt::format("[write-report] cannot open output file '{}'", path));
    out << text;
}

}  // namespace

const char* to_string(Method method) {
    switch (method) {
        case Method::Density: return "density";
        case Method::Gauss: return "gauss";
        case Method::Proximity: return "proximity";
    }
    return "?";
}

const char* to_string(Mode mode) { return mode == Mode::Exact ? "exact" : "sampled"; }

RunResult run(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const Evaluation eval = evaluate(config);
    const auto elapsed = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();

    ordered_json report;
    report["schema"] = "qad-report/1";
    report["method"] = to_string(config.method);
    report["config"] = config_echo(config, eval);

    ordered_json classical_part;
    classical_part["score"] = eval.classical_score;
    classical_part["threshold"] = eval.classical_threshold;
    classical_part["label"] = classical::to_string(eval.classical_label);
    report["classical"] = classical_part;

    int exit_code = 0;
    if (eval.has_quantum) {
        ordered_json quantum_part;
        quantum_part["score"] = eval.quantum_score;
        quantum_part["threshold"] = eval.quantum_threshold;
        quantum_part["label"] = classical::to_string(eval.quantum_label);
        for (auto& [key, value] : eval.quantum_extras.items()) quantum_part[key] = value;
        report["quantum"] = quantum_part;

        const bool agree = eval.quantum_label == eval.classical_label;
        ordered_json comparison;
        comparison["absolute_difference"] = std::abs(eval.classical_score - eval.quantum_score);
        comparison["labels_agree"] = agree;
        report["comparison"] = comparison;
        exit_code = agree ? 0 : 2;
    } else {
        report["quantum"] = nullptr;
        report["comparison"] = nullptr;
    }
    report["timing"] = ordered_json{{"wall_ms", elapsed}};

    RunResult result{report.dump(2) + "\n", exit_code};
    write_if_requested(config.out_path, result.report_json);
    return result;
}

std::string sweep(const RunConfig& config, SweepParameter parameter,
                  const std::vector<std::uint64_t>& values) {
    if (values.empty()) throw Error("[sweep] empty parameter value list");
    if (parameter == SweepParameter::Shots && config.mode != Mode::Sampled) {
        throw Error("[sweep] a shots sweep requires sampled mode");
    }
    if (parameter == SweepParameter::Bits && config.method == Method::Density) {
        throw Error("[sweep] a bits sweep requires the gauss or proximity method");
    }
    if (!config.normalize) {
        throw Error("[sweep] sweeps compare against the quantum pipeline; normalized data required");
    }

    std::ostringstream csv;
    csv << "value,quantum_score,classical_score,abs_diff,wall_time_ms\n";
    for (std::size_t k = 0; k < values.size(); ++k) {
        RunConfig point = config;
        point.out_path.clear();
        point.seed = config.seed + k;  // every evaluation owns its stream
        if (parameter == SweepParameter::Shots) {
            point.shots = values[k];
        } else {
            point.bits = static_cast<int>(values[k]);
            point.auto_bits_epsilon.reset();
        }
        const auto start = std::chrono::steady_clock::now();
        const Evaluation eval = evaluate(point);
        const auto elapsed = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
        if (!eval.has_quantum) throw Error("[sweep] quantum pipeline did not run");
        csv << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.3f}\n", values[k], eval.quantum_score,
                           eval.classical_score,
                           std::abs(eval.quantum_score - eval.classical_score), elapsed);
    }
    const std::string table = csv.str();
    write_if_requested(config.out_path, table);
    return table;
}

}  // namespace qad::cli
