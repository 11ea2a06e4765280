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

#include "qad/density_pipeline.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace qad::density {

namespace {

constexpr double kLn2Pi = 1.8378770664093454836;

// A feature block carrying less than this fraction of the state's norm is a
// padding column or an exactly-degenerate feature.
constexpr double kBlockZeroFraction = 1e-10;

int qubits_for(Eigen::Index dim) {
    return static_cast<int>(std::lround(std::log2(static_cast<double>(dim))));
}

void require_normalized(const encode::Dataset& data, const char* where) {
    if (!data.normalized()) {
        throw Error(fmt::format(
            "{}: quantum pipelines require row-normalized data (load with normalize_rows)", where));
    }
}

/// Mean amplitudes in 1/M units, reconstructed from the prep bookkeeping.
Eigen::VectorXcd mean_amplitudes(const PrepOutcome& mean) {
    return mean.scale * mean.state.amplitudes();
}

void require_feature_state(const PrepOutcome& mean, Eigen::Index d, const char* where) {
    if (!mean.state.has_register("feature") || mean.state.dim() != d) {
        throw Error(fmt::format("{}: mean state does not match the dataset's feature register",
                                where));
    }
}

/// Interference step shared by the two difference preparations: builds
/// alpha(|0>|a> + |1>|b>) over flag/index/feature registers with b the mean
/// replicated over the index register, Hadamards the flag and keeps |1>.
PrepOutcome interfere_against_mean(const Eigen::MatrixXcd& per_index_rows,
                                   const Eigen::VectorXcd& mu, const char* empty_branch_msg) {
    const Eigen::Index m = per_index_rows.rows();
    const Eigen::Index d = per_index_rows.cols();
    const double rows_norm2 = per_index_rows.squaredNorm() / static_cast<double>(m);
    const double alpha = 1.0 / std::sqrt(rows_norm2 + mu.squaredNorm());
    const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));

    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(2 * m * d);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            amps[(0 * m + i) * d + j] = alpha * inv_sqrt_m * per_index_rows(i, j);
            amps[(1 * m + i) * d + j] = alpha * inv_sqrt_m * mu[j];
        }
    }
    core::StateVector psi2 = core::make_state(
        std::move(amps),
        core::Layout{{"flag", 1}, {"index", qubits_for(m)}, {"feature", qubits_for(d)}});
    psi2 = core::hadamard_register(psi2, "flag");
    try {
        auto [state, probability] = core::postselect(psi2, "flag", 1);
        const double scale =
            std::sqrt(2.0 * static_cast<double>(m) * probability) / alpha;
        return PrepOutcome{std::move(state), probability, scale};
    } catch (const Error&) {
        throw Error(empty_branch_msg);
    }
}

struct BlockView {
    Eigen::VectorXd norms;          // raw-unit block norms, one per feature
    std::vector<bool> participates; // carries non-negligible weight
};

BlockView block_view(const PrepOutcome& outcome) {
    BlockView view;
    view.norms = feature_block_norms(outcome);
    view.participates.resize(static_cast<std::size_t>(view.norms.size()));
    for (Eigen::Index j = 0; j < view.norms.size(); ++j) {
        view.participates[static_cast<std::size_t>(j)] =
            view.norms[j] > kBlockZeroFraction * outcome.scale;
    }
    return view;
}

core::StateVector uniform_feature_state(Eigen::Index d) {
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    return core::make_state(Eigen::VectorXcd(Eigen::VectorXcd::Constant(d, amp)),
                            core::Layout{{"feature", qubits_for(d)}});
}

Eigen::Index samples_of(const PrepOutcome& chi, const char* where) {
    if (!chi.state.has_register("index")) {
        throw Error(fmt::format("{}: difference state is missing its index register", where));
    }
    return chi.state.register_dim(chi.state.register_index("index"));
}

}  // namespace

PrepOutcome prepare_mean_state(const encode::Dataset& data) {
    require_normalized(data, "prepare_mean_state");
    core::StateVector psi1 = encode::build_training_superposition(data);
    psi1 = core::hadamard_register(psi1, "index");
    try {
        auto [state, probability] = core::postselect(psi1, "index", 0);
        // Post-selected amplitudes are exactly the 1/M sample mean, so the
        // branch norm doubles as the mean's scale.
        return PrepOutcome{std::move(state), probability, std::sqrt(probability)};
    } catch (const Error&) {
        throw Error(
            "prepare_mean_state: training rows cancel to a zero mean (empty post-selection "
            "branch)");
    }
}

PrepOutcome prepare_difference_state(const encode::Dataset& data, const PrepOutcome& mean) {
    require_normalized(data, "prepare_difference_state");
    const Eigen::Index m = data.sample_count();
    const Eigen::Index d = data.padded_dim();
    require_feature_state(mean, d, "prepare_difference_state");

    Eigen::MatrixXcd rows(m, d);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double norm = data.rows().row(i).norm();
        rows.row(i) = (data.rows().row(i) / norm).cast<std::complex<double>>();
    }
    return interfere_against_mean(
        rows, mean_amplitudes(mean),
        "prepare_difference_state: every training row equals the mean state (empty difference "
        "branch)");
}

PrepOutcome prepare_test_difference_state(const encode::NormedVector& x0, const PrepOutcome& mean,
                                          Eigen::Index sample_count) {
    const Eigen::Index d = x0.unit.size();
    require_feature_state(mean, d, "prepare_test_difference_state");
    if (!encode::is_power_of_two(sample_count) || sample_count < 2) {
        throw Error(fmt::format(
            "prepare_test_difference_state: sample count {} must be a power of two >= 2",
            sample_count));
    }
    const Eigen::VectorXcd point = x0.scale * x0.unit;
    const Eigen::MatrixXcd rows = point.transpose().replicate(sample_count, 1);
    return interfere_against_mean(
        rows, mean_amplitudes(mean),
        "prepare_test_difference_state: test point equals the mean state (empty difference "
        "branch)");
}

Eigen::VectorXd feature_block_norms(const PrepOutcome& outcome) {
    const Eigen::VectorXd marginal = core::marginal_probabilities(outcome.state, "feature");
    return outcome.scale * marginal.cwiseSqrt();
}

double estimate_m1(const PrepOutcome& chi, const PrepOutcome& chi0,
                   const core::EstimatorMode& mode, double rescale_margin) {
    if (!(rescale_margin >= 1.0)) {
        throw Error("estimate_m1: rescale margin must be >= 1");
    }
    const BlockView train = block_view(chi);
    const BlockView test = block_view(chi0);
    const Eigen::Index d = train.norms.size();
    if (test.norms.size() != d) {
        throw Error(fmt::format("estimate_m1: feature registers disagree ({} vs {})", d,
                                test.norms.size()));
    }

    Eigen::VectorXd ratios = Eigen::VectorXd::Zero(d);
    for (Eigen::Index j = 0; j < d; ++j) {
        if (train.participates[static_cast<std::size_t>(j)]) {
            ratios[j] = test.norms[j] / train.norms[j];
        } else if (test.participates[static_cast<std::size_t>(j)]) {
            throw Error(fmt::format(
                "estimate_m1: feature {} has zero training variance but a nonzero test "
                "difference; enforce the variance floor upstream",
                j));
        }
    }
    const double r = ratios.maxCoeff();
    if (r <= 0.0) return 0.0;  // test point coincides with the mean
    const double rescale = rescale_margin * r;

    core::StateVector uniform = uniform_feature_state(d);
    core::StateVector rotated = core::attach_ancilla_rotation(
        uniform, "feature", [&](Eigen::Index j) { return ratios[j] / rescale; });
    const double p0 = core::sample_expectation(rotated, "ancilla", 0, mode);
    return static_cast<double>(d) * rescale * rescale * p0;
}

double estimate_m2(const PrepOutcome& chi, const core::EstimatorMode& mode,
                   const LogSigmaBounds& bounds) {
    if (!(bounds.lo < bounds.hi)) {
        throw Error(fmt::format("estimate_m2: bounds must satisfy lo < hi, got [{}, {}]",
                                bounds.lo, bounds.hi));
    }
    const BlockView train = block_view(chi);
    const Eigen::Index d = train.norms.size();
    const double m = static_cast<double>(samples_of(chi, "estimate_m2"));
    const double width = bounds.hi - bounds.lo;

    Eigen::VectorXd encoded = Eigen::VectorXd::Zero(d);
    Eigen::Index participating = 0;
    for (Eigen::Index j = 0; j < d; ++j) {
        if (!train.participates[static_cast<std::size_t>(j)]) continue;
        ++participating;
        const double log_sigma = std::log(train.norms[j] / std::sqrt(m));
        if (log_sigma < bounds.lo - 1e-9 || log_sigma > bounds.hi + 1e-9) {
            throw Error(fmt::format(
                "estimate_m2: ln sigma_{} = {} lies outside the configured bounds [{}, {}]", j,
                log_sigma, bounds.lo, bounds.hi));
        }
        encoded[j] = std::clamp((log_sigma - bounds.lo) / width, 0.0, 1.0);
    }
    if (participating == 0) {
        throw Error("estimate_m2: no feature carries any variance");
    }

    core::StateVector uniform = uniform_feature_state(d);
    core::StateVector rotated = core::attach_ancilla_rotation(
        uniform, "feature", [&](Eigen::Index j) { return std::sqrt(encoded[j]); });
    const double p0 = core::sample_expectation(rotated, "ancilla", 0, mode);
    return static_cast<double>(d) * width * p0 + bounds.lo * static_cast<double>(participating);
}

LogSigmaBounds default_log_sigma_bounds(const PrepOutcome& chi) {
    const BlockView train = block_view(chi);
    const double m = static_cast<double>(samples_of(chi, "default_log_sigma_bounds"));
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < train.norms.size(); ++j) {
        if (!train.participates[static_cast<std::size_t>(j)]) continue;
        const double log_sigma = std::log(train.norms[j] / std::sqrt(m));
        lo = std::min(lo, log_sigma);
        hi = std::max(hi, log_sigma);
    }
    if (!(lo <= hi)) {
        throw Error("default_log_sigma_bounds: no feature carries any variance");
    }
    if (hi - lo < 1e-9) {  // single distinct sigma; widen to a usable window
        lo -= 0.5;
        hi += 0.5;
    }
    return LogSigmaBounds{lo, hi};
}

DensityQuantumReport detect_density(const encode::Dataset& data, const encode::NormedVector& x0,
                                    double epsilon, const core::EstimatorMode& mode,
                                    std::optional<LogSigmaBounds> bounds, double variance_floor) {
    if (!(epsilon > 0.0)) throw Error("detect_density: epsilon must be positive");
    const Eigen::Index m = data.sample_count();

    PrepOutcome mean = prepare_mean_state(data);
    PrepOutcome chi = prepare_difference_state(data, mean);

    // Variance floor over the genuine features, from bookkeeping alone.
    const Eigen::VectorXd blocks = feature_block_norms(chi);
    for (Eigen::Index j = 0; j < data.padded_dim(); ++j) {
        if (!data.feature_mask()[static_cast<std::size_t>(j)]) continue;
        const double sigma2 = blocks[j] * blocks[j] / static_cast<double>(m);
        if (sigma2 < variance_floor) {
            throw Error(fmt::format(
                "detect_density: feature column {} is degenerate (variance {:.3e} below floor "
                "{:.3e})",
                j, sigma2, variance_floor));
        }
    }

    const LogSigmaBounds b = bounds ? *bounds : default_log_sigma_bounds(chi);

    DensityQuantumReport report;
    report.mode = mode;

    // A test point equal to the mean has an empty difference branch; its
    // Mahalanobis term is exactly zero.
    const Eigen::VectorXcd point = x0.scale * x0.unit;
    const double gap = (point - mean_amplitudes(mean)).norm();
    bool test_prepared = false;
    PrepOutcome chi0{core::make_state(Eigen::VectorXcd(Eigen::VectorXcd::Ones(1)), core::Layout{}),
                     1.0, 0.0};
    if (gap > 1e-12 * std::max(1.0, point.norm())) {
        chi0 = prepare_test_difference_state(x0, mean, m);
        test_prepared = true;
        report.m1 = estimate_m1(chi, chi0, mode.split(1));
    } else {
        report.m1 = 0.0;
    }

    const double sum_log_sigma = estimate_m2(chi, mode.split(2), b);
    report.m2 = 2.0 * sum_log_sigma;
    report.log_p = -0.5 * static_cast<double>(data.genuine_dim()) * kLn2Pi -
                   0.5 * (report.m1 + report.m2);
    report.label =
        report.log_p < std::log(epsilon) ? classical::Label::Anomaly : classical::Label::Normal;
    report.prep.push_back(std::move(mean));
    report.prep.push_back(std::move(chi));
    if (test_prepared) report.prep.push_back(std::move(chi0));
    return report;
}

}  // namespace qad::density
