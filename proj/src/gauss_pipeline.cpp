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

#include "qad/gauss_pipeline.hpp"

#include <cmath>

#include <fmt/format.h>

#include "qad/statevector.hpp"

namespace qad::gauss {

namespace {

constexpr double kLn2Pi = 1.8378770664093454836;
constexpr double kZeroCenteredTol = 1e-12;
constexpr double kSpectrumSlack = 1e-9;

int qubits_for(Eigen::Index dim) {
    int q = 0;
    while ((Eigen::Index{1} << q) < dim) ++q;
    return q;
}

/// State over an `eig` register whose basis probabilities reproduce the
/// given nonnegative weights (padded with zeros to a power of two).
core::StateVector weight_state(const Eigen::VectorXd& weights) {
    const Eigen::Index padded = Eigen::Index{1} << qubits_for(weights.size());
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(padded);
    for (Eigen::Index b = 0; b < weights.size(); ++b) {
        amps[b] = std::sqrt(std::max(0.0, weights[b]));
    }
    return core::make_state(std::move(amps), core::Layout{{"eig", qubits_for(weights.size())}});
}

std::vector<encode::NormedVector> centered_states(const encode::Dataset& data,
                                                  bool reject_zero, const char* where) {
    const Eigen::MatrixXd x = data.genuine_rows();
    const Eigen::VectorXd mu = x.colwise().sum() / static_cast<double>(x.rows());
    std::vector<encode::NormedVector> out;
    out.reserve(static_cast<std::size_t>(x.rows()));
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const Eigen::VectorXd diff = x.row(i).transpose() - mu;
        const double norm = diff.norm();
        if (norm <= kZeroCenteredTol) {
            if (reject_zero) {
                throw Error(fmt::format(
                    "{}: row {} equals the mean; its unit centered state is undefined", where, i));
            }
            out.push_back(encode::NormedVector{Eigen::VectorXcd::Zero(x.cols()), 0.0});
            continue;
        }
        out.push_back(encode::NormedVector{(diff / norm).cast<std::complex<double>>(), norm});
    }
    return out;
}

}  // namespace

encode::NormedVector prepare_centered_state(const encode::NormedVector& x,
                                            const Eigen::VectorXd& mu) {
    if (x.unit.size() != mu.size()) {
        throw Error(fmt::format("prepare_centered_state: point has {} features, mean has {}",
                                x.unit.size(), mu.size()));
    }
    const Eigen::VectorXcd diff = x.scale * x.unit - mu.cast<std::complex<double>>();
    const double norm = diff.norm();
    if (norm <= kZeroCenteredTol) {
        throw Error("prepare_centered_state: point equals the mean (zero centered state)");
    }
    return encode::NormedVector{diff / norm, norm};
}

CovarianceOperator covariance_from_centered(const std::vector<encode::NormedVector>& centered,
                                            CenteredWeighting weighting) {
    if (centered.size() < 2) {
        throw Error("covariance_from_centered: need at least two centered states");
    }
    const Eigen::Index d = centered.front().unit.size();
    const double divisor = static_cast<double>(centered.size() - 1);

    Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t i = 0; i < centered.size(); ++i) {
        const auto& z = centered[i];
        if (z.unit.size() != d) {
            throw Error("covariance_from_centered: centered states have mixed dimensions");
        }
        if (z.scale <= kZeroCenteredTol) {
            if (weighting == CenteredWeighting::UnitState) {
                throw Error(fmt::format(
                    "covariance_from_centered: centered state {} is zero; unit weighting is "
                    "undefined",
                    i));
            }
            continue;  // zero raw difference contributes nothing
        }
        const double w = weighting == CenteredWeighting::RawScale ? z.scale * z.scale : 1.0;
        cov.noalias() += (w / divisor) * (z.unit * z.unit.adjoint());
    }

    const double trace = cov.real().trace();
    if (trace <= kZeroCenteredTol) {
        throw Error("covariance_from_centered: all centered states are zero");
    }
    return CovarianceOperator{core::SpectralDecomposition::of_hermitian(cov / trace), trace,
                              static_cast<Eigen::Index>(centered.size())};
}

CovarianceOperator build_covariance(const encode::Dataset& data) {
    return covariance_from_centered(centered_states(data, /*reject_zero=*/false, "build_covariance"),
                                    CenteredWeighting::RawScale);
}

CovarianceOperator build_proximity_covariance(const encode::Dataset& data) {
    return covariance_from_centered(
        centered_states(data, /*reject_zero=*/true, "build_proximity_covariance"),
        CenteredWeighting::UnitState);
}

PtestResult estimate_ptest(const CovarianceOperator& cov, const encode::NormedVector& z0,
                           const core::PhaseEstimationConfig& config,
                           const core::EstimatorMode& mode) {
    const auto bins = core::ideal_phase_estimation(cov.density, z0.unit, config);
    const double cutoff = 1.0 / config.kappa;

    Eigen::VectorXd weights(static_cast<Eigen::Index>(bins.size()));
    std::vector<bool> kept(bins.size());
    double discarded = 0.0;
    double kept_weight = 0.0;
    for (std::size_t b = 0; b < bins.size(); ++b) {
        weights[static_cast<Eigen::Index>(b)] = bins[b].weight;
        kept[b] = bins[b].eigenvalue >= cutoff;
        (kept[b] ? kept_weight : discarded) += bins[b].weight;
    }
    if (kept_weight <= 0.0) {
        throw Error(fmt::format(
            "estimate_ptest: the test state lies entirely in the discarded small-eigenvalue "
            "subspace (below 1/kappa = {})",
            cutoff));
    }

    // Rotation amplitude sqrt(1/(kappa*lambda)) <= 1 on the kept spectrum;
    // the kappa factor is restored in post-processing.
    core::StateVector state = weight_state(weights);
    state = core::attach_ancilla_rotation(state, "eig", [&](Eigen::Index b) {
        if (b >= static_cast<Eigen::Index>(bins.size()) || !kept[static_cast<std::size_t>(b)]) {
            return 0.0;
        }
        return std::sqrt(1.0 / (config.kappa * bins[static_cast<std::size_t>(b)].eigenvalue));
    });
    const double p0 = core::sample_expectation(state, "ancilla", 0, mode);
    const double p_test = config.kappa * p0 * z0.scale * z0.scale / cov.trace_c;
    return PtestResult{p_test, discarded};
}

double estimate_log_det(const core::SpectralDecomposition& op,
                        const core::PhaseEstimationConfig& config,
                        const core::EstimatorMode& mode) {
    const Eigen::Index n = op.size();
    const double cutoff = 1.0 / config.kappa;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double lambda = op.eigenvalues()[k];
        if (lambda < cutoff - kSpectrumSlack || lambda > 1.0 + kSpectrumSlack) {
            throw Error(fmt::format(
                "estimate_log_det: eigenvalue {} = {} lies outside [1/kappa, 1] = [{}, 1]; "
                "pre-scale the operator (see log_det_scale_correction)",
                k, lambda, cutoff));
        }
    }

    const double log_kappa = std::log(config.kappa);
    // Rounded eigenvalues are clamped back into [1/kappa, 1]; rounding can
    // step just outside the interval and clamping never increases the
    // per-eigenvalue error.
    Eigen::VectorXd encoded(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double rounded =
            std::clamp(core::round_to_bits(op.eigenvalues()[k], config.bits), cutoff, 1.0);
        encoded[k] = log_kappa > 0.0 ? -std::log(rounded) / log_kappa : 0.0;
    }

    // Maximally entangled input: every eigenvector carries weight 1/N.
    core::StateVector state = weight_state(Eigen::VectorXd::Constant(n, 1.0));
    state = core::attach_ancilla_rotation(state, "eig", [&](Eigen::Index k) {
        return k < n ? std::sqrt(encoded[k]) : 0.0;
    });
    const double p0 = core::sample_expectation(state, "ancilla", 0, mode);
    return -static_cast<double>(n) * log_kappa * p0;
}

double log_det_scale_correction(double log_det_scaled, double pre_scale, Eigen::Index n) {
    if (!(pre_scale > 0.0)) {
        throw Error("log_det_scale_correction: pre-scale must be positive");
    }
    return log_det_scaled - static_cast<double>(n) * std::log(pre_scale);
}

int precision_for(double target_error, double kappa) {
    if (!(target_error > 0.0)) throw Error("precision_for: target error must be positive");
    if (!(kappa >= 1.0)) throw Error("precision_for: kappa must be >= 1");
    const double delta = target_error / (2.0 * kappa * kappa);
    int bits = 1;
    while (std::ldexp(1.0, -bits) > delta && bits < 1024) ++bits;
    return bits;
}

std::pair<double, double> g_map(double lambda) {
    if (!(lambda > 0.0) || lambda > 1.0 + 1e-12) {
        throw Error(fmt::format("g_map: lambda must lie in (0, 1], got {}", lambda));
    }
    const double log_lambda = std::log(std::min(lambda, 1.0));
    return {log_lambda, std::sqrt(1.0 - 2.0 * log_lambda)};
}

GaussQuantumReport detect_gaussian(const encode::Dataset& data, const encode::NormedVector& x0,
                                   double epsilon, const core::PhaseEstimationConfig& config,
                                   const core::EstimatorMode& mode) {
    if (!(epsilon > 0.0)) throw Error("detect_gaussian: epsilon must be positive");
    if (!data.normalized()) {
        throw Error(
            "detect_gaussian: quantum pipelines require row-normalized data (load with "
            "normalize_rows)");
    }
    const Eigen::Index d = data.genuine_dim();
    const Eigen::MatrixXd x = data.genuine_rows();
    const Eigen::VectorXd mu = x.colwise().sum() / static_cast<double>(x.rows());

    const CovarianceOperator cov = build_covariance(data);

    // Restrict the test point to the genuine columns.
    const Eigen::VectorXcd point_full = x0.scale * x0.unit;
    if (point_full.size() != data.padded_dim() && point_full.size() != d) {
        throw Error(fmt::format("detect_gaussian: test point has {} features, expected {} (or {})",
                                point_full.size(), data.padded_dim(), d));
    }
    const Eigen::VectorXcd point = point_full.head(d);

    GaussQuantumReport report{0.0, 0.0, 0.0, classical::Label::Normal, 0.0, config, mode};

    const double gap = (point - mu.cast<std::complex<double>>()).norm();
    if (gap > kZeroCenteredTol * std::max(1.0, point.norm())) {
        const double point_norm = point.norm();
        const encode::NormedVector z0{
            point_norm > 0.0 ? Eigen::VectorXcd(point / point_norm)
                             : Eigen::VectorXcd(Eigen::VectorXcd::Zero(d)),
            point_norm};
        const encode::NormedVector centered = prepare_centered_state(z0, mu);
        const PtestResult pt = estimate_ptest(cov, centered, config, mode.split(1));
        report.p_test = pt.p_test;
        report.discarded_weight = pt.discarded_weight;
    }

    const double density_log_det = estimate_log_det(cov.density, config, mode.split(2));
    report.log_det = density_log_det + static_cast<double>(d) * std::log(cov.trace_c);
    report.threshold = classical::gaussian_threshold(report.log_det, d, epsilon);
    report.label = report.p_test > report.threshold ? classical::Label::Anomaly
                                                    : classical::Label::Normal;
    return report;
}

double proximity_quantum(const CovarianceOperator& cov, const encode::NormedVector& z0,
                         const core::PhaseEstimationConfig& config,
                         const core::EstimatorMode& mode) {
    const auto bins = core::ideal_phase_estimation(cov.density, z0.unit, config);
    Eigen::VectorXd weights(static_cast<Eigen::Index>(bins.size()));
    for (std::size_t b = 0; b < bins.size(); ++b) {
        weights[static_cast<Eigen::Index>(b)] = bins[b].weight;
    }

    core::StateVector state = weight_state(weights);
    state = core::attach_ancilla_rotation(state, "eig", [&](Eigen::Index b) {
        if (b >= static_cast<Eigen::Index>(bins.size())) return 0.0;
        const double lambda_c = bins[static_cast<std::size_t>(b)].eigenvalue * cov.trace_c;
        return std::sqrt(std::max(0.0, 1.0 - lambda_c));
    });
    return core::sample_expectation(state, "ancilla", 0, mode);
}

}  // namespace qad::gauss
