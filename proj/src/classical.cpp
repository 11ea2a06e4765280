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

#include "qad/classical.hpp"

#include <cmath>

#include <fmt/format.h>

namespace qad::classical {

namespace {

constexpr double kLn2Pi = 1.8378770664093454836;  // ln(2*pi)

void check_dimensions(Eigen::Index model_dim, Eigen::Index x_dim, const char* where) {
    if (model_dim != x_dim) {
        throw Error(fmt::format("{}: point has {} features, model has {}", where, x_dim, model_dim));
    }
}

}  // namespace

DensityModel fit_density(const encode::Dataset& data, double variance_floor) {
    const Eigen::MatrixXd x = data.genuine_rows();
    const Eigen::Index m = x.rows();
    const double inv_m = 1.0 / static_cast<double>(m);

    DensityModel model;
    model.mu = x.colwise().sum() * inv_m;
    model.sigma2 = (x.rowwise() - model.mu.transpose()).array().square().colwise().sum() * inv_m;
    for (Eigen::Index j = 0; j < model.sigma2.size(); ++j) {
        if (model.sigma2[j] < variance_floor) {
            throw Error(fmt::format(
                "fit_density: feature column {} is degenerate (variance {:.3e} below floor {:.3e})",
                j, model.sigma2[j], variance_floor));
        }
    }
    return model;
}

double log_density(const DensityModel& model, const Eigen::VectorXd& x) {
    check_dimensions(model.mu.size(), x.size(), "log_density");
    const Eigen::Index d = x.size();
    const Eigen::ArrayXd diff2 = (x - model.mu).array().square();
    const Eigen::ArrayXd sigma2 = model.sigma2.array();
    return -0.5 * static_cast<double>(d) * kLn2Pi - 0.5 * sigma2.log().sum() -
           (diff2 / (2.0 * sigma2)).sum();
}

DensityDecision classify_density(const DensityModel& model, const Eigen::VectorXd& x,
                                 double epsilon) {
    if (!(epsilon > 0.0)) throw Error("classify_density: epsilon must be positive");
    const double score = log_density(model, x);
    return DensityDecision{score < std::log(epsilon) ? Label::Anomaly : Label::Normal, score};
}

GaussianModel fit_gaussian(const encode::Dataset& data, CovDivisor divisor, double eigen_floor) {
    const Eigen::MatrixXd x = data.genuine_rows();
    const Eigen::Index m = x.rows();
    const Eigen::Index d = x.cols();
    const double div = divisor == CovDivisor::Samples ? static_cast<double>(m)
                                                      : static_cast<double>(m - 1);

    GaussianModel model;
    model.mu = x.colwise().sum() / static_cast<double>(m);
    const Eigen::MatrixXd centered = x.rowwise() - model.mu.transpose();
    model.covariance = centered.transpose() * centered / div;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(model.covariance);
    if (solver.info() != Eigen::Success) {
        throw Error("fit_gaussian: eigendecomposition failed to converge");
    }
    model.eigenvalues = solver.eigenvalues().reverse();
    model.eigenvectors = solver.eigenvectors().rowwise().reverse();
    for (Eigen::Index k = 0; k < d; ++k) {
        if (model.eigenvalues[k] < eigen_floor) {
            throw Error(fmt::format(
                "fit_gaussian: covariance is rank deficient (eigenvalue {} = {:.3e} below floor "
                "{:.3e}); need more independent samples than features",
                k, model.eigenvalues[k], eigen_floor));
        }
    }
    model.log_det = model.eigenvalues.array().log().sum();
    model.trace = model.covariance.trace();
    return model;
}

double mahalanobis(const GaussianModel& model, const Eigen::VectorXd& x) {
    check_dimensions(model.mu.size(), x.size(), "mahalanobis");
    for (Eigen::Index k = 0; k < model.eigenvalues.size(); ++k) {
        if (model.eigenvalues[k] < kDefaultVarianceFloor) {
            throw Error(fmt::format("mahalanobis: covariance eigenvalue {} = {:.3e} below floor", k,
                                    model.eigenvalues[k]));
        }
    }
    const Eigen::VectorXd projections = model.eigenvectors.transpose() * (x - model.mu);
    return (projections.array().square() / model.eigenvalues.array()).sum();
}

double gaussian_threshold(double log_det, Eigen::Index d, double epsilon) {
    if (!(epsilon > 0.0)) throw Error("gaussian_threshold: epsilon must be positive");
    // -2 ln((2pi)^{d/2} |C|^{1/2} eps), expanded to avoid overflow in the
    // determinant itself.
    return -static_cast<double>(d) * kLn2Pi - log_det - 2.0 * std::log(epsilon);
}

GaussianDecision classify_gaussian(const GaussianModel& model, const Eigen::VectorXd& x,
                                   double epsilon) {
    const double p_test = mahalanobis(model, x);
    const double threshold = gaussian_threshold(model.log_det, model.mu.size(), epsilon);
    return GaussianDecision{p_test > threshold ? Label::Anomaly : Label::Normal, p_test, threshold};
}

double proximity_classical(const encode::Dataset& data, const Eigen::VectorXd& z0_unit) {
    const Eigen::MatrixXd x = data.genuine_rows();
    const Eigen::Index m = x.rows();
    const Eigen::Index d = x.cols();
    check_dimensions(d, z0_unit.size(), "proximity_classical");
    if (std::abs(z0_unit.norm() - 1.0) > 1e-6) {
        throw Error(fmt::format("proximity_classical: z0 must be a unit vector (norm {})",
                                z0_unit.norm()));
    }

    const Eigen::VectorXd mu = x.colwise().sum() / static_cast<double>(m);
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::VectorXd diff = x.row(i).transpose() - mu;
        const double norm = diff.norm();
        if (norm <= 0.0) {
            throw Error(fmt::format(
                "proximity_classical: row {} equals the mean; its centered state is undefined", i));
        }
        const Eigen::VectorXd unit = diff / norm;
        cov.noalias() += unit * unit.transpose();
    }
    cov /= static_cast<double>(m - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) {
        throw Error("proximity_classical: eigendecomposition failed to converge");
    }
    double f = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) {
        const double beta2 = std::pow(solver.eigenvectors().col(k).dot(z0_unit), 2);
        f += beta2 * std::max(0.0, 1.0 - solver.eigenvalues()[k]);
    }
    return f;
}

}  // namespace qad::classical
