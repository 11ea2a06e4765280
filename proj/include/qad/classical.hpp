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

#include <string>

#include <Eigen/Dense>

#include "qad/dataset.hpp"
#include "qad/error.hpp"

namespace qad::classical {

enum class Label { Normal, Anomaly };

inline const char* to_string(Label label) {
    return label == Label::Normal ? "normal" : "anomaly";
}

/// Features with variance (or covariance eigenvalues) below this are treated
/// as degenerate and rejected rather than divided by.
inline constexpr double kDefaultVarianceFloor = 1e-12;

// ---------------------------------------------------------------------------
// Per-feature density-estimation detector.
// ---------------------------------------------------------------------------

/// Independent per-feature Gaussian model: componentwise means and
/// population variances over the genuine feature columns.
struct DensityModel {
    Eigen::VectorXd mu;
    Eigen::VectorXd sigma2;
};

/// Fits means and population variances (divisor M). Throws, naming the
/// column, when a genuine feature's variance falls below the floor.
DensityModel fit_density(const encode::Dataset& data,
                         double variance_floor = kDefaultVarianceFloor);

/// ln p(x) = -(d/2) ln 2pi - sum_j ln sigma_j - sum_j (x_j-mu_j)^2/(2 sigma_j^2).
double log_density(const DensityModel& model, const Eigen::VectorXd& x);

struct DensityDecision {
    Label label;
    double score;  ///< ln p(x)
};

/// Anomaly iff ln p(x) < ln(epsilon); ties classify Normal.
DensityDecision classify_density(const DensityModel& model, const Eigen::VectorXd& x,
                                 double epsilon);

// ---------------------------------------------------------------------------
// Multivariate-Gaussian detector.
// ---------------------------------------------------------------------------

/// Which divisor the sample covariance uses. The plain detector is defined
/// with 1/M; the quantum covariance pipeline and kernel-PCA proximity use
/// 1/(M-1). Oracle comparisons must match the pipeline under test.
enum class CovDivisor { Samples, SamplesMinusOne };

struct GaussianModel {
    Eigen::VectorXd mu;
    Eigen::MatrixXd covariance;
    double log_det = 0.0;
    double trace = 0.0;
    /// Cached spectrum (descending) used for the quadratic form.
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

/// Fits mu and C over the genuine columns; log-determinant and trace come
/// from the eigenvalues. Throws a rank-deficiency error when any eigenvalue
/// falls below the floor.
GaussianModel fit_gaussian(const encode::Dataset& data,
                           CovDivisor divisor = CovDivisor::Samples,
                           double eigen_floor = kDefaultVarianceFloor);

/// (x-mu)^T C^{-1} (x-mu), evaluated through the spectral decomposition.
double mahalanobis(const GaussianModel& model, const Eigen::VectorXd& x);

/// Decision threshold -2 ln((2pi)^{d/2} |C|^{1/2} epsilon) for the p_test
/// form of the detector.
double gaussian_threshold(double log_det, Eigen::Index d, double epsilon);

struct GaussianDecision {
    Label label;
    double p_test;
    double threshold;
};

/// Anomaly iff p_test > threshold (ties classify Normal); equivalent to the
/// density test p(x) < epsilon.
GaussianDecision classify_gaussian(const GaussianModel& model, const Eigen::VectorXd& x,
                                   double epsilon);

// ---------------------------------------------------------------------------
// Kernel-PCA proximity.
// ---------------------------------------------------------------------------

/// Proximity f(z0) = sum_k max(0, 1 - lambda_k) <u_k|z0>^2 where lambda_k,
/// u_k decompose the unit-centered-state covariance (1/(M-1)) sum_i
/// |z^i><z^i|. Eigenvalues above 1 contribute zero (clamped) so f stays in
/// [0, 1]. `z0_unit` is the unit-normalized centered test vector.
double proximity_classical(const encode::Dataset& data, const Eigen::VectorXd& z0_unit);

}  // namespace qad::classical
