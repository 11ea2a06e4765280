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

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qad/classical.hpp"
#include "qad/encoding.hpp"
#include "qad/estimator.hpp"
#include "qad/phase_estimation.hpp"
#include "qad/spectral.hpp"

namespace qad::gauss {

/// Sample covariance packaged as a quantum density operator: the spectral
/// decomposition of the unit-trace normalization C/tr(C) plus the trace that
/// undoes it. The divisor convention is M-1 throughout.
struct CovarianceOperator {
    core::SpectralDecomposition density;  ///< spectrum of C/tr(C), eigenvalues in [0, 1]
    double trace_c = 0.0;                 ///< tr(C)
    Eigen::Index samples = 0;             ///< M
};

/// How centered states enter the covariance sum: weighted by their squared
/// raw norms (reproducing the classical sample covariance of the raw
/// differences) or as bare unit states (the kernel-PCA convention).
enum class CenteredWeighting { RawScale, UnitState };

/// Centered state (x - mu)/|x - mu| with scale |x - mu|; the centering
/// oracle is simulated by direct construction. The point is x.scale *
/// x.unit. Throws when the point equals mu.
encode::NormedVector prepare_centered_state(const encode::NormedVector& x,
                                            const Eigen::VectorXd& mu);

/// Builds C = (1/(M-1)) sum_i w_i |z^i><z^i| with w_i = scale_i^2 (RawScale)
/// or 1 (UnitState), normalizes by the trace and eigendecomposes. RawScale
/// skips zero-scale entries (they contribute nothing); UnitState rejects
/// them. Throws when every centered state is zero.
CovarianceOperator covariance_from_centered(const std::vector<encode::NormedVector>& centered,
                                            CenteredWeighting weighting);

/// Covariance of the dataset's raw centered rows (divisor M-1); matches
/// fit_gaussian with CovDivisor::SamplesMinusOne on the same data.
CovarianceOperator build_covariance(const encode::Dataset& data);

/// Covariance of the dataset's unit centered states (kernel-PCA convention);
/// eigenvalues of C may exceed 1. Throws when a row equals the mean.
CovarianceOperator build_proximity_covariance(const encode::Dataset& data);

struct PtestResult {
    double p_test = 0.0;
    double discarded_weight = 0.0;  ///< input weight on eigenvalues below 1/kappa
};

/// Conditioned matrix inversion: phase-estimates the density operator on
/// z0's unit vector, discards components whose rounded eigenvalue falls
/// below 1/kappa, rotates an ancilla by sqrt(1/(kappa*lambda)) per kept
/// component and decodes p_test = kappa * P(ancilla=0) * scale(z0)^2 /
/// tr(C) = <z0_raw| C^{-1} |z0_raw> on the kept spectrum. Throws when all
/// weight is discarded.
PtestResult estimate_ptest(const CovarianceOperator& cov, const encode::NormedVector& z0,
                           const core::PhaseEstimationConfig& config,
                           const core::EstimatorMode& mode);

/// Log-determinant estimator: every eigenvector receives weight 1/N (the
/// maximally entangled input), the rounded eigenvalues are encoded as
/// rotation amplitudes sqrt((-ln lambda)/ln kappa) and the readout decodes
/// sum_i ln lambda_i = -N ln(kappa) P(ancilla=0). Requires the spectrum
/// inside [1/kappa, 1]; the determinant itself is exp of the result.
double estimate_log_det(const core::SpectralDecomposition& op,
                        const core::PhaseEstimationConfig& config,
                        const core::EstimatorMode& mode);

/// Removes a pre-scaling s applied to reach the [1/kappa, 1] interval:
/// ln|B| = ln|sB| - n ln s.
double log_det_scale_correction(double log_det_scaled, double pre_scale, Eigen::Index n);

/// Phase-estimation bits needed for result error epsilon at condition number
/// kappa: delta = epsilon/(2 kappa^2), bits = ceil(log2(1/delta)).
int precision_for(double target_error, double kappa);

/// The eigenvalue-logarithm map (ln lambda, sqrt(1 - 2 ln lambda)) exactly
/// as printed; kept for studying its Lipschitz bound. The pair is generally
/// not normalized. Requires lambda in (0, 1].
std::pair<double, double> g_map(double lambda);

struct GaussQuantumReport {
    double p_test = 0.0;
    double log_det = 0.0;    ///< estimated ln|C|
    double threshold = 0.0;  ///< -2 ln((2pi)^{d/2} |C|^{1/2} epsilon)
    classical::Label label = classical::Label::Normal;
    double discarded_weight = 0.0;
    core::PhaseEstimationConfig config;
    core::EstimatorMode mode = core::EstimatorMode::exact();
};

/// Full multivariate-Gaussian detection: centers the test point against the
/// sample mean, estimates p_test by conditioned inversion and ln|C| by the
/// determinant estimator (log-det of the density operator plus d ln tr(C)),
/// then applies the p_test > threshold rule. The test point is x0.scale *
/// x0.unit restricted to the genuine columns; a point equal to the mean
/// short-circuits p_test to zero. Requires normalized rows and the density
/// spectrum inside [1/kappa, 1].
GaussQuantumReport detect_gaussian(const encode::Dataset& data, const encode::NormedVector& x0,
                                   double epsilon, const core::PhaseEstimationConfig& config,
                                   const core::EstimatorMode& mode);

/// Kernel-PCA proximity f(z0) = sum_j beta_j^2 max(0, 1 - lambda_j tr(C)):
/// phase-estimates the density operator, rotates by sqrt(max(0, 1 -
/// lambda*tr(C))) and reads the ancilla; eigenvalues of C above 1 are
/// clamped to contribute zero, matching proximity_classical.
double proximity_quantum(const CovarianceOperator& cov, const encode::NormedVector& z0,
                         const core::PhaseEstimationConfig& config,
                         const core::EstimatorMode& mode);

}  // namespace qad::gauss
