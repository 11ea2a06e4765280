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

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qad/classical.hpp"
#include "qad/encoding.hpp"
#include "qad/estimator.hpp"
#include "qad/statevector.hpp"

namespace qad::density {

/// Result of a state-preparation stage: the post-selected state, the Born
/// probability of the selected branch, and the norm of the unnormalized
/// classical quantity the state encodes (scale * amplitudes reconstructs it).
struct PrepOutcome {
    core::StateVector state;
    double success_probability = 0.0;
    double scale = 0.0;
};

/// Affine range assumed for ln(sigma_j) by the spectrum-free variance
/// estimator; every genuine sigma_j must satisfy lo <= ln sigma_j <= hi.
struct LogSigmaBounds {
    double lo = 0.0;
    double hi = 0.0;
};

/// Builds the training superposition, applies Hadamards to the index
/// register and post-selects |0...0>, leaving the normalized mean of the
/// unit training rows on the feature register. The success probability is
/// the Gram-matrix double sum (1/M^2) sum_{k,l} <x^k|x^l>, and scale is the
/// norm of the 1/M sample mean. Requires normalized rows and M a power of
/// two; throws when the training set cancels to a zero mean.
PrepOutcome prepare_mean_state(const encode::Dataset& data);

/// Prepares the difference state proportional to sum_{i,j} (x_j^i - mu_j)
/// |i>|j> by interfering the training superposition with the mean state on a
/// flag qubit and post-selecting the |1> branch. The flag branch weights are
/// chosen so the subtraction uses the 1/M mean recorded in `mean`. Throws
/// when every row equals the mean (empty difference branch).
PrepOutcome prepare_difference_state(const encode::Dataset& data, const PrepOutcome& mean);

/// Same interference trick for a test point: produces the state proportional
/// to sum_{i,j} (p_j - mu_j)|i>|j> where p = x0.scale * x0.unit, uniform
/// over the index register, so per-feature block norms are sqrt(M)|p_j -
/// mu_j|. Throws when the point equals the mean.
PrepOutcome prepare_test_difference_state(const encode::NormedVector& x0,
                                          const PrepOutcome& mean, Eigen::Index sample_count);

/// Norm of each per-feature block of a difference state, in raw classical
/// units (scale folded in); for training differences this is sqrt(M sigma_j^2).
Eigen::VectorXd feature_block_norms(const PrepOutcome& outcome);

/// Algorithm-1 estimator of sum_j (p_j - mu_j)^2 / sigma_j^2: rotates an
/// ancilla over a uniform feature register by the rescaled block-norm ratios
/// f(j) = (|chi0_j|/|chi_j|) / (margin * r), r = max_j ratio, and decodes
/// d * (margin*r)^2 * P(ancilla=0). `rescale_margin` >= 1 widens the safety
/// factor without changing the exact-mode value. Returns 0 when the test
/// point coincides with the mean (r = 0).
double estimate_m1(const PrepOutcome& chi, const PrepOutcome& chi0,
                   const core::EstimatorMode& mode, double rescale_margin = 1.0);

/// Algorithm-2 estimator of sum_j ln sigma_j: encodes s_j = (ln sigma_j -
/// lo)/(hi - lo) as rotation amplitude sqrt(s_j) over a uniform feature
/// register and decodes d*(hi-lo)*P(ancilla=0) + lo*n over the n
/// participating features. The sigmas come from the difference state's
/// block-norm bookkeeping and must lie inside the bounds.
double estimate_m2(const PrepOutcome& chi, const core::EstimatorMode& mode,
                   const LogSigmaBounds& bounds);

/// Exact min/max of ln sigma_j over the participating features, widened
/// symmetrically when the spread is degenerate.
LogSigmaBounds default_log_sigma_bounds(const PrepOutcome& chi);

struct DensityQuantumReport {
    double m1 = 0.0;        ///< <M_1> = sum (p_j-mu_j)^2/sigma_j^2
    double m2 = 0.0;        ///< <M_2> = 2 sum ln sigma_j
    double log_p = 0.0;     ///< -(d/2) ln 2pi - (m1 + m2)/2
    classical::Label label = classical::Label::Normal;
    std::vector<PrepOutcome> prep;  ///< mean, difference, then test difference when prepared
    core::EstimatorMode mode = core::EstimatorMode::exact();
};

/// Full density-estimation detection: prepares the mean, training-difference
/// and test-difference states, runs both estimators (on split sampling
/// streams in sampled mode) and applies the ln p < ln epsilon rule. The test
/// point is x0.scale * x0.unit; pass scale 1 for a normalized point. A test
/// point equal to the mean short-circuits the Mahalanobis term to zero.
DensityQuantumReport detect_density(const encode::Dataset& data, const encode::NormedVector& x0,
                                    double epsilon, const core::EstimatorMode& mode,
                                    std::optional<LogSigmaBounds> bounds = std::nullopt,
                                    double variance_floor = classical::kDefaultVarianceFloor);

}  // namespace qad::density
