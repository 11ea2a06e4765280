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

#include <vector>

#include <Eigen/Dense>

#include "qad/error.hpp"
#include "qad/spectral.hpp"

namespace qad::core {

/// Phase-estimation resolution: eigenvalues are read out to `bits` binary
/// digits; `kappa` is the effective condition number bounding the admissible
/// eigenvalue interval [1/kappa, 1] of downstream inversion stages.
struct PhaseEstimationConfig {
    int bits;
    double kappa;

    PhaseEstimationConfig(int bits_, double kappa_) : bits(bits_), kappa(kappa_) {
        if (bits < 1) throw Error("PhaseEstimationConfig: bits must be >= 1");
        if (!(kappa >= 1.0)) throw Error("PhaseEstimationConfig: kappa must be >= 1");
    }
};

/// One phase-estimation readout: a b-bit rounded eigenvalue, the total input
/// weight observed on it, and the index of the dominant contributing
/// eigenvector (eigenvectors whose eigenvalues round to the same value are
/// merged, since measurement cannot distinguish them).
struct PhaseBin {
    double eigenvalue;
    double weight;
    Eigen::Index eigenvector;
};

/// Rounds lambda to b binary digits: round(lambda * 2^b) / 2^b. For b beyond
/// the double mantissa the value is returned unchanged.
double round_to_bits(double lambda, int bits);

/// Idealized b-bit phase estimation: projects `input` onto the operator's
/// eigenvectors and places each squared projection weight on its rounded
/// eigenvalue (full weight, no spectral leakage). Bins come back sorted by
/// eigenvalue, descending, with numerically-zero weights dropped. Requires
/// all eigenvalues in [0, 1] and a unit input of matching dimension.
std::vector<PhaseBin> ideal_phase_estimation(const SpectralDecomposition& op,
                                             const Eigen::VectorXcd& input,
                                             const PhaseEstimationConfig& config);

}  // namespace qad::core
