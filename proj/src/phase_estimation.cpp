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

#include "qad/phase_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

namespace qad::core {

namespace {

// Projection weights below this are numerical zeros (double round-off is
// ~1e-32 when squared), far under every tolerance asserted downstream.
constexpr double kWeightFloor = 1e-24;
constexpr double kEigenvalueSlack = 1e-9;

}  // namespace

double round_to_bits(double lambda, int bits) {
    if (bits > 52) return lambda;
    const double scale = std::ldexp(1.0, bits);
    return std::round(lambda * scale) / scale;
}

std::vector<PhaseBin> ideal_phase_estimation(const SpectralDecomposition& op,
                                             const Eigen::VectorXcd& input,
                                             const PhaseEstimationConfig& config) {
    if (input.size() != op.size()) {
        throw Error(fmt::format("ideal_phase_estimation: input dimension {} != operator dimension {}",
                                input.size(), op.size()));
    }
    const double norm = input.norm();
    if (std::abs(norm - 1.0) > 1e-6) {
        throw Error(fmt::format("ideal_phase_estimation: input must be a unit vector (norm {})", norm));
    }
    for (Eigen::Index k = 0; k < op.size(); ++k) {
        const double lambda = op.eigenvalues()[k];
        if (lambda < -kEigenvalueSlack || lambda > 1.0 + kEigenvalueSlack) {
            throw Error(fmt::format(
                "ideal_phase_estimation: eigenvalue {} at index {} lies outside [0, 1]", lambda, k));
        }
    }

    const Eigen::VectorXcd unit = input / norm;
    struct Accum {
        double weight = 0.0;
        double best_weight = -1.0;
        Eigen::Index best_index = 0;
    };
    std::map<double, Accum> bins;
    for (Eigen::Index k = 0; k < op.size(); ++k) {
        const double lambda = std::clamp(op.eigenvalues()[k], 0.0, 1.0);
        const double weight = std::norm(op.eigenvectors().col(k).dot(unit));
        if (weight < kWeightFloor) continue;
        const double rounded = round_to_bits(lambda, config.bits);
        Accum& acc = bins[rounded];
        acc.weight += weight;
        if (weight > acc.best_weight) {
            acc.best_weight = weight;
            acc.best_index = k;
        }
    }

    std::vector<PhaseBin> out;
    out.reserve(bins.size());
    for (auto it = bins.rbegin(); it != bins.rend(); ++it) {
        out.push_back(PhaseBin{it->first, it->second.weight, it->second.best_index});
    }
    return out;
}

}  // namespace qad::core
