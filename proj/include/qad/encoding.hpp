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

#include <Eigen/Dense>

#include "qad/dataset.hpp"
#include "qad/statevector.hpp"

namespace qad::encode {

/// A unit complex amplitude vector paired with its pre-normalization l2
/// norm, bridging quantum states and the classical magnitudes they encode:
/// scale * unit reconstructs the raw vector.
struct NormedVector {
    Eigen::VectorXcd unit;
    double scale = 0.0;
};

/// Amplitude-encodes a vector: unit = v/|v|, scale = |v|. Requires a nonzero
/// vector of power-of-two length.
NormedVector amplitude_encode(const Eigen::VectorXcd& v);
NormedVector amplitude_encode(const Eigen::VectorXd& v);

/// Builds (1/sqrt(M)) sum_i |x^i>|i> over a `feature` register (log2
/// d_padded qubits, most significant) and an `index` register (log2 M
/// qubits). Rows are unit-normalized per sample. Requires M to be a power of
/// two and every row nonzero.
core::StateVector build_training_superposition(const Dataset& data);

/// Zero-pads a raw genuine-width test point to the dataset's padded width
/// and amplitude-encodes it; scale records the raw norm. Throws if the width
/// does not match the dataset's genuine dimension.
NormedVector encode_test_point(const Eigen::VectorXd& raw, const Dataset& data);

/// Asserts negligible imaginary parts and returns the real part; boundary
/// between the complex quantum types and the real classical models.
Eigen::VectorXd to_real(const Eigen::VectorXcd& v, double tol = 1e-9);

}  // namespace qad::encode
