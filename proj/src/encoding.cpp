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

#include "qad/encoding.hpp"

#include <cmath>

#include <fmt/format.h>

namespace qad::encode {

NormedVector amplitude_encode(const Eigen::VectorXcd& v) {
    if (!is_power_of_two(v.size())) {
        throw Error(fmt::format("amplitude_encode: length {} is not a power of two", v.size()));
    }
    const double norm = v.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw Error("amplitude_encode: vector must be finite and nonzero");
    }
    return NormedVector{v / norm, norm};
}

NormedVector amplitude_encode(const Eigen::VectorXd& v) {
    return amplitude_encode(Eigen::VectorXcd(v.cast<std::complex<double>>()));
}

core::StateVector build_training_superposition(const Dataset& data) {
    const Eigen::Index m = data.sample_count();
    const Eigen::Index d = data.padded_dim();
    if (!is_power_of_two(m)) {
        throw Error(fmt::format(
            "build_training_superposition: sample count {} is not a power of two; truncate or "
            "augment the training set (the density pipeline cannot pad with zero rows)",
            m));
    }
    const int index_qubits = static_cast<int>(std::lround(std::log2(static_cast<double>(m))));
    const int feature_qubits = static_cast<int>(std::lround(std::log2(static_cast<double>(d))));

    const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(d * m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double norm = data.rows().row(i).norm();
        if (norm <= 0.0) {
            throw Error(fmt::format("build_training_superposition: row {} is zero", i));
        }
        for (Eigen::Index j = 0; j < d; ++j) {
            amps[j * m + i] = data.rows()(i, j) / norm * inv_sqrt_m;
        }
    }
    return core::make_state(std::move(amps),
                            core::Layout{{"feature", feature_qubits}, {"index", index_qubits}});
}

NormedVector encode_test_point(const Eigen::VectorXd& raw, const Dataset& data) {
    if (raw.size() != data.genuine_dim()) {
        throw Error(fmt::format("encode_test_point: test point has {} features, dataset has {}",
                                raw.size(), data.genuine_dim()));
    }
    Eigen::VectorXd padded = Eigen::VectorXd::Zero(data.padded_dim());
    padded.head(raw.size()) = raw;
    return amplitude_encode(padded);
}

Eigen::VectorXd to_real(const Eigen::VectorXcd& v, double tol) {
    const double imag_max = v.imag().cwiseAbs().maxCoeff();
    if (imag_max > tol) {
        throw Error(fmt::format("to_real: vector has imaginary parts up to {:.3e}", imag_max));
    }
    return v.real();
}

}  // namespace qad::encode
