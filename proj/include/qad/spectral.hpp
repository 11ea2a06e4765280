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

#include "qad/error.hpp"

namespace qad::core {

/// Eigenvalues (descending) and orthonormal eigenvectors of a Hermitian
/// operator. Backs phase estimation, conditioned inversion and the
/// determinant estimator.
class SpectralDecomposition {
  public:
    /// Decomposes a Hermitian matrix; throws if A deviates from A^dagger by
    /// more than `hermiticity_tol` (relative to the largest entry).
    static SpectralDecomposition of_hermitian(const Eigen::MatrixXcd& a,
                                              double hermiticity_tol = 1e-10);
    static SpectralDecomposition of_symmetric(const Eigen::MatrixXd& a,
                                              double symmetry_tol = 1e-10);

    const Eigen::VectorXd& eigenvalues() const { return values_; }
    const Eigen::MatrixXcd& eigenvectors() const { return vectors_; }
    Eigen::Index size() const { return values_.size(); }

    /// Sum of lambda_k u_k u_k^dagger; matches the input within 1e-10.
    Eigen::MatrixXcd reconstruct() const;

  private:
    SpectralDecomposition(Eigen::VectorXd values, Eigen::MatrixXcd vectors)
        : values_(std::move(values)), vectors_(std::move(vectors)) {}

    Eigen::VectorXd values_;
    Eigen::MatrixXcd vectors_;
};

}  // namespace qad::core
