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

#include "qad/spectral.hpp"

#include <fmt/format.h>

namespace qad::core {

SpectralDecomposition SpectralDecomposition::of_hermitian(const Eigen::MatrixXcd& a,
                                                          double hermiticity_tol) {
    if (a.rows() != a.cols() || a.rows() == 0) {
        throw Error(fmt::format("SpectralDecomposition: matrix must be square and non-empty, got {}x{}",
                                a.rows(), a.cols()));
    }
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    const double asym = (a - a.adjoint()).cwiseAbs().maxCoeff();
    if (asym > hermiticity_tol * scale) {
        throw Error(fmt::format(
            "SpectralDecomposition: matrix is not Hermitian (max |A - A^dagger| = {:.3e})", asym));
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver((a + a.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success) {
        throw Error("SpectralDecomposition: eigendecomposition failed to converge");
    }

    // Eigen returns ascending order; flip to descending.
    const Eigen::Index n = a.rows();
    Eigen::VectorXd values(n);
    Eigen::MatrixXcd vectors(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        values[k] = solver.eigenvalues()[n - 1 - k];
        vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
    }
    return SpectralDecomposition(std::move(values), std::move(vectors));
}

SpectralDecomposition SpectralDecomposition::of_symmetric(const Eigen::MatrixXd& a,
                                                          double symmetry_tol) {
    return of_hermitian(a.cast<std::complex<double>>(), symmetry_tol);
}

Eigen::MatrixXcd SpectralDecomposition::reconstruct() const {
    return vectors_ * values_.asDiagonal() * vectors_.adjoint();
}

}  // namespace qad::core
