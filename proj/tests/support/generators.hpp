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
//
// Seeded instance generators shared by unit, property and acceptance tests.

#pragma once

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace qad::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

inline double gaussian(Rng& rng) {
    // Box-Muller on the deterministic uniform above.
    const double u1 = std::max(uniform(rng, 0.0, 1.0), 1e-300);
    const double u2 = uniform(rng, 0.0, 1.0);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

inline Eigen::VectorXd random_vector(Rng& rng, Eigen::Index d) {
    Eigen::VectorXd v(d);
    for (Eigen::Index j = 0; j < d; ++j) v[j] = gaussian(rng);
    return v;
}

inline Eigen::VectorXd random_unit(Rng& rng, Eigen::Index d) {
    Eigen::VectorXd v = random_vector(rng, d);
    while (v.norm() < 1e-6) v = random_vector(rng, d);
    return v / v.norm();
}

inline Eigen::MatrixXd random_orthogonal(Rng& rng, Eigen::Index d) {
    Eigen::MatrixXd m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = gaussian(rng);
    }
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return qr.householderQ();
}

inline Eigen::MatrixXcd random_unitary(Rng& rng, Eigen::Index d) {
    Eigen::MatrixXcd m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            m(i, j) = std::complex<double>(gaussian(rng), gaussian(rng));
        }
    }
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    return Eigen::MatrixXcd(qr.householderQ());
}

/// Sylvester-construction Hadamard matrix of power-of-two order m (entries
/// +-1, orthogonal columns, column 0 all ones).
inline Eigen::MatrixXd hadamard_matrix(Eigen::Index m) {
    Eigen::MatrixXd h(1, 1);
    h(0, 0) = 1.0;
    while (h.rows() < m) {
        const Eigen::Index k = h.rows();
        Eigen::MatrixXd next(2 * k, 2 * k);
        next.topLeftCorner(k, k) = h;
        next.topRightCorner(k, k) = h;
        next.bottomLeftCorner(k, k) = h;
        next.bottomRightCorner(k, k) = -h;
        h = next;
    }
    return h;
}

/// Random unit-norm rows (M x d) whose rows are normalized samples; retries
/// until the mean is well away from zero and every column variance clears
/// `min_variance`, so density-pipeline preconditions hold.
inline Eigen::MatrixXd random_normalized_rows(Rng& rng, Eigen::Index m, Eigen::Index d,
                                              double min_variance = 1e-4,
                                              double min_mean_norm = 1e-2) {
    while (true) {
        Eigen::MatrixXd rows(m, d);
        for (Eigen::Index i = 0; i < m; ++i) rows.row(i) = random_unit(rng, d).transpose();
        const Eigen::RowVectorXd mu = rows.colwise().sum() / static_cast<double>(m);
        if (mu.norm() < min_mean_norm) continue;
        const Eigen::RowVectorXd var =
            (rows.rowwise() - mu).array().square().colwise().sum() / static_cast<double>(m);
        if (var.minCoeff() < min_variance) continue;
        return rows;
    }
}

/// Dyadic spectrum for a unit-trace operator: d values n_k/2^denom_bits, each
/// >= 1/kappa, summing to exactly 1. Requires kappa >= d.
inline Eigen::VectorXd dyadic_unit_trace_spectrum(Rng& rng, Eigen::Index d, double kappa,
                                                  int denom_bits) {
    const long denom = 1L << denom_bits;
    const long floor_units = static_cast<long>(static_cast<double>(denom) / kappa);
    std::vector<long> units(static_cast<std::size_t>(d), floor_units);
    long remaining = denom - floor_units * d;
    while (remaining > 0) {
        const std::size_t k = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(d));
        if (units[k] < denom) {
            ++units[k];
            --remaining;
        }
    }
    Eigen::VectorXd spectrum(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        spectrum[k] = static_cast<double>(units[static_cast<std::size_t>(k)]) /
                      static_cast<double>(denom);
    }
    return spectrum;
}

/// Unit-norm training rows whose centered sample covariance C (divisor M-1)
/// has density-operator spectrum exactly `spectrum` (which must sum to 1).
/// Construction: rows x^i = Q (sum_k w_k H_{i,c_k} e_k) with H a Hadamard
/// matrix, non-constant columns c_k and w_k = sqrt(spectrum_k); rows are
/// exactly unit, the mean is exactly zero and spectrum(C/tr C) = spectrum.
inline Eigen::MatrixXd rows_with_dyadic_covariance(Rng& rng, const Eigen::VectorXd& spectrum) {
    const Eigen::Index d = spectrum.size();
    Eigen::Index m = 2;
    while (m < d + 1) m <<= 1;
    const Eigen::MatrixXd h = hadamard_matrix(m);

    // Random choice of d distinct non-constant Hadamard columns with signs.
    std::vector<Eigen::Index> columns;
    for (Eigen::Index c = 1; c < m; ++c) columns.push_back(c);
    for (std::size_t k = columns.size(); k > 1; --k) {
        std::swap(columns[k - 1], columns[rng() % k]);
    }

    Eigen::MatrixXd z(m, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const double sign = (rng() & 1) ? 1.0 : -1.0;
        z.col(k) = sign * std::sqrt(spectrum[k]) * h.col(columns[static_cast<std::size_t>(k)]);
    }
    return z * random_orthogonal(rng, d).transpose();
}

}  // namespace qad::testing
