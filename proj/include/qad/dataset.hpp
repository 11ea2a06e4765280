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

#include <istream>
#include <vector>

#include <Eigen/Dense>

#include "qad/error.hpp"

namespace qad::encode {

struct LoadOptions {
    bool normalize_rows = true;
    bool skip_header = false;
};

/// Training samples in amplitude-encoding-ready form: rows are optionally
/// l2-normalized and the feature dimension is zero-padded to the next power
/// of two, with a mask recording which columns are genuine.
class Dataset {
  public:
    /// Validates and pads a raw M x d sample matrix. Throws for fewer than
    /// two rows, or a zero row when normalization is requested.
    static Dataset from_matrix(const Eigen::MatrixXd& raw_rows, bool normalize_rows);

    /// M x d_padded; rows are unit vectors when normalized() is set.
    const Eigen::MatrixXd& rows() const { return rows_; }
    const std::vector<bool>& feature_mask() const { return mask_; }
    Eigen::Index sample_count() const { return rows_.rows(); }
    Eigen::Index padded_dim() const { return rows_.cols(); }
    Eigen::Index genuine_dim() const { return genuine_dim_; }
    bool normalized() const { return normalized_; }
    /// Pre-normalization l2 norm of each row (recorded in either mode).
    const Eigen::VectorXd& row_scales() const { return scales_; }

    /// The genuine (non-padding) columns as an M x genuine_dim matrix.
    Eigen::MatrixXd genuine_rows() const;
    /// Restriction of a padded-length vector to the genuine columns.
    Eigen::VectorXd genuine_vector(const Eigen::VectorXd& padded) const;

  private:
    Dataset() = default;

    Eigen::MatrixXd rows_;
    std::vector<bool> mask_;
    Eigen::VectorXd scales_;
    Eigen::Index genuine_dim_ = 0;
    bool normalized_ = false;
};

/// Smallest power of two >= n (n >= 1).
Eigen::Index next_power_of_two(Eigen::Index n);
bool is_power_of_two(Eigen::Index n);

/// Parses headerless (or optionally one-header-line) CSV: UTF-8, comma
/// separated, decimal floats, one sample per row. Throws with the line and
/// column of the first ragged row or non-numeric cell.
Dataset load_dataset(std::istream& in, const LoadOptions& opts = {});

/// Parses a single-row CSV of raw feature values (used for test points).
Eigen::VectorXd load_test_row(std::istream& in, const LoadOptions& opts = {});

}  // namespace qad::encode
