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

#include "qad/dataset.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>

#include <fmt/format.h>

namespace qad::encode {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_cell(std::string_view cell, std::size_t line, std::size_t column) {
    const std::string_view t = trim(cell);
    double value = 0.0;
    const auto* end = t.data() + t.size();
    const auto result = std::from_chars(t.data(), end, value);
    if (t.empty() || result.ec != std::errc{} || result.ptr != end) {
        throw Error(fmt::format("CSV: non-numeric cell '{}' at line {}, column {}",
                                std::string(cell), line, column));
    }
    return value;
}

std::vector<double> parse_row(const std::string& text, std::size_t line) {
    std::vector<double> row;
    std::size_t start = 0;
    std::size_t column = 1;
    while (true) {
        const std::size_t comma = text.find(',', start);
        const std::size_t end = (comma == std::string::npos) ? text.size() : comma;
        row.push_back(parse_cell(std::string_view(text).substr(start, end - start), line, column));
        if (comma == std::string::npos) break;
        start = comma + 1;
        ++column;
    }
    return row;
}

Eigen::MatrixXd parse_matrix(std::istream& in, const LoadOptions& opts, bool single_row) {
    std::vector<std::vector<double>> parsed;
    std::string text;
    std::size_t line = 0;
    bool skipped_header = !opts.skip_header;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (trim(text).empty()) {
            if (in.peek() == std::char_traits<char>::eof()) break;  // trailing newline
            throw Error(fmt::format("CSV: blank line {} inside data", line));
        }
        if (!skipped_header) {
            skipped_header = true;
            continue;
        }
        parsed.push_back(parse_row(text, line));
        if (parsed.size() > 1 && parsed.back().size() != parsed.front().size()) {
            throw Error(fmt::format("CSV: line {} has {} cells, expected {}", line,
                                    parsed.back().size(), parsed.front().size()));
        }
    }
    if (parsed.empty()) throw Error("CSV: no data rows");
    if (single_row && parsed.size() != 1) {
        throw Error(fmt::format("CSV: expected a single test row, found {}", parsed.size()));
    }
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(parsed.size()),
                         static_cast<Eigen::Index>(parsed.front().size()));
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
        for (Eigen::Index j = 0; j < rows.cols(); ++j) {
            rows(i, j) = parsed[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    return rows;
}

}  // namespace

Eigen::Index next_power_of_two(Eigen::Index n) {
    Eigen::Index p = 1;
    while (p < n) p <<= 1;
    return p;
}

bool is_power_of_two(Eigen::Index n) { return n >= 1 && (n & (n - 1)) == 0; }

Dataset Dataset::from_matrix(const Eigen::MatrixXd& raw_rows, bool normalize_rows) {
    const Eigen::Index m = raw_rows.rows();
    const Eigen::Index d = raw_rows.cols();
    if (m < 2) throw Error(fmt::format("Dataset: need at least 2 samples, got {}", m));
    if (d < 1) throw Error("Dataset: need at least 1 feature column");

    const Eigen::Index d_padded = next_power_of_two(d);
    Dataset data;
    data.rows_ = Eigen::MatrixXd::Zero(m, d_padded);
    data.scales_ = Eigen::VectorXd::Zero(m);
    data.normalized_ = normalize_rows;
    data.genuine_dim_ = d;
    data.mask_.assign(static_cast<std::size_t>(d_padded), false);
    for (Eigen::Index j = 0; j < d; ++j) data.mask_[static_cast<std::size_t>(j)] = true;

    for (Eigen::Index i = 0; i < m; ++i) {
        const double norm = raw_rows.row(i).norm();
        data.scales_[i] = norm;
        if (normalize_rows) {
            if (norm <= 0.0) {
                throw Error(fmt::format("Dataset: row {} is zero and cannot be normalized", i));
            }
            data.rows_.row(i).head(d) = raw_rows.row(i) / norm;
        } else {
            data.rows_.row(i).head(d) = raw_rows.row(i);
        }
    }
    return data;
}

Eigen::MatrixXd Dataset::genuine_rows() const {
    return rows_.leftCols(genuine_dim_);
}

Eigen::VectorXd Dataset::genuine_vector(const Eigen::VectorXd& padded) const {
    if (padded.size() != padded_dim()) {
        throw Error(fmt::format("Dataset: vector length {} != padded dimension {}", padded.size(),
                                padded_dim()));
    }
    return padded.head(genuine_dim_);
}

Dataset load_dataset(std::istream& in, const LoadOptions& opts) {
    return Dataset::from_matrix(parse_matrix(in, opts, /*single_row=*/false), opts.normalize_rows);
}

Eigen::VectorXd load_test_row(std::istream& in, const LoadOptions& opts) {
    const Eigen::MatrixXd row = parse_matrix(in, opts, /*single_row=*/true);
    return row.row(0);
}

}  // namespace qad::encode
