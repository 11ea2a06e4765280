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

#include "qad/statevector.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace qad::core {

namespace {

std::string layout_names(const Layout& layout) {
    std::string out;
    for (const auto& r : layout) {
        if (!out.empty()) out += ", ";
        out += r.name;
    }
    return out.empty() ? "<none>" : out;
}

}  // namespace

StateVector::StateVector(Eigen::VectorXcd amplitudes, Layout layout)
    : amps_(std::move(amplitudes)), layout_(std::move(layout)) {
    int qubits = 0;
    for (std::size_t r = 0; r < layout_.size(); ++r) {
        const auto& reg = layout_[r];
        if (reg.name.empty()) throw Error("StateVector: register name must be non-empty");
        if (reg.qubits < 0) {
            throw Error(fmt::format("StateVector: register '{}' has negative qubit count", reg.name));
        }
        for (std::size_t s = r + 1; s < layout_.size(); ++s) {
            if (layout_[s].name == reg.name) {
                throw Error(fmt::format("StateVector: duplicate register name '{}'", reg.name));
            }
        }
        qubits += reg.qubits;
    }
    if (qubits > 30) {
        throw Error(fmt::format("StateVector: {} qubits exceeds the supported maximum of 30", qubits));
    }
    const Eigen::Index expected = Eigen::Index{1} << qubits;
    if (amps_.size() != expected) {
        throw Error(fmt::format(
            "StateVector: amplitude length {} does not match layout dimension {} ({} qubits)",
            amps_.size(), expected, qubits));
    }
    const double norm = amps_.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw Error("StateVector: amplitudes must form a finite nonzero vector");
    }
    amps_ /= norm;
}

int StateVector::total_qubits() const {
    int q = 0;
    for (const auto& r : layout_) q += r.qubits;
    return q;
}

bool StateVector::has_register(const std::string& name) const {
    for (const auto& r : layout_) {
        if (r.name == name) return true;
    }
    return false;
}

std::size_t StateVector::register_index(const std::string& name) const {
    for (std::size_t r = 0; r < layout_.size(); ++r) {
        if (layout_[r].name == name) return r;
    }
    throw Error(fmt::format("StateVector: unknown register '{}' (layout: {})", name,
                            layout_names(layout_)));
}

Eigen::Index StateVector::register_stride(std::size_t r) const {
    Eigen::Index stride = 1;
    for (std::size_t s = r + 1; s < layout_.size(); ++s) {
        stride <<= layout_[s].qubits;
    }
    return stride;
}

StateVector make_state(Eigen::VectorXcd amplitudes, Layout layout) {
    return StateVector(std::move(amplitudes), std::move(layout));
}

StateVector make_state(const Eigen::VectorXd& amplitudes, Layout layout) {
    return StateVector(amplitudes.cast<std::complex<double>>(), std::move(layout));
}

StateVector hadamard_register(const StateVector& state, const std::string& reg) {
    const std::size_t r = state.register_index(reg);
    Eigen::VectorXcd a = state.amplitudes();
    const Eigen::Index dim = a.size();
    const Eigen::Index stride = state.register_stride(r);
    const int k = state.register_qubits(r);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int q = 0; q < k; ++q) {
        const Eigen::Index mask = stride << q;
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (i & mask) continue;
            const std::complex<double> x = a[i];
            const std::complex<double> y = a[i | mask];
            a[i] = (x + y) * inv_sqrt2;
            a[i | mask] = (x - y) * inv_sqrt2;
        }
    }
    return StateVector(std::move(a), state.layout());
}

StateVector attach_ancilla_rotation(const StateVector& state, const std::string& reg,
                                    const std::function<double(Eigen::Index)>& f,
                                    const std::string& ancilla_name) {
    if (state.has_register(ancilla_name)) {
        throw Error(fmt::format("attach_ancilla_rotation: register '{}' already exists",
                                ancilla_name));
    }
    const std::size_t r = state.register_index(reg);
    const Eigen::VectorXcd& a = state.amplitudes();
    const Eigen::Index dim = a.size();

    // Rotation amplitudes per basis value of the control register; computed
    // lazily so f is never invoked for unpopulated values.
    const Eigen::Index reg_dim = state.register_dim(r);
    Eigen::VectorXd cos_amp = Eigen::VectorXd::Zero(reg_dim);
    Eigen::VectorXd sin_amp = Eigen::VectorXd::Zero(reg_dim);
    std::vector<bool> evaluated(static_cast<std::size_t>(reg_dim), false);

    Eigen::VectorXcd out(dim * 2);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const std::complex<double> amp = a[i];
        if (amp == std::complex<double>(0.0, 0.0)) {
            out[2 * i] = 0.0;
            out[2 * i + 1] = 0.0;
            continue;
        }
        const Eigen::Index j = state.register_value(r, i);
        if (!evaluated[static_cast<std::size_t>(j)]) {
            const double v = f(j);
            if (!std::isfinite(v) || std::abs(v) > 1.0 + 1e-12) {
                throw Error(fmt::format(
                    "attach_ancilla_rotation: |f({})| = {} exceeds 1 on a populated basis value",
                    j, v));
            }
            const double c = std::clamp(v, -1.0, 1.0);
            cos_amp[j] = c;
            sin_amp[j] = std::sqrt(std::max(0.0, 1.0 - c * c));
            evaluated[static_cast<std::size_t>(j)] = true;
        }
        out[2 * i] = amp * cos_amp[j];
        out[2 * i + 1] = amp * sin_amp[j];
    }

    Layout layout = state.layout();
    layout.push_back(Register{ancilla_name, 1});
    return StateVector(std::move(out), std::move(layout));
}

std::pair<StateVector, double> postselect(const StateVector& state, const std::string& reg,
                                          Eigen::Index outcome) {
    const std::size_t r = state.register_index(reg);
    const Eigen::Index reg_dim = state.register_dim(r);
    if (outcome < 0 || outcome >= reg_dim) {
        throw Error(fmt::format("postselect: outcome {} out of range for register '{}' (dim {})",
                                outcome, reg, reg_dim));
    }
    const Eigen::VectorXcd& a = state.amplitudes();
    const Eigen::Index stride = state.register_stride(r);
    const Eigen::Index high_count = a.size() / (stride * reg_dim);

    Eigen::VectorXcd projected(a.size() / reg_dim);
    double prob = 0.0;
    for (Eigen::Index high = 0; high < high_count; ++high) {
        const Eigen::Index src_base = (high * reg_dim + outcome) * stride;
        const Eigen::Index dst_base = high * stride;
        for (Eigen::Index low = 0; low < stride; ++low) {
            const std::complex<double> amp = a[src_base + low];
            projected[dst_base + low] = amp;
            prob += std::norm(amp);
        }
    }
    if (prob < kEmptyBranchThreshold) {
        throw Error(fmt::format(
            "postselect: branch '{}'={} is empty (probability {:.3e} below threshold)", reg,
            outcome, prob));
    }

    Layout layout = state.layout();
    layout.erase(layout.begin() + static_cast<std::ptrdiff_t>(r));
    return {StateVector(std::move(projected), std::move(layout)), prob};
}

double expectation(const StateVector& state, const std::string& reg, Eigen::Index outcome) {
    const std::size_t r = state.register_index(reg);
    const Eigen::Index reg_dim = state.register_dim(r);
    if (outcome < 0 || outcome >= reg_dim) {
        throw Error(fmt::format("expectation: outcome {} out of range for register '{}' (dim {})",
                                outcome, reg, reg_dim));
    }
    const Eigen::VectorXcd& a = state.amplitudes();
    const Eigen::Index stride = state.register_stride(r);
    const Eigen::Index high_count = a.size() / (stride * reg_dim);
    double prob = 0.0;
    for (Eigen::Index high = 0; high < high_count; ++high) {
        const Eigen::Index base = (high * reg_dim + outcome) * stride;
        for (Eigen::Index low = 0; low < stride; ++low) {
            prob += std::norm(a[base + low]);
        }
    }
    return prob;
}

Eigen::VectorXd marginal_probabilities(const StateVector& state, const std::string& reg) {
    const std::size_t r = state.register_index(reg);
    const Eigen::Index reg_dim = state.register_dim(r);
    const Eigen::VectorXcd& a = state.amplitudes();
    Eigen::VectorXd probs = Eigen::VectorXd::Zero(reg_dim);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        probs[state.register_value(r, i)] += std::norm(a[i]);
    }
    return probs;
}

double sample_expectation(const StateVector& state, const std::string& reg, Eigen::Index outcome,
                          const EstimatorMode& mode) {
    const double p = expectation(state, reg, outcome);
    if (mode.is_exact()) return p;
    rng::Stream stream(mode.seed());
    const std::uint64_t shots = mode.shots();
    std::uint64_t count = 0;
    for (std::uint64_t s = 0; s < shots; ++s) {
        if (stream.uniform() < p) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(shots);
}

}  // namespace qad::core
