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

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qad/error.hpp"
#include "qad/estimator.hpp"

namespace qad::core {

/// Post-selection branches with less probability mass than this are treated
/// as genuinely empty rather than round-off.
inline constexpr double kEmptyBranchThreshold = 1e-14;

/// One named block of qubits inside a statevector layout. A register with
/// zero qubits is allowed and denotes a dimension-1 (trivial) register.
struct Register {
    std::string name;
    int qubits = 0;
};

using Layout = std::vector<Register>;

/// Multi-register statevector with unit-norm complex amplitudes.
///
/// The first register in the layout is the most significant one: for a
/// layout {A (a qubits), B (b qubits)} the amplitude of |x⟩_A|y⟩_B lives at
/// flat index x * 2^b + y. Values are immutable after construction; all
/// operations below are pure functions returning fresh states.
class StateVector {
  public:
    /// Normalizes the given amplitudes. Throws if the vector is zero, the
    /// length does not match the layout, or register names collide.
    StateVector(Eigen::VectorXcd amplitudes, Layout layout);

    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    const Layout& layout() const { return layout_; }

    Eigen::Index dim() const { return amps_.size(); }
    int total_qubits() const;

    bool has_register(const std::string& name) const;
    /// Position of a register in the layout; throws for unknown names.
    std::size_t register_index(const std::string& name) const;

    int register_qubits(std::size_t r) const { return layout_[r].qubits; }
    Eigen::Index register_dim(std::size_t r) const {
        return Eigen::Index{1} << layout_[r].qubits;
    }
    /// Flat-index stride of register r (product of dimensions to its right).
    Eigen::Index register_stride(std::size_t r) const;
    /// Value of register r encoded in flat basis index `basis`.
    Eigen::Index register_value(std::size_t r, Eigen::Index basis) const {
        return (basis / register_stride(r)) % register_dim(r);
    }

  private:
    Eigen::VectorXcd amps_;
    Layout layout_;
};

/// Builds a normalized state from raw amplitudes (spec'd entry point; the
/// constructor does the work).
StateVector make_state(Eigen::VectorXcd amplitudes, Layout layout);
StateVector make_state(const Eigen::VectorXd& amplitudes, Layout layout);

/// Applies H^{⊗k} to every qubit of the named register.
StateVector hadamard_register(const StateVector& state, const std::string& reg);

/// Appends a fresh one-qubit ancilla register and rotates it conditioned on
/// the named register: each component a|j⟩ becomes a|j⟩(f(j)|0⟩ +
/// sqrt(1-f(j)^2)|1⟩). `f` is only invoked for basis values of the register
/// that carry amplitude; |f| must not exceed 1 on those values.
StateVector attach_ancilla_rotation(const StateVector& state,
                                    const std::string& reg,
                                    const std::function<double(Eigen::Index)>& f,
                                    const std::string& ancilla_name = "ancilla");

/// Projects the named register onto `outcome`, removes it from the layout
/// and renormalizes. Returns the projected state together with the Born
/// probability of the outcome. Throws when the branch is empty.
std::pair<StateVector, double> postselect(const StateVector& state,
                                          const std::string& reg,
                                          Eigen::Index outcome);

/// Exact Born probability of observing `outcome` on the named register.
double expectation(const StateVector& state, const std::string& reg,
                   Eigen::Index outcome);

/// Born probabilities of every outcome of the named register (sums to 1).
Eigen::VectorXd marginal_probabilities(const StateVector& state,
                                       const std::string& reg);

/// Measurement-probability estimate under the given mode: exact delegates to
/// expectation(); sampled counts simulated shots from the mode's seed.
double sample_expectation(const StateVector& state, const std::string& reg,
                          Eigen::Index outcome, const EstimatorMode& mode);

}  // namespace qad::core
