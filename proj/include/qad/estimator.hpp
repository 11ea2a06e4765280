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

#include <cstdint>

#include "qad/error.hpp"
#include "qad/rng.hpp"

namespace qad::core {

/// How measurement expectations are evaluated: exactly from the amplitudes,
/// or statistically by counting simulated shots from a seeded generator.
class EstimatorMode {
  public:
    static EstimatorMode exact() { return EstimatorMode{}; }

    static EstimatorMode sampled(std::uint64_t shots, std::uint64_t seed) {
        if (shots < 1) {
            throw Error("EstimatorMode: sampled mode requires shots >= 1");
        }
        EstimatorMode m;
        m.exact_ = false;
        m.shots_ = shots;
        m.seed_ = seed;
        return m;
    }

    bool is_exact() const { return exact_; }

    std::uint64_t shots() const {
        if (exact_) throw Error("EstimatorMode: exact mode has no shot count");
        return shots_;
    }

    std::uint64_t seed() const {
        if (exact_) throw Error("EstimatorMode: exact mode has no seed");
        return seed_;
    }

    /// Mode for an independent sub-experiment. Exact stays exact; Sampled
    /// keeps the shot budget and mixes `salt` into the seed so concurrent
    /// estimators consume disjoint pseudo-random streams.
    EstimatorMode split(std::uint64_t salt) const {
        if (exact_) return *this;
        return sampled(shots_, rng::derive(seed_, salt));
    }

  private:
    EstimatorMode() = default;

    bool exact_ = true;
    std::uint64_t shots_ = 0;
    std::uint64_t seed_ = 0;
};

}  // namespace qad::core
