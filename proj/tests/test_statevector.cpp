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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "qad/statevector.hpp"
#include "support/generators.hpp"

using namespace qad;
using core::EstimatorMode;
using core::Layout;
using core::StateVector;

namespace {

StateVector random_state(testing::Rng& rng, const Layout& layout) {
    Eigen::Index dim = 1;
    for (const auto& reg : layout) dim <<= reg.qubits;
    Eigen::VectorXcd amps(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        amps[i] = std::complex<double>(testing::gaussian(rng), testing::gaussian(rng));
    }
    return core::make_state(std::move(amps), layout);
}

}  // namespace

TEST_CASE("make_state normalizes amplitudes") {
    const auto zero = core::make_state(Eigen::VectorXd{{1.0, 0.0}}, {{"q", 1}});
    CHECK(zero.amplitudes()[0].real() == doctest::Approx(1.0));
    CHECK(zero.amplitudes()[1].real() == doctest::Approx(0.0));

    const auto plus = core::make_state(Eigen::VectorXd{{1.0, 1.0}}, {{"q", 1}});
    CHECK(plus.amplitudes()[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(plus.amplitudes()[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)));

    const auto v34 = core::make_state(Eigen::VectorXd{{3.0, 4.0}}, {{"q", 1}});
    CHECK(v34.amplitudes()[0].real() == doctest::Approx(0.6));
    CHECK(v34.amplitudes()[1].real() == doctest::Approx(0.8));
}

TEST_CASE("make_state rejects bad input") {
    CHECK_THROWS_AS(core::make_state(Eigen::VectorXd{{0.0, 0.0}}, {{"q", 1}}), Error);
    CHECK_THROWS_AS(core::make_state(Eigen::VectorXd{{1.0, 0.0, 0.0}}, {{"q", 1}}), Error);
    CHECK_THROWS_AS(core::make_state(Eigen::VectorXd{{1.0, 0.0, 0.0, 0.0}},
                                     {{"q", 1}, {"q", 1}}),
                    Error);
}

TEST_CASE("zero-qubit registers are dimension one") {
    const auto s = core::make_state(Eigen::VectorXd{{1.0}}, {{"unit", 0}});
    CHECK(s.dim() == 1);
    CHECK(core::expectation(s, "unit", 0) == doctest::Approx(1.0));
    const auto h = core::hadamard_register(s, "unit");
    CHECK(h.amplitudes()[0] == s.amplitudes()[0]);
}

TEST_CASE("hadamard_register basics") {
    const auto zero = core::make_state(Eigen::VectorXd{{1.0, 0.0}}, {{"q", 1}});
    const auto plus = core::hadamard_register(zero, "q");
    CHECK(plus.amplitudes()[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(plus.amplitudes()[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)));

    const auto back = core::hadamard_register(plus, "q");
    CHECK(back.amplitudes()[0].real() == doctest::Approx(1.0));
    CHECK(std::abs(back.amplitudes()[1]) == doctest::Approx(0.0));

    // Uniform two-qubit register collapses to |00>.
    const auto uniform = core::make_state(Eigen::VectorXd(Eigen::VectorXd::Ones(4)), {{"r", 2}});
    const auto collapsed = core::hadamard_register(uniform, "r");
    CHECK(std::abs(collapsed.amplitudes()[0]) == doctest::Approx(1.0));
    for (int i = 1; i < 4; ++i) CHECK(std::abs(collapsed.amplitudes()[i]) < 1e-12);

    CHECK_THROWS_AS(core::hadamard_register(zero, "nope"), Error);
}

TEST_CASE("hadamard is an involution and preserves the norm") {
    testing::Rng rng(7001);
    for (int trial = 0; trial < 30; ++trial) {
        const Layout layout{{"a", 2}, {"b", 1}, {"c", 2}};
        const auto s = random_state(rng, layout);
        const auto hh = core::hadamard_register(core::hadamard_register(s, "b"), "b");
        CHECK((hh.amplitudes() - s.amplitudes()).norm() < 1e-12);
        CHECK(std::abs(core::hadamard_register(s, "a").amplitudes().norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("attach_ancilla_rotation endpoints") {
    const auto plus = core::make_state(Eigen::VectorXd{{1.0, 1.0}}, {{"q", 1}});

    const auto all_zero = core::attach_ancilla_rotation(plus, "q", [](Eigen::Index) { return 1.0; });
    CHECK(core::expectation(all_zero, "ancilla", 0) == doctest::Approx(1.0));
    // The original register is untouched.
    CHECK(core::expectation(all_zero, "q", 0) == doctest::Approx(0.5));

    const auto all_one = core::attach_ancilla_rotation(plus, "q", [](Eigen::Index) { return 0.0; });
    CHECK(core::expectation(all_one, "ancilla", 1) == doctest::Approx(1.0));

    const auto split = core::attach_ancilla_rotation(
        plus, "q", [](Eigen::Index j) { return j == 0 ? 1.0 : 0.0; });
    CHECK(core::expectation(split, "ancilla", 0) == doctest::Approx(0.5));
}

TEST_CASE("attach_ancilla_rotation rejects out-of-range amplitudes on populated values") {
    const auto plus = core::make_state(Eigen::VectorXd{{1.0, 1.0}}, {{"q", 1}});
    CHECK_THROWS_WITH_AS(
        core::attach_ancilla_rotation(plus, "q", [](Eigen::Index j) { return j == 1 ? 1.5 : 0.0; }),
        doctest::Contains("f(1)"), Error);

    // Unpopulated basis values are never evaluated.
    const auto basis0 = core::make_state(Eigen::VectorXd{{1.0, 0.0}}, {{"q", 1}});
    const auto ok = core::attach_ancilla_rotation(basis0, "q", [](Eigen::Index j) {
        if (j == 1) throw std::logic_error("must not evaluate f on an unpopulated value");
        return 1.0;
    });
    CHECK(core::expectation(ok, "ancilla", 0) == doctest::Approx(1.0));

    CHECK_THROWS_AS(core::attach_ancilla_rotation(plus, "q", [](Eigen::Index) { return 1.0; }, "q"),
                    Error);
}

TEST_CASE("property: ancilla |0> probability is sum |a_j|^2 f(j)^2") {
    testing::Rng rng(7002);
    for (int trial = 0; trial < 40; ++trial) {
        const Layout layout{{"x", 2}, {"y", 1}};
        const auto s = random_state(rng, layout);
        Eigen::VectorXd f(4);
        for (int j = 0; j < 4; ++j) f[j] = testing::uniform(rng, -1.0, 1.0);
        const auto rotated =
            core::attach_ancilla_rotation(s, "x", [&](Eigen::Index j) { return f[j]; });

        // Brute-force Born sum over the original basis.
        double expected = 0.0;
        for (Eigen::Index i = 0; i < s.dim(); ++i) {
            const Eigen::Index j = s.register_value(0, i);
            expected += std::norm(s.amplitudes()[i]) * f[j] * f[j];
        }
        CHECK(core::expectation(rotated, "ancilla", 0) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(std::abs(rotated.amplitudes().norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("postselect basics") {
    const auto plus = core::make_state(Eigen::VectorXd{{1.0, 1.0}}, {{"q", 1}});
    const auto [empty, prob] = core::postselect(plus, "q", 0);
    CHECK(prob == doctest::Approx(0.5));
    CHECK(empty.dim() == 1);
    CHECK(empty.layout().empty());

    // Product state: post-selecting the |0> factor succeeds with certainty.
    Eigen::VectorXd amps(8);
    amps << 0.2, 0.0, 0.9, 0.0, 0.1, 0.0, 0.3, 0.0;
    const auto product = core::make_state(amps, {{"psi", 2}, {"z", 1}});
    const auto [reduced, p] = core::postselect(product, "z", 0);
    CHECK(p == doctest::Approx(1.0));
    CHECK(reduced.dim() == 4);

    const auto basis1 = core::make_state(Eigen::VectorXd{{0.0, 1.0}}, {{"q", 1}});
    CHECK_THROWS_AS(core::postselect(basis1, "q", 0), Error);
    CHECK_THROWS_AS(core::postselect(basis1, "q", 5), Error);
}

TEST_CASE("postselect recovers the mean-state probability 1/M for orthonormal rows") {
    // Training superposition of M orthonormal states, Hadamard on the index
    // register, then projection onto |0...0>. Oracle: the Gram-matrix double
    // sum (1/M^2) sum_{k,l} <x^k|x^l> = 1/M for orthonormal rows.
    const Eigen::Index m = 4, d = 4;
    Eigen::MatrixXd rows = Eigen::MatrixXd::Identity(m, d);
    Eigen::VectorXd amps = Eigen::VectorXd::Zero(m * d);
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            amps[j * m + i] = rows(i, j) / std::sqrt(static_cast<double>(m));
        }
    }
    auto psi = core::make_state(amps, {{"feature", 2}, {"index", 2}});
    psi = core::hadamard_register(psi, "index");

    double gram_sum = 0.0;
    for (Eigen::Index k = 0; k < m; ++k) {
        for (Eigen::Index l = 0; l < m; ++l) gram_sum += rows.row(k).dot(rows.row(l));
    }
    const double oracle = gram_sum / static_cast<double>(m * m);

    const auto [mean_state, prob] = core::postselect(psi, "index", 0);
    CHECK(prob == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(prob == doctest::Approx(1.0 / static_cast<double>(m)).epsilon(1e-12));
    CHECK(mean_state.dim() == d);
}

TEST_CASE("property: postselect probabilities over all outcomes sum to one") {
    testing::Rng rng(7003);
    for (int trial = 0; trial < 20; ++trial) {
        const Layout layout{{"a", 2}, {"b", 2}};
        const auto s = random_state(rng, layout);
        double total = 0.0;
        for (Eigen::Index outcome = 0; outcome < 4; ++outcome) {
            total += core::postselect(s, "b", outcome).second;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("expectation examples") {
    const auto s = core::make_state(Eigen::VectorXd{{0.6, 0.8}}, {{"q", 1}});
    CHECK(core::expectation(s, "q", 0) == doctest::Approx(0.36));
    CHECK(core::expectation(s, "q", 1) == doctest::Approx(0.64));

    const auto marginal = core::marginal_probabilities(s, "q");
    CHECK(marginal.sum() == doctest::Approx(1.0));
}

TEST_CASE("sample_expectation in exact and deterministic branches") {
    const auto plus = core::make_state(Eigen::VectorXd{{1.0, 1.0}}, {{"q", 1}});
    const auto sure = core::attach_ancilla_rotation(plus, "q", [](Eigen::Index) { return 1.0; });

    CHECK(core::sample_expectation(plus, "q", 0, EstimatorMode::exact()) ==
          core::expectation(plus, "q", 0));
    CHECK(core::sample_expectation(sure, "ancilla", 0, EstimatorMode::sampled(100, 42)) == 1.0);
}

TEST_CASE("sampled fair coin lands within five binomial standard errors") {
    // Oracle: sigma = sqrt(p(1-p)/shots) = 0.005 for p = 1/2 and 1e4 shots.
    const auto coin = core::make_state(Eigen::VectorXd{{1.0, 1.0}}, {{"q", 1}});
    const double sigma = std::sqrt(0.25 / 1.0e4);
    CHECK(sigma == doctest::Approx(0.005));
    const double estimate =
        core::sample_expectation(coin, "q", 0, EstimatorMode::sampled(10000, 1234));
    CHECK(std::abs(estimate - 0.5) <= 5.0 * sigma);
}

TEST_CASE("property: sampled estimates respect the binomial 5-sigma bound on 99%+ of seeds") {
    const auto s = core::make_state(Eigen::VectorXd{{0.35, 0.937}}, {{"q", 1}});
    const double p = core::expectation(s, "q", 0);
    const std::uint64_t shots = 2000;
    const double bound = 5.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
    int within = 0;
    const int runs = 300;
    for (int seed = 0; seed < runs; ++seed) {
        const double estimate = core::sample_expectation(
            s, "q", 0, EstimatorMode::sampled(shots, static_cast<std::uint64_t>(seed)));
        if (std::abs(estimate - p) <= bound) ++within;
    }
    CHECK(within >= static_cast<int>(0.99 * runs));
}

TEST_CASE("sampling is reproducible per seed and split streams differ") {
    const auto coin = core::make_state(Eigen::VectorXd{{1.0, 1.0}}, {{"q", 1}});
    const auto mode = EstimatorMode::sampled(512, 99);
    CHECK(core::sample_expectation(coin, "q", 0, mode) ==
          core::sample_expectation(coin, "q", 0, mode));
    CHECK(core::sample_expectation(coin, "q", 0, mode.split(1)) !=
          core::sample_expectation(coin, "q", 0, mode.split(2)));
    CHECK(EstimatorMode::exact().split(3).is_exact());
    CHECK_THROWS_AS(EstimatorMode::sampled(0, 1), Error);
}
