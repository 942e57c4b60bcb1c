#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "hn3/coin.hpp"
#include "hn3/topology.hpp"
#include "hn3/walker_state.hpp"
#include "support.hpp"

using namespace hn3;

namespace {

double max_abs_diff(const CoinMatrix& a, const CoinMatrix& b) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
    return worst;
}

CoinMatrix matmul(const CoinMatrix& a, const CoinMatrix& b) {
    CoinMatrix c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
}

const CoinMatrix kIdentity{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

}  // namespace

TEST_CASE("grover coin entries and reflection property") {
    const auto g = grover_coin();
    CHECK(g[0][0] == doctest::Approx(-1.0 / 3.0).epsilon(0).scale(1e-16));
    for (int i = 0; i < 3; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(g[i][j] - (i == j ? -1.0 / 3.0 : 2.0 / 3.0)) < 1e-16);
            row_sum += g[i][j];
        }
        CHECK(std::abs(row_sum - 1.0) < 1e-15);
    }
    CHECK(max_abs_diff(matmul(g, g), kIdentity) < 1e-15);
}

TEST_CASE("bias vector endpoints and normalization") {
    const auto uniform = bias_vector(1.0);
    for (const double c : uniform) CHECK(std::abs(c - 1.0 / std::sqrt(3.0)) < 1e-15);

    const auto confined = bias_vector(3.0);
    CHECK(confined[0] == 1.0);
    CHECK(confined[1] == 0.0);
    CHECK(confined[2] == 0.0);

    const auto ring = bias_vector(0.0);
    CHECK(ring[0] == 0.0);
    CHECK(std::abs(ring[1] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(ring[2] - 1.0 / std::sqrt(2.0)) < 1e-15);

    for (double eps = 0.0; eps <= 3.0 + 1e-12; eps += 0.1) {
        const auto chi = bias_vector(std::min(eps, 3.0));
        const double norm = chi[0] * chi[0] + chi[1] * chi[1] + chi[2] * chi[2];
        CHECK(std::abs(norm - 1.0) < 1e-14);
    }

    CHECK_THROWS_AS(bias_vector(-0.1), std::domain_error);
    CHECK_THROWS_AS(bias_vector(3.1), std::domain_error);
}

TEST_CASE("epsilon coin recovers the grover coin at bias 1") {
    CHECK(max_abs_diff(epsilon_coin(1.0), grover_coin()) < 1e-15);
}

TEST_CASE("epsilon coin endpoints") {
    const CoinMatrix confined{{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}};
    CHECK(max_abs_diff(epsilon_coin(3.0), confined) < 1e-15);
    const CoinMatrix ring{{{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}}};
    CHECK(max_abs_diff(epsilon_coin(0.0), ring) < 1e-15);
    CHECK_THROWS_AS(epsilon_coin(-0.01), std::domain_error);
    CHECK_THROWS_AS(epsilon_coin(3.01), std::domain_error);
}

TEST_CASE("epsilon coin equals the closed-form entries across the grid") {
    for (int i = 0; i <= 30; ++i) {
        const double eps = i * 0.1;
        const auto coin = epsilon_coin(eps);

        CoinMatrix expected{};
        expected[0][0] = 2.0 * eps / 3.0 - 1.0;
        const double cross = 2.0 * std::sqrt(eps * (3.0 - eps)) / (3.0 * std::sqrt(2.0));
        expected[0][1] = expected[0][2] = expected[1][0] = expected[2][0] = cross;
        expected[1][1] = expected[2][2] = (3.0 - eps) / 3.0 - 1.0;
        expected[1][2] = expected[2][1] = (3.0 - eps) / 3.0;
        CHECK(max_abs_diff(coin, expected) < 1e-15);

        // reflection identity and symmetry
        CHECK(max_abs_diff(matmul(coin, coin), kIdentity) < 1e-14);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) CHECK(coin[r][c] == coin[c][r]);

        // columns of a real orthogonal matrix have unit squared sums
        for (int c = 0; c < 3; ++c) {
            double sum = 0.0;
            for (int r = 0; r < 3; ++r) sum += coin[r][c] * coin[r][c];
            CHECK(std::abs(sum - 1.0) < 1e-14);
        }
    }
}

TEST_CASE("initial state is uniform over vertices for every bias") {
    const auto size = NetworkSize::from_exponent(4);

    const auto uniform = initial_state(CoinSpec{1.0, 0u}, size);
    for (const auto& amp : uniform.amp) {
        CHECK(std::abs(amp.real() - 1.0 / std::sqrt(48.0)) < 1e-15);
        CHECK(amp.imag() == 0.0);
    }

    const auto confined = initial_state(CoinSpec{3.0, 0u}, size);
    for (std::uint32_t k = 0; k < 16; ++k) {
        CHECK(std::abs(confined.at(0, k).real() - 0.25) < 1e-15);
        CHECK(confined.at(1, k) == std::complex<double>{});
        CHECK(confined.at(2, k) == std::complex<double>{});
    }

    for (const double eps : {0.0, 0.4, 1.0, 1.7, 2.6, 3.0}) {
        const auto state = initial_state(CoinSpec{eps, 5u}, size);
        CHECK(std::abs(state_norm(state) - 1.0) < 1e-14);
        for (const std::uint32_t k : {0u, 5u, 15u}) {
            CHECK(std::abs(probability_at(state, k) - 1.0 / 16.0) < 1e-15);
        }
    }
}

TEST_CASE("marked coin flips the marked triple and mixes the rest") {
    const auto size = NetworkSize::from_exponent(4);
    const CoinSpec spec{1.0, 3u};
    auto state = initial_state(spec, size);
    const auto before = state;
    apply_marked_coin(state, spec);

    const auto g = grover_coin();
    for (std::uint32_t k = 0; k < 16; ++k) {
        for (std::uint32_t a = 0; a < 3; ++a) {
            std::complex<double> expected;
            if (k == 3) {
                expected = -before.at(a, k);
            } else {
                expected = g[a][0] * before.at(0, k) + g[a][1] * before.at(1, k) +
                           g[a][2] * before.at(2, k);
            }
            CHECK(std::abs(state.at(a, k) - expected) < 1e-15);
        }
    }
}

TEST_CASE("marked coin requires a marked vertex and an in-range label") {
    const auto size = NetworkSize::from_exponent(3);
    auto state = initial_state(CoinSpec{1.0, 0u}, size);
    CHECK_THROWS_AS(apply_marked_coin(state, CoinSpec{1.0, std::nullopt}),
                    std::invalid_argument);
    CHECK_THROWS_AS(apply_marked_coin(state, CoinSpec{1.0, 8u}), std::out_of_range);
}

TEST_CASE("marked coin agrees with an independent dense block matrix") {
    const auto size = NetworkSize::from_exponent(4);
    const std::uint32_t count = size.vertices;
    const CoinSpec spec{1.7, 6u};

    auto state = testing::random_unit_state(size, 777);
    const auto before = state;
    apply_marked_coin(state, spec);
    CHECK(std::abs(state_norm(state) - state_norm(before)) < 1e-15);

    // dense block-diagonal marked coin built from the closed-form entries
    const double diag0 = 2.0 * spec.epsilon / 3.0 - 1.0;
    const double cross =
        2.0 * std::sqrt(spec.epsilon * (3.0 - spec.epsilon)) / (3.0 * std::sqrt(2.0));
    const double ring = (3.0 - spec.epsilon) / 3.0;
    const double dense[3][3] = {{diag0, cross, cross},
                                {cross, ring - 1.0, ring},
                                {cross, ring, ring - 1.0}};
    for (std::uint32_t k = 0; k < count; ++k) {
        for (std::uint32_t a = 0; a < 3; ++a) {
            std::complex<double> expected = 0.0;
            if (k == *spec.marked) {
                expected = -before.at(a, k);
            } else {
                for (std::uint32_t b = 0; b < 3; ++b) {
                    expected += dense[a][b] * before.at(b, k);
                }
            }
            CHECK(std::abs(state.at(a, k) - expected) < 1e-14);
        }
    }
}

TEST_CASE("marked coin preserves the norm of random states") {
    const auto size = NetworkSize::from_exponent(6);
    for (const double eps : {0.0, 0.9, 1.7, 3.0}) {
        auto state = testing::random_unit_state(size, 1000 + static_cast<int>(eps * 10));
        apply_marked_coin(state, CoinSpec{eps, 17u});
        CHECK(std::abs(state_norm(state) - 1.0) < 1e-13);
    }
}
