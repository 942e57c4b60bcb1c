#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hn3/coin.hpp"
#include "hn3/dense_oracle.hpp"
#include "hn3/engine.hpp"
#include "hn3/search.hpp"
#include "hn3/topology.hpp"
#include "hn3/walker_state.hpp"

using namespace hn3;

TEST_CASE("detector config validation") {
    CHECK_THROWS_AS(PeakDetectorConfig{4, 0.5, 20.0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(PeakDetectorConfig{-1, 0.5, 20.0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(PeakDetectorConfig{5, 0.0, 20.0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(PeakDetectorConfig{5, 1.5, 20.0}.validate(), std::invalid_argument);
    CHECK_THROWS_AS(PeakDetectorConfig{5, 0.5, 0.5}.validate(), std::invalid_argument);
    CHECK_NOTHROW(PeakDetectorConfig{1, 1.0, 1.0}.validate());
}

TEST_CASE("first peak of a plain hump") {
    const std::vector<double> trace{0.1, 0.3, 0.5, 0.4, 0.2};
    const auto peak = detect_first_peak(trace, PeakDetectorConfig{1, 0.5, 20.0});
    REQUIRE(peak.found);
    CHECK(peak.t_f == 2);
    CHECK(peak.p_max == 0.5);
}

TEST_CASE("monotone traces yield no peak") {
    const std::vector<double> rising{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
    CHECK_FALSE(detect_first_peak(rising, PeakDetectorConfig{}).found);
    CHECK_FALSE(detect_first_peak(rising, PeakDetectorConfig{1, 0.5, 20.0}).found);

    const std::vector<double> falling{0.5, 0.4, 0.3};
    CHECK_FALSE(detect_first_peak(falling, PeakDetectorConfig{}).found);

    const std::vector<double> flat{0.2, 0.2, 0.2, 0.2};
    CHECK_FALSE(detect_first_peak(flat, PeakDetectorConfig{}).found);

    const std::vector<double> ripple{0.01, 0.0101, 0.0099, 0.0101, 0.0099, 0.0101};
    CHECK_FALSE(detect_first_peak(ripple, PeakDetectorConfig{}).found);
}

TEST_CASE("micro-ripple is rejected, the real hump is found") {
    const std::vector<double> trace{0.1, 0.12, 0.11, 0.3, 0.6, 0.5};
    const auto peak = detect_first_peak(trace, PeakDetectorConfig{3, 0.5, 20.0});
    REQUIRE(peak.found);
    CHECK(peak.t_f == 4);
    CHECK(peak.p_max == 0.6);
}

TEST_CASE("short traces are rejected") {
    const std::vector<double> tiny{0.1, 0.2};
    CHECK_THROWS_AS(detect_first_peak(tiny, PeakDetectorConfig{}), std::invalid_argument);
}

TEST_CASE("cost models") {
    CHECK(compute_cost(100, 0.25, CostModel::repetition) == 400.0);
    CHECK(compute_cost(100, 0.25, CostModel::amplification) == 200.0);
    CHECK(compute_cost(733, 1.0, CostModel::repetition) == 733.0);
    CHECK(compute_cost(733, 1.0, CostModel::amplification) == 733.0);
    CHECK(compute_cost(5, 0.0, CostModel::repetition) ==
          std::numeric_limits<double>::infinity());
}

TEST_CASE("search run matches the dense-oracle trace through the same detector") {
    // Frozen from the 48x48 dense operator: the first peak of p_0(t) for
    // n=4, epsilon=1, marked 0 sits at t=6 with p=0.40505166613038879. The
    // global maximum over t <= 300 is a later revival (t=219, p=0.492...),
    // so first-peak detection must not return the argmax.
    const auto size = NetworkSize::from_exponent(4);
    const CoinSpec spec{1.0, 0u};
    const PeakDetectorConfig det;

    const auto u = build_dense(size, spec);
    auto v = initial_state(spec, size).amp;
    std::vector<double> dense_trace;
    const auto prob0 = [&](const std::vector<std::complex<double>>& w) {
        return std::norm(w[basis_index(0, 0, size)]) + std::norm(w[basis_index(1, 0, size)]) +
               std::norm(w[basis_index(2, 0, size)]);
    };
    dense_trace.push_back(prob0(v));
    std::size_t argmax = 0;
    for (int t = 1; t <= 300; ++t) {
        v = apply(u, v);
        dense_trace.push_back(prob0(v));
        if (dense_trace.back() > dense_trace[argmax]) argmax = t;
    }

    const auto oracle_peak = detect_first_peak(dense_trace, det);
    REQUIRE(oracle_peak.found);
    CHECK(oracle_peak.t_f == 6);
    CHECK(oracle_peak.p_max == doctest::Approx(0.40505166613038879).epsilon(1e-12));

    const auto result = run_search(size, spec, det);
    REQUIRE(result.peak_found);
    CHECK(result.t_f == oracle_peak.t_f);
    CHECK(result.p_max == doctest::Approx(oracle_peak.p_max).epsilon(1e-12));

    // the late revival really does beat the first peak on this tiny network
    CHECK(argmax == 219);
    CHECK(dense_trace[argmax] > oracle_peak.p_max);
}

TEST_CASE("search trace starts at 1/N and the result is self-consistent") {
    const auto size = NetworkSize::from_exponent(8);
    for (const double eps : {0.5, 1.0, 2.0}) {
        const CoinSpec spec{eps, 1u};
        const auto result = run_search(size, spec, PeakDetectorConfig{});
        CHECK(std::abs(result.trace.p.front() - 1.0 / 256.0) < 1e-12);
        REQUIRE(result.peak_found);
        CHECK(result.t_f >= 1);
        CHECK(result.p_max >= 1.0 / 256.0);
        CHECK(result.p_max == result.trace.p[result.t_f]);
        CHECK(result.cost == compute_cost(result.t_f, result.p_max, CostModel::repetition));

        // replaying the evolution to t_f reproduces the peak probability
        auto state = initial_state(spec, size);
        evolve(state, make_step_operator(size, spec), result.t_f);
        CHECK(probability_at(state, 1) == result.p_max);
    }
}

TEST_CASE("identical runs produce bit-identical traces") {
    const auto size = NetworkSize::from_exponent(7);
    const CoinSpec spec{1.7, 1u};
    const auto first = run_search(size, spec, PeakDetectorConfig{});
    const auto second = run_search(size, spec, PeakDetectorConfig{});
    CHECK(first.trace.p == second.trace.p);
    CHECK(first.t_f == second.t_f);
    CHECK(first.p_max == second.p_max);
    CHECK(first.cost == second.cost);
}

TEST_CASE("full confinement never peaks and carries the whole trace") {
    const auto size = NetworkSize::from_exponent(6);
    const auto result = run_search(size, CoinSpec{3.0, 1u}, PeakDetectorConfig{});
    CHECK_FALSE(result.peak_found);
    CHECK(result.cost == std::numeric_limits<double>::infinity());
    CHECK(result.trace.p.size() == kHorizonCap + 1);
    for (const double p : result.trace.p) {
        CHECK(p == 1.0 / 64.0);  // motion along the ring is exactly frozen
    }
}

TEST_CASE("marking vertex 0 and its top-level partner gives the same search") {
    const auto size = NetworkSize::from_exponent(6);
    const auto at_zero = run_search(size, CoinSpec{1.7, 0u}, PeakDetectorConfig{});
    const auto at_top = run_search(size, CoinSpec{1.7, size.vertices / 2},
                                   PeakDetectorConfig{});
    REQUIRE(at_zero.peak_found);
    REQUIRE(at_top.peak_found);
    CHECK(at_zero.t_f == at_top.t_f);
    CHECK(at_zero.p_max == doctest::Approx(at_top.p_max).epsilon(1e-9));
}

TEST_CASE("search demands a marked vertex inside the network") {
    const auto size = NetworkSize::from_exponent(4);
    CHECK_THROWS_AS(run_search(size, CoinSpec{1.0, std::nullopt}, PeakDetectorConfig{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_search(size, CoinSpec{1.0, 16u}, PeakDetectorConfig{}),
                    std::out_of_range);
}
