#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hn3/search.hpp"

namespace hn3 {

struct SweepRecord {
    int exponent = 0;
    std::uint64_t vertices = 0;
    double epsilon = 1.0;
    std::uint32_t marked = 0;
    std::uint64_t t_f = 0;
    double p_max = 0.0;
    double cost = 0.0;
    bool peak_found = false;
};

SweepRecord to_record(const SearchResult& result);

struct insufficient_data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One record per grid point, in grid order. Cells run independently (OpenMP);
// rerunning any sweep with the same parameters reproduces it bit for bit.
// Runs that never peak are flagged, not dropped.
std::vector<SweepRecord> sweep_epsilon(NetworkSize size, std::span<const double> grid,
                                       std::uint32_t marked, const PeakDetectorConfig& det,
                                       CostModel model = CostModel::repetition);

// One record per exponent, in list order, at fixed coin spec.
std::vector<SweepRecord> sweep_size(const CoinSpec& spec, std::span<const int> exponents,
                                    const PeakDetectorConfig& det,
                                    CostModel model = CostModel::repetition);

// Marks one representative vertex per hierarchy level (2^level, plus vertex 0)
// so the level dependence of the search can be explored.
std::vector<SweepRecord> sweep_marked_levels(NetworkSize size, double epsilon,
                                             const PeakDetectorConfig& det,
                                             CostModel model = CostModel::repetition);

struct OptimalEpsilon {
    double epsilon = 0.0;
    double cost = 0.0;
};

// Grid point with the least cost among records that found a peak; ties break
// toward smaller epsilon. Throws insufficient_data_error below 3 valid records.
OptimalEpsilon find_optimal_epsilon(std::span<const SweepRecord> records);

struct FitResult {
    std::string model;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double rmse = 0.0;
    double max_abs_residual = 0.0;
    int points = 0;
};

// Least squares on x = ln N, y = ln(cost / ln N); the slope is the cost
// exponent. Needs >= 4 peaked records with distinct N.
FitResult fit_cost_exponent(std::span<const SweepRecord> records);

// Least squares on x = ln ln N, y = ln p_max; the slope is the decay
// exponent of the success probability.
FitResult fit_success_decay(std::span<const SweepRecord> records);

}  // namespace hn3
