#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hn3/coin.hpp"
#include "hn3/topology.hpp"

namespace hn3 {

// Marked-vertex probability p(t) for t = 0..T plus the run parameters.
struct ProbabilityTrace {
    int exponent = 0;
    double epsilon = 1.0;
    std::uint32_t marked = 0;
    std::vector<double> p;
};

struct PeakDetectorConfig {
    int window = 5;                // moving-average width, odd
    double prominence = 0.5;       // fraction of the smoothed global max a hump must reach
    double horizon_factor = 20.0;  // first horizon = factor * ceil(sqrt(N) * ln N)

    void validate() const;  // throws std::invalid_argument
};

// Evolution never runs past this many steps, however often the horizon doubles.
inline constexpr std::uint64_t kHorizonCap = 1'000'000;

struct PeakResult {
    bool found = false;
    std::uint64_t t_f = 0;
    double p_max = 0.0;
};

// First prominent hump of the trace. The trace is smoothed with a centered
// window-point moving average; a hump is a maximal run where the smoothed
// value stays at or above max(prominence * smoothed global max, 2 * smoothed
// start). The doubled-start floor rejects the flat confined-regime traces
// that never rise above their 1/N baseline. Within the first hump the raw
// argmax gives (t_f, p_max). A hump cut off by the end of the trace counts
// only if the raw trace has already turned over inside it; otherwise the
// caller should extend the horizon. Throws for traces shorter than 3.
PeakResult detect_first_peak(std::span<const double> trace, const PeakDetectorConfig& cfg);

enum class CostModel {
    repetition,     // t_f / p_max: expected steps over O(1/p_max) reruns
    amplification,  // t_f / sqrt(p_max)
};

// +infinity when p_max <= 0.
double compute_cost(std::uint64_t t_f, double p_max, CostModel model);

struct SearchResult {
    NetworkSize size;
    double epsilon = 1.0;
    std::uint32_t marked = 0;
    bool peak_found = false;
    std::uint64_t t_f = 0;
    double p_max = 0.0;
    double cost = 0.0;
    CostModel model = CostModel::repetition;
    PeakDetectorConfig detector;
    ProbabilityTrace trace;
};

// Full search protocol: evolve the biased initial state under the marked step
// operator, record p_marked(t) every step, detect the first peak. When no
// peak is found the horizon doubles up to kHorizonCap; past that the result
// reports peak_found = false with infinite cost and the complete trace.
SearchResult run_search(NetworkSize size, const CoinSpec& spec, const PeakDetectorConfig& det,
                        CostModel model = CostModel::repetition);

}  // namespace hn3
