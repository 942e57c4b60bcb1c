#include "hn3/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hn3/engine.hpp"
#include "hn3/walker_state.hpp"

namespace hn3 {

namespace {

// A hump must at least double the smoothed starting probability. Confined
// traces never leave their 1/N baseline, so this floor is what sends them
// down the no-peak path.
constexpr double kBaselineFactor = 2.0;

}  // namespace

void PeakDetectorConfig::validate() const {
    if (window < 1 || window % 2 == 0) {
        throw std::invalid_argument("detector window must be odd and positive");
    }
    if (!(prominence > 0.0 && prominence <= 1.0)) {
        throw std::invalid_argument("detector prominence must lie in (0, 1]");
    }
    if (!(horizon_factor >= 1.0)) {
        throw std::invalid_argument("detector horizon factor must be at least 1");
    }
}

PeakResult detect_first_peak(std::span<const double> trace, const PeakDetectorConfig& cfg) {
    cfg.validate();
    const std::size_t len = trace.size();
    if (len < 3) {
        throw std::invalid_argument("peak detection needs a trace of at least 3 samples");
    }

    // Centered moving average, windows clipped at the ends.
    const std::size_t half = static_cast<std::size_t>(cfg.window / 2);
    std::vector<double> prefix(len + 1, 0.0);
    for (std::size_t i = 0; i < len; ++i) {
        prefix[i + 1] = prefix[i] + trace[i];
    }
    std::vector<double> smooth(len);
    for (std::size_t i = 0; i < len; ++i) {
        const std::size_t lo = (i >= half) ? i - half : 0;
        const std::size_t hi = std::min(i + half, len - 1);
        smooth[i] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
    }

    const double global = *std::max_element(smooth.begin(), smooth.end());
    if (!(global > 0.0)) {
        return {};
    }
    // Hysteresis segmentation. The trigger level admits only prominent humps:
    // early transient blips near the marked vertex sit far below the later
    // oscillation maxima, while genuine first humps reach well past half the
    // global level. Once triggered, the hump extends outward to the release
    // level, so ripple dips inside the hump cannot truncate it; the envelope
    // falls back to its starting baseline between consecutive humps.
    const double release = kBaselineFactor * smooth.front();
    const double trigger = std::max(cfg.prominence * global, release);

    std::size_t onset = 0;
    while (onset < len && smooth[onset] < trigger) {
        ++onset;
    }
    if (onset == len) {
        return {};
    }
    std::size_t lo = onset;
    while (lo > 0 && smooth[lo - 1] >= release) {
        --lo;
    }
    std::size_t hi = onset;
    while (hi + 1 < len && smooth[hi + 1] >= release) {
        ++hi;
    }
    // Crest of the smoothed hump, then the raw maximum within +-window of it.
    // Anchoring on the smoothed crest keeps t_f off the near-equal ripple tops
    // scattered across the hump; the raw refinement reports an actual sample.
    std::size_t crest = lo;
    for (std::size_t j = lo + 1; j <= hi; ++j) {
        if (smooth[j] > smooth[crest]) {
            crest = j;
        }
    }
    const auto window = static_cast<std::size_t>(cfg.window);
    const std::size_t wlo = (crest >= window) ? crest - window : 0;
    const std::size_t whi = std::min(crest + window, len - 1);
    std::size_t best = wlo;
    for (std::size_t j = wlo + 1; j <= whi; ++j) {
        if (trace[j] > trace[best]) {
            best = j;
        }
    }
    if (hi + 1 == len) {
        // Hump runs into the end of the trace. Accept it only if the raw
        // trace already turned over; otherwise the horizon is too short.
        const bool turned = best >= 1 && best + 1 < len && trace[best] >= trace[best - 1] &&
                            trace[best] >= trace[best + 1];
        if (!turned) {
            return {};
        }
    }
    return {true, static_cast<std::uint64_t>(best), trace[best]};
}

double compute_cost(std::uint64_t t_f, double p_max, CostModel model) {
    if (!(p_max > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    const double steps = static_cast<double>(t_f);
    switch (model) {
        case CostModel::repetition:
            return steps / p_max;
        case CostModel::amplification:
            return steps / std::sqrt(p_max);
    }
    throw std::logic_error("unknown cost model");
}

SearchResult run_search(NetworkSize size, const CoinSpec& spec, const PeakDetectorConfig& det,
                        CostModel model) {
    det.validate();
    if (!spec.marked) {
        throw std::invalid_argument("search needs a marked vertex");
    }
    if (*spec.marked >= size.vertices) {
        throw std::out_of_range("marked vertex outside the network");
    }

    const std::uint32_t target_vertex = *spec.marked;
    const double vertex_count = static_cast<double>(size.vertices);
    const auto base =
        static_cast<std::uint64_t>(std::ceil(std::sqrt(vertex_count) * std::log(vertex_count)));
    auto horizon = std::min<std::uint64_t>(
        static_cast<std::uint64_t>(std::ceil(det.horizon_factor * static_cast<double>(base))),
        kHorizonCap);

    WalkerState state = initial_state(spec, size);
    const StepOperator op = make_step_operator(size, spec);
    Scratch scratch;

    ProbabilityTrace trace{size.exponent, spec.epsilon, target_vertex, {}};
    trace.p.reserve(horizon + 1);
    trace.p.push_back(probability_at(state, target_vertex));

    PeakResult peak;
    for (;;) {
        while (trace.p.size() <= horizon) {
            step(state, op, scratch);
            trace.p.push_back(probability_at(state, target_vertex));
        }
        peak = detect_first_peak(trace.p, det);
        if (peak.found || horizon >= kHorizonCap) {
            break;
        }
        horizon = std::min(horizon * 2, kHorizonCap);
    }

    SearchResult result;
    result.size = size;
    result.epsilon = spec.epsilon;
    result.marked = target_vertex;
    result.peak_found = peak.found;
    result.t_f = peak.t_f;
    result.p_max = peak.p_max;
    result.cost = peak.found ? compute_cost(peak.t_f, peak.p_max, model)
                             : std::numeric_limits<double>::infinity();
    result.model = model;
    result.detector = det;
    result.trace = std::move(trace);
    return result;
}

}  // namespace hn3
