#include "hn3/engine.hpp"

#include <cstdint>
#include <stdexcept>

namespace hn3 {

namespace {

// Below this many amplitudes the per-step fork/join overhead beats any
// speedup. Switching kernels is safe: both produce identical bits.
constexpr std::size_t kParallelThreshold = 1u << 15;

void require_dimensions(const WalkerState& state, const StepOperator& op, Scratch& scratch) {
    if (state.size != op.shift.size || state.amp.size() != op.shift.dim()) {
        throw std::invalid_argument("state and step operator dimensions disagree");
    }
    scratch.resize(state.amp.size());
}

}  // namespace

StepOperator make_step_operator(NetworkSize size, const CoinSpec& spec) {
    if (spec.marked && *spec.marked >= size.vertices) {
        throw std::out_of_range("marked vertex outside the network");
    }
    return StepOperator{build_shift_permutation(size), epsilon_coin(spec.epsilon), spec.marked};
}

void step_serial(WalkerState& state, const StepOperator& op, Scratch& scratch) {
    require_dimensions(state, op, scratch);
    const std::uint32_t count = state.size.vertices;
    const std::uint32_t mark = op.marked.value_or(UINT32_MAX);
    const CoinMatrix coin = op.coin;
    const auto* amp = state.amp.data();
    auto* mixed = scratch.data();

    for (std::uint32_t k = 0; k < count; ++k) {
        const auto v0 = amp[k];
        const auto v1 = amp[count + k];
        const auto v2 = amp[2ull * count + k];
        if (k == mark) {
            mixed[k] = -v0;
            mixed[count + k] = -v1;
            mixed[2ull * count + k] = -v2;
        } else {
            apply_coin_triple(coin, v0, v1, v2, mixed[k], mixed[count + k],
                              mixed[2ull * count + k]);
        }
    }

    const std::size_t dim = state.amp.size();
    const std::uint32_t* to = op.shift.to.data();
    auto* out = state.amp.data();
    for (std::size_t i = 0; i < dim; ++i) {
        out[to[i]] = mixed[i];
    }
}

void step_parallel(WalkerState& state, const StepOperator& op, Scratch& scratch) {
    require_dimensions(state, op, scratch);
    const std::uint32_t count = state.size.vertices;
    const std::uint32_t mark = op.marked.value_or(UINT32_MAX);
    const CoinMatrix coin = op.coin;
    const auto* amp = state.amp.data();
    auto* mixed = scratch.data();

#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(count); ++k) {
        const auto v0 = amp[k];
        const auto v1 = amp[count + k];
        const auto v2 = amp[2ull * count + k];
        if (static_cast<std::uint32_t>(k) == mark) {
            mixed[k] = -v0;
            mixed[count + k] = -v1;
            mixed[2ull * count + k] = -v2;
        } else {
            apply_coin_triple(coin, v0, v1, v2, mixed[k], mixed[count + k],
                              mixed[2ull * count + k]);
        }
    }

    const std::int64_t dim = static_cast<std::int64_t>(state.amp.size());
    const std::uint32_t* to = op.shift.to.data();
    auto* out = state.amp.data();
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < dim; ++i) {
        out[to[i]] = mixed[i];
    }
}

void step(WalkerState& state, const StepOperator& op, Scratch& scratch) {
    if (state.amp.size() >= kParallelThreshold) {
        step_parallel(state, op, scratch);
    } else {
        step_serial(state, op, scratch);
    }
}

void step(WalkerState& state, const StepOperator& op) {
    Scratch scratch;
    step(state, op, scratch);
}

void evolve(WalkerState& state, const StepOperator& op, std::uint64_t steps) {
    Scratch scratch;
    for (std::uint64_t i = 0; i < steps; ++i) {
        step(state, op, scratch);
    }
}

}  // namespace hn3
