#pragma once

#include <complex>
#include <random>

#include "hn3/topology.hpp"
#include "hn3/walker_state.hpp"

namespace hn3::testing {

inline WalkerState random_unit_state(NetworkSize size, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    WalkerState state = WalkerState::zero(size);
    for (auto& amp : state.amp) {
        amp = {gauss(rng), gauss(rng)};
    }
    const double norm = state_norm(state);
    for (auto& amp : state.amp) {
        amp /= norm;
    }
    return state;
}

}  // namespace hn3::testing
