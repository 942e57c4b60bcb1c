#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "hn3/topology.hpp"

namespace hn3 {

// Complex amplitudes over (coin, vertex), laid out amp[a*N + k].
struct WalkerState {
    NetworkSize size;
    std::vector<std::complex<double>> amp;

    static WalkerState zero(NetworkSize size);

    std::complex<double>& at(std::uint32_t a, std::uint32_t k) {
        return amp[basis_index(a, k, size)];
    }
    const std::complex<double>& at(std::uint32_t a, std::uint32_t k) const {
        return amp[basis_index(a, k, size)];
    }
};

// 2-norm, accumulated serially so results do not depend on thread count.
double state_norm(const WalkerState& state);

// p_k = sum_a |amp(a,k)|^2 for every vertex.
std::vector<double> position_distribution(const WalkerState& state);

// Single-vertex probability; throws std::out_of_range for k >= N.
double probability_at(const WalkerState& state, std::uint32_t k);

}  // namespace hn3
