#include "hn3/walker_state.hpp"

#include <cmath>
#include <stdexcept>

namespace hn3 {

WalkerState WalkerState::zero(NetworkSize size) {
    return WalkerState{size, std::vector<std::complex<double>>(3ull * size.vertices)};
}

double state_norm(const WalkerState& state) {
    double sum = 0.0;
    for (const auto& a : state.amp) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

std::vector<double> position_distribution(const WalkerState& state) {
    const std::uint32_t count = state.size.vertices;
    std::vector<double> p(count);
    for (std::uint32_t k = 0; k < count; ++k) {
        p[k] = std::norm(state.amp[k]) + std::norm(state.amp[count + k]) +
               std::norm(state.amp[2ull * count + k]);
    }
    return p;
}

double probability_at(const WalkerState& state, std::uint32_t k) {
    const std::uint32_t count = state.size.vertices;
    if (k >= count) {
        throw std::out_of_range("vertex label " + std::to_string(k) + " outside [0, " +
                                std::to_string(count) + ")");
    }
    return std::norm(state.amp[k]) + std::norm(state.amp[count + k]) +
           std::norm(state.amp[2ull * count + k]);
}

}  // namespace hn3
