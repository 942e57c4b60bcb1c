#include "hn3/coin.hpp"

#include <cmath>
#include <stdexcept>

namespace hn3 {

namespace {

void require_epsilon(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 3.0)) {
        throw std::domain_error("epsilon must lie in [0, 3], got " + std::to_string(epsilon));
    }
}

}  // namespace

CoinMatrix grover_coin() {
    const double third = 1.0 / 3.0;
    return {{{-third, 2 * third, 2 * third},
             {2 * third, -third, 2 * third},
             {2 * third, 2 * third, -third}}};
}

std::array<double, 3> bias_vector(double epsilon) {
    require_epsilon(epsilon);
    const double off = std::sqrt((3.0 - epsilon) / 6.0);
    return {std::sqrt(epsilon / 3.0), off, off};
}

CoinMatrix epsilon_coin(double epsilon) {
    const auto chi = bias_vector(epsilon);
    CoinMatrix c{};
    for (int row = 0; row < kCoinDim; ++row) {
        for (int col = 0; col < kCoinDim; ++col) {
            c[row][col] = 2.0 * chi[row] * chi[col] - (row == col ? 1.0 : 0.0);
        }
    }
    return c;
}

WalkerState initial_state(const CoinSpec& spec, NetworkSize size) {
    const auto chi = bias_vector(spec.epsilon);
    const double uniform = 1.0 / std::sqrt(static_cast<double>(size.vertices));
    WalkerState state = WalkerState::zero(size);
    const std::uint32_t count = size.vertices;
    for (std::uint32_t a = 0; a < 3; ++a) {
        const double value = chi[a] * uniform;
        for (std::uint32_t k = 0; k < count; ++k) {
            state.amp[basis_index(a, k, size)] = value;
        }
    }
    return state;
}

void apply_marked_coin(WalkerState& state, const CoinSpec& spec) {
    if (!spec.marked) {
        throw std::invalid_argument("apply_marked_coin needs a marked vertex");
    }
    const std::uint32_t count = state.size.vertices;
    if (*spec.marked >= count) {
        throw std::out_of_range("marked vertex outside the network");
    }
    const CoinMatrix coin = epsilon_coin(spec.epsilon);
    const std::uint32_t mark = *spec.marked;
    auto* amp = state.amp.data();
    for (std::uint32_t k = 0; k < count; ++k) {
        const auto v0 = amp[k];
        const auto v1 = amp[count + k];
        const auto v2 = amp[2ull * count + k];
        if (k == mark) {
            amp[k] = -v0;
            amp[count + k] = -v1;
            amp[2ull * count + k] = -v2;
        } else {
            apply_coin_triple(coin, v0, v1, v2, amp[k], amp[count + k], amp[2ull * count + k]);
        }
    }
}

}  // namespace hn3
