#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "hn3/topology.hpp"
#include "hn3/walker_state.hpp"

namespace hn3 {

// Vertex degree of the network; the coin space has this dimension.
inline constexpr int kCoinDim = 3;

// 3x3 real orthogonal coin, row-major.
using CoinMatrix = std::array<std::array<double, 3>, 3>;

// Bias parameter and optional search target. epsilon in [0, 3]: 1 recovers the
// Grover coin, above 1 pushes probability flux onto the small-world edge,
// below 1 keeps it on the ring. Both endpoints are admitted; the confinement
// blow-up at epsilon -> 3 shows up in experiment results, not as an input error.
struct CoinSpec {
    double epsilon = 1.0;
    std::optional<std::uint32_t> marked;
};

CoinMatrix grover_coin();

// Unit coin-space vector the biased coin reflects about:
// (sqrt(eps/3), sqrt((3-eps)/6), sqrt((3-eps)/6)).
// Throws std::domain_error for epsilon outside [0, 3].
std::array<double, 3> bias_vector(double epsilon);

// The reflection 2|chi><chi| - I about bias_vector(epsilon). Equals the Grover
// coin at epsilon = 1, diag(1,-1,-1) at epsilon = 3.
CoinMatrix epsilon_coin(double epsilon);

// Product state bias_vector(epsilon) (x) uniform position superposition.
// Every vertex starts with probability exactly 1/N, independent of the mark.
WalkerState initial_state(const CoinSpec& spec, NetworkSize size);

// Applies the marked coin in place: epsilon_coin at every vertex except the
// marked one, which gets a plain sign flip. Requires spec.marked.
void apply_marked_coin(WalkerState& state, const CoinSpec& spec);

// Per-vertex 3x3 coin application; shared by the state-level helpers and the
// engine kernels so every code path performs identical arithmetic.
inline void apply_coin_triple(const CoinMatrix& c, std::complex<double> v0,
                              std::complex<double> v1, std::complex<double> v2,
                              std::complex<double>& o0, std::complex<double>& o1,
                              std::complex<double>& o2) {
    o0 = c[0][0] * v0 + c[0][1] * v1 + c[0][2] * v2;
    o1 = c[1][0] * v0 + c[1][1] * v1 + c[1][2] * v2;
    o2 = c[2][0] * v0 + c[2][1] * v1 + c[2][2] * v2;
}

}  // namespace hn3
