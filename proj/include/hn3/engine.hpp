#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "hn3/coin.hpp"
#include "hn3/topology.hpp"
#include "hn3/walker_state.hpp"

namespace hn3 {

// One evolution step: the per-vertex coin first (sign flip at the marked
// vertex, when present), then the shift permutation.
struct StepOperator {
    ShiftPermutation shift;
    CoinMatrix coin;
    std::optional<std::uint32_t> marked;
};

StepOperator make_step_operator(NetworkSize size, const CoinSpec& spec);

using Scratch = std::vector<std::complex<double>>;

// Serial reference kernel. Kept deliberately simple; the parallel kernel must
// reproduce it bit for bit.
void step_serial(WalkerState& state, const StepOperator& op, Scratch& scratch);

// OpenMP kernel. The coin loop is elementwise over vertices and the scatter
// writes through a bijection, so no iteration order can change any result.
void step_parallel(WalkerState& state, const StepOperator& op, Scratch& scratch);

// Dispatches to the parallel kernel for large states, serial below the
// threshold where fork/join overhead dominates. Never renormalizes; norm
// drift is asserted by tests, not corrected.
void step(WalkerState& state, const StepOperator& op, Scratch& scratch);
void step(WalkerState& state, const StepOperator& op);

// t-fold step application; t = 0 leaves the state untouched.
void evolve(WalkerState& state, const StepOperator& op, std::uint64_t steps);

}  // namespace hn3
