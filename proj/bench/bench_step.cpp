// Throughput of the walk step: serial reference kernel vs the OpenMP kernel.
// Both kernels produce identical bits; this only measures speed.

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hn3/coin.hpp"
#include "hn3/engine.hpp"
#include "hn3/topology.hpp"
#include "hn3/walker_state.hpp"

using namespace hn3;
namespace chrono = std::chrono;

namespace {

WalkerState random_state(NetworkSize size, std::uint64_t seed) {
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

template <typename Kernel>
double steps_per_second(NetworkSize size, int steps, Kernel&& kernel) {
    const CoinSpec spec{1.7, 1u};
    const StepOperator op = make_step_operator(size, spec);
    WalkerState state = random_state(size, 20240229);
    Scratch scratch;
    kernel(state, op, scratch);  // warm up, also sizes the scratch buffer
    const auto start = chrono::steady_clock::now();
    for (int i = 0; i < steps; ++i) {
        kernel(state, op, scratch);
    }
    const auto stop = chrono::steady_clock::now();
    const double seconds = chrono::duration<double>(stop - start).count();
    return steps / seconds;
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both kernels run serially\n");
#endif
    std::printf("%4s %12s %14s %14s %9s\n", "n", "amplitudes", "serial st/s", "parallel st/s",
                "speedup");
    for (const int n : {10, 12, 14, 16, 18, 20}) {
        const auto size = NetworkSize::from_exponent(n);
        const int steps = n <= 14 ? 2000 : (n <= 18 ? 400 : 100);
        const double serial = steps_per_second(size, steps, [](auto& s, auto& o, auto& b) {
            step_serial(s, o, b);
        });
        const double parallel = steps_per_second(size, steps, [](auto& s, auto& o, auto& b) {
            step_parallel(s, o, b);
        });
        std::printf("%4d %12zu %14.0f %14.0f %8.2fx\n", n, 3ull * size.vertices, serial,
                    parallel, parallel / serial);
    }
    return 0;
}
