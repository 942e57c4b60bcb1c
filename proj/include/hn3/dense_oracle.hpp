#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hn3/coin.hpp"
#include "hn3/topology.hpp"

namespace hn3 {

// Explicit 3N x 3N step matrix for small networks. Assembled from scratch --
// its own hierarchy decomposition, its own closed-form coin entries, a real
// permutation matrix times a block-diagonal coin -- so it shares no code with
// the engine kernels it is used to check.
struct DenseUnitary {
    NetworkSize size;
    double epsilon = 1.0;
    std::optional<std::uint32_t> marked;
    std::vector<std::complex<double>> m;  // row-major, dim x dim

    std::size_t dim() const { return 3ull * size.vertices; }
    std::complex<double>& at(std::size_t row, std::size_t col) { return m[row * dim() + col]; }
    const std::complex<double>& at(std::size_t row, std::size_t col) const {
        return m[row * dim() + col];
    }
};

// Guarded at n <= 7 (dimension 384) against accidental huge allocations.
DenseUnitary build_dense(NetworkSize size, const CoinSpec& spec);

std::vector<std::complex<double>> apply(const DenseUnitary& u,
                                        std::span<const std::complex<double>> v);

// max |(U^dag U - I)_{ij}|
double max_unitarity_error(const DenseUnitary& u);

// Evolves the biased initial state t steps through the sparse engine and
// through dense matrix-vector products; returns the max-abs amplitude gap.
double compare_engine(NetworkSize size, const CoinSpec& spec, std::uint64_t t);

}  // namespace hn3
