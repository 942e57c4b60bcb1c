#include "hn3/dense_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "hn3/engine.hpp"
#include "hn3/walker_state.hpp"

namespace hn3 {

namespace {

// Deliberately re-derived here: division loop instead of bit tricks, partner
// rule written straight from the pairing description. The oracle must not
// lean on the topology module it is meant to cross-check.
std::uint32_t oracle_partner(std::uint32_t k, std::uint32_t count) {
    const std::uint32_t half = count / 2;
    if (k == 0) return half;
    if (k == half) return 0;
    std::uint32_t level = 0;
    std::uint32_t odd = k;
    while (odd % 2 == 0) {
        odd /= 2;
        ++level;
    }
    const std::uint32_t rank = (odd - 1) / 2;
    const std::uint32_t paired = (rank % 2 == 0) ? rank + 1 : rank - 1;
    return (2 * paired + 1) * (std::uint32_t{1} << level);
}

// Closed-form coin entries, written out rather than taken from the reflection
// construction the coin module uses.
void oracle_coin(double epsilon, double c[3][3]) {
    const double diag0 = 2.0 * epsilon / 3.0 - 1.0;
    const double cross = 2.0 * std::sqrt(epsilon * (3.0 - epsilon)) / (3.0 * std::sqrt(2.0));
    const double ring = (3.0 - epsilon) / 3.0;
    c[0][0] = diag0;
    c[0][1] = c[0][2] = c[1][0] = c[2][0] = cross;
    c[1][1] = c[2][2] = ring - 1.0;
    c[1][2] = c[2][1] = ring;
}

}  // namespace

DenseUnitary build_dense(NetworkSize size, const CoinSpec& spec) {
    if (size.exponent > 7) {
        throw std::invalid_argument("dense oracle is capped at n <= 7, got n = " +
                                    std::to_string(size.exponent));
    }
    if (spec.marked && *spec.marked >= size.vertices) {
        throw std::out_of_range("marked vertex outside the network");
    }
    if (!(spec.epsilon >= 0.0 && spec.epsilon <= 3.0)) {
        throw std::domain_error("epsilon must lie in [0, 3]");
    }

    const std::uint32_t count = size.vertices;
    const std::size_t dim = 3ull * count;
    const auto idx = [count](std::uint32_t a, std::uint32_t k) {
        return static_cast<std::size_t>(a) * count + k;
    };

    // Shift as an explicit permutation matrix.
    std::vector<double> perm(dim * dim, 0.0);
    for (std::uint32_t k = 0; k < count; ++k) {
        perm[idx(0, oracle_partner(k, count)) * dim + idx(0, k)] = 1.0;
        perm[idx(2, (k + 1) % count) * dim + idx(1, k)] = 1.0;
        perm[idx(1, (k + count - 1) % count) * dim + idx(2, k)] = 1.0;
    }

    // Block-diagonal coin: -I at the marked vertex, the biased coin elsewhere.
    double coin[3][3];
    oracle_coin(spec.epsilon, coin);
    std::vector<double> blocks(dim * dim, 0.0);
    for (std::uint32_t k = 0; k < count; ++k) {
        const bool flip = spec.marked && *spec.marked == k;
        for (std::uint32_t a = 0; a < 3; ++a) {
            for (std::uint32_t b = 0; b < 3; ++b) {
                blocks[idx(a, k) * dim + idx(b, k)] =
                    flip ? (a == b ? -1.0 : 0.0) : coin[a][b];
            }
        }
    }

    DenseUnitary u{size, spec.epsilon, spec.marked,
                   std::vector<std::complex<double>>(dim * dim)};
    for (std::size_t row = 0; row < dim; ++row) {
        for (std::size_t col = 0; col < dim; ++col) {
            double sum = 0.0;
            for (std::size_t mid = 0; mid < dim; ++mid) {
                sum += perm[row * dim + mid] * blocks[mid * dim + col];
            }
            u.m[row * dim + col] = sum;
        }
    }
    return u;
}

std::vector<std::complex<double>> apply(const DenseUnitary& u,
                                        std::span<const std::complex<double>> v) {
    const std::size_t dim = u.dim();
    if (v.size() != dim) {
        throw std::invalid_argument("vector length does not match the dense operator");
    }
    std::vector<std::complex<double>> out(dim);
    for (std::size_t row = 0; row < dim; ++row) {
        std::complex<double> sum = 0.0;
        const auto* m = u.m.data() + row * dim;
        for (std::size_t col = 0; col < dim; ++col) {
            sum += m[col] * v[col];
        }
        out[row] = sum;
    }
    return out;
}

double max_unitarity_error(const DenseUnitary& u) {
    const std::size_t dim = u.dim();
    double worst = 0.0;
    for (std::size_t row = 0; row < dim; ++row) {
        for (std::size_t col = 0; col < dim; ++col) {
            std::complex<double> sum = 0.0;
            for (std::size_t mid = 0; mid < dim; ++mid) {
                sum += std::conj(u.m[mid * dim + row]) * u.m[mid * dim + col];
            }
            const double expected = (row == col) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(sum - expected));
        }
    }
    return worst;
}

double compare_engine(NetworkSize size, const CoinSpec& spec, std::uint64_t t) {
    WalkerState sparse = initial_state(spec, size);
    const StepOperator op = make_step_operator(size, spec);
    evolve(sparse, op, t);

    const DenseUnitary u = build_dense(size, spec);
    std::vector<std::complex<double>> dense = initial_state(spec, size).amp;
    for (std::uint64_t i = 0; i < t; ++i) {
        dense = apply(u, dense);
    }

    double worst = 0.0;
    for (std::size_t i = 0; i < dense.size(); ++i) {
        worst = std::max(worst, std::abs(sparse.amp[i] - dense[i]));
    }
    return worst;
}

}  // namespace hn3
