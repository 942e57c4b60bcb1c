#include "hn3/topology.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace hn3 {

NetworkSize NetworkSize::from_exponent(int n) {
    if (n < 2 || n > 26) {
        throw std::invalid_argument("network exponent must lie in [2, 26], got " +
                                    std::to_string(n));
    }
    return NetworkSize{n, std::uint32_t{1} << n};
}

std::optional<VertexCoords> decompose(std::uint32_t k, NetworkSize size) {
    if (k >= size.vertices) {
        throw std::out_of_range("vertex label " + std::to_string(k) + " outside [0, " +
                                std::to_string(size.vertices) + ")");
    }
    if (k == 0) {
        return std::nullopt;
    }
    const auto level = static_cast<std::uint32_t>(std::countr_zero(k));
    const std::uint32_t odd = k >> level;
    return VertexCoords{k, level, (odd - 1) / 2};
}

std::uint32_t compose(std::uint32_t level, std::uint32_t rank, NetworkSize size) {
    const std::uint64_t k = (2ull * rank + 1) << level;
    if (level >= static_cast<std::uint32_t>(size.exponent) || k >= size.vertices) {
        throw std::out_of_range("no vertex at level " + std::to_string(level) + ", rank " +
                                std::to_string(rank) + " in a network of " +
                                std::to_string(size.vertices));
    }
    return static_cast<std::uint32_t>(k);
}

std::uint32_t smallworld_partner(std::uint32_t k, NetworkSize size) {
    if (k >= size.vertices) {
        throw std::out_of_range("vertex label " + std::to_string(k) + " outside [0, " +
                                std::to_string(size.vertices) + ")");
    }
    const std::uint32_t top = size.vertices / 2;
    if (k == 0) {
        return top;
    }
    if (k == top) {
        return 0;
    }
    const VertexCoords c = *decompose(k, size);
    const std::uint32_t paired_rank = (c.rank % 2 == 0) ? c.rank + 1 : c.rank - 1;
    return compose(c.level, paired_rank, size);
}

ShiftPermutation build_shift_permutation(NetworkSize size) {
    const std::uint32_t count = size.vertices;
    ShiftPermutation shift{size, std::vector<std::uint32_t>(3ull * count)};
    for (std::uint32_t k = 0; k < count; ++k) {
        const auto partner = smallworld_partner(k, size);
        shift.to[basis_index(0, k, size)] =
            static_cast<std::uint32_t>(basis_index(0, partner, size));
        shift.to[basis_index(1, k, size)] =
            static_cast<std::uint32_t>(basis_index(2, (k + 1) % count, size));
        shift.to[basis_index(2, k, size)] =
            static_cast<std::uint32_t>(basis_index(1, (k + count - 1) % count, size));
    }
    return shift;
}

TopologyReport check_involution(const ShiftPermutation& shift) {
    const std::size_t dim = shift.dim();
    std::vector<bool> hit(dim, false);
    for (std::size_t i = 0; i < dim; ++i) {
        const std::uint32_t image = shift.to[i];
        if (image >= dim) {
            return {false, "shift image out of range at basis index " + std::to_string(i)};
        }
        if (hit[image]) {
            return {false, "shift not injective: basis index " + std::to_string(image) +
                               " hit twice"};
        }
        hit[image] = true;
    }
    for (std::size_t i = 0; i < dim; ++i) {
        if (shift.to[shift.to[i]] != i) {
            return {false, "shift squared is not the identity at basis index " +
                               std::to_string(i)};
        }
    }
    return {};
}

TopologyReport validate_topology(NetworkSize size) {
    const std::uint32_t count = size.vertices;
    const std::uint32_t top = count / 2;

    // Partner map: fixed-point-free involution that respects the level pairing.
    for (std::uint32_t k = 0; k < count; ++k) {
        const std::uint32_t partner = smallworld_partner(k, size);
        if (partner == k) {
            return {false, "small-world partner fixes vertex " + std::to_string(k)};
        }
        if (smallworld_partner(partner, size) != k) {
            return {false, "small-world partner not an involution at vertex " +
                               std::to_string(k)};
        }
        if (k != 0 && k != top) {
            const auto a = *decompose(k, size);
            const auto b = *decompose(partner, size);
            if (a.level != b.level || (a.rank / 2) != (b.rank / 2)) {
                return {false, "pairing leaves level structure at vertex " + std::to_string(k)};
            }
        }
    }

    // Every level below the top has an even vertex count, so pairing is total;
    // the top level holds the single vertex 2^(n-1), paired with 0.
    for (std::uint32_t level = 0; level + 1 < static_cast<std::uint32_t>(size.exponent);
         ++level) {
        const std::uint32_t expected = std::uint32_t{1} << (size.exponent - level - 1);
        std::uint32_t seen = 0;
        for (std::uint32_t rank = 0;; ++rank) {
            const std::uint64_t k = (2ull * rank + 1) << level;
            if (k >= count) {
                break;
            }
            ++seen;
        }
        if (seen != expected || seen % 2 != 0) {
            return {false, "level " + std::to_string(level) + " holds " + std::to_string(seen) +
                               " vertices, expected an even " + std::to_string(expected)};
        }
    }

    // Degree regularity from the three shift rules.
    for (std::uint32_t k = 0; k < count; ++k) {
        const std::uint32_t cw = (k + 1) % count;
        const std::uint32_t ccw = (k + count - 1) % count;
        const std::uint32_t sw = smallworld_partner(k, size);
        if (cw == k || ccw == k || sw == cw || sw == ccw) {
            return {false, "vertex " + std::to_string(k) + " does not have degree 3"};
        }
    }

    const ShiftPermutation shift = build_shift_permutation(size);
    if (auto report = check_involution(shift); !report.ok) {
        return report;
    }
    return {};
}

std::vector<Edge> edge_list(NetworkSize size) {
    const std::uint32_t count = size.vertices;
    std::vector<Edge> edges;
    edges.reserve(3ull * count / 2);
    for (std::uint32_t k = 0; k < count; ++k) {
        const std::uint32_t next = (k + 1) % count;
        edges.push_back({std::min(k, next), std::max(k, next), false});
        const std::uint32_t partner = smallworld_partner(k, size);
        if (k < partner) {
            edges.push_back({k, partner, true});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.k != b.k) return a.k < b.k;
        if (a.neighbor != b.neighbor) return a.neighbor < b.neighbor;
        return a.smallworld < b.smallworld;
    });
    return edges;
}

}  // namespace hn3
