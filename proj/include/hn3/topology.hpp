#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hn3 {

// Ring-backbone network with N = 2^n vertices. Exponents below 2 are rejected:
// the level-0 small-world pairing needs at least two odd vertices.
struct NetworkSize {
    int exponent = 0;            // n
    std::uint32_t vertices = 0;  // N = 2^n

    static NetworkSize from_exponent(int n);

    friend bool operator==(const NetworkSize&, const NetworkSize&) = default;
};

// Hierarchy coordinates of a nonzero vertex: k = 2^level * (2*rank + 1).
// Vertex 0 lies outside the hierarchy and has no coordinates.
struct VertexCoords {
    std::uint32_t k = 0;
    std::uint32_t level = 0;  // trailing zero bits of k
    std::uint32_t rank = 0;   // position within the level

    friend bool operator==(const VertexCoords&, const VertexCoords&) = default;
};

// nullopt for k == 0; throws std::out_of_range for k >= N.
std::optional<VertexCoords> decompose(std::uint32_t k, NetworkSize size);

// Inverse of decompose; throws std::out_of_range if the coordinates name no vertex.
std::uint32_t compose(std::uint32_t level, std::uint32_t rank, NetworkSize size);

// The unique long-range neighbor of k: ranks pair even<->odd within each level,
// and the top-level vertex 2^(n-1) pairs with vertex 0. A fixed-point-free involution.
std::uint32_t smallworld_partner(std::uint32_t k, NetworkSize size);

// Basis index of (coin a, vertex k) in the 3N-dimensional coin-position space.
inline std::size_t basis_index(std::uint32_t a, std::uint32_t k, NetworkSize size) {
    return static_cast<std::size_t>(a) * size.vertices + k;
}

// Permutation of the 3N basis indices performed by one shift application.
// Built once per network size and shared read-only; satisfies to[to[i]] == i.
struct ShiftPermutation {
    NetworkSize size;
    std::vector<std::uint32_t> to;

    std::size_t dim() const { return to.size(); }
};

// Coin 0 crosses the small-world edge; coins 1 and 2 step the ring clockwise /
// counterclockwise (mod N) and swap into each other.
ShiftPermutation build_shift_permutation(NetworkSize size);

struct TopologyReport {
    bool ok = true;
    std::string detail;  // first violated property, empty when ok

    explicit operator bool() const { return ok; }
};

// Checks bijectivity and the involution property of a shift table.
TopologyReport check_involution(const ShiftPermutation& shift);

// Full structural audit: partner map is a fixed-point-free involution, every
// level pairs completely, every vertex has degree exactly 3, and shift^2 = id.
TopologyReport validate_topology(NetworkSize size);

struct Edge {
    std::uint32_t k = 0;
    std::uint32_t neighbor = 0;
    bool smallworld = false;  // false: ring backbone edge
};

// Undirected edge list, each edge listed once with k < neighbor, sorted.
std::vector<Edge> edge_list(NetworkSize size);

}  // namespace hn3
