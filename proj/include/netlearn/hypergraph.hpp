#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace netlearn {

// Edge of a k-partite hypergraph; component i indexes into partition i (0-based).
using HyperEdge = std::vector<int>;

// The network G. Immutable after construction; duplicate edges are allowed
// (they are distinct examples whose labels are drawn independently).
struct KPartiteHypergraph {
    int k = 0;
    std::vector<int> partition_sizes;  // n_1..n_k
    std::vector<HyperEdge> edges;      // m edges, each with k components

    int num_edges() const { return static_cast<int>(edges.size()); }
    int total_vertices() const;

    // Flat vertex id with partitions laid out consecutively.
    int vertex_id(int partition, int index) const;

    std::vector<int> vertex_degrees() const;          // indexed by flat id
    std::vector<std::vector<int>> incidence() const;  // eta(v), indexed by flat id

    bool overlap(int edge_a, int edge_b) const;

    // Pairs (a, b), a < b, of identical edges.
    std::vector<std::pair<int, int>> duplicate_edges() const;

    // Number of degree>=1 vertices per partition (n_i').
    std::vector<int> used_per_partition() const;

    void validate() const;  // throws DataError on any invariant violation
};

// Accepts the text format (`k m` / sizes / edge rows, `#` comments) or the
// JSON equivalent with keys k, partition_sizes, edges.
KPartiteHypergraph parse_hypergraph(const std::string& text);
KPartiteHypergraph load_hypergraph(const std::string& path);
std::string to_text(const KPartiteHypergraph& g);

// Instance families. All deterministic given their arguments.
KPartiteHypergraph make_disjoint(int k, int m);
KPartiteHypergraph make_star(int k, int m);
// k=3 rotating-overlap construction whose dependency graph is the cycle C_m.
KPartiteHypergraph make_cycle(int m);
KPartiteHypergraph make_random(int k, int m, const std::vector<int>& sizes,
                               double density, std::uint64_t seed);

}  // namespace netlearn
