#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "netlearn/hypergraph.hpp"

namespace netlearn {

// Overlap graph Gamma: one vertex per hyperedge, adjacency iff the two
// hyperedges share a vertex in some partition. Symmetric, irreflexive.
class DependencyGraph {
public:
    DependencyGraph() = default;
    explicit DependencyGraph(int m) : m_(m), adj_(static_cast<size_t>(m) * m, 0), neighbors_(m) {}
    DependencyGraph(int m, const std::vector<std::pair<int, int>>& edges);

    int size() const { return m_; }
    bool adjacent(int a, int b) const { return adj_[flat(a, b)] != 0; }
    void add_edge(int a, int b);
    int degree(int v) const { return static_cast<int>(neighbors_[v].size()); }
    const std::vector<int>& neighbors(int v) const { return neighbors_[v]; }
    long edge_count() const;

    // Adjacency-plus-self bitmasks; requires size() <= 64.
    std::vector<std::uint64_t> closed_neighbor_masks() const;

private:
    size_t flat(int a, int b) const { return static_cast<size_t>(a) * m_ + b; }

    int m_ = 0;
    std::vector<std::uint8_t> adj_;
    std::vector<std::vector<int>> neighbors_;
};

DependencyGraph build_dependency_graph(const KPartiteHypergraph& g);

// Exact-computation caps; overridable through the environment
// (NETLEARN_ALPHA_CAP, NETLEARN_CHI_CAP, both clamped to [1, 62]).
int exact_alpha_cap();  // default 24
int exact_chi_cap();    // default 16

// Exact independence number alpha(Gamma) by branch and bound.
// Throws TooLargeError when size() exceeds the cap.
int independence_number(const DependencyGraph& gamma);
int independence_number(const DependencyGraph& gamma, int cap);

// Vertex indices of one maximum independent set (deterministic choice).
std::vector<int> maximum_independent_set(const DependencyGraph& gamma, int cap);

// All maximal independent sets as bitmasks, sorted ascending.
std::vector<std::uint64_t> maximal_independent_sets(const DependencyGraph& gamma);

// chi*(Gamma) with the fractional cover realizing it: weights x_S >= 0 over
// maximal independent sets with sum_{S contains v} x_S >= 1 for every v and
// total weight chi*. Solved through LP duality against the packing simplex.
struct FractionalColoring {
    double value = 0.0;
    std::vector<std::pair<std::uint64_t, double>> cover;  // (set mask, weight)
};

FractionalColoring fractional_coloring(const DependencyGraph& gamma, int cap);
double fractional_chromatic_number(const DependencyGraph& gamma);
double fractional_chromatic_number(const DependencyGraph& gamma, int cap);

}  // namespace netlearn
