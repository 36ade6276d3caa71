#include "netlearn/dependency_graph.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>

#include "netlearn/errors.hpp"
#include "netlearn/simplex.hpp"

namespace netlearn {

DependencyGraph::DependencyGraph(int m, const std::vector<std::pair<int, int>>& edges)
    : DependencyGraph(m) {
    for (const auto& [a, b] : edges) add_edge(a, b);
}

void DependencyGraph::add_edge(int a, int b) {
    if (a == b) return;  // irreflexive
    if (adj_[flat(a, b)]) return;
    adj_[flat(a, b)] = adj_[flat(b, a)] = 1;
    neighbors_[a].push_back(b);
    neighbors_[b].push_back(a);
}

long DependencyGraph::edge_count() const {
    long twice = 0;
    for (const auto& n : neighbors_) twice += static_cast<long>(n.size());
    return twice / 2;
}

std::vector<std::uint64_t> DependencyGraph::closed_neighbor_masks() const {
    std::vector<std::uint64_t> masks(m_, 0);
    for (int v = 0; v < m_; ++v) {
        masks[v] = 1ULL << v;
        for (int u : neighbors_[v]) masks[v] |= 1ULL << u;
    }
    return masks;
}

DependencyGraph build_dependency_graph(const KPartiteHypergraph& g) {
    const int m = g.num_edges();
    DependencyGraph gamma(m);
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            if (g.overlap(a, b)) gamma.add_edge(a, b);
    return gamma;
}

namespace {

int env_cap(const char* name, int fallback) {
    if (const char* v = std::getenv(name)) {
        const int parsed = std::atoi(v);
        if (parsed >= 1) return std::min(parsed, 62);
    }
    return fallback;
}

// Branch and bound over bitmasks. Branching vertex: maximum degree inside
// the candidate set, ties to the smallest index, so runs are deterministic.
struct MisSearch {
    const std::vector<std::uint64_t>& closed;
    int best = 0;
    std::uint64_t best_set = 0;

    void run(std::uint64_t candidates, int count, std::uint64_t chosen) {
        if (count + std::popcount(candidates) <= best) return;
        if (candidates == 0) {
            best = count;
            best_set = chosen;
            return;
        }
        int pick = -1, pick_deg = -1;
        for (std::uint64_t rest = candidates; rest;) {
            const int v = std::countr_zero(rest);
            rest &= rest - 1;
            const int deg = std::popcount(closed[v] & candidates) - 1;
            if (deg > pick_deg) {
                pick_deg = deg;
                pick = v;
            }
        }
        run(candidates & ~closed[pick], count + 1, chosen | (1ULL << pick));
        run(candidates & ~(1ULL << pick), count, chosen);
    }
};

std::uint64_t maximum_independent_mask(const DependencyGraph& gamma, int cap,
                                       const char* op) {
    const int m = gamma.size();
    if (m > cap)
        throw TooLargeError(std::string(op) + ": m=" + std::to_string(m) +
                            " exceeds exact cap " + std::to_string(cap) +
                            "; use greedy matching instead");
    if (m == 0) return 0;
    MisSearch search{gamma.closed_neighbor_masks()};
    search.run(m == 64 ? ~0ULL : (1ULL << m) - 1, 0, 0);
    return search.best_set;
}

}  // namespace

int exact_alpha_cap() { return env_cap("NETLEARN_ALPHA_CAP", 24); }
int exact_chi_cap() { return env_cap("NETLEARN_CHI_CAP", 16); }

int independence_number(const DependencyGraph& gamma) {
    return independence_number(gamma, exact_alpha_cap());
}

int independence_number(const DependencyGraph& gamma, int cap) {
    return std::popcount(maximum_independent_mask(gamma, cap, "independence_number"));
}

std::vector<int> maximum_independent_set(const DependencyGraph& gamma, int cap) {
    std::uint64_t mask = maximum_independent_mask(gamma, cap, "maximum_independent_set");
    std::vector<int> out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

namespace {

// Bron-Kerbosch with the Tomita pivot on the complement graph (cliques of
// the complement are independent sets). Deterministic pivot choice.
struct IndependentSetEnum {
    std::vector<std::uint64_t> non_adjacent;  // complement closed masks, minus self
    std::vector<std::uint64_t> out;

    void expand(std::uint64_t r, std::uint64_t p, std::uint64_t x) {
        if (p == 0 && x == 0) {
            out.push_back(r);
            return;
        }
        int pivot = -1, best = -1;
        for (std::uint64_t rest = p | x; rest;) {
            const int u = std::countr_zero(rest);
            rest &= rest - 1;
            const int gain = std::popcount(p & non_adjacent[u]);
            if (gain > best) {
                best = gain;
                pivot = u;
            }
        }
        for (std::uint64_t cand = p & ~non_adjacent[pivot]; cand;) {
            const int v = std::countr_zero(cand);
            const std::uint64_t bit = 1ULL << v;
            cand &= cand - 1;
            expand(r | bit, p & non_adjacent[v], x & non_adjacent[v]);
            p &= ~bit;
            x |= bit;
        }
    }
};

}  // namespace

std::vector<std::uint64_t> maximal_independent_sets(const DependencyGraph& gamma) {
    const int m = gamma.size();
    if (m == 0) return {};
    if (m > 62) throw TooLargeError("maximal_independent_sets: m > 62");
    const std::uint64_t all = (1ULL << m) - 1;
    IndependentSetEnum bk;
    bk.non_adjacent.resize(m);
    const auto closed = gamma.closed_neighbor_masks();
    for (int v = 0; v < m; ++v) bk.non_adjacent[v] = all & ~closed[v];
    bk.expand(0, all, 0);
    std::sort(bk.out.begin(), bk.out.end());
    return bk.out;
}

FractionalColoring fractional_coloring(const DependencyGraph& gamma, int cap) {
    const int m = gamma.size();
    if (m > cap)
        throw TooLargeError("fractional_chromatic_number: m=" + std::to_string(m) +
                            " exceeds exact cap " + std::to_string(cap));
    FractionalColoring out;
    if (m == 0) return out;

    // chi* equals the optimum of the fractional-clique packing LP
    //   max sum_v y_v  s.t.  sum_{v in S} y_v <= 1 per maximal independent S,
    // and the dual multipliers of that LP are the cover weights x_S.
    const auto sets = maximal_independent_sets(gamma);
    std::vector<std::vector<double>> rows(sets.size(), std::vector<double>(m, 0.0));
    for (size_t r = 0; r < sets.size(); ++r)
        for (int v = 0; v < m; ++v)
            if (sets[r] >> v & 1) rows[r][v] = 1.0;
    const SimplexResult lp = solve_packing_lp(rows, std::vector<double>(sets.size(), 1.0),
                                              std::vector<double>(m, 1.0));
    out.value = lp.objective;
    for (size_t r = 0; r < sets.size(); ++r)
        if (lp.dual[r] > 1e-12) out.cover.emplace_back(sets[r], lp.dual[r]);
    return out;
}

double fractional_chromatic_number(const DependencyGraph& gamma) {
    return fractional_coloring(gamma, exact_chi_cap()).value;
}

double fractional_chromatic_number(const DependencyGraph& gamma, int cap) {
    return fractional_coloring(gamma, cap).value;
}

}  // namespace netlearn
