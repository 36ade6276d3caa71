#include "netlearn/weighting.hpp"

#include <algorithm>
#include <cmath>

#include "netlearn/dependency_graph.hpp"
#include "netlearn/errors.hpp"
#include "netlearn/format.hpp"
#include "netlearn/simplex.hpp"

namespace netlearn {

namespace {
constexpr double kFeasTol = 1e-9;

void require_edges(const KPartiteHypergraph& g) {
    if (g.num_edges() < 1) throw DataError("empty edge set");
}
}  // namespace

std::string to_string(WeightMethod m) {
    switch (m) {
        case WeightMethod::Eqw: return "eqw";
        case WeightMethod::Ind: return "ind";
        case WeightMethod::Opt: return "opt";
    }
    return "?";
}

Weighting eqw_weights(const KPartiteHypergraph& g) {
    require_edges(g);
    Weighting w;
    w.method = WeightMethod::Eqw;
    w.weights.assign(g.num_edges(), 1.0);
    w.normalizer = static_cast<double>(g.num_edges());
    return w;
}

Weighting greedy_matching_weights(const KPartiteHypergraph& g) {
    std::vector<int> order(g.num_edges());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    return greedy_matching_weights(g, order);
}

Weighting greedy_matching_weights(const KPartiteHypergraph& g, const std::vector<int>& order) {
    require_edges(g);
    const int m = g.num_edges();
    if (static_cast<int>(order.size()) != m)
        throw DataError("scan order must be a permutation of 0.." + std::to_string(m - 1));
    std::vector<char> seen(m, 0);
    for (int i : order) {
        if (i < 0 || i >= m || seen[i])
            throw DataError("scan order must be a permutation of 0.." + std::to_string(m - 1));
        seen[i] = 1;
    }

    Weighting w;
    w.method = WeightMethod::Ind;
    w.weights.assign(m, 0.0);
    std::vector<std::vector<char>> used(g.k);
    for (int i = 0; i < g.k; ++i) used[i].assign(g.partition_sizes[i], 0);
    int selected = 0;
    for (int j : order) {
        bool free = true;
        for (int i = 0; i < g.k && free; ++i) free = !used[i][g.edges[j][i]];
        if (!free) continue;
        for (int i = 0; i < g.k; ++i) used[i][g.edges[j][i]] = 1;
        w.weights[j] = 1.0;
        ++selected;
    }
    w.normalizer = static_cast<double>(selected);
    return w;
}

Weighting exact_matching_weights(const KPartiteHypergraph& g) {
    return exact_matching_weights(g, exact_alpha_cap());
}

Weighting exact_matching_weights(const KPartiteHypergraph& g, int cap) {
    require_edges(g);
    const auto gamma = build_dependency_graph(g);
    const auto chosen = maximum_independent_set(gamma, cap);
    Weighting w;
    w.method = WeightMethod::Ind;
    w.weights.assign(g.num_edges(), 0.0);
    for (int j : chosen) w.weights[j] = 1.0;
    w.normalizer = static_cast<double>(chosen.size());
    return w;
}

OptimalWeighting optimal_weighting(const KPartiteHypergraph& g) {
    require_edges(g);
    const int m = g.num_edges();
    const auto eta = g.incidence();

    // Constraint rows: vertices of degree >= 1 only (others are vacuous).
    std::vector<int> row_vertex;
    for (size_t v = 0; v < eta.size(); ++v)
        if (!eta[v].empty()) row_vertex.push_back(static_cast<int>(v));
    std::vector<std::vector<double>> rows(row_vertex.size(), std::vector<double>(m, 0.0));
    for (size_t r = 0; r < row_vertex.size(); ++r)
        for (int j : eta[row_vertex[r]]) rows[r][j] = 1.0;

    const SimplexResult lp = solve_packing_lp(rows, std::vector<double>(rows.size(), 1.0),
                                              std::vector<double>(m, 1.0));
    OptimalWeighting out;
    out.weighting.method = WeightMethod::Opt;
    out.weighting.weights = lp.x;
    for (double& wi : out.weighting.weights) wi = std::max(0.0, wi);
    out.weighting.normalizer = lp.objective;
    out.vertex_cover.assign(eta.size(), 0.0);
    for (size_t r = 0; r < row_vertex.size(); ++r) out.vertex_cover[row_vertex[r]] = lp.dual[r];
    return out;
}

double s_value(const KPartiteHypergraph& g) { return optimal_weighting(g).weighting.normalizer; }

FeasibilityCheck verify_feasible(const KPartiteHypergraph& g, const std::vector<double>& w) {
    if (static_cast<int>(w.size()) != g.num_edges())
        throw DataError("weight vector length " + std::to_string(w.size()) +
                        " != m = " + std::to_string(g.num_edges()));
    for (size_t j = 0; j < w.size(); ++j)
        if (w[j] < -kFeasTol)
            return {false, "negative weight w[" + std::to_string(j) + "] = " + sig12(w[j])};
    const auto eta = g.incidence();
    for (int i = 0, v = 0; i < g.k; ++i) {
        for (int j = 0; j < g.partition_sizes[i]; ++j, ++v) {
            if (eta[v].empty()) continue;
            double sum = 0.0;
            for (int e : eta[v]) sum += w[e];
            if (sum > 1.0 + kFeasTol)
                return {false, "vertex (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") incident weight sum " + sig12(sum) + " > 1"};
        }
    }
    return {};
}

}  // namespace netlearn
