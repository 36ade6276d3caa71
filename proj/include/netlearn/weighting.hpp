#pragma once

#include <string>
#include <vector>

#include "netlearn/hypergraph.hpp"

namespace netlearn {

enum class WeightMethod { Eqw, Ind, Opt };
std::string to_string(WeightMethod m);

// Per-edge weights with the normalizer the empirical risk divides by:
// m for EQW, the matching size for IND, s(G) for OPT. EQW is all-ones and
// deliberately infeasible in general; the method tag records that.
struct Weighting {
    WeightMethod method = WeightMethod::Eqw;
    std::vector<double> weights;
    double normalizer = 0.0;
};

struct FeasibilityCheck {
    bool feasible = true;
    std::string violation;  // empty when feasible

    explicit operator bool() const { return feasible; }
};

Weighting eqw_weights(const KPartiteHypergraph& g);

// 0/1 weights of the maximal matching produced by scanning edges in the
// given order (identity order in the first overload).
Weighting greedy_matching_weights(const KPartiteHypergraph& g);
Weighting greedy_matching_weights(const KPartiteHypergraph& g, const std::vector<int>& order);

// 0/1 weights realizing alpha(Gamma); exact, gated by the alpha cap.
Weighting exact_matching_weights(const KPartiteHypergraph& g);
Weighting exact_matching_weights(const KPartiteHypergraph& g, int cap);

// Optimal feasible weighting:  max sum w_i  s.t.  w >= 0 and
// sum_{i in eta(v)} w_i <= 1 for every vertex v of degree >= 1.
// vertex_cover is the dual certificate: y >= 0 indexed by flat vertex id
// with sum_{v in e} y_v >= 1 per edge and sum y_v = s (strong duality).
struct OptimalWeighting {
    Weighting weighting;  // method Opt, normalizer = s(G)
    std::vector<double> vertex_cover;
};

OptimalWeighting optimal_weighting(const KPartiteHypergraph& g);
double s_value(const KPartiteHypergraph& g);

// True iff w >= 0 and every vertex constraint holds within 1e-9; otherwise
// names the first violated constraint (scanning vertices in flat-id order).
FeasibilityCheck verify_feasible(const KPartiteHypergraph& g, const std::vector<double>& w);

}  // namespace netlearn
