#pragma once

#include <vector>

namespace netlearn {

// Solution of  max c'x  s.t.  Ax <= b, x >= 0  with b >= 0.
struct SimplexResult {
    std::vector<double> x;
    std::vector<double> dual;  // one multiplier per constraint row
    double objective = 0.0;
    long pivots = 0;
};

// Dense primal simplex starting from the slack basis. Bland's smallest-index
// rule for both the entering and the leaving variable, so the method cannot
// cycle and identical inputs produce identical pivots, bases and outputs.
// Throws std::invalid_argument on shape errors or negative rhs entries,
// std::runtime_error if the LP is unbounded.
SimplexResult solve_packing_lp(const std::vector<std::vector<double>>& rows,
                               const std::vector<double>& rhs,
                               const std::vector<double>& objective);

}  // namespace netlearn
