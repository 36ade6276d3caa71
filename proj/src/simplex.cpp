#include "netlearn/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace netlearn {

namespace {
constexpr double kReducedCostTol = 1e-10;
constexpr double kPivotTol = 1e-10;
}  // namespace

SimplexResult solve_packing_lp(const std::vector<std::vector<double>>& rows,
                               const std::vector<double>& rhs,
                               const std::vector<double>& objective) {
    const int m = static_cast<int>(rows.size());
    const int n = static_cast<int>(objective.size());
    if (static_cast<int>(rhs.size()) != m)
        throw std::invalid_argument("simplex: rhs size mismatch");
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw std::invalid_argument("simplex: row " + std::to_string(i) +
                                        " size mismatch");
        if (rhs[i] < 0.0)
            throw std::invalid_argument("simplex: negative rhs; slack basis infeasible");
    }

    // Tableau: m constraint rows over columns [x_0..x_{n-1}, s_0..s_{m-1}, rhs],
    // then the objective row holding reduced costs (negated) and the value.
    const int cols = n + m + 1;
    std::vector<std::vector<double>> t(m + 1, std::vector<double>(cols, 0.0));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t[i][j] = rows[i][j];
        t[i][n + i] = 1.0;
        t[i][cols - 1] = rhs[i];
        basis[i] = n + i;
    }
    for (int j = 0; j < n; ++j) t[m][j] = -objective[j];

    SimplexResult res;
    for (;;) {
        // Bland: entering = smallest column index with negative objective row.
        int enter = -1;
        for (int j = 0; j < n + m; ++j)
            if (t[m][j] < -kReducedCostTol) {
                enter = j;
                break;
            }
        if (enter < 0) break;  // optimal

        // Ratio test; Bland tie-break on the smallest basis variable index.
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] <= kPivotTol) continue;
            const double ratio = t[i][cols - 1] / t[i][enter];
            if (ratio < best_ratio - 1e-12) {
                best_ratio = ratio;
                leave = i;
            } else if (ratio < best_ratio + 1e-12 && leave >= 0 && basis[i] < basis[leave]) {
                best_ratio = std::min(best_ratio, ratio);
                leave = i;
            }
        }
        if (leave < 0) throw std::runtime_error("simplex: LP is unbounded");

        // Gauss-Jordan pivot on (leave, enter).
        const double inv = 1.0 / t[leave][enter];
        for (int j = 0; j < cols; ++j) t[leave][j] *= inv;
        t[leave][enter] = 1.0;
        for (int i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = t[i][enter];
            if (f == 0.0) continue;
            for (int j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
            t[i][enter] = 0.0;
        }
        basis[leave] = enter;
        ++res.pivots;
    }

    res.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) res.x[basis[i]] = t[i][cols - 1];
    res.dual.assign(m, 0.0);
    for (int i = 0; i < m; ++i) res.dual[i] = std::max(0.0, t[m][n + i]);
    res.objective = t[m][cols - 1];
    return res;
}

}  // namespace netlearn
