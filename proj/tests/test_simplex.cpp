#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "netlearn/rng.hpp"
#include "netlearn/simplex.hpp"
#include "oracles.hpp"

using namespace netlearn;

TEST_CASE("simplex: decoupled box constraints") {
    // max x0 + x1 s.t. x0 <= 1, x1 <= 2
    const auto r = solve_packing_lp({{1, 0}, {0, 1}}, {1, 2}, {1, 1});
    CHECK(r.objective == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(r.x[0] == doctest::Approx(1.0));
    CHECK(r.x[1] == doctest::Approx(2.0));
}

TEST_CASE("simplex: binding shared constraint") {
    // max x0 + x1 + x2 s.t. x0 + x1 + x2 <= 1
    const auto r = solve_packing_lp({{1, 1, 1}}, {1}, {1, 1, 1});
    CHECK(r.objective == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("simplex: fractional optimum of the odd cycle") {
    // Pair constraints of C5: w_i + w_{i+1} <= 1; optimum 2.5 at all-halves.
    std::vector<std::vector<double>> rows(5, std::vector<double>(5, 0.0));
    for (int i = 0; i < 5; ++i) {
        rows[i][i] = 1.0;
        rows[i][(i + 1) % 5] = 1.0;
    }
    const auto r = solve_packing_lp(rows, std::vector<double>(5, 1.0),
                                    std::vector<double>(5, 1.0));
    CHECK(r.objective == doctest::Approx(2.5).epsilon(1e-12));
    for (double xi : r.x) CHECK(xi == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("simplex: unbounded and malformed inputs") {
    CHECK_THROWS_AS(solve_packing_lp({{0.0}}, {1.0}, {1.0}), std::runtime_error);
    CHECK_THROWS_AS(solve_packing_lp({{1.0}}, {-1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(solve_packing_lp({{1.0, 2.0}}, {1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("simplex: deterministic across repeated solves") {
    std::vector<std::vector<double>> rows = {{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    const auto a = solve_packing_lp(rows, {1, 1, 1}, {1, 1, 1, 1});
    const auto b = solve_packing_lp(rows, {1, 1, 1}, {1, 1, 1, 1});
    CHECK(a.x == b.x);  // bit-identical
    CHECK(a.objective == b.objective);
    CHECK(a.pivots == b.pivots);
}

TEST_CASE("simplex agrees with the vertex-enumeration oracle on random packing LPs") {
    CounterRng rng(808);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(5));
        const int m = 1 + static_cast<int>(rng.next_below(6));
        std::vector<std::vector<double>> rows(m, std::vector<double>(n, 0.0));
        for (int j = 0; j < n; ++j) {
            int hits = 0;  // every column must hit some row or the LP is unbounded
            for (int i = 0; i < m; ++i)
                if (rng.next_unit() < 0.5) {
                    rows[i][j] = 1.0;
                    ++hits;
                }
            if (hits == 0) rows[rng.next_below(m)][j] = 1.0;
        }
        std::vector<double> rhs(m);
        for (int i = 0; i < m; ++i) rhs[i] = 0.5 + rng.next_unit();
        const std::vector<double> obj(n, 1.0);
        const auto lp = solve_packing_lp(rows, rhs, obj);
        const auto reference = oracle::lp_max_by_vertex_enumeration(rows, rhs, obj);
        CHECK(lp.objective == doctest::Approx(reference.value).epsilon(1e-9));

        // Strong duality certificate: dual feasible with matching objective.
        double dual_total = 0.0;
        for (int i = 0; i < m; ++i) {
            CHECK(lp.dual[i] >= -1e-9);
            dual_total += lp.dual[i] * rhs[i];
        }
        for (int j = 0; j < n; ++j) {
            double col = 0.0;
            for (int i = 0; i < m; ++i) col += lp.dual[i] * rows[i][j];
            CHECK(col >= obj[j] - 1e-9);
        }
        CHECK(dual_total == doctest::Approx(lp.objective).epsilon(1e-9));
    }
}
