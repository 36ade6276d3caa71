#include "doctest.h"

#include <algorithm>
#include <bit>
#include <cstdlib>

#include "netlearn/dependency_graph.hpp"
#include "netlearn/errors.hpp"
#include "netlearn/hypergraph.hpp"
#include "netlearn/rng.hpp"
#include "oracles.hpp"

using namespace netlearn;

namespace {

KPartiteHypergraph random_instance(CounterRng& rng) {
    const int k = 2 + static_cast<int>(rng.next_below(2));
    const int m = 1 + static_cast<int>(rng.next_below(8));
    std::vector<int> sizes(k);
    for (int i = 0; i < k; ++i) sizes[i] = 1 + static_cast<int>(rng.next_below(5));
    return make_random(k, m, sizes, 0.25 * rng.next_unit(), rng.next_u64());
}

}  // namespace

TEST_CASE("dependency graph of disjoint edges is empty") {
    const auto gamma = build_dependency_graph(make_disjoint(2, 3));
    CHECK(gamma.size() == 3);
    CHECK(gamma.edge_count() == 0);
}

TEST_CASE("dependency graph of a star is complete") {
    const auto gamma = build_dependency_graph(make_star(2, 4));
    CHECK(gamma.edge_count() == 6);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) CHECK(gamma.adjacent(a, b) == (a != b));
}

TEST_CASE("canonical C5 instance has the 5-cycle dependency graph") {
    const auto gamma = build_dependency_graph(make_cycle(5));
    CHECK(gamma.size() == 5);
    CHECK(gamma.edge_count() == 5);
    for (int v = 0; v < 5; ++v) CHECK(gamma.degree(v) == 2);
}

TEST_CASE("adjacency matches the brute-force overlap predicate on random instances") {
    CounterRng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const auto g = random_instance(rng);
        const auto gamma = build_dependency_graph(g);
        for (int a = 0; a < g.num_edges(); ++a) {
            CHECK_FALSE(gamma.adjacent(a, a));
            for (int b = 0; b < g.num_edges(); ++b) {
                CHECK(gamma.adjacent(a, b) == gamma.adjacent(b, a));
                if (a != b) CHECK(gamma.adjacent(a, b) == g.overlap(a, b));
            }
        }
    }
}

TEST_CASE("permuting edges yields the isomorphic graph under the permutation") {
    CounterRng rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        const auto g = random_instance(rng);
        const int m = g.num_edges();
        std::vector<int> perm(m);
        for (int i = 0; i < m; ++i) perm[i] = i;
        for (int i = m - 1; i > 0; --i)
            std::swap(perm[i], perm[rng.next_below(static_cast<std::uint64_t>(i + 1))]);
        KPartiteHypergraph shuffled = g;
        for (int i = 0; i < m; ++i) shuffled.edges[i] = g.edges[perm[i]];
        const auto gamma = build_dependency_graph(g);
        const auto gamma_p = build_dependency_graph(shuffled);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                CHECK(gamma_p.adjacent(a, b) == gamma.adjacent(perm[a], perm[b]));
    }
}

TEST_CASE("independence number: canonical values") {
    CHECK(independence_number(build_dependency_graph(make_disjoint(2, 5))) == 5);
    CHECK(independence_number(build_dependency_graph(make_star(2, 4))) == 1);
    CHECK(independence_number(build_dependency_graph(make_cycle(5))) == 2);
}

TEST_CASE("independence number matches the subset-scan oracle") {
    CounterRng rng(5151);
    for (int trial = 0; trial < 50; ++trial) {
        const auto gamma = build_dependency_graph(random_instance(rng));
        CHECK(independence_number(gamma) == oracle::alpha(gamma));
    }
}

TEST_CASE("maximum independent set realizes alpha and is independent") {
    CounterRng rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        const auto gamma = build_dependency_graph(random_instance(rng));
        const auto set = maximum_independent_set(gamma, 24);
        CHECK(static_cast<int>(set.size()) == independence_number(gamma));
        for (size_t a = 0; a < set.size(); ++a)
            for (size_t b = a + 1; b < set.size(); ++b)
                CHECK_FALSE(gamma.adjacent(set[a], set[b]));
    }
}

TEST_CASE("alpha is additive over disjoint unions") {
    CounterRng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = build_dependency_graph(random_instance(rng));
        const auto b = build_dependency_graph(random_instance(rng));
        if (a.size() + b.size() > 20) continue;
        DependencyGraph both(a.size() + b.size());
        for (int u = 0; u < a.size(); ++u)
            for (int v : a.neighbors(u)) both.add_edge(u, v);
        for (int u = 0; u < b.size(); ++u)
            for (int v : b.neighbors(u)) both.add_edge(a.size() + u, a.size() + v);
        CHECK(independence_number(both) ==
              independence_number(a) + independence_number(b));
    }
}

TEST_CASE("fractional chromatic number: canonical values") {
    CHECK(fractional_chromatic_number(build_dependency_graph(make_disjoint(2, 5))) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fractional_chromatic_number(build_dependency_graph(make_star(2, 4))) ==
          doctest::Approx(4.0).epsilon(1e-9));
    CHECK(fractional_chromatic_number(build_dependency_graph(make_cycle(5))) ==
          doctest::Approx(2.5).epsilon(1e-9));
}

TEST_CASE("chi* agrees with the vertex-enumeration oracle and the cover is valid") {
    CounterRng rng(404);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto g = random_instance(rng);
        if (g.num_edges() > 10) continue;
        const auto gamma = build_dependency_graph(g);
        const auto coloring = fractional_coloring(gamma, 16);
        CHECK(coloring.value == doctest::Approx(oracle::chi_star(gamma)).epsilon(1e-9));
        // Cover validity: every vertex covered with weight >= 1, total = chi*.
        double total = 0.0;
        std::vector<double> covered(gamma.size(), 0.0);
        for (const auto& [mask, weight] : coloring.cover) {
            CHECK(weight >= -1e-12);
            total += weight;
            for (int v = 0; v < gamma.size(); ++v)
                if (mask >> v & 1) covered[v] += weight;
        }
        CHECK(total == doctest::Approx(coloring.value).epsilon(1e-9));
        for (int v = 0; v < gamma.size(); ++v) CHECK(covered[v] >= 1.0 - 1e-9);
        ++checked;
    }
    CHECK(checked >= 20);
}

TEST_CASE("chain m/chi* <= alpha <= m on random instances") {
    CounterRng rng(777);
    for (int trial = 0; trial < 40; ++trial) {
        const auto gamma = build_dependency_graph(random_instance(rng));
        const double chi = fractional_chromatic_number(gamma, 16);
        const int a = independence_number(gamma);
        CHECK(static_cast<double>(gamma.size()) / chi <= a + 1e-9);
        CHECK(a <= gamma.size());
    }
}

TEST_CASE("chi* of a vertex-disjoint union is the max of the parts") {
    const auto c5 = build_dependency_graph(make_cycle(5));
    const auto k3 = build_dependency_graph(make_star(2, 3));
    DependencyGraph both(8);
    for (int u = 0; u < 5; ++u)
        for (int v : c5.neighbors(u)) both.add_edge(u, v);
    for (int u = 0; u < 3; ++u)
        for (int v : k3.neighbors(u)) both.add_edge(5 + u, 5 + v);
    CHECK(fractional_chromatic_number(both, 16) ==
          doctest::Approx(std::max(2.5, 3.0)).epsilon(1e-9));
}

TEST_CASE("exact caps gate the computations") {
    const auto gamma = build_dependency_graph(make_disjoint(2, 10));
    CHECK_THROWS_AS(independence_number(gamma, 8), TooLargeError);
    CHECK_THROWS_AS(fractional_coloring(gamma, 8), TooLargeError);
    CHECK(independence_number(gamma, 10) == 10);
}

TEST_CASE("maximal independent sets of C5 are the five non-adjacent pairs") {
    const auto sets = maximal_independent_sets(build_dependency_graph(make_cycle(5)));
    CHECK(sets.size() == 5);
    for (const auto mask : sets) CHECK(std::popcount(mask) == 2);
}
