#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "netlearn/errors.hpp"
#include "netlearn/hypergraph.hpp"
#include "netlearn/rng.hpp"

using namespace netlearn;

namespace {

std::string data_path(const std::string& name) {
    const char* dir = std::getenv("NETLEARN_DATA");
    REQUIRE(dir != nullptr);
    return std::string(dir) + "/" + name;
}

}  // namespace

TEST_CASE("parse: disjoint matching file") {
    const auto g = parse_hypergraph("2 3\n3 3\n0 0\n1 1\n2 2\n");
    CHECK(g.k == 2);
    CHECK(g.num_edges() == 3);
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) CHECK_FALSE(g.overlap(a, b));
}

TEST_CASE("parse: component out of range reports the line") {
    try {
        parse_hypergraph("2 1\n3 3\n0 5\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("parse: wrong component count, bad token, edge count mismatch") {
    CHECK_THROWS_AS(parse_hypergraph("2 1\n3 3\n0 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_hypergraph("2 1\n3 3\n0 x\n"), ParseError);
    CHECK_THROWS_AS(parse_hypergraph("2 2\n3 3\n0 0\n"), ParseError);
    CHECK_THROWS_AS(parse_hypergraph(""), ParseError);
}

TEST_CASE("parse: comments, blank lines, m = 0") {
    const auto g = parse_hypergraph("# header\n2 0\n\n4 5  # sizes\n");
    CHECK(g.k == 2);
    CHECK(g.num_edges() == 0);
    CHECK(g.partition_sizes == std::vector<int>{4, 5});
}

TEST_CASE("parse: the bipartite overlap-chain fixture has m=5") {
    std::ifstream in(data_path("path5_k2.hg"));
    std::stringstream buf;
    buf << in.rdbuf();
    const auto g = parse_hypergraph(buf.str());
    CHECK(g.k == 2);
    CHECK(g.num_edges() == 5);
}

TEST_CASE("parse: JSON equivalent agrees with the text format") {
    const auto text = load_hypergraph(data_path("c5.hg"));
    const auto json = load_hypergraph(data_path("c5.json"));
    CHECK(json.k == text.k);
    CHECK(json.partition_sizes == text.partition_sizes);
    CHECK(json.edges == text.edges);
}

TEST_CASE("duplicate edges are detected and allowed") {
    const auto g = parse_hypergraph("2 3\n2 2\n0 0\n0 0\n1 1\n");
    const auto dups = g.duplicate_edges();
    REQUIRE(dups.size() == 1);
    CHECK(dups[0] == std::pair<int, int>{0, 1});
}

TEST_CASE("to_text round-trips through parse") {
    const auto g = make_cycle(7);
    const auto again = parse_hypergraph(to_text(g));
    CHECK(again.k == g.k);
    CHECK(again.partition_sizes == g.partition_sizes);
    CHECK(again.edges == g.edges);
}

TEST_CASE("generators: family shapes") {
    const auto disjoint = make_disjoint(3, 4);
    CHECK(disjoint.num_edges() == 4);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) CHECK_FALSE(disjoint.overlap(a, b));

    const auto star = make_star(2, 4);
    CHECK(star.partition_sizes[0] == 1);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) CHECK(star.overlap(a, b));

    // Cycle construction: e_j overlaps exactly its two ring neighbours.
    for (int m : {3, 4, 5, 6, 9}) {
        const auto cyc = make_cycle(m);
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) {
                const bool ring = (b - a == 1) || (a == 0 && b == m - 1);
                CHECK(cyc.overlap(a, b) == ring);
            }
    }
}

TEST_CASE("generator: random family is deterministic and respects sizes") {
    const auto a = make_random(3, 8, {4, 4, 5}, 0.3, 7);
    const auto b = make_random(3, 8, {4, 4, 5}, 0.3, 7);
    CHECK(a.edges == b.edges);
    a.validate();
    const auto c = make_random(3, 8, {4, 4, 5}, 0.3, 8);
    CHECK(a.edges != c.edges);
}

TEST_CASE("validate rejects bad structures") {
    KPartiteHypergraph g;
    g.k = 2;
    g.partition_sizes = {2, 2};
    g.edges = {{0, 0}, {1}};
    CHECK_THROWS_AS(g.validate(), DataError);
    g.edges = {{0, 3}};
    CHECK_THROWS_AS(g.validate(), DataError);
    g.edges = {{0, -1}};
    CHECK_THROWS_AS(g.validate(), DataError);
}
