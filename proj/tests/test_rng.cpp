#include "doctest.h"

#include <cmath>
#include <set>
#include <vector>

#include "netlearn/rng.hpp"

using namespace netlearn;

TEST_CASE("same key replays the same sequence") {
    CounterRng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("split streams are independent of draw order") {
    const CounterRng root(7);
    CounterRng child_first = root.split(1);
    const auto v1 = child_first.next_u64();

    CounterRng other = root.split(2);
    (void)other.next_u64();
    CounterRng child_second = root.split(1);
    CHECK(child_second.next_u64() == v1);
}

TEST_CASE("distinct tags and keys give distinct streams") {
    const CounterRng root(99);
    std::set<std::uint64_t> firsts;
    for (std::uint64_t tag = 0; tag < 1000; ++tag) {
        CounterRng child = root.split(tag);
        firsts.insert(child.next_u64());
    }
    CHECK(firsts.size() == 1000);

    CounterRng a(1), b(2);
    int same = 0;
    for (int i = 0; i < 64; ++i)
        if (a.next_u64() == b.next_u64()) ++same;
    CHECK(same == 0);
}

TEST_CASE("unit draws land in [0,1) with a sane mean") {
    CounterRng rng(2718);
    double sum = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
    }
    // mean of n uniforms: SE = 1/sqrt(12 n) ~ 0.0009
    CHECK(std::fabs(sum / n - 0.5) < 0.005);
}

TEST_CASE("next_below stays in range and hits every residue") {
    CounterRng rng(5);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 7000; ++i) {
        const auto v = rng.next_below(7);
        CHECK(v < 7);
        ++counts[v];
    }
    for (int c : counts) CHECK(c > 700);
}

TEST_CASE("next_in covers the requested interval") {
    CounterRng rng(31);
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.next_in(-2.5, 1.5);
        CHECK(v >= -2.5);
        CHECK(v < 1.5);
    }
}
