#include "doctest.h"

#include <cmath>
#include <map>

#include "netlearn/errors.hpp"
#include "netlearn/model.hpp"
#include "oracles.hpp"

using namespace netlearn;

namespace {

// Upper chi-squared critical values at p = 0.001, frozen from an
// independent high-precision evaluation.
constexpr double kChi2Dof1 = 10.827566170662733;
constexpr double kChi2Dof9 = 27.877164871256575;
constexpr double kChi2Dof1023 = 1168.4971641802174;

GenerativeModel coin_model(int k) {
    GenerativeModel m;
    for (int i = 0; i < k; ++i)
        m.features.push_back(DiscreteFeatures{{{{0.0}, 0.5}, {{1.0}, 0.5}}});
    m.label = LinearLabel{std::vector<double>(k, 0.5), NoNoise{}};
    return m;
}

}  // namespace

TEST_CASE("shared vertices share feature blocks bit-exactly") {
    const auto star = make_star(2, 4);
    GenerativeModel model;
    model.features = {UniformFeatures{3}, UniformFeatures{2}};
    model.label = LinearLabel{{0.1, 0.2, 0.3, -0.1, -0.2}, UniformNoise{0.1}};
    const auto s = sample_networked(star, model, 123);
    for (int j = 1; j < 4; ++j)
        for (int c = 0; c < 3; ++c) CHECK(s.xs[j][c] == s.xs[0][c]);  // hub block

    const auto c5 = make_cycle(5);
    GenerativeModel m3;
    m3.features = {UniformFeatures{1}, UniformFeatures{1}, UniformFeatures{1}};
    m3.label = LinearLabel{{0.2, 0.2, 0.2}, NoNoise{}};
    const auto t = sample_networked(c5, m3, 99);
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            for (int i = 0; i < 3; ++i)
                if (c5.edges[a][i] == c5.edges[b][i]) CHECK(t.xs[a][i] == t.xs[b][i]);
}

TEST_CASE("sampling is reproducible from the seed") {
    const auto g = make_random(2, 6, {4, 4}, 0.3, 5);
    GenerativeModel model;
    model.features = {UniformFeatures{2}, DiscreteFeatures{{{{0.0}, 0.25}, {{1.0}, 0.75}}}};
    model.label = LinearLabel{{0.5, -0.5, 0.25}, UniformNoise{0.05}};
    const auto a = sample_networked(g, model, 2024);
    const auto b = sample_networked(g, model, 2024);
    CHECK(a.xs == b.xs);
    CHECK(a.ys == b.ys);
    const auto c = sample_networked(g, model, 2025);
    CHECK(a.ys != c.ys);
}

TEST_CASE("labels of duplicate edges are drawn independently") {
    KPartiteHypergraph g;
    g.k = 2;
    g.partition_sizes = {1, 1};
    g.edges = {{0, 0}, {0, 0}};
    GenerativeModel model;
    model.features = {DiscreteFeatures{{{{0.0}, 1.0}}}, DiscreteFeatures{{{{0.0}, 1.0}}}};
    model.label = TableLabel{{{{0.0, 0.5}, {1.0, 0.5}}}};
    int differs = 0;
    for (int seed = 0; seed < 200; ++seed) {
        const auto s = sample_networked(g, model, seed);
        CHECK(s.xs[0] == s.xs[1]);
        if (s.ys[0] != s.ys[1]) ++differs;
    }
    CHECK(differs > 50);  // ~half the draws disagree
}

TEST_CASE("per-partition marginals pass the chi-squared test at 1e5 draws") {
    // Discrete partition with asymmetric atom probabilities.
    GenerativeModel model;
    model.features = {DiscreteFeatures{{{{0.0}, 0.2}, {{1.0}, 0.8}}}, UniformFeatures{1}};
    model.label = LinearLabel{{1.0, 0.0}, NoNoise{}};
    const auto g = make_disjoint(2, 4);

    std::vector<long> atom_counts(2, 0);
    std::vector<long> bin_counts(10, 0);
    const long draws = 100000;
    long total_vertices = 0;
    for (std::uint64_t seed = 0; total_vertices < draws; ++seed) {
        const auto s = sample_networked(g, model, seed);
        for (int j = 0; j < 4; ++j) {
            ++atom_counts[s.vertex_atoms[0][j]];
            const double u = s.vertex_features[1][j][0];
            ++bin_counts[std::min(9, static_cast<int>(u * 10.0))];
            ++total_vertices;
        }
    }
    CHECK(oracle::chi2_statistic(atom_counts, {0.2, 0.8}) < kChi2Dof1);
    CHECK(oracle::chi2_statistic(bin_counts, std::vector<double>(10, 0.1)) < kChi2Dof9);
}

TEST_CASE("joint vertex-atom distribution on C5 matches exact enumeration") {
    const auto g = make_cycle(5);
    const auto model = coin_model(3);
    // 10 used vertices, 2 atoms each: 1024 equally likely joint assignments.
    std::map<std::vector<int>, long> counts;
    const long draws = 100000;
    for (std::uint64_t seed = 0; seed < static_cast<std::uint64_t>(draws); ++seed) {
        const auto s = sample_networked(g, model, seed);
        std::vector<int> key;
        for (int i = 0; i < 3; ++i)
            for (int a : s.vertex_atoms[i]) key.push_back(a);
        ++counts[key];
    }
    std::vector<long> flat;
    flat.reserve(1024);
    long seen = 0;
    for (const auto& [key, c] : counts) {
        flat.push_back(c);
        seen += c;
    }
    CHECK(seen == draws);
    while (flat.size() < 1024) flat.push_back(0);
    CHECK(oracle::chi2_statistic(flat, std::vector<double>(1024, 1.0 / 1024)) < kChi2Dof1023);
}

TEST_CASE("eval_statistic: affine and squared error") {
    const StatisticSpec affine = AffineStatistic{{1.0, -2.0}, 0.5, 0.25};
    CHECK(eval_statistic(affine, {2.0, 1.0}, 4.0) == doctest::Approx(2.25));
    const StatisticSpec sq = SquaredErrorStatistic{{1.0, 1.0}, 0.5};
    CHECK(eval_statistic(sq, {1.0, 2.0}, 1.0) == doctest::Approx(4.0 - 0.5));
}

TEST_CASE("statistic moments: closed form for uniform features") {
    GenerativeModel model;
    model.features = {UniformFeatures{1}};
    model.label = LinearLabel{{0.0}, NoNoise{}};
    const StatisticSpec xi = AffineStatistic{{1.0}, 0.0, 0.0};
    const auto mom = statistic_moments(xi, model);
    CHECK(mom.mean == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(mom.variance == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
    CHECK(mom.range == doctest::Approx(0.5).epsilon(1e-15));

    // xi depends on the label too: y = 0.5 x + noise, xi = x - 2y + 1.
    GenerativeModel noisy;
    noisy.features = {UniformFeatures{1}};
    noisy.label = LinearLabel{{0.5}, UniformNoise{0.3}};
    const StatisticSpec mixed = AffineStatistic{{1.0}, -2.0, 1.0};
    const auto mm = statistic_moments(mixed, noisy);
    // g = a + b*beta = 1 - 1 = 0, so only the noise term remains.
    CHECK(mm.mean == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mm.variance == doctest::Approx(4.0 * 0.09 / 3.0).epsilon(1e-12));
    CHECK(mm.range == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("statistic moments: exact enumeration for discrete models") {
    // Coin feature, y = x exactly; xi = (0*x - y)^2 = y^2 = x.
    GenerativeModel model;
    model.features = {DiscreteFeatures{{{{0.0}, 0.5}, {{1.0}, 0.5}}}};
    model.label = LinearLabel{{1.0}, NoNoise{}};
    const StatisticSpec xi = SquaredErrorStatistic{{0.0}, 0.0};
    const auto mom = statistic_moments(xi, model);
    CHECK(mom.mean == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(mom.variance == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(mom.range == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("closed-form moments agree with Monte Carlo within 4 sigma") {
    GenerativeModel model;
    model.features = {UniformFeatures{2}, DiscreteFeatures{{{{0.0}, 0.3}, {{2.0}, 0.7}}}};
    model.label = LinearLabel{{0.4, -0.2, 0.1}, DiscreteNoise{{{-0.1, 0.5}, {0.1, 0.5}}}};
    const StatisticSpec xi = AffineStatistic{{0.5, 0.25, -0.3}, 0.7, -0.2};
    const auto mom = statistic_moments(xi, model);

    const long n = 200000;
    double sum = 0.0, sum_sq = 0.0, max_dev = 0.0;
    CounterRng root(31415);
    for (long i = 0; i < n; ++i) {
        const auto [x, y] = sample_example(model, root.split(i));
        const double v = eval_statistic(xi, x, y);
        sum += v;
        sum_sq += v * v;
        max_dev = std::max(max_dev, std::fabs(v - mom.mean));
    }
    const double emp_mean = sum / n;
    const double emp_var = sum_sq / n - emp_mean * emp_mean;
    const double mean_se = std::sqrt(mom.variance / n);
    CHECK(std::fabs(emp_mean - mom.mean) <= 4.0 * mean_se);
    CHECK(emp_var == doctest::Approx(mom.variance).epsilon(0.05));
    CHECK(max_dev <= mom.range + 1e-12);
}

TEST_CASE("moments unavailable for squared error under continuous features") {
    GenerativeModel model;
    model.features = {UniformFeatures{1}};
    model.label = LinearLabel{{0.5}, NoNoise{}};
    CHECK_THROWS_AS(statistic_moments(SquaredErrorStatistic{{0.5}, 0.0}, model), DataError);
}

TEST_CASE("enumerate_example_support: probabilities sum to one and match hand values") {
    GenerativeModel model;
    model.features = {DiscreteFeatures{{{{0.0}, 0.25}, {{1.0}, 0.75}}},
                      DiscreteFeatures{{{{0.5}, 1.0}}}};
    model.label = LinearLabel{{1.0, 1.0}, DiscreteNoise{{{-1.0, 0.5}, {1.0, 0.5}}}};
    const auto support = enumerate_example_support(model);
    CHECK(support.size() == 4);
    double total = 0.0;
    for (const auto& pt : support) total += pt.prob;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    // First point: x = (0, 0.5), y = 0.5 - 1 = -0.5, prob = 0.25 * 0.5.
    CHECK(support[0].x == std::vector<double>{0.0, 0.5});
    CHECK(support[0].y == doctest::Approx(-0.5));
    CHECK(support[0].prob == doctest::Approx(0.125));
}

TEST_CASE("label_bound covers the support") {
    GenerativeModel model;
    model.features = {DiscreteFeatures{{{{0.0}, 0.5}, {{1.0}, 0.5}}}};
    model.label = LinearLabel{{-2.0}, DiscreteNoise{{{-0.5, 0.5}, {0.5, 0.5}}}};
    CHECK(model.label_bound() == doctest::Approx(2.5));
    for (const auto& pt : enumerate_example_support(model))
        CHECK(std::fabs(pt.y) <= model.label_bound() + 1e-12);
}

TEST_CASE("model validation errors") {
    const auto g = make_disjoint(2, 2);
    GenerativeModel wrong_k;
    wrong_k.features = {UniformFeatures{1}};
    wrong_k.label = LinearLabel{{1.0}, NoNoise{}};
    CHECK_THROWS_AS(sample_networked(g, wrong_k, 0), DataError);

    GenerativeModel bad_probs;
    bad_probs.features = {DiscreteFeatures{{{{0.0}, 0.5}, {{1.0}, 0.2}}}, UniformFeatures{1}};
    bad_probs.label = LinearLabel{{1.0, 1.0}, NoNoise{}};
    CHECK_THROWS_AS(bad_probs.validate(2), DataError);

    GenerativeModel bad_beta;
    bad_beta.features = {UniformFeatures{2}, UniformFeatures{1}};
    bad_beta.label = LinearLabel{{1.0}, NoNoise{}};
    CHECK_THROWS_AS(bad_beta.validate(2), DataError);

    GenerativeModel bad_table;
    bad_table.features = {DiscreteFeatures{{{{0.0}, 0.5}, {{1.0}, 0.5}}},
                          DiscreteFeatures{{{{0.0}, 1.0}}}};
    bad_table.label = TableLabel{{{{0.0, 1.0}}}};  // needs 2 rows
    CHECK_THROWS_AS(bad_table.validate(2), DataError);

    GenerativeModel table_on_uniform;
    table_on_uniform.features = {UniformFeatures{1}};
    table_on_uniform.label = TableLabel{{{{0.0, 1.0}}}};
    CHECK_THROWS_AS(table_on_uniform.validate(1), DataError);
}
