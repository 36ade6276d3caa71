#pragma once

#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "netlearn/hypergraph.hpp"
#include "netlearn/rng.hpp"

namespace netlearn {

// ---- feature distributions (one per partition) ----

struct DiscreteAtom {
    std::vector<double> value;
    double prob = 0.0;
};

struct UniformFeatures {
    int dim = 1;  // uniform on [0,1]^dim
};

struct DiscreteFeatures {
    std::vector<DiscreteAtom> atoms;
    int dim() const { return atoms.empty() ? 0 : static_cast<int>(atoms[0].value.size()); }
};

using FeatureDistribution = std::variant<UniformFeatures, DiscreteFeatures>;
int feature_dim(const FeatureDistribution& f);

// ---- label models ----

struct NoNoise {};
struct UniformNoise {
    double halfwidth = 0.0;  // uniform on (-halfwidth, halfwidth)
};
struct DiscreteNoise {
    std::vector<std::pair<double, double>> atoms;  // (value, prob)
};
using LabelNoise = std::variant<NoNoise, UniformNoise, DiscreteNoise>;

struct LinearLabel {
    std::vector<double> beta;  // y = <beta, x> + noise
    LabelNoise noise;
};

// Conditional label table for fully discrete features. Row index is the
// mixed-radix code of the per-partition atom indices, partition 0 slowest.
struct TableLabel {
    std::vector<std::vector<std::pair<double, double>>> rows;  // (y, prob) lists
};

using LabelModel = std::variant<LinearLabel, TableLabel>;

struct GenerativeModel {
    std::vector<FeatureDistribution> features;
    LabelModel label;

    int k() const { return static_cast<int>(features.size()); }
    int composed_dim() const;
    bool fully_discrete() const;  // features AND label admit exact enumeration
    double label_bound() const;   // sup |y| (throws DataError if unbounded inputs)
    void validate(int hypergraph_k) const;
};

// ---- networked sample ----

struct NetworkedSample {
    // vertex_features[i][j] is the feature vector of vertex j in partition i;
    // edges sharing a vertex copy the same block bit-exactly.
    std::vector<std::vector<std::vector<double>>> vertex_features;
    std::vector<std::vector<int>> vertex_atoms;  // atom index, or -1 for uniform partitions
    std::vector<std::vector<double>> xs;         // composed per-edge features
    std::vector<double> ys;
    std::uint64_t seed = 0;
};

NetworkedSample sample_networked(const KPartiteHypergraph& g, const GenerativeModel& model,
                                 std::uint64_t seed);

// One fresh example with no vertex sharing (an i.i.d. test draw).
std::pair<std::vector<double>, double> sample_example(const GenerativeModel& model,
                                                      CounterRng rng);

// ---- statistic DSL ----

struct AffineStatistic {
    std::vector<double> a;  // xi(x, y) = <a, x> + b*y + c
    double b = 0.0;
    double c = 0.0;
};

struct SquaredErrorStatistic {
    std::vector<double> beta;  // xi(x, y) = (<beta, x> - y)^2 - center
    double center = 0.0;
};

using StatisticSpec = std::variant<AffineStatistic, SquaredErrorStatistic>;

double eval_statistic(const StatisticSpec& spec, const std::vector<double>& x, double y);

struct StatisticMoments {
    double mean = 0.0;
    double variance = 0.0;
    double range = 0.0;  // sup |xi - mean| over the support
};

// Exact moments under the single-example marginal: full enumeration for
// discrete models; closed form for uniform features + linear label + affine
// statistic. Anything else throws DataError ("unknown statistic moments").
StatisticMoments statistic_moments(const StatisticSpec& spec, const GenerativeModel& model);

// ---- exact enumeration support (fully discrete models) ----

// Per-edge label atoms given the composed features and the per-partition
// atom indices of the edge's vertices.
std::vector<std::pair<double, double>> label_atoms_given(const GenerativeModel& model,
                                                         const std::vector<int>& atom_indices,
                                                         const std::vector<double>& x);

// Support of a single example: (x, y, probability) triples.
struct ExamplePoint {
    std::vector<double> x;
    double y = 0.0;
    double prob = 0.0;
};
std::vector<ExamplePoint> enumerate_example_support(const GenerativeModel& model);

}  // namespace netlearn
