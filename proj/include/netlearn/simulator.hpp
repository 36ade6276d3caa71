#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netlearn/bounds.hpp"
#include "netlearn/learner.hpp"
#include "netlearn/model.hpp"
#include "netlearn/weighting.hpp"

namespace netlearn {

// Kernel selection. Parallel is the production path: a fixed-block OpenMP
// reduction whose result is independent of the thread count (partial sums are
// combined in block order). Serial is the naive reference loop kept for the
// equivalence tests and the benchmark.
enum class Exec { Serial, Parallel };

long enumeration_cap();  // default 1e7, env NETLEARN_ENUM_CAP

// Exact check of  E exp(sum w_i xi(z_i)) <= prod (E e^xi)^{w_i}  by full
// enumeration of vertex-feature and label assignments. Requires a fully
// discrete model and a feasible w.
struct MgfCheck {
    double lhs = 1.0;
    double rhs = 1.0;
    long configurations = 0;
};
MgfCheck exact_mgf_check(const KPartiteHypergraph& g, const GenerativeModel& model,
                         const StatisticSpec& xi, const std::vector<double>& w,
                         Exec exec = Exec::Parallel);

// Concavity probe for g(t) = prod t_i^{beta_i} on random segment pairs.
struct ConcavityCounterexample {
    std::vector<double> t, t_prime;
    double lambda = 0.0, lhs = 0.0, rhs = 0.0;
};
struct ConcavityResult {
    long trials = 0;
    std::optional<ConcavityCounterexample> counterexample;
    bool ok() const { return !counterexample.has_value(); }
};
ConcavityResult concavity_check(const std::vector<double>& beta, long trials,
                                std::uint64_t seed);

// Monte Carlo tail experiment: redraw the networked sample `trials` times,
// record Pr((1/normalizer) sum w_i xi - mu >= epsilon) per grid point, and
// pair it with the matching theoretical bound.
struct ConcentrationRow {
    double epsilon = 0.0;
    double empirical_tail = 0.0;
    double std_error = 0.0;                 // binomial
    double bound = 0.0;                     // weighted / chromatic per method
    std::optional<double> naive_iid_bound;  // EQW only: Theorem-1 pretending i.i.d.
};
struct ConcentrationReport {
    std::vector<ConcentrationRow> rows;
    StatisticMoments moments;
    WeightMethod method = WeightMethod::Opt;
    long trials = 0;
};
ConcentrationReport concentration_experiment(const KPartiteHypergraph& g,
                                             const GenerativeModel& model,
                                             const StatisticSpec& xi, const Weighting& w,
                                             const std::vector<double>& epsilon_grid,
                                             long trials, std::uint64_t seed,
                                             Exec exec = Exec::Parallel);

// Raw trial kernel (exceedance counts per grid point), exposed for the
// serial/parallel equivalence tests and the benchmark.
std::vector<long> concentration_exceedance_counts(const KPartiteHypergraph& g,
                                                  const GenerativeModel& model,
                                                  const StatisticSpec& xi,
                                                  const Weighting& w, double mu,
                                                  const std::vector<double>& epsilon_grid,
                                                  long trials, std::uint64_t seed, Exec exec);

// Weighted ERM comparison across methods and seeds on a planted model.
struct ErmConfig {
    KPartiteHypergraph hypergraph;
    GenerativeModel model;
    std::vector<WeightMethod> methods;
    std::vector<std::uint64_t> seeds;
    double norm_bound = 1.0;
    long n_test = 10000;
    CoveringModel covering = CoveringModel::one();
};
struct ErmRun {
    WeightMethod method = WeightMethod::Eqw;
    std::uint64_t seed = 0;
    std::vector<double> coefficients;
    RiskEstimate sample_error;
    std::optional<double> bound;  // matching sample-error bound at the observed level
};
struct ErmAggregate {
    WeightMethod method = WeightMethod::Eqw;
    double mean = 0.0;
    double std_error = 0.0;
};
struct ErmReport {
    std::vector<ErmRun> runs;
    std::vector<ErmAggregate> aggregates;
    long m = 0;
    std::optional<int> alpha;
    std::optional<double> chi_star;
    double s = 0.0;
    int greedy_matching = 0;
    double M = 0.0;  // R + sup|y|, the class range bound used in the bounds
};
ErmReport erm_comparison_experiment(const ErmConfig& config);

}  // namespace netlearn
