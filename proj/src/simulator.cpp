#include "netlearn/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "netlearn/dependency_graph.hpp"
#include "netlearn/errors.hpp"

namespace netlearn {

long enumeration_cap() {
    if (const char* v = std::getenv("NETLEARN_ENUM_CAP")) {
        const long parsed = std::atol(v);
        if (parsed >= 1) return parsed;
    }
    return 10000000L;
}

namespace {

constexpr long kBlock = 4096;  // fixed reduction block; part of the output contract

// Enumeration layout over the used (degree >= 1) vertices: one mixed-radix
// slot per vertex, with strides so a flat configuration code decodes to the
// atom of any slot without shared scratch state.
struct EnumLayout {
    std::vector<int> atom_count;          // per slot
    std::vector<long> stride;             // per slot; slot 0 is the slowest digit
    std::vector<std::vector<int>> slot_of;  // [partition][vertex], -1 if unused
    long configurations = 1;

    int atom(long code, int slot) const {
        return static_cast<int>((code / stride[slot]) % atom_count[slot]);
    }
};

EnumLayout build_layout(const KPartiteHypergraph& g, const GenerativeModel& model) {
    EnumLayout layout;
    const auto deg = g.vertex_degrees();
    layout.slot_of.resize(g.k);
    for (int i = 0, v = 0; i < g.k; ++i) {
        const auto& atoms = std::get<DiscreteFeatures>(model.features[i]).atoms;
        layout.slot_of[i].assign(g.partition_sizes[i], -1);
        for (int j = 0; j < g.partition_sizes[i]; ++j, ++v) {
            if (deg[v] == 0) continue;  // integrates out of both sides
            layout.slot_of[i][j] = static_cast<int>(layout.atom_count.size());
            layout.atom_count.push_back(static_cast<int>(atoms.size()));
            if (layout.configurations > enumeration_cap() / static_cast<long>(atoms.size()))
                throw TooLargeError("exact_mgf_check: enumeration exceeds cap " +
                                    std::to_string(enumeration_cap()));
            layout.configurations *= static_cast<long>(atoms.size());
        }
    }
    layout.stride.assign(layout.atom_count.size(), 1);
    for (int s = static_cast<int>(layout.atom_count.size()) - 2; s >= 0; --s)
        layout.stride[s] = layout.stride[s + 1] * layout.atom_count[s + 1];
    return layout;
}

// Probability-weighted contribution of one vertex-feature configuration to
// E exp(sum w_i xi(z_i)): prob(features) * prod_i E_{y_i|x_i} e^{w_i xi}.
double configuration_term(long code, const EnumLayout& layout, const KPartiteHypergraph& g,
                          const GenerativeModel& model, const StatisticSpec& xi,
                          const std::vector<double>& w) {
    double prob = 1.0;
    for (int i = 0; i < g.k; ++i) {
        const auto& atoms = std::get<DiscreteFeatures>(model.features[i]).atoms;
        for (int slot : layout.slot_of[i])
            if (slot >= 0) prob *= atoms[layout.atom(code, slot)].prob;
    }
    if (prob == 0.0) return 0.0;

    double product = 1.0;
    std::vector<double> x;
    x.reserve(model.composed_dim());
    std::vector<int> atom_indices(g.k);
    for (int j = 0; j < g.num_edges(); ++j) {
        x.clear();
        for (int i = 0; i < g.k; ++i) {
            const int a = layout.atom(code, layout.slot_of[i][g.edges[j][i]]);
            atom_indices[i] = a;
            const auto& v = std::get<DiscreteFeatures>(model.features[i]).atoms[a].value;
            x.insert(x.end(), v.begin(), v.end());
        }
        double inner = 0.0;
        for (const auto& [y, py] : label_atoms_given(model, atom_indices, x))
            inner += py * std::exp(w[j] * eval_statistic(xi, x, y));
        product *= inner;
    }
    return prob * product;
}

// Deterministic blocked sum: partials are computed (possibly in parallel)
// per fixed-size block and combined in block order, so the result does not
// depend on the thread count.
template <typename Term>
double blocked_sum(long count, Exec exec, Term&& term) {
    const long blocks = (count + kBlock - 1) / kBlock;
    std::vector<double> partial(static_cast<size_t>(blocks), 0.0);
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (long b = 0; b < blocks; ++b) {
            double acc = 0.0;
            const long hi = std::min(count, (b + 1) * kBlock);
            for (long i = b * kBlock; i < hi; ++i) acc += term(i);
            partial[b] = acc;
        }
    } else {
        for (long b = 0; b < blocks; ++b) {
            double acc = 0.0;
            const long hi = std::min(count, (b + 1) * kBlock);
            for (long i = b * kBlock; i < hi; ++i) acc += term(i);
            partial[b] = acc;
        }
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

}  // namespace

MgfCheck exact_mgf_check(const KPartiteHypergraph& g, const GenerativeModel& model,
                         const StatisticSpec& xi, const std::vector<double>& w, Exec exec) {
    model.validate(g.k);
    if (!model.fully_discrete())
        throw DataError("exact_mgf_check: model must be fully discrete");
    if (static_cast<int>(w.size()) != g.num_edges())
        throw DataError("exact_mgf_check: weight vector length mismatch");
    const auto feas = verify_feasible(g, w);
    if (!feas.feasible)
        throw DataError("exact_mgf_check: infeasible weighting (" + feas.violation + ")");

    const EnumLayout layout = build_layout(g, model);

    MgfCheck out;
    out.configurations = layout.configurations;
    out.lhs = blocked_sum(layout.configurations, exec, [&](long code) {
        return configuration_term(code, layout, g, model, xi, w);
    });

    // rhs: every z_i has the same marginal, so prod (E e^xi)^{w_i} = E^{sum w}.
    double single = 0.0;
    for (const auto& pt : enumerate_example_support(model))
        single += pt.prob * std::exp(eval_statistic(xi, pt.x, pt.y));
    double weight_sum = 0.0;
    for (double wi : w) weight_sum += wi;
    out.rhs = std::exp(std::log(single) * weight_sum);
    return out;
}

ConcavityResult concavity_check(const std::vector<double>& beta, long trials,
                                std::uint64_t seed) {
    double total = 0.0;
    for (double b : beta) {
        if (b < 0.0) throw DataError("concavity_check: beta must be non-negative");
        total += b;
    }
    if (total > 1.0 + 1e-12) throw DataError("concavity_check: sum of beta must be <= 1");

    const auto g = [&](const std::vector<double>& t) {
        double prod = 1.0;
        for (size_t i = 0; i < beta.size(); ++i) prod *= std::pow(t[i], beta[i]);
        return prod;
    };

    ConcavityResult res;
    res.trials = trials;
    CounterRng rng = CounterRng(seed).split(stream::kTrial);
    std::vector<double> t(beta.size()), tp(beta.size()), mid(beta.size());
    for (long n = 0; n < trials; ++n) {
        CounterRng r = rng.split(static_cast<std::uint64_t>(n));
        for (size_t i = 0; i < beta.size(); ++i) {
            t[i] = r.next_in(1e-6, 10.0);
            tp[i] = r.next_in(1e-6, 10.0);
        }
        const double lambda = r.next_unit();
        for (size_t i = 0; i < beta.size(); ++i) mid[i] = lambda * t[i] + (1.0 - lambda) * tp[i];
        const double lhs = g(mid);
        const double rhs = lambda * g(t) + (1.0 - lambda) * g(tp);
        if (lhs < rhs - 1e-12) {
            res.counterexample = ConcavityCounterexample{t, tp, lambda, lhs, rhs};
            return res;
        }
    }
    return res;
}

std::vector<long> concentration_exceedance_counts(const KPartiteHypergraph& g,
                                                  const GenerativeModel& model,
                                                  const StatisticSpec& xi,
                                                  const Weighting& w, double mu,
                                                  const std::vector<double>& epsilon_grid,
                                                  long trials, std::uint64_t seed, Exec exec) {
    if (!(w.normalizer > 0.0)) throw DataError("concentration: zero normalizer");
    const CounterRng trial_root = CounterRng(seed).split(stream::kTrial);
    const size_t ne = epsilon_grid.size();
    std::vector<long> counts(ne, 0);

    const auto run_trial = [&](long t) {
        const NetworkedSample sample =
            sample_networked(g, model, trial_root.split(static_cast<std::uint64_t>(t)).next_u64());
        double acc = 0.0;
        for (int j = 0; j < g.num_edges(); ++j)
            acc += w.weights[j] * eval_statistic(xi, sample.xs[j], sample.ys[j]);
        return acc / w.normalizer - mu;
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel
        {
            std::vector<long> local(ne, 0);
#pragma omp for schedule(static) nowait
            for (long t = 0; t < trials; ++t) {
                const double dev = run_trial(t);
                for (size_t e = 0; e < ne; ++e)
                    if (dev >= epsilon_grid[e]) ++local[e];
            }
#pragma omp critical
            for (size_t e = 0; e < ne; ++e) counts[e] += local[e];
        }
    } else {
        for (long t = 0; t < trials; ++t) {
            const double dev = run_trial(t);
            for (size_t e = 0; e < ne; ++e)
                if (dev >= epsilon_grid[e]) ++counts[e];
        }
    }
    return counts;
}

ConcentrationReport concentration_experiment(const KPartiteHypergraph& g,
                                             const GenerativeModel& model,
                                             const StatisticSpec& xi, const Weighting& w,
                                             const std::vector<double>& epsilon_grid,
                                             long trials, std::uint64_t seed, Exec exec) {
    if (trials < 1) throw DataError("concentration: trials must be >= 1");
    model.validate(g.k);
    const StatisticMoments mom = statistic_moments(xi, model);

    ConcentrationReport rep;
    rep.moments = mom;
    rep.method = w.method;
    rep.trials = trials;

    const auto counts = concentration_exceedance_counts(g, model, xi, w, mom.mean,
                                                        epsilon_grid, trials, seed, exec);

    std::optional<double> chi;
    if (w.method == WeightMethod::Eqw) {
        const auto gamma = build_dependency_graph(g);
        if (gamma.size() <= exact_chi_cap()) chi = fractional_chromatic_number(gamma);
    }

    for (size_t e = 0; e < epsilon_grid.size(); ++e) {
        ConcentrationRow row;
        row.epsilon = epsilon_grid[e];
        row.empirical_tail = static_cast<double>(counts[e]) / static_cast<double>(trials);
        row.std_error = std::sqrt(row.empirical_tail * (1.0 - row.empirical_tail) /
                                  static_cast<double>(trials));
        BoundInputs in;
        in.m = g.num_edges();
        in.epsilon = row.epsilon;
        in.sigma2 = mom.variance;
        in.M = mom.range;
        if (w.method == WeightMethod::Eqw) {
            if (!chi) throw TooLargeError("concentration: chi* unavailable for EQW bound");
            in.s = static_cast<double>(in.m);
            in.chi_star = chi;
            row.bound = chromatic_tail(in);
            row.naive_iid_bound = bernstein_tail(in);
        } else {
            // IND keeps an i.i.d. subsample of size normalizer; OPT carries
            // s = normalizer. Both bounds read exp(-s e^2 / (2(s2 + Me/3))).
            in.s = w.normalizer;
            row.bound = weighted_bernstein_tail(in);
        }
        rep.rows.push_back(row);
    }
    return rep;
}

namespace {

Weighting weighting_for(WeightMethod method, const KPartiteHypergraph& g) {
    switch (method) {
        case WeightMethod::Eqw: return eqw_weights(g);
        case WeightMethod::Ind:
            if (g.num_edges() <= exact_alpha_cap()) return exact_matching_weights(g);
            return greedy_matching_weights(g);
        case WeightMethod::Opt: return optimal_weighting(g).weighting;
    }
    throw DataError("unknown weighting method");
}

}  // namespace

ErmReport erm_comparison_experiment(const ErmConfig& config) {
    const KPartiteHypergraph& g = config.hypergraph;
    config.model.validate(g.k);
    const auto* lin = std::get_if<LinearLabel>(&config.model.label);
    if (!lin)
        throw DataError("erm experiment: needs a linear label model so that f_rho lies in H");
    double beta_norm = 0.0;
    for (double b : lin->beta) beta_norm += std::fabs(b);
    if (beta_norm > config.norm_bound + 1e-9)
        throw DataError("erm experiment: ||beta*||_1 exceeds the norm bound; f_rho outside H");
    if (config.seeds.empty()) throw DataError("erm experiment: no seeds");

    ErmReport rep;
    rep.m = g.num_edges();
    rep.M = config.norm_bound + config.model.label_bound();
    const auto gamma = build_dependency_graph(g);
    if (gamma.size() <= exact_alpha_cap()) rep.alpha = independence_number(gamma);
    if (gamma.size() <= exact_chi_cap()) rep.chi_star = fractional_chromatic_number(gamma);
    rep.s = s_value(g);
    rep.greedy_matching = static_cast<int>(greedy_matching_weights(g).normalizer);

    Hypothesis proxy;  // f_H = f_rho since f_rho is in H
    proxy.coefficients = lin->beta;
    proxy.norm_bound = config.norm_bound;

    for (WeightMethod method : config.methods) {
        const Weighting w = weighting_for(method, g);
        double mean = 0.0, mean_sq = 0.0;
        for (std::uint64_t seed : config.seeds) {
            const NetworkedSample sample = sample_networked(g, config.model, seed);
            const FitResult fit = weighted_erm(sample, w, config.norm_bound);
            const RiskEstimate err = sample_error_estimate(
                fit.hypothesis, proxy, config.model, config.n_test, seed);

            ErmRun run;
            run.method = method;
            run.seed = seed;
            run.coefficients = fit.hypothesis.coefficients;
            run.sample_error = err;
            BoundInputs in;
            in.m = rep.m;
            in.epsilon = std::max(err.estimate, 1e-9);
            in.M = rep.M;
            in.covering = config.covering;
            if (method == WeightMethod::Eqw) {
                if (rep.chi_star) {
                    in.s = static_cast<double>(rep.m);
                    in.chi_star = rep.chi_star;
                    run.bound = sample_error_bound_eqw(in);
                }
            } else if (method == WeightMethod::Ind) {
                in.m = std::max(1L, static_cast<long>(w.normalizer));
                in.s = w.normalizer;
                run.bound = sample_error_bound_iid(in);
            } else {
                in.s = w.normalizer;
                run.bound = sample_error_bound_weighted(in);
            }
            rep.runs.push_back(std::move(run));

            mean += err.estimate;
            mean_sq += err.estimate * err.estimate;
        }
        const double n = static_cast<double>(config.seeds.size());
        mean /= n;
        const double var = std::max(0.0, mean_sq / n - mean * mean);
        rep.aggregates.push_back({method, mean, std::sqrt(var / n)});
    }
    return rep;
}

}  // namespace netlearn
