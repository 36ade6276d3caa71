// Command-line front end: validate, generate, weights, svalue, bounds, fit,
// compare, simulate-concentration, simulate-erm.
// Exit codes: 0 success, 1 usage error, 2 data error, 3 instance too large.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "netlearn/bounds.hpp"
#include "netlearn/config.hpp"
#include "netlearn/dependency_graph.hpp"
#include "netlearn/errors.hpp"
#include "netlearn/format.hpp"
#include "netlearn/hypergraph.hpp"
#include "netlearn/learner.hpp"
#include "netlearn/simulator.hpp"
#include "netlearn/weighting.hpp"

namespace {

using namespace netlearn;

constexpr const char* kVersion = "netlearn 0.1.0";

void emit(const std::string& text, const std::string& output) {
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(output, std::ios::binary);
    if (!out) throw DataError("cannot write '" + output + "'");
    out << text;
}

std::string opt_num(const std::optional<double>& v) { return v ? sig12(*v) : "n/a"; }

// ---- validate ----

int cmd_validate(const std::string& input, const std::string& output) {
    const KPartiteHypergraph g = load_hypergraph(input);
    const auto deg = g.vertex_degrees();
    const int max_deg = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    std::ostringstream out;
    out << "OK, k=" << g.k << ", m=" << g.num_edges() << ", max degree " << max_deg << "\n";
    const auto used = g.used_per_partition();
    for (int i = 0; i < g.k; ++i) {
        int part_max = 0;
        for (int j = 0; j < g.partition_sizes[i]; ++j)
            part_max = std::max(part_max, deg[g.vertex_id(i, j)]);
        out << "partition " << i << ": n=" << g.partition_sizes[i] << ", used=" << used[i]
            << ", max degree " << part_max << "\n";
    }
    const auto dups = g.duplicate_edges();
    if (!dups.empty()) {
        out << "warning: " << dups.size() << " duplicate edge pair(s), e.g. edges "
            << dups[0].first << " and " << dups[0].second << "\n";
    }
    if (g.num_edges() == 0) out << "warning: empty edge list\n";
    emit(out.str(), output);
    return 0;
}

// ---- generate ----

int cmd_generate(const std::string& family, int k, int m, const std::vector<int>& sizes,
                 int n, double density, std::uint64_t seed, const std::string& output) {
    KPartiteHypergraph g;
    if (family == "disjoint") {
        g = make_disjoint(k, m);
    } else if (family == "star") {
        g = make_star(k, m);
    } else if (family == "cycle") {
        g = make_cycle(m);
    } else if (family == "random") {
        std::vector<int> sz = sizes;
        if (sz.empty()) sz.assign(k, n);
        g = make_random(k, m, sz, density, seed);
    } else {
        throw DataError("unknown family '" + family + "'");
    }
    emit(to_text(g), output);
    return 0;
}

// ---- weights ----

std::vector<int> load_order(const std::string& path, int m) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::vector<int> order;
    int v;
    while (in >> v) order.push_back(v);
    if (static_cast<int>(order.size()) != m)
        throw DataError("order file must list all " + std::to_string(m) + " edge indices");
    return order;
}

std::string weights_csv(const Weighting& w) {
    std::ostringstream out;
    out << "edge_index,weight\n";
    for (size_t j = 0; j < w.weights.size(); ++j) out << j << ',' << sig12(w.weights[j]) << "\n";
    out << "# normalizer=" << sig12(w.normalizer) << "\n";
    return out.str();
}

int cmd_weights(const std::string& method, const std::string& input,
                const std::string& order_path, const std::string& output) {
    const KPartiteHypergraph g = load_hypergraph(input);
    Weighting w;
    if (method == "eqw") {
        w = eqw_weights(g);
    } else if (method == "ind") {
        w = order_path.empty() ? greedy_matching_weights(g)
                               : greedy_matching_weights(g, load_order(order_path, g.num_edges()));
    } else if (method == "ind-exact") {
        w = exact_matching_weights(g);
    } else if (method == "opt") {
        w = optimal_weighting(g).weighting;
    } else {
        throw DataError("unknown method '" + method + "'");
    }
    emit(weights_csv(w), output);
    return 0;
}

// ---- bounds ----

int cmd_bounds(const std::string& input, std::vector<double> eps_grid, double sigma2,
               double range_bound, const std::string& covering_spec, bool tail_mode,
               const std::string& output) {
    const KPartiteHypergraph g = load_hypergraph(input);
    if (g.num_edges() < 1) throw DataError("bounds needs m >= 1");
    const auto gamma = build_dependency_graph(g);
    std::optional<double> chi;
    if (gamma.size() <= exact_chi_cap()) chi = fractional_chromatic_number(gamma);
    double matching_size;
    if (gamma.size() <= exact_alpha_cap())
        matching_size = exact_matching_weights(g).normalizer;
    else
        matching_size = greedy_matching_weights(g).normalizer;
    const double s = s_value(g);
    const CoveringModel covering = parse_covering_spec(covering_spec);

    std::sort(eps_grid.begin(), eps_grid.end());
    std::ostringstream out;
    out << "epsilon,method,bound\n";
    for (double eps : eps_grid) {
        BoundInputs in;
        in.m = g.num_edges();
        in.epsilon = eps;
        in.sigma2 = sigma2;
        in.M = range_bound;
        in.chi_star = chi;
        in.covering = covering;
        // method names in alphabetical order for the stable-order contract
        std::map<std::string, std::optional<double>> row;
        if (tail_mode) {
            row["eqw"] = chi ? std::optional<double>(chromatic_tail(in)) : std::nullopt;
            row["iid"] = bernstein_tail(in);
            BoundInputs ind = in;
            ind.s = std::max(1.0, matching_size);
            row["ind"] = weighted_bernstein_tail(ind);
            BoundInputs opt = in;
            opt.s = s;
            row["weighted"] = weighted_bernstein_tail(opt);
        } else {
            row["eqw"] = chi ? std::optional<double>(sample_error_bound_eqw(in)) : std::nullopt;
            row["iid"] = sample_error_bound_iid(in);
            BoundInputs ind = in;
            ind.m = std::max(1L, static_cast<long>(matching_size));
            row["ind"] = sample_error_bound_iid(ind);
            BoundInputs opt = in;
            opt.s = s;
            row["weighted"] = sample_error_bound_weighted(opt);
        }
        for (const auto& [name, value] : row)
            out << sig12(eps) << ',' << name << ',' << opt_num(value) << "\n";
    }
    emit(out.str(), output);
    return 0;
}

// ---- fit ----

void load_sample_csv(const std::string& path, int m, std::vector<std::vector<double>>& xs,
                     std::vector<double>& ys) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::vector<char> seen(m, 0);
    xs.assign(m, {});
    ys.assign(m, 0.0);
    std::string line;
    int lineno = 0, dim = -1;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
        std::istringstream row(line);
        std::vector<double> vals;
        std::string cell;
        while (std::getline(row, cell, ',')) {
            try {
                vals.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ParseError(lineno, "non-numeric cell '" + cell + "'");
            }
        }
        if (vals.size() < 3) throw ParseError(lineno, "need edge_index,x_1..x_d,y");
        const int idx = static_cast<int>(vals[0]);
        if (idx < 0 || idx >= m) throw ParseError(lineno, "edge index out of range");
        if (seen[idx]) throw ParseError(lineno, "duplicate edge index " + std::to_string(idx));
        seen[idx] = 1;
        const int d = static_cast<int>(vals.size()) - 2;
        if (dim < 0) dim = d;
        if (d != dim) throw ParseError(lineno, "inconsistent feature dimension");
        xs[idx].assign(vals.begin() + 1, vals.end() - 1);
        ys[idx] = vals.back();
    }
    for (int j = 0; j < m; ++j)
        if (!seen[j]) throw DataError("sample file missing edge index " + std::to_string(j));
}

int cmd_fit(const std::string& input, const std::string& data, const std::string& method,
            double norm_bound, const std::string& output) {
    const KPartiteHypergraph g = load_hypergraph(input);
    if (g.num_edges() < 1) throw DataError("fit needs m >= 1");
    std::vector<std::vector<double>> xs;
    std::vector<double> ys;
    load_sample_csv(data, g.num_edges(), xs, ys);

    Weighting w;
    if (method == "eqw") {
        w = eqw_weights(g);
    } else if (method == "ind") {
        w = g.num_edges() <= exact_alpha_cap() ? exact_matching_weights(g)
                                               : greedy_matching_weights(g);
    } else if (method == "opt") {
        w = optimal_weighting(g).weighting;
    } else {
        throw DataError("unknown method '" + method + "'");
    }

    const FitResult fit = weighted_erm(xs, ys, w, norm_bound);
    nlohmann::json j;
    j["R"] = norm_bound;
    j["coefficients"] = fit.hypothesis.coefficients;
    j["closed_form"] = fit.closed_form;
    j["iterations"] = fit.iterations;
    j["method"] = to_string(w.method);
    j["normalizer"] = w.normalizer;
    j["stationarity"] = fit.stationarity;
    j["risk"] = {{"empirical_weighted", empirical_weighted_risk(fit.hypothesis, xs, ys, w)},
                 {"empirical_unweighted",
                  empirical_weighted_risk(fit.hypothesis, xs, ys, eqw_weights(g))},
                 {"expected", nullptr}};
    emit(j.dump(2) + "\n", output);
    return 0;
}

// ---- compare ----

int cmd_compare(const std::string& input, double eps, double range_bound,
                const std::string& covering_spec, const std::string& output) {
    const KPartiteHypergraph g = load_hypergraph(input);
    if (g.num_edges() < 1) throw DataError("compare needs m >= 1");
    const auto gamma = build_dependency_graph(g);
    std::optional<double> alpha, chi;
    if (gamma.size() <= exact_alpha_cap())
        alpha = static_cast<double>(independence_number(gamma));
    if (gamma.size() <= exact_chi_cap()) chi = fractional_chromatic_number(gamma);
    const double greedy = greedy_matching_weights(g).normalizer;
    const double s = s_value(g);

    // Chain invariant, whenever every quantity is available.
    const double m = static_cast<double>(g.num_edges());
    const auto used = g.used_per_partition();
    const double cap = std::min(m, static_cast<double>(*std::min_element(used.begin(), used.end())));
    if (chi && alpha) {
        if (m / *chi > *alpha + 1e-9 || *alpha > s + 1e-9 || s > cap + 1e-9)
            throw DataError("structural chain m/chi* <= alpha <= s <= min(m, min n_i') violated");
    }

    BoundInputs in;
    in.m = g.num_edges();
    in.epsilon = eps;
    in.M = range_bound;
    in.chi_star = chi;
    in.covering = parse_covering_spec(covering_spec);
    const double bound_iid = sample_error_bound_iid(in);
    std::optional<double> bound_eqw;
    if (chi) bound_eqw = sample_error_bound_eqw(in);
    BoundInputs opt = in;
    opt.s = s;
    const double bound_weighted = sample_error_bound_weighted(opt);

    std::ostringstream out;
    out << "m,alpha,chi_star,greedy,s,bound_iid,bound_eqw,bound_weighted\n";
    out << g.num_edges() << ',' << opt_num(alpha) << ',' << opt_num(chi) << ','
        << sig12(greedy) << ',' << sig12(s) << ',' << sig12(bound_iid) << ','
        << opt_num(bound_eqw) << ',' << sig12(bound_weighted) << "\n";
    emit(out.str(), output);
    return 0;
}

// ---- svalue ----

int cmd_svalue(const std::string& input, const std::string& output) {
    const KPartiteHypergraph g = load_hypergraph(input);
    if (g.num_edges() < 1) throw DataError("svalue needs m >= 1");
    emit(sig12(s_value(g)) + "\n", output);
    return 0;
}

// ---- simulate ----

void emit_with_meta(const std::string& csv, const nlohmann::json& meta,
                    const std::string& output) {
    if (output.empty()) {
        std::cout << csv << "# metadata\n" << meta.dump(2) << "\n";
        return;
    }
    emit(csv, output);
    std::ofstream side(output + ".meta.json", std::ios::binary);
    if (!side) throw DataError("cannot write '" + output + ".meta.json'");
    side << meta.dump(2) << "\n";
}

int cmd_simulate_concentration(const std::string& config_path, const std::string& output,
                               const std::optional<std::uint64_t>& seed_override) {
    ConcentrationConfig cfg = load_concentration_config(config_path);
    if (seed_override) cfg.seed = *seed_override;
    const KPartiteHypergraph& g = cfg.hypergraph;

    Weighting w;
    switch (cfg.method) {
        case WeightMethod::Eqw: w = eqw_weights(g); break;
        case WeightMethod::Ind:
            w = g.num_edges() <= exact_alpha_cap() ? exact_matching_weights(g)
                                                   : greedy_matching_weights(g);
            break;
        case WeightMethod::Opt: w = optimal_weighting(g).weighting; break;
    }

    const ConcentrationReport rep = concentration_experiment(
        g, cfg.model, cfg.statistic, w, cfg.epsilon_grid, cfg.trials, cfg.seed);

    struct Line {
        double eps;
        std::string method;
        std::string text;
    };
    std::vector<Line> lines;
    for (const auto& row : rep.rows) {
        const std::string shared = sig12(row.empirical_tail) + "," + sig12(row.std_error);
        if (rep.method == WeightMethod::Eqw) {
            lines.push_back({row.epsilon, "eqw-chromatic",
                             shared + "," + sig12(row.bound)});
            lines.push_back({row.epsilon, "eqw-naive-iid",
                             shared + "," + sig12(*row.naive_iid_bound)});
        } else {
            const std::string name =
                rep.method == WeightMethod::Ind ? "ind-bernstein" : "opt-weighted";
            lines.push_back({row.epsilon, name, shared + "," + sig12(row.bound)});
        }
    }
    std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
        return a.eps != b.eps ? a.eps < b.eps : a.method < b.method;
    });
    std::ostringstream csv;
    csv << "epsilon,method,empirical_tail,std_error,bound\n";
    for (const auto& l : lines) csv << sig12(l.eps) << ',' << l.method << ',' << l.text << "\n";

    const auto gamma = build_dependency_graph(g);
    nlohmann::json meta;
    meta["m"] = g.num_edges();
    meta["alpha"] = nullptr;
    meta["chi_star"] = nullptr;
    if (gamma.size() <= exact_alpha_cap()) meta["alpha"] = independence_number(gamma);
    if (gamma.size() <= exact_chi_cap()) meta["chi_star"] = fractional_chromatic_number(gamma);
    meta["s"] = s_value(g);
    meta["method"] = to_string(rep.method);
    meta["normalizer"] = w.normalizer;
    meta["moments"] = {{"mean", rep.moments.mean},
                       {"variance", rep.moments.variance},
                       {"range", rep.moments.range}};
    meta["seed"] = cfg.seed;
    meta["trials"] = cfg.trials;
    meta["version"] = kVersion;
    emit_with_meta(csv.str(), meta, output);
    return 0;
}

int cmd_simulate_erm(const std::string& config_path, const std::string& output) {
    const ErmConfig cfg = load_erm_config(config_path);
    const ErmReport rep = erm_comparison_experiment(cfg);

    std::vector<const ErmRun*> order;
    for (const auto& run : rep.runs) order.push_back(&run);
    std::sort(order.begin(), order.end(), [](const ErmRun* a, const ErmRun* b) {
        const std::string ma = to_string(a->method), mb = to_string(b->method);
        return ma != mb ? ma < mb : a->seed < b->seed;
    });
    std::ostringstream csv;
    csv << "method,seed,sample_error,std_error,bound\n";
    for (const ErmRun* run : order)
        csv << to_string(run->method) << ',' << run->seed << ','
            << sig12(run->sample_error.estimate) << ',' << sig12(run->sample_error.std_error)
            << ',' << opt_num(run->bound) << "\n";

    nlohmann::json meta;
    meta["M"] = rep.M;
    meta["R"] = cfg.norm_bound;
    meta["alpha"] = rep.alpha ? nlohmann::json(*rep.alpha) : nlohmann::json(nullptr);
    meta["chi_star"] = rep.chi_star ? nlohmann::json(*rep.chi_star) : nlohmann::json(nullptr);
    meta["greedy"] = rep.greedy_matching;
    meta["m"] = rep.m;
    meta["n_test"] = cfg.n_test;
    meta["s"] = rep.s;
    meta["seeds"] = cfg.seeds;
    meta["version"] = kVersion;
    nlohmann::json aggs = nlohmann::json::array();
    for (const auto& a : rep.aggregates)
        aggs.push_back({{"method", to_string(a.method)},
                        {"mean", a.mean},
                        {"std_error", a.std_error}});
    meta["aggregates"] = aggs;
    nlohmann::json runs = nlohmann::json::array();
    for (const ErmRun* run : order) {
        nlohmann::json r;
        r["method"] = to_string(run->method);
        r["seed"] = run->seed;
        r["coefficients"] = run->coefficients;
        r["sample_error"] = run->sample_error.estimate;
        r["std_error"] = run->sample_error.std_error;
        r["bound"] = run->bound ? nlohmann::json(*run->bound) : nlohmann::json(nullptr);
        runs.push_back(r);
    }
    meta["runs"] = runs;
    emit_with_meta(csv.str(), meta, output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kVersion) +
                 " - optimal hyperedge weighting, learning bounds and verification "
                 "for networked examples"};
    app.require_subcommand(1);

    std::string input, output, data, order_path, config_path;
    std::string method = "opt", family = "random", covering = "one";
    int k = 2, m = 1, n = 1;
    std::vector<int> sizes;
    std::vector<double> eps_grid;
    double density = 0.0, sigma2 = 0.0, range_bound = 1.0, eps = 0.5, norm_bound = 1.0;
    std::uint64_t seed = 0;
    bool tail_mode = false;

    auto* validate = app.add_subcommand("validate", "parse a hypergraph file and report diagnostics");
    validate->add_option("--input", input, "hypergraph file")->required();
    validate->add_option("--output", output, "output file (stdout if omitted)");

    auto* generate = app.add_subcommand("generate", "write a hypergraph instance");
    generate->add_option("--family", family, "disjoint|star|cycle|random")->required();
    generate->add_option("--k", k, "partitions");
    generate->add_option("--m", m, "edges")->required();
    generate->add_option("--n", n, "per-partition size (random family)");
    generate->add_option("--sizes", sizes, "explicit partition sizes")->delimiter(',');
    generate->add_option("--density", density, "overlap density in [0,1] (random family)");
    generate->add_option("--seed", seed, "rng seed");
    generate->add_option("--output", output, "output file (stdout if omitted)");

    auto* weights = app.add_subcommand("weights", "per-edge weights as CSV");
    weights->add_option("--method", method, "eqw|ind|ind-exact|opt")->required();
    weights->add_option("--input", input, "hypergraph file")->required();
    weights->add_option("--order", order_path, "scan-order permutation file (ind)");
    weights->add_option("--output", output, "output file (stdout if omitted)");

    auto* svalue = app.add_subcommand("svalue", "print s(G)");
    svalue->add_option("--input", input, "hypergraph file")->required();
    svalue->add_option("--output", output, "output file (stdout if omitted)");

    auto* bounds = app.add_subcommand("bounds", "bound values over an epsilon grid as CSV");
    bounds->add_option("--input", input, "hypergraph file")->required();
    bounds->add_option("--epsilon", eps_grid, "epsilon grid")->required()->delimiter(',');
    bounds->add_option("--sigma2", sigma2, "statistic variance (tail mode)");
    bounds->add_option("--M", range_bound, "range bound M");
    bounds->add_option("--covering", covering, "one | linear:<dim>,<R>");
    bounds->add_flag("--tail", tail_mode, "emit tail bounds instead of sample-error bounds");

    auto* fit = app.add_subcommand("fit", "weighted ERM over a sample CSV; JSON report");
    fit->add_option("--input", input, "hypergraph file")->required();
    fit->add_option("--data", data, "sample CSV: edge_index,x_1..x_d,y")->required();
    fit->add_option("--method", method, "eqw|ind|opt")->required();
    fit->add_option("--R", norm_bound, "l1 norm bound of the class")->required();
    fit->add_option("--output", output, "output file (stdout if omitted)");

    auto* compare = app.add_subcommand("compare", "m, alpha, chi*, matching, s and bounds as CSV");
    compare->add_option("--input", input, "hypergraph file")->required();
    compare->add_option("--epsilon", eps, "reference epsilon");
    compare->add_option("--M", range_bound, "range bound M");
    compare->add_option("--covering", covering, "one | linear:<dim>,<R>");
    compare->add_option("--output", output, "output file (stdout if omitted)");

    auto* sim_conc = app.add_subcommand("simulate-concentration",
                                        "Monte Carlo tail vs theoretical bound");
    sim_conc->add_option("--config", config_path, "experiment config JSON")->required();
    sim_conc->add_option("--output", output, "CSV file; metadata sidecar gets .meta.json");
    sim_conc->add_option("--seed", seed, "override the config seed");

    auto* sim_erm = app.add_subcommand("simulate-erm", "weighted ERM comparison experiment");
    sim_erm->add_option("--config", config_path, "experiment config JSON")->required();
    sim_erm->add_option("--output", output, "CSV file; metadata sidecar gets .meta.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (validate->parsed()) return cmd_validate(input, output);
        if (generate->parsed())
            return cmd_generate(family, k, m, sizes, n, density, seed, output);
        if (weights->parsed()) return cmd_weights(method, input, order_path, output);
        if (svalue->parsed()) return cmd_svalue(input, output);
        if (bounds->parsed())
            return cmd_bounds(input, eps_grid, sigma2, range_bound, covering, tail_mode, output);
        if (fit->parsed()) return cmd_fit(input, data, method, norm_bound, output);
        if (compare->parsed()) return cmd_compare(input, eps, range_bound, covering, output);
        if (sim_conc->parsed())
            return cmd_simulate_concentration(
                config_path, output,
                sim_conc->count("--seed") ? std::optional<std::uint64_t>(seed) : std::nullopt);
        if (sim_erm->parsed()) return cmd_simulate_erm(config_path, output);
    } catch (const TooLargeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
