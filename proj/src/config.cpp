#include "netlearn/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "netlearn/errors.hpp"

namespace netlearn {

namespace {

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const nlohmann::json::exception& e) {
        throw DataError("bad JSON in '" + path + "': " + e.what());
    }
}

LabelNoise parse_noise(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "none") return NoNoise{};
    if (kind == "uniform") return UniformNoise{j.at("halfwidth").get<double>()};
    if (kind == "discrete") {
        DiscreteNoise n;
        for (const auto& atom : j.at("atoms"))
            n.atoms.emplace_back(atom.at(0).get<double>(), atom.at(1).get<double>());
        return n;
    }
    throw DataError("unknown noise kind '" + kind + "'");
}

std::vector<double> parse_epsilon_grid(const nlohmann::json& j) {
    std::vector<double> grid;
    if (j.is_array()) {
        grid = j.get<std::vector<double>>();
    } else {
        const double start = j.at("start").get<double>();
        const double stop = j.at("stop").get<double>();
        const int points = j.at("points").get<int>();
        if (points < 1) throw DataError("epsilon grid needs points >= 1");
        for (int i = 0; i < points; ++i)
            grid.push_back(points == 1 ? start
                                       : start + (stop - start) * i / (points - 1));
    }
    if (grid.empty()) throw DataError("empty epsilon grid");
    for (double e : grid)
        if (!(e > 0.0)) throw DataError("epsilon grid values must be positive");
    return grid;
}

}  // namespace

GenerativeModel parse_model_json(const nlohmann::json& j) {
    GenerativeModel model;
    try {
        for (const auto& f : j.at("features")) {
            const std::string kind = f.at("kind").get<std::string>();
            if (kind == "uniform") {
                model.features.push_back(UniformFeatures{f.at("dim").get<int>()});
            } else if (kind == "discrete") {
                DiscreteFeatures d;
                for (const auto& atom : f.at("atoms"))
                    d.atoms.push_back({atom.at("value").get<std::vector<double>>(),
                                       atom.at("prob").get<double>()});
                model.features.push_back(std::move(d));
            } else {
                throw DataError("unknown feature kind '" + kind + "'");
            }
        }
        const auto& lbl = j.at("label");
        const std::string kind = lbl.at("kind").get<std::string>();
        if (kind == "linear") {
            LinearLabel lin;
            lin.beta = lbl.at("beta").get<std::vector<double>>();
            lin.noise = lbl.contains("noise") ? parse_noise(lbl.at("noise")) : LabelNoise{NoNoise{}};
            model.label = std::move(lin);
        } else if (kind == "table") {
            TableLabel tab;
            for (const auto& row : lbl.at("rows")) {
                std::vector<std::pair<double, double>> r;
                for (const auto& atom : row)
                    r.emplace_back(atom.at(0).get<double>(), atom.at(1).get<double>());
                tab.rows.push_back(std::move(r));
            }
            model.label = std::move(tab);
        } else {
            throw DataError("unknown label kind '" + kind + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bad model spec: ") + e.what());
    }
    return model;
}

StatisticSpec parse_statistic_json(const nlohmann::json& j) {
    try {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "affine") {
            AffineStatistic s;
            s.a = j.at("a").get<std::vector<double>>();
            s.b = j.value("b", 0.0);
            s.c = j.value("c", 0.0);
            return s;
        }
        if (kind == "squared_error") {
            SquaredErrorStatistic s;
            s.beta = j.at("beta").get<std::vector<double>>();
            s.center = j.value("center", 0.0);
            return s;
        }
        throw DataError("unknown statistic kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bad statistic spec: ") + e.what());
    }
}

KPartiteHypergraph parse_hypergraph_source(const nlohmann::json& j, const std::string& base_dir) {
    try {
        if (j.contains("path")) {
            std::filesystem::path p = j.at("path").get<std::string>();
            if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
            return load_hypergraph(p.string());
        }
        const std::string family = j.at("family").get<std::string>();
        if (family == "disjoint") return make_disjoint(j.value("k", 2), j.at("m").get<int>());
        if (family == "star") return make_star(j.value("k", 2), j.at("m").get<int>());
        if (family == "cycle") return make_cycle(j.at("m").get<int>());
        if (family == "random") {
            const int k = j.at("k").get<int>();
            std::vector<int> sizes;
            if (j.contains("sizes")) sizes = j.at("sizes").get<std::vector<int>>();
            else sizes.assign(k, j.at("n").get<int>());
            return make_random(k, j.at("m").get<int>(), sizes, j.value("density", 0.0),
                               j.value("seed", std::uint64_t{0}));
        }
        throw DataError("unknown hypergraph family '" + family + "'");
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bad hypergraph source: ") + e.what());
    }
}

WeightMethod parse_method(const std::string& name) {
    if (name == "eqw") return WeightMethod::Eqw;
    if (name == "ind") return WeightMethod::Ind;
    if (name == "opt") return WeightMethod::Opt;
    throw DataError("unknown weighting method '" + name + "'");
}

CoveringModel parse_covering_spec(const std::string& spec) {
    if (spec == "one") return CoveringModel::one();
    if (spec.rfind("linear:", 0) == 0) {
        std::istringstream in(spec.substr(7));
        int dim = 0;
        double r = 0.0;
        char comma = 0;
        if (in >> dim >> comma >> r && comma == ',')
            return CoveringModel::linear_class(dim, r);
    }
    throw DataError("bad covering spec '" + spec + "' (want 'one' or 'linear:<dim>,<R>')");
}

ConcentrationConfig load_concentration_config(const std::string& path) {
    const auto j = load_json_file(path);
    const std::string base = std::filesystem::path(path).parent_path().string();
    ConcentrationConfig cfg;
    try {
        cfg.hypergraph = parse_hypergraph_source(j.at("hypergraph"), base);
        cfg.model = parse_model_json(j.at("model"));
        cfg.statistic = parse_statistic_json(j.at("statistic"));
        cfg.method = parse_method(j.value("method", std::string("opt")));
        cfg.epsilon_grid = parse_epsilon_grid(j.at("epsilon_grid"));
        cfg.trials = j.at("trials").get<long>();
        cfg.seed = j.value("seed", std::uint64_t{0});
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bad concentration config: ") + e.what());
    }
    if (cfg.trials < 1) throw DataError("trials must be >= 1");
    cfg.model.validate(cfg.hypergraph.k);
    return cfg;
}

ErmConfig load_erm_config(const std::string& path) {
    const auto j = load_json_file(path);
    const std::string base = std::filesystem::path(path).parent_path().string();
    ErmConfig cfg;
    try {
        cfg.hypergraph = parse_hypergraph_source(j.at("hypergraph"), base);
        cfg.model = parse_model_json(j.at("model"));
        for (const auto& name : j.at("methods"))
            cfg.methods.push_back(parse_method(name.get<std::string>()));
        cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
        cfg.norm_bound = j.at("R").get<double>();
        cfg.n_test = j.value("n_test", 10000L);
        if (j.contains("covering"))
            cfg.covering = parse_covering_spec(j.at("covering").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("bad erm config: ") + e.what());
    }
    if (cfg.methods.empty()) throw DataError("erm config needs at least one method");
    cfg.model.validate(cfg.hypergraph.k);
    return cfg;
}

}  // namespace netlearn
