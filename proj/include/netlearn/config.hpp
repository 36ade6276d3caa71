#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "netlearn/bounds.hpp"
#include "netlearn/model.hpp"
#include "netlearn/simulator.hpp"
#include "netlearn/weighting.hpp"

namespace netlearn {

// JSON readers for the experiment configuration files. Relative hypergraph
// paths resolve against the directory of the config file.

GenerativeModel parse_model_json(const nlohmann::json& j);
StatisticSpec parse_statistic_json(const nlohmann::json& j);
KPartiteHypergraph parse_hypergraph_source(const nlohmann::json& j, const std::string& base_dir);
WeightMethod parse_method(const std::string& name);

// "one" or "linear:<dim>,<R>"
CoveringModel parse_covering_spec(const std::string& spec);

struct ConcentrationConfig {
    KPartiteHypergraph hypergraph;
    GenerativeModel model;
    StatisticSpec statistic;
    WeightMethod method = WeightMethod::Opt;
    std::vector<double> epsilon_grid;
    long trials = 0;
    std::uint64_t seed = 0;
};

ConcentrationConfig load_concentration_config(const std::string& path);
ErmConfig load_erm_config(const std::string& path);

}  // namespace netlearn
