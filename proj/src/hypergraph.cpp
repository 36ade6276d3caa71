#include "netlearn/hypergraph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "netlearn/errors.hpp"
#include "netlearn/rng.hpp"

namespace netlearn {

int KPartiteHypergraph::total_vertices() const {
    int total = 0;
    for (int n : partition_sizes) total += n;
    return total;
}

int KPartiteHypergraph::vertex_id(int partition, int index) const {
    int offset = 0;
    for (int i = 0; i < partition; ++i) offset += partition_sizes[i];
    return offset + index;
}

std::vector<int> KPartiteHypergraph::vertex_degrees() const {
    std::vector<int> deg(total_vertices(), 0);
    for (const auto& e : edges)
        for (int i = 0; i < k; ++i) ++deg[vertex_id(i, e[i])];
    return deg;
}

std::vector<std::vector<int>> KPartiteHypergraph::incidence() const {
    std::vector<std::vector<int>> eta(total_vertices());
    for (int j = 0; j < num_edges(); ++j)
        for (int i = 0; i < k; ++i) eta[vertex_id(i, edges[j][i])].push_back(j);
    return eta;
}

bool KPartiteHypergraph::overlap(int a, int b) const {
    for (int i = 0; i < k; ++i)
        if (edges[a][i] == edges[b][i]) return true;
    return false;
}

std::vector<std::pair<int, int>> KPartiteHypergraph::duplicate_edges() const {
    std::map<HyperEdge, int> first_seen;
    std::vector<std::pair<int, int>> dups;
    for (int j = 0; j < num_edges(); ++j) {
        auto [it, inserted] = first_seen.emplace(edges[j], j);
        if (!inserted) dups.emplace_back(it->second, j);
    }
    return dups;
}

std::vector<int> KPartiteHypergraph::used_per_partition() const {
    std::vector<int> used(k, 0);
    const auto deg = vertex_degrees();
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < partition_sizes[i]; ++j)
            if (deg[vertex_id(i, j)] > 0) ++used[i];
    return used;
}

void KPartiteHypergraph::validate() const {
    if (k < 1) throw DataError("k must be positive");
    if (static_cast<int>(partition_sizes.size()) != k)
        throw DataError("expected " + std::to_string(k) + " partition sizes");
    for (int i = 0; i < k; ++i)
        if (partition_sizes[i] < 1)
            throw DataError("partition " + std::to_string(i) + " must be non-empty");
    for (size_t j = 0; j < edges.size(); ++j) {
        const auto& e = edges[j];
        if (static_cast<int>(e.size()) != k)
            throw DataError("edge " + std::to_string(j) + " has " +
                            std::to_string(e.size()) + " components, expected " +
                            std::to_string(k));
        for (int i = 0; i < k; ++i)
            if (e[i] < 0 || e[i] >= partition_sizes[i])
                throw DataError("edge " + std::to_string(j) + " component " +
                                std::to_string(i) + " = " + std::to_string(e[i]) +
                                " out of range [0, " +
                                std::to_string(partition_sizes[i]) + ")");
    }
}

namespace {

KPartiteHypergraph parse_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(1, std::string("invalid JSON: ") + e.what());
    }
    KPartiteHypergraph g;
    try {
        g.k = j.at("k").get<int>();
        g.partition_sizes = j.at("partition_sizes").get<std::vector<int>>();
        g.edges = j.at("edges").get<std::vector<HyperEdge>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(1, std::string("bad hypergraph JSON: ") + e.what());
    }
    g.validate();
    return g;
}

std::vector<long> parse_ints(const std::string& line, int lineno) {
    std::istringstream in(line);
    std::vector<long> out;
    long v;
    while (in >> v) out.push_back(v);
    std::string rest;
    if (!in.eof()) {
        in.clear();
        in >> rest;
        if (!rest.empty())
            throw ParseError(lineno, "expected integers, got '" + rest + "'");
    }
    return out;
}

}  // namespace

KPartiteHypergraph parse_hypergraph(const std::string& text) {
    // Sniff JSON: first non-whitespace character is '{'.
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        if (c == '{') return parse_json(text);
        break;
    }

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    KPartiteHypergraph g;
    int stage = 0;  // 0: k m, 1: sizes, 2: edges
    long declared_m = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto vals = parse_ints(line, lineno);
        if (stage == 0) {
            if (vals.size() != 2) throw ParseError(lineno, "expected 'k m'");
            if (vals[0] < 1) throw ParseError(lineno, "k must be positive");
            if (vals[1] < 0) throw ParseError(lineno, "m must be non-negative");
            g.k = static_cast<int>(vals[0]);
            declared_m = vals[1];
            stage = 1;
        } else if (stage == 1) {
            if (static_cast<int>(vals.size()) != g.k)
                throw ParseError(lineno, "expected " + std::to_string(g.k) +
                                             " partition sizes");
            for (long v : vals)
                if (v < 1) throw ParseError(lineno, "partition sizes must be positive");
            g.partition_sizes.assign(vals.begin(), vals.end());
            stage = 2;
        } else {
            if (static_cast<long>(g.edges.size()) == declared_m)
                throw ParseError(lineno, "more than the declared " +
                                             std::to_string(declared_m) + " edges");
            if (static_cast<int>(vals.size()) != g.k)
                throw ParseError(lineno, "edge has " + std::to_string(vals.size()) +
                                             " components, expected " +
                                             std::to_string(g.k));
            HyperEdge e(g.k);
            for (int i = 0; i < g.k; ++i) {
                if (vals[i] < 0 || vals[i] >= g.partition_sizes[i])
                    throw ParseError(lineno, "component " + std::to_string(i) + " = " +
                                                 std::to_string(vals[i]) +
                                                 " out of range [0, " +
                                                 std::to_string(g.partition_sizes[i]) +
                                                 ")");
                e[i] = static_cast<int>(vals[i]);
            }
            g.edges.push_back(std::move(e));
        }
    }
    if (stage == 0) throw ParseError(lineno, "empty hypergraph file");
    if (stage == 1) throw ParseError(lineno, "missing partition sizes");
    if (static_cast<long>(g.edges.size()) != declared_m)
        throw ParseError(lineno, "declared m=" + std::to_string(declared_m) +
                                     " but found " + std::to_string(g.edges.size()) +
                                     " edges");
    g.validate();
    return g;
}

KPartiteHypergraph load_hypergraph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_hypergraph(buf.str());
}

std::string to_text(const KPartiteHypergraph& g) {
    std::ostringstream out;
    out << g.k << ' ' << g.num_edges() << '\n';
    for (int i = 0; i < g.k; ++i) out << g.partition_sizes[i] << (i + 1 < g.k ? ' ' : '\n');
    for (const auto& e : g.edges)
        for (int i = 0; i < g.k; ++i) out << e[i] << (i + 1 < g.k ? ' ' : '\n');
    return out.str();
}

KPartiteHypergraph make_disjoint(int k, int m) {
    if (k < 1 || m < 1) throw DataError("disjoint family needs k >= 1, m >= 1");
    KPartiteHypergraph g;
    g.k = k;
    g.partition_sizes.assign(k, m);
    for (int j = 0; j < m; ++j) g.edges.push_back(HyperEdge(k, j));
    return g;
}

KPartiteHypergraph make_star(int k, int m) {
    if (k < 2 || m < 1) throw DataError("star family needs k >= 2, m >= 1");
    KPartiteHypergraph g;
    g.k = k;
    g.partition_sizes.assign(k, m);
    g.partition_sizes[0] = 1;  // the shared hub
    for (int j = 0; j < m; ++j) {
        HyperEdge e(k, j);
        e[0] = 0;
        g.edges.push_back(std::move(e));
    }
    return g;
}

KPartiteHypergraph make_cycle(int m) {
    if (m < 3) throw DataError("cycle family needs m >= 3");
    // Shared vertex s_i joins edges e_i and e_{i+1 mod m}; its partition
    // alternates 0,1 with the final share moved to partition 2 when m is odd,
    // so no edge receives two shares in the same partition.
    std::vector<int> share_partition(m);
    for (int i = 0; i < m; ++i) share_partition[i] = i % 2;
    if (m % 2 == 1) share_partition[m - 1] = 2;

    KPartiteHypergraph g;
    g.k = 3;
    g.partition_sizes.assign(3, 0);
    std::vector<int> share_index(m);
    for (int i = 0; i < m; ++i) share_index[i] = g.partition_sizes[share_partition[i]]++;

    for (int j = 0; j < m; ++j) {
        const int prev = (j + m - 1) % m;
        HyperEdge e(3, -1);
        e[share_partition[prev]] = share_index[prev];
        e[share_partition[j]] = share_index[j];
        for (int p = 0; p < 3; ++p)
            if (e[p] < 0) e[p] = g.partition_sizes[p]++;  // private vertex
        g.edges.push_back(std::move(e));
    }
    g.validate();
    return g;
}

KPartiteHypergraph make_random(int k, int m, const std::vector<int>& sizes,
                               double density, std::uint64_t seed) {
    if (k < 1 || m < 1) throw DataError("random family needs k >= 1, m >= 1");
    if (static_cast<int>(sizes.size()) != k)
        throw DataError("random family needs one size per partition");
    for (int n : sizes)
        if (n < 1) throw DataError("partition sizes must be positive");
    if (density < 0.0 || density > 1.0) throw DataError("density must be in [0, 1]");

    KPartiteHypergraph g;
    g.k = k;
    g.partition_sizes = sizes;
    CounterRng rng = CounterRng(seed).split(stream::kInstance);
    for (int j = 0; j < m; ++j) {
        HyperEdge e(k);
        for (int i = 0; i < k; ++i) {
            // With probability `density`, reuse the component of an earlier
            // edge (forcing an overlap); otherwise draw uniformly.
            if (j > 0 && rng.next_unit() < density)
                e[i] = g.edges[rng.next_below(j)][i];
            else
                e[i] = static_cast<int>(rng.next_below(sizes[i]));
        }
        g.edges.push_back(std::move(e));
    }
    return g;
}

}  // namespace netlearn
