#include "netlearn/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "netlearn/errors.hpp"

namespace netlearn {

namespace {
constexpr double kProbTol = 1e-9;

int sample_atom(const std::vector<double>& cumulative, double u) {
    // Inverse CDF; cumulative is non-decreasing and ends at ~1.
    for (size_t a = 0; a + 1 < cumulative.size(); ++a)
        if (u < cumulative[a]) return static_cast<int>(a);
    return static_cast<int>(cumulative.size()) - 1;
}

std::vector<double> atom_cdf(const std::vector<DiscreteAtom>& atoms) {
    std::vector<double> cdf;
    double run = 0.0;
    for (const auto& a : atoms) cdf.push_back(run += a.prob);
    return cdf;
}

double noise_draw(const LabelNoise& noise, CounterRng& rng) {
    if (std::holds_alternative<NoNoise>(noise)) return 0.0;
    if (const auto* u = std::get_if<UniformNoise>(&noise))
        return rng.next_in(-u->halfwidth, u->halfwidth);
    const auto& atoms = std::get<DiscreteNoise>(noise).atoms;
    const double u = rng.next_unit();
    double run = 0.0;
    for (size_t a = 0; a + 1 < atoms.size(); ++a) {
        run += atoms[a].second;
        if (u < run) return atoms[a].first;
    }
    return atoms.back().first;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

int feature_dim(const FeatureDistribution& f) {
    if (const auto* u = std::get_if<UniformFeatures>(&f)) return u->dim;
    return std::get<DiscreteFeatures>(f).dim();
}

int GenerativeModel::composed_dim() const {
    int d = 0;
    for (const auto& f : features) d += feature_dim(f);
    return d;
}

bool GenerativeModel::fully_discrete() const {
    for (const auto& f : features)
        if (!std::holds_alternative<DiscreteFeatures>(f)) return false;
    if (const auto* lin = std::get_if<LinearLabel>(&label))
        return !std::holds_alternative<UniformNoise>(lin->noise);
    return true;
}

double GenerativeModel::label_bound() const {
    if (const auto* tab = std::get_if<TableLabel>(&label)) {
        double bound = 0.0;
        for (const auto& row : tab->rows)
            for (const auto& [y, p] : row) bound = std::max(bound, std::fabs(y));
        return bound;
    }
    const auto& lin = std::get<LinearLabel>(label);
    // Interval of <beta, x> accumulated per partition, plus the noise interval.
    double lo = 0.0, hi = 0.0;
    int offset = 0;
    for (const auto& f : features) {
        const int d = feature_dim(f);
        if (std::holds_alternative<UniformFeatures>(f)) {
            for (int c = 0; c < d; ++c) {
                const double b = lin.beta[offset + c];
                lo += std::min(0.0, b);
                hi += std::max(0.0, b);
            }
        } else {
            const auto& atoms = std::get<DiscreteFeatures>(f).atoms;
            double plo = 0.0, phi = 0.0;
            for (size_t a = 0; a < atoms.size(); ++a) {
                double v = 0.0;
                for (int c = 0; c < d; ++c) v += lin.beta[offset + c] * atoms[a].value[c];
                if (a == 0) plo = phi = v;
                plo = std::min(plo, v);
                phi = std::max(phi, v);
            }
            lo += plo;
            hi += phi;
        }
        offset += d;
    }
    if (const auto* u = std::get_if<UniformNoise>(&lin.noise)) {
        lo -= u->halfwidth;
        hi += u->halfwidth;
    } else if (const auto* dn = std::get_if<DiscreteNoise>(&lin.noise)) {
        double nlo = dn->atoms[0].first, nhi = dn->atoms[0].first;
        for (const auto& [v, p] : dn->atoms) {
            nlo = std::min(nlo, v);
            nhi = std::max(nhi, v);
        }
        lo += nlo;
        hi += nhi;
    }
    return std::max(std::fabs(lo), std::fabs(hi));
}

void GenerativeModel::validate(int hypergraph_k) const {
    if (k() != hypergraph_k)
        throw DataError("model has " + std::to_string(k()) + " feature distributions, hypergraph has k=" +
                        std::to_string(hypergraph_k));
    long rows_needed = 1;
    for (const auto& f : features) {
        if (const auto* u = std::get_if<UniformFeatures>(&f)) {
            if (u->dim < 1) throw DataError("uniform feature dim must be >= 1");
            rows_needed = -1;  // not fully discrete
        } else {
            const auto& atoms = std::get<DiscreteFeatures>(f).atoms;
            if (atoms.empty()) throw DataError("discrete feature distribution has no atoms");
            double total = 0.0;
            for (const auto& a : atoms) {
                if (a.value.size() != atoms[0].value.size())
                    throw DataError("discrete atoms must share a dimension");
                if (a.prob < 0.0) throw DataError("negative atom probability");
                total += a.prob;
            }
            if (std::fabs(total - 1.0) > kProbTol)
                throw DataError("atom probabilities must sum to 1");
            if (rows_needed > 0) rows_needed *= static_cast<long>(atoms.size());
        }
    }
    if (const auto* lin = std::get_if<LinearLabel>(&label)) {
        if (static_cast<int>(lin->beta.size()) != composed_dim())
            throw DataError("label beta dimension " + std::to_string(lin->beta.size()) +
                            " != composed feature dimension " + std::to_string(composed_dim()));
        if (const auto* dn = std::get_if<DiscreteNoise>(&lin->noise)) {
            if (dn->atoms.empty()) throw DataError("discrete noise has no atoms");
            double total = 0.0;
            for (const auto& [v, p] : dn->atoms) {
                if (p < 0.0) throw DataError("negative noise probability");
                total += p;
            }
            if (std::fabs(total - 1.0) > kProbTol)
                throw DataError("noise probabilities must sum to 1");
        } else if (const auto* u = std::get_if<UniformNoise>(&lin->noise)) {
            if (u->halfwidth < 0.0) throw DataError("noise halfwidth must be >= 0");
        }
    } else {
        const auto& tab = std::get<TableLabel>(label);
        if (rows_needed < 0)
            throw DataError("conditional label table requires fully discrete features");
        if (static_cast<long>(tab.rows.size()) != rows_needed)
            throw DataError("label table has " + std::to_string(tab.rows.size()) +
                            " rows, expected " + std::to_string(rows_needed));
        for (const auto& row : tab.rows) {
            if (row.empty()) throw DataError("empty label table row");
            double total = 0.0;
            for (const auto& [y, p] : row) {
                if (p < 0.0) throw DataError("negative label probability");
                total += p;
            }
            if (std::fabs(total - 1.0) > kProbTol)
                throw DataError("label table row probabilities must sum to 1");
        }
    }
}

namespace {

// Label table row index: mixed radix over per-partition atom indices.
long table_row_index(const GenerativeModel& model, const std::vector<int>& atom_indices) {
    long row = 0;
    for (int i = 0; i < model.k(); ++i) {
        const auto& atoms = std::get<DiscreteFeatures>(model.features[i]).atoms;
        row = row * static_cast<long>(atoms.size()) + atom_indices[i];
    }
    return row;
}

}  // namespace

NetworkedSample sample_networked(const KPartiteHypergraph& g, const GenerativeModel& model,
                                 std::uint64_t seed) {
    model.validate(g.k);
    NetworkedSample s;
    s.seed = seed;
    const CounterRng root(seed);
    const CounterRng vertex_root = root.split(stream::kVertex);

    s.vertex_features.resize(g.k);
    s.vertex_atoms.resize(g.k);
    for (int i = 0; i < g.k; ++i) {
        const CounterRng part = vertex_root.split(static_cast<std::uint64_t>(i));
        s.vertex_features[i].resize(g.partition_sizes[i]);
        s.vertex_atoms[i].assign(g.partition_sizes[i], -1);
        if (const auto* u = std::get_if<UniformFeatures>(&model.features[i])) {
            for (int j = 0; j < g.partition_sizes[i]; ++j) {
                CounterRng r = part.split(static_cast<std::uint64_t>(j));
                auto& feat = s.vertex_features[i][j];
                feat.resize(u->dim);
                for (int c = 0; c < u->dim; ++c) feat[c] = r.next_unit();
            }
        } else {
            const auto& atoms = std::get<DiscreteFeatures>(model.features[i]).atoms;
            const auto cdf = atom_cdf(atoms);
            for (int j = 0; j < g.partition_sizes[i]; ++j) {
                CounterRng r = part.split(static_cast<std::uint64_t>(j));
                const int a = sample_atom(cdf, r.next_unit());
                s.vertex_atoms[i][j] = a;
                s.vertex_features[i][j] = atoms[a].value;
            }
        }
    }

    const CounterRng label_root = root.split(stream::kLabel);
    s.xs.resize(g.num_edges());
    s.ys.resize(g.num_edges());
    for (int j = 0; j < g.num_edges(); ++j) {
        auto& x = s.xs[j];
        x.reserve(model.composed_dim());
        for (int i = 0; i < g.k; ++i) {
            const auto& block = s.vertex_features[i][g.edges[j][i]];
            x.insert(x.end(), block.begin(), block.end());
        }
        CounterRng r = label_root.split(static_cast<std::uint64_t>(j));
        if (const auto* lin = std::get_if<LinearLabel>(&model.label)) {
            s.ys[j] = dot(lin->beta, x) + noise_draw(lin->noise, r);
        } else {
            std::vector<int> atom_indices(g.k);
            for (int i = 0; i < g.k; ++i) atom_indices[i] = s.vertex_atoms[i][g.edges[j][i]];
            const auto& row =
                std::get<TableLabel>(model.label).rows[table_row_index(model, atom_indices)];
            const double u = r.next_unit();
            double run = 0.0;
            s.ys[j] = row.back().first;
            for (size_t a = 0; a + 1 < row.size(); ++a) {
                run += row[a].second;
                if (u < run) {
                    s.ys[j] = row[a].first;
                    break;
                }
            }
        }
    }
    return s;
}

std::pair<std::vector<double>, double> sample_example(const GenerativeModel& model,
                                                      CounterRng rng) {
    std::vector<double> x;
    x.reserve(model.composed_dim());
    std::vector<int> atom_indices(model.k(), -1);
    for (int i = 0; i < model.k(); ++i) {
        CounterRng r = rng.split(static_cast<std::uint64_t>(i));
        if (const auto* u = std::get_if<UniformFeatures>(&model.features[i])) {
            for (int c = 0; c < u->dim; ++c) x.push_back(r.next_unit());
        } else {
            const auto& atoms = std::get<DiscreteFeatures>(model.features[i]).atoms;
            const int a = sample_atom(atom_cdf(atoms), r.next_unit());
            atom_indices[i] = a;
            x.insert(x.end(), atoms[a].value.begin(), atoms[a].value.end());
        }
    }
    CounterRng r = rng.split(static_cast<std::uint64_t>(model.k()));
    double y;
    if (const auto* lin = std::get_if<LinearLabel>(&model.label)) {
        y = dot(lin->beta, x) + noise_draw(lin->noise, r);
    } else {
        const auto& row = std::get<TableLabel>(model.label).rows[table_row_index(model, atom_indices)];
        const double u = r.next_unit();
        double run = 0.0;
        y = row.back().first;
        for (size_t a = 0; a + 1 < row.size(); ++a) {
            run += row[a].second;
            if (u < run) {
                y = row[a].first;
                break;
            }
        }
    }
    return {std::move(x), y};
}

double eval_statistic(const StatisticSpec& spec, const std::vector<double>& x, double y) {
    if (const auto* aff = std::get_if<AffineStatistic>(&spec))
        return dot(aff->a, x) + aff->b * y + aff->c;
    const auto& sq = std::get<SquaredErrorStatistic>(spec);
    const double r = dot(sq.beta, x) - y;
    return r * r - sq.center;
}

std::vector<std::pair<double, double>> label_atoms_given(const GenerativeModel& model,
                                                         const std::vector<int>& atom_indices,
                                                         const std::vector<double>& x) {
    if (const auto* lin = std::get_if<LinearLabel>(&model.label)) {
        const double base = dot(lin->beta, x);
        if (std::holds_alternative<NoNoise>(lin->noise)) return {{base, 1.0}};
        if (const auto* dn = std::get_if<DiscreteNoise>(&lin->noise)) {
            std::vector<std::pair<double, double>> out;
            for (const auto& [v, p] : dn->atoms) out.emplace_back(base + v, p);
            return out;
        }
        throw DataError("exact enumeration requires a discrete label model");
    }
    return std::get<TableLabel>(model.label).rows[table_row_index(model, atom_indices)];
}

std::vector<ExamplePoint> enumerate_example_support(const GenerativeModel& model) {
    if (!model.fully_discrete())
        throw DataError("exact enumeration requires fully discrete distributions");
    const int k = model.k();
    std::vector<const std::vector<DiscreteAtom>*> atoms(k);
    for (int i = 0; i < k; ++i) atoms[i] = &std::get<DiscreteFeatures>(model.features[i]).atoms;

    std::vector<ExamplePoint> out;
    std::vector<int> idx(k, 0);
    for (;;) {
        double prob = 1.0;
        std::vector<double> x;
        x.reserve(model.composed_dim());
        for (int i = 0; i < k; ++i) {
            const auto& a = (*atoms[i])[idx[i]];
            prob *= a.prob;
            x.insert(x.end(), a.value.begin(), a.value.end());
        }
        for (const auto& [y, py] : label_atoms_given(model, idx, x))
            out.push_back({x, y, prob * py});
        int i = k - 1;
        while (i >= 0 && ++idx[i] == static_cast<int>(atoms[i]->size())) idx[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

StatisticMoments statistic_moments(const StatisticSpec& spec, const GenerativeModel& model) {
    if (model.fully_discrete()) {
        const auto support = enumerate_example_support(model);
        double mean = 0.0;
        for (const auto& pt : support) mean += pt.prob * eval_statistic(spec, pt.x, pt.y);
        double variance = 0.0, range = 0.0;
        for (const auto& pt : support) {
            const double d = eval_statistic(spec, pt.x, pt.y) - mean;
            variance += pt.prob * d * d;
            range = std::max(range, std::fabs(d));
        }
        return {mean, variance, range};
    }

    // Closed form: affine statistic, linear label. xi = <g, x> + b*u + c with
    // g = a + b*beta; partition blocks are independent of each other.
    const auto* aff = std::get_if<AffineStatistic>(&spec);
    const auto* lin = std::get_if<LinearLabel>(&model.label);
    if (!aff || !lin)
        throw DataError("unknown statistic moments: need a fully discrete model or an affine "
                        "statistic with a linear label");
    std::vector<double> g(model.composed_dim());
    for (size_t i = 0; i < g.size(); ++i) g[i] = aff->a[i] + aff->b * lin->beta[i];

    double mean = aff->c, variance = 0.0, range = 0.0;
    int offset = 0;
    for (const auto& f : model.features) {
        const int d = feature_dim(f);
        if (std::holds_alternative<UniformFeatures>(f)) {
            for (int c = 0; c < d; ++c) {
                const double gc = g[offset + c];
                mean += gc * 0.5;
                variance += gc * gc / 12.0;
                range += std::fabs(gc) * 0.5;
            }
        } else {
            const auto& atoms = std::get<DiscreteFeatures>(f).atoms;
            double block_mean = 0.0;
            std::vector<double> vals(atoms.size());
            for (size_t a = 0; a < atoms.size(); ++a) {
                double v = 0.0;
                for (int c = 0; c < d; ++c) v += g[offset + c] * atoms[a].value[c];
                vals[a] = v;
                block_mean += atoms[a].prob * v;
            }
            double block_var = 0.0, block_range = 0.0;
            for (size_t a = 0; a < atoms.size(); ++a) {
                const double dv = vals[a] - block_mean;
                block_var += atoms[a].prob * dv * dv;
                block_range = std::max(block_range, std::fabs(dv));
            }
            mean += block_mean;
            variance += block_var;
            range += block_range;
        }
        offset += d;
    }

    double noise_mean = 0.0, noise_var = 0.0, noise_range = 0.0;
    if (const auto* u = std::get_if<UniformNoise>(&lin->noise)) {
        noise_var = u->halfwidth * u->halfwidth / 3.0;
        noise_range = u->halfwidth;
    } else if (const auto* dn = std::get_if<DiscreteNoise>(&lin->noise)) {
        for (const auto& [v, p] : dn->atoms) noise_mean += p * v;
        for (const auto& [v, p] : dn->atoms) {
            noise_var += p * (v - noise_mean) * (v - noise_mean);
            noise_range = std::max(noise_range, std::fabs(v - noise_mean));
        }
    }
    mean += aff->b * noise_mean;
    variance += aff->b * aff->b * noise_var;
    range += std::fabs(aff->b) * noise_range;
    return {mean, variance, range};
}

}  // namespace netlearn
