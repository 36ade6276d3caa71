#include "netlearn/learner.hpp"

#include <cmath>

#include "netlearn/errors.hpp"
#include "netlearn/linalg.hpp"

namespace netlearn {

namespace {

constexpr double kStationarityTol = 1e-8;  // certified at every returned point
constexpr double kStopTol = 1e-10;         // iteration stop, with margin below the certificate
constexpr long kMaxIterations = 100000;

struct Quadratic {
    // Weighted normal-equation data: risk(beta) = (beta'A beta - 2 b'beta + c) / s.
    std::vector<double> gram;  // A = sum w_i x_i x_i'
    std::vector<double> lin;   // b = sum w_i y_i x_i
    double normalizer;
    int dim;

    std::vector<double> gradient(const std::vector<double>& beta) const {
        std::vector<double> grad(dim);
        for (int i = 0; i < dim; ++i) {
            double s = -lin[i];
            for (int j = 0; j < dim; ++j) s += gram[i * dim + j] * beta[j];
            grad[i] = 2.0 * s / normalizer;
        }
        return grad;
    }
};

Quadratic assemble(const std::vector<std::vector<double>>& xs, const std::vector<double>& ys,
                   const Weighting& w) {
    if (xs.size() != ys.size() || xs.size() != w.weights.size())
        throw DataError("weighted_erm: sample and weight sizes disagree");
    if (xs.empty()) throw DataError("weighted_erm: empty sample");
    const int d = static_cast<int>(xs[0].size());
    double total = 0.0;
    for (double wi : w.weights) total += wi;
    if (!(total > 0.0)) throw DataError("weighted_erm: zero total weight");

    Quadratic q;
    q.dim = d;
    q.normalizer = w.normalizer > 0.0 ? w.normalizer : total;
    q.gram.assign(static_cast<size_t>(d) * d, 0.0);
    q.lin.assign(d, 0.0);
    for (size_t n = 0; n < xs.size(); ++n) {
        if (static_cast<int>(xs[n].size()) != d)
            throw DataError("weighted_erm: inconsistent feature dimension at row " +
                            std::to_string(n));
        const double wi = w.weights[n];
        if (wi == 0.0) continue;
        for (int i = 0; i < d; ++i) {
            q.lin[i] += wi * ys[n] * xs[n][i];
            for (int j = i; j < d; ++j) q.gram[i * d + j] += wi * xs[n][i] * xs[n][j];
        }
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < i; ++j) q.gram[i * d + j] = q.gram[j * d + i];
    return q;
}

double norm1(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::fabs(x);
    return s;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Gradient-mapping norm at beta with step 1/L: L * ||beta - P(beta - grad/L)||.
double gradient_mapping_norm(const Quadratic& q, const std::vector<double>& beta, double r,
                             double lip) {
    const auto grad = q.gradient(beta);
    if (lip <= 0.0) return norm2(grad) == 0.0 ? 0.0 : norm2(grad);
    std::vector<double> step(beta.size());
    for (size_t i = 0; i < beta.size(); ++i) step[i] = beta[i] - grad[i] / lip;
    const auto next = project_l1(step, r);
    std::vector<double> diff(beta.size());
    for (size_t i = 0; i < beta.size(); ++i) diff[i] = beta[i] - next[i];
    return lip * norm2(diff);
}

}  // namespace

double Hypothesis::predict(const std::vector<double>& x) const {
    double s = 0.0;
    for (size_t i = 0; i < coefficients.size(); ++i) s += coefficients[i] * x[i];
    return s;
}

namespace {

FitResult fit_erm(const std::vector<std::vector<double>>& xs, const std::vector<double>& ys,
                  const Weighting& w, double norm_bound, bool allow_closed_form) {
    if (!(norm_bound > 0.0)) throw DataError("weighted_erm: norm bound must be positive");
    const Quadratic q = assemble(xs, ys, w);
    const double lip = 2.0 * power_iteration_lmax(q.gram, q.dim) / q.normalizer;

    FitResult out;
    out.hypothesis.norm_bound = norm_bound;

    if (lip <= 0.0) {
        // Zero Gram matrix: the risk does not depend on beta.
        out.hypothesis.coefficients.assign(q.dim, 0.0);
        return out;
    }

    // Fast path: unconstrained minimizer inside the ball is the optimum.
    const auto unconstrained = pinv_solve(q.gram, q.dim, q.lin);
    if (allow_closed_form && norm1(unconstrained) <= norm_bound) {
        const double certificate = gradient_mapping_norm(q, unconstrained, norm_bound, lip);
        if (certificate <= kStationarityTol) {
            out.hypothesis.coefficients = unconstrained;
            out.closed_form = true;
            out.stationarity = certificate;
            return out;
        }
        // Certificate failed (near-singular Gram); fall through to iterate.
    }

    std::vector<double> beta =
        allow_closed_form ? project_l1(unconstrained, norm_bound)
                          : std::vector<double>(q.dim, 0.0);

    long it = 0;
    for (; it < kMaxIterations; ++it) {
        const auto grad = q.gradient(beta);
        std::vector<double> step(q.dim);
        for (int i = 0; i < q.dim; ++i) step[i] = beta[i] - grad[i] / lip;
        auto next = project_l1(step, norm_bound);
        std::vector<double> diff(q.dim);
        for (int i = 0; i < q.dim; ++i) diff[i] = beta[i] - next[i];
        const double mapping = lip * norm2(diff);
        beta = std::move(next);
        if (mapping <= kStopTol) {
            ++it;
            break;
        }
    }
    out.hypothesis.coefficients = beta;
    out.iterations = it;
    out.stationarity = gradient_mapping_norm(q, beta, norm_bound, lip);
    return out;
}

}  // namespace

FitResult weighted_erm(const std::vector<std::vector<double>>& xs,
                       const std::vector<double>& ys, const Weighting& w,
                       double norm_bound) {
    return fit_erm(xs, ys, w, norm_bound, true);
}

FitResult weighted_erm(const NetworkedSample& sample, const Weighting& w, double norm_bound) {
    return fit_erm(sample.xs, sample.ys, w, norm_bound, true);
}

FitResult weighted_erm_iterative(const std::vector<std::vector<double>>& xs,
                                 const std::vector<double>& ys, const Weighting& w,
                                 double norm_bound) {
    return fit_erm(xs, ys, w, norm_bound, false);
}

double empirical_weighted_risk(const Hypothesis& f, const std::vector<std::vector<double>>& xs,
                               const std::vector<double>& ys, const Weighting& w) {
    if (xs.size() != ys.size() || xs.size() != w.weights.size())
        throw DataError("empirical_weighted_risk: sizes disagree");
    if (!(w.normalizer > 0.0)) throw DataError("empirical_weighted_risk: zero normalizer");
    double s = 0.0;
    for (size_t n = 0; n < xs.size(); ++n) {
        const double r = f.predict(xs[n]) - ys[n];
        s += w.weights[n] * r * r;
    }
    return s / w.normalizer;
}

double empirical_weighted_risk(const Hypothesis& f, const NetworkedSample& sample,
                               const Weighting& w) {
    return empirical_weighted_risk(f, sample.xs, sample.ys, w);
}

RiskEstimate expected_risk_estimate(const Hypothesis& f, const GenerativeModel& model,
                                    long n_test, std::uint64_t seed) {
    if (n_test < 2) throw DataError("expected_risk_estimate: n_test must be >= 2");
    const CounterRng test_root = CounterRng(seed).split(stream::kTest);
    double sum = 0.0, sum_sq = 0.0;
    for (long n = 0; n < n_test; ++n) {
        const auto [x, y] = sample_example(model, test_root.split(static_cast<std::uint64_t>(n)));
        const double r = f.predict(x) - y;
        sum += r * r;
        sum_sq += r * r * r * r;
    }
    const double mean = sum / static_cast<double>(n_test);
    const double var = std::max(0.0, sum_sq / static_cast<double>(n_test) - mean * mean);
    return {mean, std::sqrt(var / static_cast<double>(n_test))};
}

RiskEstimate sample_error_estimate(const Hypothesis& fitted, const Hypothesis& proxy,
                                   const GenerativeModel& model, long n_test,
                                   std::uint64_t seed) {
    if (n_test < 2) throw DataError("sample_error_estimate: n_test must be >= 2");
    const CounterRng test_root = CounterRng(seed).split(stream::kTest);
    double sum = 0.0, sum_sq = 0.0;
    for (long n = 0; n < n_test; ++n) {
        const auto [x, y] = sample_example(model, test_root.split(static_cast<std::uint64_t>(n)));
        const double rf = fitted.predict(x) - y;
        const double rp = proxy.predict(x) - y;
        const double d = rf * rf - rp * rp;
        sum += d;
        sum_sq += d * d;
    }
    const double mean = sum / static_cast<double>(n_test);
    const double var = std::max(0.0, sum_sq / static_cast<double>(n_test) - mean * mean);
    return {mean, std::sqrt(var / static_cast<double>(n_test))};
}

}  // namespace netlearn
