#include "netlearn/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "netlearn/errors.hpp"

namespace netlearn {

CoveringModel CoveringModel::one() {
    CoveringModel m;
    m.table_ = {{0.0, 1.0}};
    return m;
}

CoveringModel CoveringModel::table(std::vector<std::pair<double, double>> radius_count) {
    if (radius_count.empty()) throw std::invalid_argument("covering table is empty");
    std::sort(radius_count.begin(), radius_count.end());
    for (size_t i = 0; i < radius_count.size(); ++i) {
        if (radius_count[i].second < 1.0)
            throw std::invalid_argument("covering counts must be >= 1");
        if (i > 0 && radius_count[i].second > radius_count[i - 1].second)
            throw std::invalid_argument("covering counts must be non-increasing in the radius");
    }
    CoveringModel m;
    m.table_ = std::move(radius_count);
    return m;
}

CoveringModel CoveringModel::linear_class(int dim, double coeff_bound) {
    if (dim < 1) throw std::invalid_argument("linear covering model needs dim >= 1");
    if (coeff_bound <= 0.0) throw std::invalid_argument("linear covering model needs R > 0");
    CoveringModel m;
    m.linear_ = true;
    m.dim_ = dim;
    m.coeff_bound_ = coeff_bound;
    return m;
}

double CoveringModel::log_count(double tau) const {
    if (!(tau > 0.0)) throw std::invalid_argument("covering radius must be positive");
    if (linear_) {
        const double disks = std::ceil(1.0 + coeff_bound_ / tau);
        return dim_ * std::log(disks);
    }
    // Largest anchor radius <= tau.
    const std::pair<double, double>* hit = nullptr;
    for (const auto& entry : table_) {
        if (entry.first <= tau) hit = &entry;
        else break;
    }
    if (!hit)
        throw DataError("covering model cannot evaluate at radius " + std::to_string(tau));
    return std::log(hit->second);
}

double CoveringModel::count(double tau) const {
    if (linear_) {
        if (!(tau > 0.0)) throw std::invalid_argument("covering radius must be positive");
        return std::pow(std::ceil(1.0 + coeff_bound_ / tau), dim_);
    }
    return std::exp(log_count(tau));
}

double covering_number_linear(const CoveringModel& model, double tau) {
    return model.count(tau);
}

void BoundInputs::validate() const {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (!(s > 0.0)) throw std::invalid_argument("s must be positive");
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (!(M > 0.0)) throw std::invalid_argument("M must be positive");
    if (sigma2 < 0.0) throw std::invalid_argument("sigma2 must be non-negative");
    if (sigma2 > M * M + 1e-9)
        throw std::invalid_argument("sigma2 exceeds M^2; range bound implies variance bound");
    if (chi_star && *chi_star < 1.0) throw std::invalid_argument("chi* must be >= 1");
    if (s > static_cast<double>(m) + 1e-9) throw std::invalid_argument("s must be <= m");
}

namespace {

// Shared core of the Bernstein-shaped tails, so the s = m identity between
// the i.i.d. and the weighted forms holds to the last ulp.
double bernstein_core(double effective, double epsilon, double sigma2, double M) {
    return std::exp(-(effective * epsilon * epsilon) /
                    (2.0 * (sigma2 + M * epsilon / 3.0)));
}

double require_chi(const BoundInputs& in) {
    if (!in.chi_star) throw DataError("chi* unavailable for this instance");
    return *in.chi_star;
}

// Shared core of the sample-error bounds, in log space.
double log_sample_error_core(const BoundInputs& in, double exponent_scale) {
    const double log_n = in.covering.log_count(in.epsilon / (12.0 * in.M));
    const double m4 = in.M * in.M * in.M * in.M;
    return log_n - exponent_scale * in.epsilon / m4;
}

}  // namespace

double bernstein_tail(const BoundInputs& in) {
    in.validate();
    return bernstein_core(static_cast<double>(in.m), in.epsilon, in.sigma2, in.M);
}

double chromatic_tail(const BoundInputs& in) {
    in.validate();
    const double chi = require_chi(in);
    return std::exp(-(8.0 * static_cast<double>(in.m) * in.epsilon * in.epsilon) /
                    (25.0 * chi * (in.sigma2 + in.M * in.epsilon / 3.0)));
}

double weighted_bernstein_tail(const BoundInputs& in) {
    in.validate();
    return bernstein_core(in.s, in.epsilon, in.sigma2, in.M);
}

double weighted_bennett_tail(double s, double epsilon_sum, double sigma2, double M) {
    if (!(s > 0.0)) throw std::invalid_argument("s must be positive");
    if (!(epsilon_sum >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
    if (!(M > 0.0)) throw std::invalid_argument("M must be positive");
    if (sigma2 < 0.0) throw std::invalid_argument("sigma2 must be non-negative");
    if (sigma2 == 0.0) return epsilon_sum > 0.0 ? 0.0 : 1.0;  // degenerate statistic
    const double a = M * epsilon_sum / (s * sigma2);
    const double h = (1.0 + a) * std::log1p(a) - a;
    return std::exp(-(s * sigma2 / (M * M)) * h);
}

double sample_error_bound_iid(const BoundInputs& in) {
    return std::exp(log_sample_error_bound_iid(in));
}

double sample_error_bound_eqw(const BoundInputs& in) {
    return std::exp(log_sample_error_bound_eqw(in));
}

double sample_error_bound_weighted(const BoundInputs& in) {
    return std::exp(log_sample_error_bound_weighted(in));
}

double log_sample_error_bound_iid(const BoundInputs& in) {
    in.validate();
    return log_sample_error_core(in, static_cast<double>(in.m) / 300.0);
}

double log_sample_error_bound_eqw(const BoundInputs& in) {
    in.validate();
    const double chi = require_chi(in);
    return log_sample_error_core(in, 3.0 * static_cast<double>(in.m) / (1400.0 * chi));
}

double log_sample_error_bound_weighted(const BoundInputs& in) {
    in.validate();
    return log_sample_error_core(in, in.s / 300.0);
}

double defect_single_bound(double s, double epsilon, double M) {
    if (!(s > 0.0)) throw std::invalid_argument("s must be positive");
    if (epsilon < 0.0) throw std::invalid_argument("epsilon must be non-negative");
    if (!(M > 0.0)) throw std::invalid_argument("M must be positive");
    const double m4 = M * M * M * M;
    return std::exp(-s * epsilon * epsilon / (2.0 * m4));
}

}  // namespace netlearn
