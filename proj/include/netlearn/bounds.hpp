#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace netlearn {

// Capacity model for the hypothesis class. Two kinds:
//  - explicit table of (radius, count) anchors, counts non-increasing in the
//    radius; a query at tau uses the anchor with the largest radius <= tau
//    (a valid upper bound by monotonicity) and fails below the smallest;
//  - linear class: N(tau) = ceil(1 + R/tau)^d, the sup-norm grid cover of
//    the l1 coefficient ball over features in [0,1]^d.
class CoveringModel {
public:
    static CoveringModel one();  // N == 1 at every radius
    static CoveringModel table(std::vector<std::pair<double, double>> radius_count);
    static CoveringModel linear_class(int dim, double coeff_bound);

    double log_count(double tau) const;
    double count(double tau) const;

private:
    CoveringModel() = default;

    bool linear_ = false;
    int dim_ = 0;
    double coeff_bound_ = 0.0;
    std::vector<std::pair<double, double>> table_;  // (radius, count), radius ascending
};

double covering_number_linear(const CoveringModel& model, double tau);

struct BoundInputs {
    long m = 1;                     // sample size
    double s = 1.0;                 // s-value (or matching size)
    double epsilon = 0.0;           // deviation
    double sigma2 = 0.0;            // variance of the statistic
    double M = 1.0;                 // range bound
    std::optional<double> chi_star; // fractional chromatic number when known
    CoveringModel covering = CoveringModel::one();

    void validate() const;  // throws std::invalid_argument
};

// Tail bounds for the deviation of an average; all return values in (0, 1].
double bernstein_tail(const BoundInputs& in);           // exp(-m e^2 / (2(s2 + Me/3)))
double chromatic_tail(const BoundInputs& in);           // exp(-8m e^2 / (25 chi* (s2 + Me/3)))
double weighted_bernstein_tail(const BoundInputs& in);  // exp(-s e^2 / (2(s2 + Me/3)))

// Bennett form for the deviation of the weighted SUM sum w_i xi;
// sigma2 == 0 degenerates to probability 0 for epsilon_sum > 0.
double weighted_bennett_tail(double s, double epsilon_sum, double sigma2, double M);

// Sample-error bounds N(H, e/12M) * exp(-count * e / (300 or 1400/3 * M^4)).
// These can exceed 1; the log variants are exact in log space.
double sample_error_bound_iid(const BoundInputs& in);
double sample_error_bound_eqw(const BoundInputs& in);
double sample_error_bound_weighted(const BoundInputs& in);
double log_sample_error_bound_iid(const BoundInputs& in);
double log_sample_error_bound_eqw(const BoundInputs& in);
double log_sample_error_bound_weighted(const BoundInputs& in);

// Failure probability that a single M-bounded f defects by epsilon.
double defect_single_bound(double s, double epsilon, double M);

}  // namespace netlearn
