#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "netlearn/model.hpp"
#include "netlearn/weighting.hpp"

namespace netlearn {

// Linear predictor x -> <beta, x> restricted to the l1 ball of radius
// norm_bound (the compact convex hypothesis class).
struct Hypothesis {
    std::vector<double> coefficients;
    double norm_bound = 0.0;

    double predict(const std::vector<double>& x) const;
};

struct FitResult {
    Hypothesis hypothesis;
    double stationarity = 0.0;  // gradient-mapping norm at the returned point
    long iterations = 0;
    bool closed_form = false;
};

// argmin over ||beta||_1 <= norm_bound of (1/normalizer) sum w_i (<beta,x_i> - y_i)^2.
// Closed-form weighted normal equations when the constraint is slack,
// projected gradient (fixed step 1/L) otherwise; both certify stationarity.
FitResult weighted_erm(const std::vector<std::vector<double>>& xs,
                       const std::vector<double>& ys, const Weighting& w,
                       double norm_bound);
FitResult weighted_erm(const NetworkedSample& sample, const Weighting& w, double norm_bound);

// Projected-gradient path only, skipping the closed-form shortcut; the two
// routes are cross-checked against each other in the test suite.
FitResult weighted_erm_iterative(const std::vector<std::vector<double>>& xs,
                                 const std::vector<double>& ys, const Weighting& w,
                                 double norm_bound);

double empirical_weighted_risk(const Hypothesis& f, const std::vector<std::vector<double>>& xs,
                               const std::vector<double>& ys, const Weighting& w);
double empirical_weighted_risk(const Hypothesis& f, const NetworkedSample& sample,
                               const Weighting& w);

struct RiskEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

// Monte Carlo estimate of the expected risk on n_test fresh i.i.d. draws
// (one vertex feature per partition per draw; nothing shared).
RiskEstimate expected_risk_estimate(const Hypothesis& f, const GenerativeModel& model,
                                    long n_test, std::uint64_t seed);

// E(f_hat) - E(proxy) estimated on a shared test draw (common random numbers).
RiskEstimate sample_error_estimate(const Hypothesis& fitted, const Hypothesis& proxy,
                                   const GenerativeModel& model, long n_test,
                                   std::uint64_t seed);

struct RiskReport {
    double empirical_weighted = 0.0;
    double empirical_unweighted = 0.0;
    std::optional<RiskEstimate> expected;
};

}  // namespace netlearn
