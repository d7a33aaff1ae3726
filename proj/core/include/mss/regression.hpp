#pragma once

#include <span>

namespace mss::regression {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;

    double predict(double x) const { return intercept + slope * x; }
};

/// Closed-form least squares. Throws std::invalid_argument on length
/// mismatch, fewer than 2 points, or all x equal.
LinearFit fit_ols(std::span<const double> x, std::span<const double> y);

/// Coefficients of a two-parameter GLM, eta = c0 + c1 * x.
struct GlmFit {
    double c0 = 0.0;
    double c1 = 0.0;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Weighted Poisson regression with log link: maximizes
/// sum w_i (y_i eta_i - exp(eta_i)) by Newton steps with step halving,
/// starting from `start`. Empty `weights` means unit weights.
GlmFit fit_poisson(std::span<const double> x, std::span<const double> y,
                   std::span<const double> weights, GlmFit start, int max_iterations = 100);

/// Logistic regression on fractional targets z_i in [0, 1]: maximizes
/// sum z_i eta_i - log(1 + exp(eta_i)), same scheme as fit_poisson.
GlmFit fit_logistic(std::span<const double> x, std::span<const double> z, GlmFit start,
                    int max_iterations = 100);

/// log(1 + exp(v)) without overflow.
double softplus(double v);
double sigmoid(double v);

} // namespace mss::regression
