#pragma once

#include <span>
#include <vector>

namespace mss {

struct ZipOptions {
    int max_iterations = 500;
    double tolerance = 1e-8;
    /// Fix pi at 0, which reduces the fit to plain Poisson regression.
    bool freeze_pi_zero = false;
};

/// Zero-inflated Poisson regression on one covariate:
///   logit pi(x) = g0 + g1 x,  log lambda(x) = b0 + b1 x.
struct ZipModel {
    double g0 = 0.0;
    double g1 = 0.0;
    double b0 = 0.0;
    double b1 = 0.0;
    /// True when pi is held at 0 (no zeros observed, or frozen by option).
    bool pi_fixed_zero = false;
    double log_likelihood = 0.0;
    bool converged = false;
    int iterations = 0;
    /// Log-likelihood after initialisation and after every EM iteration.
    std::vector<double> ll_trace;

    double pi(double x) const;
    double lambda(double x) const;
    double mean(double x) const { return (1.0 - pi(x)) * lambda(x); }
};

/// ZIP log-likelihood of the data under the model's coefficients.
double zip_log_likelihood(const ZipModel& model, std::span<const double> x,
                          std::span<const double> y);

/// Maximum likelihood by EM. ys must be non-negative integers with at least
/// one positive value; an all-zero ys throws std::invalid_argument.
ZipModel fit_zip(std::span<const double> x, std::span<const double> y,
                 const ZipOptions& options = {});

} // namespace mss
