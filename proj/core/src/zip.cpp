#include "mss/zip.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mss/regression.hpp"

namespace mss {

namespace {

double log_pi_term(const ZipModel& m, double x) {
    // log pi and log(1 - pi) from the logit.
    const double eta = m.g0 + m.g1 * x;
    return -regression::softplus(-eta);
}

double log_one_minus_pi(const ZipModel& m, double x) {
    if (m.pi_fixed_zero) {
        return 0.0;
    }
    return -regression::softplus(m.g0 + m.g1 * x);
}

} // namespace

double ZipModel::pi(double x) const {
    return pi_fixed_zero ? 0.0 : regression::sigmoid(g0 + g1 * x);
}

double ZipModel::lambda(double x) const { return std::exp(b0 + b1 * x); }

double zip_log_likelihood(const ZipModel& model, std::span<const double> x,
                          std::span<const double> y) {
    double ll = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double log_lambda = model.b0 + model.b1 * x[i];
        const double lambda = std::exp(log_lambda);
        const double l1p = log_one_minus_pi(model, x[i]);
        if (y[i] == 0.0) {
            const double poisson_zero = l1p - lambda;
            if (model.pi_fixed_zero) {
                ll += poisson_zero;
            } else {
                // log(pi + (1 - pi) e^-lambda) via log-sum-exp.
                const double a = log_pi_term(model, x[i]);
                const double hi = std::max(a, poisson_zero);
                ll += hi + std::log(std::exp(a - hi) + std::exp(poisson_zero - hi));
            }
        } else {
            ll += l1p - lambda + y[i] * log_lambda - std::lgamma(y[i] + 1.0);
        }
    }
    return ll;
}

ZipModel fit_zip(std::span<const double> x, std::span<const double> y, const ZipOptions& options) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("fit_zip: length mismatch");
    }
    if (x.empty()) {
        throw std::invalid_argument("fit_zip: empty input");
    }
    std::size_t zeros = 0;
    double positive_sum = 0.0;
    for (double v : y) {
        if (v < 0.0 || std::floor(v) != v) {
            throw std::invalid_argument("fit_zip: ys must be non-negative integers");
        }
        if (v == 0.0) {
            ++zeros;
        } else {
            positive_sum += v;
        }
    }
    if (zeros == y.size()) {
        throw std::invalid_argument("degenerate: zero-inflation unidentifiable");
    }

    const double n = static_cast<double>(y.size());
    ZipModel model;
    model.pi_fixed_zero = options.freeze_pi_zero || zeros == 0;
    if (!model.pi_fixed_zero) {
        const double pi0 = 0.5 * static_cast<double>(zeros) / n;
        model.g0 = std::log(pi0 / (1.0 - pi0));
    }
    model.b0 = std::log(positive_sum / static_cast<double>(y.size() - zeros));

    std::vector<double> z(y.size(), 0.0);
    std::vector<double> w(y.size(), 1.0);
    double ll = zip_log_likelihood(model, x, y);
    model.ll_trace.push_back(ll);

    for (int it = 1; it <= options.max_iterations; ++it) {
        model.iterations = it;
        if (!model.pi_fixed_zero) {
            // E-step: posterior probability that each zero is structural.
            for (std::size_t i = 0; i < y.size(); ++i) {
                if (y[i] == 0.0) {
                    const double p = model.pi(x[i]);
                    const double poisson_zero = (1.0 - p) * std::exp(-model.lambda(x[i]));
                    z[i] = p / (p + poisson_zero);
                } else {
                    z[i] = 0.0;
                }
                w[i] = 1.0 - z[i];
            }
            auto logit = regression::fit_logistic(x, z, {model.g0, model.g1, 0, 0, false});
            model.g0 = logit.c0;
            model.g1 = logit.c1;
        }
        auto pois = regression::fit_poisson(x, y, w, {model.b0, model.b1, 0, 0, false});
        model.b0 = pois.c0;
        model.b1 = pois.c1;

        const double next = zip_log_likelihood(model, x, y);
        model.ll_trace.push_back(next);
        const double gain = next - ll;
        ll = next;
        if (gain < options.tolerance) {
            model.converged = true;
            break;
        }
    }
    model.log_likelihood = ll;
    return model;
}

} // namespace mss
