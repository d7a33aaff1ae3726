#include "mss/regression.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mss::regression {

namespace {

struct Eval {
    double value = 0.0;
    double g0 = 0.0;
    double g1 = 0.0;
    // Negative Hessian entries (positive semi-definite for concave objectives).
    double h00 = 0.0;
    double h01 = 0.0;
    double h11 = 0.0;
};

template <class Objective>
GlmFit newton_ascent(Objective&& eval, GlmFit start, int max_iterations) {
    GlmFit fit = start;
    Eval cur = eval(fit.c0, fit.c1);
    fit.converged = false;
    for (int it = 1; it <= max_iterations; ++it) {
        fit.iterations = it;
        double det = cur.h00 * cur.h11 - cur.h01 * cur.h01;
        double d0 = 0.0;
        double d1 = 0.0;
        if (det > 1e-300 * (1.0 + cur.h00 * cur.h11)) {
            d0 = (cur.h11 * cur.g0 - cur.h01 * cur.g1) / det;
            d1 = (cur.h00 * cur.g1 - cur.h01 * cur.g0) / det;
        } else if (cur.h00 > 0.0) {
            // Degenerate curvature in the slope direction: intercept-only step.
            d0 = cur.g0 / cur.h00;
        } else {
            fit.converged = true;
            break;
        }
        double step = 1.0;
        bool improved = false;
        Eval next;
        for (int halving = 0; halving < 60; ++halving) {
            next = eval(fit.c0 + step * d0, fit.c1 + step * d1);
            if (std::isfinite(next.value) && next.value >= cur.value) {
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved) {
            fit.converged = true;
            break;
        }
        const double gain = next.value - cur.value;
        fit.c0 += step * d0;
        fit.c1 += step * d1;
        cur = next;
        if (gain <= 1e-13 * (1.0 + std::fabs(cur.value)) &&
            std::fabs(step * d0) + std::fabs(step * d1) < 1e-10) {
            fit.converged = true;
            break;
        }
        if (gain == 0.0) {
            fit.converged = true;
            break;
        }
    }
    fit.objective = cur.value;
    return fit;
}

void check_lengths(std::span<const double> x, std::span<const double> y, const char* who) {
    if (x.size() != y.size()) {
        throw std::invalid_argument(std::string(who) + ": length mismatch");
    }
    if (x.empty()) {
        throw std::invalid_argument(std::string(who) + ": empty input");
    }
}

} // namespace

double softplus(double v) {
    return v > 0.0 ? v + std::log1p(std::exp(-v)) : std::log1p(std::exp(v));
}

double sigmoid(double v) {
    if (v >= 0.0) {
        return 1.0 / (1.0 + std::exp(-v));
    }
    const double e = std::exp(v);
    return e / (1.0 + e);
}

LinearFit fit_ols(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("fit_ols: length mismatch");
    }
    if (x.size() < 2) {
        throw std::invalid_argument("fit_ols: need at least 2 points");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("fit_ols: all x values are equal");
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

GlmFit fit_poisson(std::span<const double> x, std::span<const double> y,
                   std::span<const double> weights, GlmFit start, int max_iterations) {
    check_lengths(x, y, "fit_poisson");
    if (!weights.empty() && weights.size() != x.size()) {
        throw std::invalid_argument("fit_poisson: weights length mismatch");
    }
    auto eval = [&](double c0, double c1) {
        Eval e;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double w = weights.empty() ? 1.0 : weights[i];
            if (w == 0.0) {
                continue;
            }
            const double eta = c0 + c1 * x[i];
            const double mu = std::exp(eta);
            e.value += w * (y[i] * eta - mu);
            const double r = w * (y[i] - mu);
            e.g0 += r;
            e.g1 += r * x[i];
            const double h = w * mu;
            e.h00 += h;
            e.h01 += h * x[i];
            e.h11 += h * x[i] * x[i];
        }
        return e;
    };
    return newton_ascent(eval, start, max_iterations);
}

GlmFit fit_logistic(std::span<const double> x, std::span<const double> z, GlmFit start,
                    int max_iterations) {
    check_lengths(x, z, "fit_logistic");
    auto eval = [&](double c0, double c1) {
        Eval e;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double eta = c0 + c1 * x[i];
            const double p = sigmoid(eta);
            e.value += z[i] * eta - softplus(eta);
            const double r = z[i] - p;
            e.g0 += r;
            e.g1 += r * x[i];
            const double h = p * (1.0 - p);
            e.h00 += h;
            e.h01 += h * x[i];
            e.h11 += h * x[i] * x[i];
        }
        return e;
    };
    return newton_ascent(eval, start, max_iterations);
}

} // namespace mss::regression
