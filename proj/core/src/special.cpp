#include "mss/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mss::special {

namespace {

constexpr double kTolerance = 1e-12;
constexpr double kTiny = 1e-300;
constexpr int kMaxIterations = 10000;

// Continued fraction for I_x(a, b) without the front factor.
double beta_fraction(double x, double a, double b) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;

    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) {
        d = kTiny;
    }
    d = 1.0 / d;
    double h = d;

    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        // Even step.
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        h *= d * c;
        // Odd step.
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kTolerance) {
            return h;
        }
    }
    throw std::runtime_error("incomplete_beta: continued fraction did not converge");
}

} // namespace

double incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::invalid_argument("incomplete_beta: a and b must be positive");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::invalid_argument("incomplete_beta: x must lie in [0, 1]");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (x == 1.0) {
        return 1.0;
    }
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return std::exp(log_front) * beta_fraction(x, a, b) / a;
    }
    return 1.0 - std::exp(log_front) * beta_fraction(1.0 - x, b, a) / b;
}

double student_t_cdf(double t, double df) {
    if (!(df > 0.0)) {
        throw std::invalid_argument("student_t_cdf: df must be positive");
    }
    if (std::isinf(t)) {
        return t > 0 ? 1.0 : 0.0;
    }
    // P(|T| > |t|) = I_{df/(df+t^2)}(df/2, 1/2)
    const double tail = incomplete_beta(df / (df + t * t), 0.5 * df, 0.5);
    return t >= 0 ? 1.0 - 0.5 * tail : 0.5 * tail;
}

} // namespace mss::special
