#include "mss/svr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mss {

namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

std::string_view to_string(SvrKernel kernel) {
    return kernel == SvrKernel::Linear ? "linear" : "rbf";
}

double kernel_value(const SvrParams& params, double a, double b) {
    if (params.kernel == SvrKernel::Linear) {
        return a * b;
    }
    const double d = a - b;
    return std::exp(-params.gamma * d * d);
}

double SvrModel::predict(double x) const {
    double f = bias;
    for (std::size_t i = 0; i < dual_coefs.size(); ++i) {
        if (dual_coefs[i] != 0.0) {
            f += dual_coefs[i] * kernel_value(params, train_xs[i], x);
        }
    }
    return f;
}

std::vector<double> SvrModel::support_xs() const {
    std::vector<double> out;
    for (std::size_t i = 0; i < dual_coefs.size(); ++i) {
        if (dual_coefs[i] != 0.0) {
            out.push_back(train_xs[i]);
        }
    }
    return out;
}

double SvrModel::relative_duality_gap() const {
    return (primal_objective - dual_objective) / std::max(1.0, std::fabs(primal_objective));
}

SvrModel fit_svr(std::span<const double> x, std::span<const double> y, const SvrParams& params) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("fit_svr: length mismatch");
    }
    if (x.size() < 2) {
        throw std::invalid_argument("fit_svr: need at least 2 points");
    }
    if (!(params.c > 0.0)) {
        throw std::invalid_argument("fit_svr: c must be positive");
    }
    if (!(params.epsilon >= 0.0)) {
        throw std::invalid_argument("fit_svr: epsilon must be non-negative");
    }
    if (params.kernel == SvrKernel::Rbf && !(params.gamma > 0.0)) {
        throw std::invalid_argument("fit_svr: gamma must be positive");
    }

    const std::size_t n = x.size();
    const std::size_t l = 2 * n;
    const double c = params.c;

    std::vector<double> k(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            k[i * n + j] = kernel_value(params, x[i], x[j]);
        }
    }
    auto idx = [n](std::size_t t) { return t < n ? t : t - n; };
    std::vector<double> sign(l);
    std::vector<double> p(l);
    for (std::size_t t = 0; t < l; ++t) {
        sign[t] = t < n ? 1.0 : -1.0;
        p[t] = t < n ? params.epsilon - y[t] : params.epsilon + y[t - n];
    }
    auto q = [&](std::size_t s, std::size_t t) {
        return sign[s] * sign[t] * k[idx(s) * n + idx(t)];
    };

    std::vector<double> alpha(l, 0.0);
    std::vector<double> grad(p);

    auto is_upper = [&](std::size_t t) { return alpha[t] >= c; };
    auto is_lower = [&](std::size_t t) { return alpha[t] <= 0.0; };

    SvrModel model;
    model.params = params;
    double violation = kInf;

    for (int it = 0; it < params.max_iterations; ++it) {
        // Working set selection using second-order information.
        double gmax = -kInf;
        double gmax2 = -kInf;
        std::size_t sel_i = l;
        for (std::size_t t = 0; t < l; ++t) {
            if (sign[t] > 0 ? !is_upper(t) : !is_lower(t)) {
                const double v = -sign[t] * grad[t];
                if (v >= gmax) {
                    if (v > gmax || sel_i == l) {
                        gmax = v;
                        sel_i = t;
                    }
                }
            }
        }
        std::size_t sel_j = l;
        double obj_min = kInf;
        for (std::size_t t = 0; t < l; ++t) {
            if (sign[t] > 0 ? !is_lower(t) : !is_upper(t)) {
                const double v = sign[t] * grad[t];
                gmax2 = std::max(gmax2, v);
                if (sel_i == l) {
                    continue;
                }
                const double b = gmax + v;
                if (b > 0.0) {
                    double a = q(sel_i, sel_i) + q(t, t) - 2.0 * sign[sel_i] * sign[t] * q(sel_i, t);
                    if (a <= 0.0) {
                        a = kTau;
                    }
                    const double cand = -(b * b) / a;
                    if (cand < obj_min) {
                        obj_min = cand;
                        sel_j = t;
                    }
                }
            }
        }
        violation = gmax + gmax2;
        model.iterations = it;
        if (violation < params.tolerance || sel_i == l || sel_j == l) {
            model.converged = true;
            break;
        }

        const std::size_t i = sel_i;
        const std::size_t j = sel_j;
        const double qii = q(i, i);
        const double qjj = q(j, j);
        const double qij = q(i, j);
        const double old_ai = alpha[i];
        const double old_aj = alpha[j];
        if (sign[i] != sign[j]) {
            double quad = qii + qjj + 2.0 * qij;
            if (quad <= 0.0) {
                quad = kTau;
            }
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0.0) {
                if (alpha[j] < 0.0) {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if (diff > 0.0) {
                if (alpha[i] > c) {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if (alpha[j] > c) {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            double quad = qii + qjj - 2.0 * qij;
            if (quad <= 0.0) {
                quad = kTau;
            }
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > c) {
                if (alpha[i] > c) {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if (alpha[j] < 0.0) {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if (sum > c) {
                if (alpha[j] > c) {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }
        const double dai = alpha[i] - old_ai;
        const double daj = alpha[j] - old_aj;
        for (std::size_t t = 0; t < l; ++t) {
            grad[t] += q(t, i) * dai + q(t, j) * daj;
        }
    }
    model.kkt_residual = std::max(violation, 0.0);

    // Offset from the free variables, or the midpoint of the feasible range.
    double ub = kInf;
    double lb = -kInf;
    double sum_free = 0.0;
    int n_free = 0;
    for (std::size_t t = 0; t < l; ++t) {
        const double yg = sign[t] * grad[t];
        if (is_upper(t)) {
            if (sign[t] < 0) {
                ub = std::min(ub, yg);
            } else {
                lb = std::max(lb, yg);
            }
        } else if (is_lower(t)) {
            if (sign[t] > 0) {
                ub = std::min(ub, yg);
            } else {
                lb = std::max(lb, yg);
            }
        } else {
            ++n_free;
            sum_free += yg;
        }
    }
    const double rho = n_free > 0 ? sum_free / n_free : 0.5 * (ub + lb);

    model.train_xs.assign(x.begin(), x.end());
    model.train_ys.assign(y.begin(), y.end());
    model.dual_coefs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        model.dual_coefs[i] = alpha[i] - alpha[i + n];
    }
    model.bias = -rho;

    double quad_term = 0.0;
    double abs_sum = 0.0;
    double lin_sum = 0.0;
    double hinge = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double f = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            f += model.dual_coefs[j] * k[j * n + i];
        }
        quad_term += model.dual_coefs[i] * f;
        abs_sum += std::fabs(model.dual_coefs[i]);
        lin_sum += y[i] * model.dual_coefs[i];
        hinge += std::max(0.0, std::fabs(y[i] - (f + model.bias)) - params.epsilon);
    }
    model.primal_objective = 0.5 * quad_term + c * hinge;
    model.dual_objective = -(0.5 * quad_term + params.epsilon * abs_sum - lin_sum);
    return model;
}

} // namespace mss
