#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace mss {

enum class SvrKernel { Linear, Rbf };

std::string_view to_string(SvrKernel kernel);

struct SvrParams {
    SvrKernel kernel = SvrKernel::Linear;
    double c = 1.0;
    double epsilon = 0.1;
    /// RBF width; ignored for the linear kernel.
    double gamma = 1.0;
    /// Stop when the maximal KKT violation drops below this.
    double tolerance = 1e-9;
    int max_iterations = 1000000;
};

struct SvrModel {
    SvrParams params;
    /// beta_i = alpha_i - alpha*_i in [-c, c], one per training point.
    std::vector<double> dual_coefs;
    std::vector<double> train_xs;
    std::vector<double> train_ys;
    double bias = 0.0;
    int iterations = 0;
    bool converged = false;
    /// Maximal KKT violation at the returned solution.
    double kkt_residual = 0.0;
    double primal_objective = 0.0;
    double dual_objective = 0.0;

    double predict(double x) const;
    /// Training xs with non-zero dual coefficient.
    std::vector<double> support_xs() const;
    /// (primal - dual) / max(1, |primal|).
    double relative_duality_gap() const;
};

double kernel_value(const SvrParams& params, double a, double b);

/// epsilon-SVR by sequential minimal optimisation with second-order working
/// set selection. Throws std::invalid_argument when c <= 0, epsilon < 0,
/// gamma <= 0 for RBF, or fewer than 2 points.
SvrModel fit_svr(std::span<const double> x, std::span<const double> y, const SvrParams& params);

} // namespace mss
