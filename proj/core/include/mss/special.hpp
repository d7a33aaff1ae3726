#pragma once

namespace mss::special {

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
///
/// Evaluated with the modified Lentz continued fraction at relative
/// tolerance 1e-12, switching to 1 - I_{1-x}(b, a) when x exceeds
/// (a + 1) / (a + b + 2) so the fraction converges quickly.
double incomplete_beta(double x, double a, double b);

/// CDF of Student's t distribution with `df` > 0 degrees of freedom.
double student_t_cdf(double t, double df);

} // namespace mss::special
