#include <gtest/gtest.h>

#include <cmath>

#include "mss/regression.hpp"

using mss::regression::fit_ols;

TEST(Ols, ConstantResponse) {
    std::vector<double> x{0, 1, 2, 3};
    std::vector<double> y(4, 5.0);
    auto fit = fit_ols(x, y);
    EXPECT_NEAR(fit.slope, 0.0, 1e-15);
    EXPECT_NEAR(fit.intercept, 5.0, 1e-15);
}

TEST(Ols, ExactLine) {
    std::vector<double> x{-2, 0, 1, 4, 7};
    std::vector<double> y;
    for (double v : x) {
        y.push_back(2 * v + 1);
    }
    auto fit = fit_ols(x, y);
    EXPECT_NEAR(fit.slope, 2.0, 1e-14);
    EXPECT_NEAR(fit.intercept, 1.0, 1e-14);
    EXPECT_NEAR(fit.predict(10), 21.0, 1e-13);
}

TEST(Ols, ResidualsOrthogonal) {
    std::vector<double> x{1, 2, 3, 4, 5, 6};
    std::vector<double> y{3, 1, 4, 1, 5, 9};
    auto fit = fit_ols(x, y);
    double sum = 0.0;
    double dot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double e = y[i] - fit.predict(x[i]);
        sum += e;
        dot += e * x[i];
    }
    EXPECT_NEAR(sum, 0.0, 1e-12);
    EXPECT_NEAR(dot, 0.0, 1e-12);
}

TEST(Ols, Errors) {
    std::vector<double> one{1};
    std::vector<double> two{1, 2};
    std::vector<double> same{3, 3};
    EXPECT_THROW(fit_ols(one, one), std::invalid_argument);
    EXPECT_THROW(fit_ols(two, one), std::invalid_argument);
    EXPECT_THROW(fit_ols(same, two), std::invalid_argument);
}

TEST(Glm, PoissonScoreVanishes) {
    std::vector<double> x{-1.0, -0.5, 0.0, 0.5, 1.0, 1.5};
    std::vector<double> y{0, 1, 1, 3, 2, 6};
    auto fit = mss::regression::fit_poisson(x, y, {}, {}, 100);
    ASSERT_TRUE(fit.converged);
    double s0 = 0.0;
    double s1 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double mu = std::exp(fit.c0 + fit.c1 * x[i]);
        s0 += y[i] - mu;
        s1 += (y[i] - mu) * x[i];
    }
    EXPECT_NEAR(s0, 0.0, 1e-8);
    EXPECT_NEAR(s1, 0.0, 1e-8);
}

TEST(Glm, LogisticFractionalTargets) {
    std::vector<double> x{-2, -1, 0, 1, 2};
    std::vector<double> z{0.1, 0.2, 0.5, 0.7, 0.9};
    auto fit = mss::regression::fit_logistic(x, z, {}, 100);
    ASSERT_TRUE(fit.converged);
    double s0 = 0.0;
    double s1 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double p = mss::regression::sigmoid(fit.c0 + fit.c1 * x[i]);
        s0 += z[i] - p;
        s1 += (z[i] - p) * x[i];
    }
    EXPECT_NEAR(s0, 0.0, 1e-8);
    EXPECT_NEAR(s1, 0.0, 1e-8);
}

TEST(Glm, SoftplusStable) {
    EXPECT_NEAR(mss::regression::softplus(800.0), 800.0, 1e-12);
    EXPECT_NEAR(mss::regression::softplus(-800.0), 0.0, 1e-300);
    EXPECT_NEAR(mss::regression::softplus(0.0), std::log(2.0), 1e-15);
}
