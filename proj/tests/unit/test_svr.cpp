#include <gtest/gtest.h>

#include <cmath>

#include "mss/svr.hpp"

namespace {

std::vector<double> grid(int n) {
    std::vector<double> x;
    for (int i = 0; i < n; ++i) {
        x.push_back(i - (n - 1) / 2.0);
    }
    return x;
}

} // namespace

TEST(Svr, LinearRecoversLineInsideTube) {
    auto x = grid(11);
    std::vector<double> y;
    for (double v : x) {
        y.push_back(2.0 * v);
    }
    mss::SvrParams p;
    p.c = 100.0;
    p.epsilon = 0.01;
    auto model = mss::fit_svr(x, y, p);
    for (double v : x) {
        EXPECT_NEAR(model.predict(v), 2.0 * v, 0.01 + 1e-6);
    }
}

TEST(Svr, ConstantResponse) {
    auto x = grid(8);
    std::vector<double> y(x.size(), 5.0);
    for (auto kernel : {mss::SvrKernel::Linear, mss::SvrKernel::Rbf}) {
        mss::SvrParams p;
        p.kernel = kernel;
        auto model = mss::fit_svr(x, y, p);
        EXPECT_NEAR(model.predict(0.3), 5.0, 0.1 + 1e-9);
        EXPECT_TRUE(model.support_xs().empty());
    }
}

TEST(Svr, OptimalityCertificates) {
    auto x = grid(26);
    std::vector<double> y;
    for (std::size_t i = 0; i < x.size(); ++i) {
        y.push_back(std::fmod(i * 7.0, 5.0) + 0.1 * x[i]);
    }
    for (auto kernel : {mss::SvrKernel::Linear, mss::SvrKernel::Rbf}) {
        mss::SvrParams p;
        p.kernel = kernel;
        p.gamma = 0.02;
        auto model = mss::fit_svr(x, y, p);
        EXPECT_TRUE(model.converged);
        EXPECT_LT(model.kkt_residual, 1e-6);
        EXPECT_LT(std::fabs(model.relative_duality_gap()), 1e-6);
        double sum = 0.0;
        for (double b : model.dual_coefs) {
            EXPECT_LE(std::fabs(b), p.c + 1e-12);
            sum += b;
        }
        EXPECT_NEAR(sum, 0.0, 1e-9);
    }
}

TEST(Svr, RejectsBadParameters) {
    auto x = grid(4);
    std::vector<double> y{1, 2, 3, 4};
    mss::SvrParams p;
    p.c = 0.0;
    EXPECT_THROW(mss::fit_svr(x, y, p), std::invalid_argument);
    p = {};
    p.epsilon = -1.0;
    EXPECT_THROW(mss::fit_svr(x, y, p), std::invalid_argument);
    p = {};
    p.kernel = mss::SvrKernel::Rbf;
    p.gamma = 0.0;
    EXPECT_THROW(mss::fit_svr(x, y, p), std::invalid_argument);
    std::vector<double> one{1};
    EXPECT_THROW(mss::fit_svr(one, one, {}), std::invalid_argument);
}

TEST(Svr, KernelValues) {
    mss::SvrParams p;
    EXPECT_DOUBLE_EQ(mss::kernel_value(p, 2.0, 3.0), 6.0);
    p.kernel = mss::SvrKernel::Rbf;
    p.gamma = 0.5;
    EXPECT_DOUBLE_EQ(mss::kernel_value(p, 1.0, 3.0), std::exp(-2.0));
}
