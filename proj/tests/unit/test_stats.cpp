#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mss/corpus_files.hpp"
#include "mss/special.hpp"
#include "mss/stats.hpp"
#include "mss/timeline.hpp"

namespace {

// Two-tailed t tail by composite Simpson on the density, independent of the
// continued fraction.
double simpson_two_tailed(double r, int n) {
    const double df = n - 2;
    const double t = std::fabs(r) * std::sqrt(df / (1.0 - r * r));
    const double norm = std::exp(std::lgamma((df + 1) / 2) - std::lgamma(df / 2)) /
                        std::sqrt(df * std::numbers::pi);
    auto density = [&](double u) { return norm * std::pow(1.0 + u * u / df, -(df + 1) / 2); };
    const int steps = 200000;
    const double h = t / steps;
    double sum = density(0.0) + density(t);
    for (int i = 1; i < steps; ++i) {
        sum += density(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    const double central = sum * h / 3.0;
    return 1.0 - 2.0 * central;
}

} // namespace

TEST(IncompleteBeta, Endpoints) {
    EXPECT_EQ(mss::special::incomplete_beta(0.0, 2.0, 3.0), 0.0);
    EXPECT_EQ(mss::special::incomplete_beta(1.0, 2.0, 3.0), 1.0);
    EXPECT_THROW(mss::special::incomplete_beta(0.5, 0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(mss::special::incomplete_beta(1.5, 1.0, 1.0), std::invalid_argument);
}

TEST(IncompleteBeta, ClosedForms) {
    // I_x(a, 1) = x^a and I_x(1, b) = 1 - (1 - x)^b.
    for (double x : {0.05, 0.3, 0.7, 0.95}) {
        EXPECT_NEAR(mss::special::incomplete_beta(x, 3.5, 1.0), std::pow(x, 3.5), 1e-13);
        EXPECT_NEAR(mss::special::incomplete_beta(x, 1.0, 2.5), 1.0 - std::pow(1.0 - x, 2.5),
                    1e-13);
    }
}

TEST(IncompleteBeta, ReflectionSymmetry) {
    for (double a : {0.5, 1.0, 3.0, 7.0}) {
        for (double b : {0.5, 2.0, 5.0}) {
            for (double x = 0.05; x < 1.0; x += 0.1) {
                double lhs = mss::special::incomplete_beta(x, a, b);
                double rhs = 1.0 - mss::special::incomplete_beta(1.0 - x, b, a);
                EXPECT_NEAR(lhs, rhs, 1e-12) << a << " " << b << " " << x;
            }
        }
    }
}

TEST(StudentT, CauchyCase) {
    // df = 1 is Cauchy: F(t) = 1/2 + atan(t)/pi.
    for (double t : {-3.0, -0.5, 0.0, 1.0, 10.0}) {
        EXPECT_NEAR(mss::special::student_t_cdf(t, 1.0), 0.5 + std::atan(t) / std::numbers::pi,
                    1e-12);
    }
}

TEST(Pearson, PerfectLines) {
    std::vector<double> x{1, 2, 3, 4, 5};
    std::vector<double> up{3, 5, 7, 9, 11};
    std::vector<double> down{10, 8, 6, 4, 2};
    EXPECT_DOUBLE_EQ(mss::pearson(x, up), 1.0);
    EXPECT_DOUBLE_EQ(mss::pearson(x, down), -1.0);
}

TEST(Pearson, Errors) {
    std::vector<double> a{1, 2, 3};
    std::vector<double> b{1, 2};
    std::vector<double> flat{4, 4, 4};
    EXPECT_THROW(mss::pearson(a, b), std::invalid_argument);
    EXPECT_THROW(mss::pearson(b, b), std::invalid_argument);
    EXPECT_THROW(mss::pearson(a, flat), std::invalid_argument);
}

TEST(Pearson, SymmetricAndAffineInvariant) {
    std::mt19937 rng(7);
    std::normal_distribution<double> dist;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(12);
        std::vector<double> y(12);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = dist(rng);
            y[i] = 0.5 * x[i] + dist(rng);
        }
        double r = mss::pearson(x, y);
        EXPECT_NEAR(mss::pearson(y, x), r, 1e-14);
        std::vector<double> scaled(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            scaled[i] = 3.0 * x[i] - 11.0;
        }
        EXPECT_NEAR(mss::pearson(scaled, y), r, 1e-12);
    }
}

TEST(PValue, Extremes) {
    EXPECT_EQ(mss::p_value_two_tailed(0.0, 16), 1.0);
    EXPECT_EQ(mss::p_value_two_tailed(1.0, 16), 0.0);
    EXPECT_EQ(mss::p_value_two_tailed(-1.0, 16), 0.0);
    EXPECT_THROW(mss::p_value_two_tailed(0.5, 2), std::invalid_argument);
    EXPECT_THROW(mss::p_value_two_tailed(1.2, 10), std::invalid_argument);
}

TEST(PValue, MatchesIndependentIntegration) {
    for (int n : {5, 16, 51}) {
        for (double r : {-0.8, -0.342, 0.041, 0.3, 0.592, 0.9}) {
            EXPECT_NEAR(mss::p_value_two_tailed(r, n), simpson_two_tailed(r, n), 1e-9)
                << "r=" << r << " n=" << n;
        }
    }
    EXPECT_NEAR(mss::p_value_two_tailed(0.592, 16), 0.0157, 5e-5);
}

TEST(PValue, DecreasesWithStrength) {
    double previous = 1.0;
    for (double r = 0.05; r < 1.0; r += 0.05) {
        double p = mss::p_value_two_tailed(r, 16);
        EXPECT_LT(p, previous);
        EXPECT_DOUBLE_EQ(p, mss::p_value_two_tailed(-r, 16));
        previous = p;
    }
}

TEST(Correlate, PairwiseDeletion) {
    std::vector<std::optional<double>> x{1.0, 2.0, std::nullopt, 4.0, 5.0};
    std::vector<std::optional<double>> y{2.0, 4.0, 100.0, 8.0, std::nullopt};
    auto res = mss::correlate("f", x, y);
    EXPECT_EQ(res.n, 3);
    EXPECT_DOUBLE_EQ(res.r, 1.0);
}

TEST(Correlate, PublishedColumns) {
    auto bundle = mss::load_corpus(mss::default_data_dir());
    auto results = mss::correlation_table(mss::factor_records(bundle.timeline_rows));
    ASSERT_EQ(results.size(), mss::kFactorCount);
    for (const auto& res : results) {
        EXPECT_EQ(res.n, 16);
        EXPECT_NEAR(res.p_two_tailed, simpson_two_tailed(res.r, res.n), 1e-6) << res.factor;
    }
    EXPECT_NEAR(results[5].r, -0.342, 0.03);
    EXPECT_EQ(results[5].factor, "dist_police");
}

TEST(Probability, SchoolAndMassRates) {
    auto summary = mss::published_probability_summary();
    EXPECT_DOUBLE_EQ(mss::round_significant(summary.school.per_school_annual, 3), 1.45e-4);
    EXPECT_DOUBLE_EQ(mss::round_significant(summary.mass.per_school_annual, 3), 1.23e-5);
    EXPECT_EQ(std::llround(*summary.school.one_in()), 6880);
    EXPECT_EQ(std::llround(*summary.mass.one_in()), 81604);
    EXPECT_DOUBLE_EQ(mss::round_significant(summary.mass.lifetime_percent(), 2), 0.021);
}

TEST(Probability, LifetimeExposure) {
    EXPECT_DOUBLE_EQ(mss::lifetime_exposure(0.0, 17), 0.0);
    EXPECT_DOUBLE_EQ(mss::lifetime_exposure(1.0, 17), 1.0);
    EXPECT_NEAR(mss::lifetime_exposure(0.1, 2), 0.19, 1e-15);
    EXPECT_THROW(mss::lifetime_exposure(-0.1, 2), std::invalid_argument);
    EXPECT_THROW(mss::lifetime_exposure(0.1, 0), std::invalid_argument);
    // Union bound, tight for small p.
    double p = 1e-5;
    double life = mss::lifetime_exposure(p, 17);
    EXPECT_LE(life, 17 * p);
    EXPECT_NEAR(life, 17 * p, 17 * 16 / 2.0 * p * p * 1.01);
}

TEST(Probability, RejectsBadInputs) {
    EXPECT_THROW(mss::per_school_probability(-1, 26, 100), std::invalid_argument);
    EXPECT_THROW(mss::per_school_probability(1, 0, 100), std::invalid_argument);
    EXPECT_FALSE(mss::per_school_probability(0, 26, 100).one_in().has_value());
}

TEST(StateCorrelation, AbsentStatesCountZero) {
    std::map<std::string, int> mass{{"CA", 3}, {"TX", 2}};
    std::map<std::string, int> school{{"CA", 30}, {"TX", 20}, {"WY", 1}, {"OH", 5}};
    auto res = mss::state_correlation(mass, school);
    EXPECT_EQ(res.n, 4);
    EXPECT_GT(res.r, 0.9);
}
