#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mss/gametheory.hpp"

namespace game = mss::game;

namespace {

game::Scenario short_scenario() {
    game::Scenario s;
    s.horizon_min = 10;
    s.t_cop = 4;
    s.bullet_budget = 20;
    return s;
}

// Sequential scan from the back; >= keeps the earliest index on ties.
std::size_t reverse_shooter_argmax(const game::Scenario& s, const game::DefenderPolicy& p,
                                   const std::vector<std::vector<int>>& grid) {
    std::size_t best = grid.size() - 1;
    auto best_out = game::simulate(s, grid[best], p);
    for (std::size_t k = grid.size() - 1; k-- > 0;) {
        auto out = game::simulate(s, grid[k], p);
        bool better = out.shooter_loss() > best_out.shooter_loss() ||
                      (out.shooter_loss() == best_out.shooter_loss() &&
                       out.bullets_used <= best_out.bullets_used);
        if (better) {
            best = k;
            best_out = out;
        }
    }
    return best;
}

std::size_t reverse_defender_argmax(const game::Scenario& s, const std::vector<int>& schedule,
                                    const std::vector<game::DefenderPolicy>& grid) {
    std::size_t best = grid.size() - 1;
    double best_payoff = game::simulate(s, schedule, grid[best]).defender_payoff;
    for (std::size_t k = grid.size() - 1; k-- > 0;) {
        double payoff = game::simulate(s, schedule, grid[k]).defender_payoff;
        if (payoff >= best_payoff) {
            best = k;
            best_payoff = payoff;
        }
    }
    return best;
}

} // namespace

TEST(InjuryScale, Piecewise) {
    game::Scenario s;
    s.t_attack = 2;
    s.t_cop = 5;
    s.miller = {1.25, 0.5};
    EXPECT_EQ(game::injury_scale(1, s), 0.0);
    EXPECT_EQ(game::injury_scale(2, s), 1.25);
    EXPECT_EQ(game::injury_scale(4, s), 1.25);
    EXPECT_EQ(game::injury_scale(5, s), 1.25);
    EXPECT_EQ(game::injury_scale(6, s), 0.625);
    EXPECT_EQ(game::injury_scale(8, s), 1.25 / 8);
}

TEST(Simulate, ZeroScheduleHarmsNobody) {
    auto s = short_scenario();
    std::vector<int> none(10, 0);
    auto out = game::simulate(s, none, {});
    EXPECT_EQ(out.loss_v, 0.0);
    EXPECT_EQ(out.bullets_used, 0);
}

TEST(Simulate, BulletsBeforePoliceCountFully) {
    auto s = short_scenario();
    std::vector<int> schedule(10, 0);
    schedule[0] = 3;
    schedule[2] = 4;
    auto out = game::simulate(s, schedule, {});
    EXPECT_DOUBLE_EQ(out.loss_v, 7.0);
    EXPECT_DOUBLE_EQ(out.casualty_trajectory.back(), 7.0);
}

TEST(Simulate, PoliceAtStartFlattensTrajectory) {
    auto s = short_scenario();
    s.t_cop = 0;
    game::DefenderPolicy p;
    p.stop_rate = 1.0;
    std::vector<int> schedule(10, 2);
    auto out = game::simulate(s, schedule, p);
    ASSERT_TRUE(out.stop_time);
    EXPECT_EQ(*out.stop_time, 0);
    for (double v : out.casualty_trajectory) {
        EXPECT_DOUBLE_EQ(v, 2.0);
    }
}

TEST(Simulate, RejectsBadSchedules) {
    auto s = short_scenario();
    std::vector<int> wrong_length(9, 0);
    std::vector<int> negative(10, 0);
    negative[3] = -1;
    std::vector<int> over(10, 3);
    EXPECT_THROW(game::simulate(s, wrong_length, {}), std::invalid_argument);
    EXPECT_THROW(game::simulate(s, negative, {}), std::invalid_argument);
    EXPECT_THROW(game::simulate(s, over, {}), std::invalid_argument);
}

TEST(Simulate, DefaultTemplate) {
    auto s = game::default_scenario();
    auto out = game::simulate(s, game::uniform_schedule(s), game::default_policy());
    ASSERT_TRUE(out.stop_time);
    EXPECT_EQ(*out.stop_time, 29);
    EXPECT_EQ(out.bullets_used, 78);
    EXPECT_NEAR(out.loss_v, 26.996, 1e-3);
}

TEST(Simulate, StopProbability) {
    game::DefenderPolicy p;
    p.officers = 3;
    p.stop_rate = 0.1;
    p.weapon_level = 2.0;
    EXPECT_NEAR(game::stop_probability_per_minute(p), 1.0 - std::pow(0.8, 3), 1e-15);
}

TEST(Grids, Sizes) {
    auto s = game::default_scenario();
    auto grid = game::schedule_grid(s, {});
    EXPECT_EQ(grid.size(), 2380u);
    for (const auto& g : grid) {
        int used = 0;
        for (int b : g) {
            used += b;
        }
        EXPECT_LE(used, s.bullet_budget);
        EXPECT_EQ(used % 6, 0);
    }
    EXPECT_EQ(game::defender_grid({}, {}).size(), 128u);
}

TEST(BestResponse, ShooterMatchesReverseEnumeration) {
    auto s = game::default_scenario();
    auto grid = game::schedule_grid(s, {});
    ASSERT_GE(grid.size(), 1000u);
    for (int officers : {1, 2, 8}) {
        game::DefenderPolicy p;
        p.officers = officers;
        auto choice = game::shooter_best_response(s, p, grid);
        EXPECT_EQ(choice.index, reverse_shooter_argmax(s, p, grid)) << officers;
        EXPECT_EQ(choice.schedule, grid[choice.index]);
    }
}

TEST(BestResponse, DefenderMatchesReverseEnumeration) {
    auto s = game::default_scenario();
    game::DefenderPolicy base;
    base.unexpected_cost_rate = 0.02;
    game::DefenderGridSpec spec;
    spec.officer_cap = 250;
    auto grid = game::defender_grid(base, spec);
    ASSERT_GE(grid.size(), 1000u);
    auto schedule = game::uniform_schedule(s);
    auto choice = game::defender_best_response(s, schedule, grid);
    EXPECT_EQ(choice.index, reverse_defender_argmax(s, schedule, grid));
}

TEST(BestResponse, FreeOfficersAlwaysHelp) {
    auto s = game::default_scenario();
    auto schedule = game::uniform_schedule(s);
    double previous = -1.0;
    for (int officers = 1; officers <= 32; ++officers) {
        game::DefenderPolicy p;
        p.officers = officers;
        double payoff = game::simulate(s, schedule, p).defender_payoff;
        EXPECT_GE(payoff, previous);
        previous = payoff;
    }
    auto grid = game::defender_grid({}, {});
    auto choice = game::defender_best_response(s, schedule, grid);
    EXPECT_EQ(choice.policy.officers, 32);
    EXPECT_EQ(choice.policy.weapon_level, 2.0);
}

TEST(BestResponse, EmptyGridThrows) {
    auto s = game::default_scenario();
    std::vector<std::vector<int>> none;
    EXPECT_THROW(game::shooter_best_response(s, {}, none), std::invalid_argument);
}

TEST(Monotonicity, RandomizedSweep) {
    std::mt19937_64 rng(20240904);
    std::uniform_int_distribution<int> horizon_d(5, 60);
    std::uniform_int_distribution<int> budget_d(1, 200);
    std::uniform_real_distribution<double> unit(0.05, 0.95);
    for (int trial = 0; trial < 100; ++trial) {
        game::Scenario s;
        s.horizon_min = horizon_d(rng);
        s.t_attack = std::uniform_int_distribution<int>(0, s.horizon_min / 4)(rng);
        s.t_cop = s.t_attack;
        s.bullet_budget = budget_d(rng);
        s.miller = {0.2 + 2.0 * unit(rng), unit(rng)};
        s.stop_threshold = unit(rng);
        game::DefenderPolicy p;
        p.officers = std::uniform_int_distribution<int>(1, 10)(rng);
        p.stop_rate = 0.2 * unit(rng);

        std::vector<int> schedule(static_cast<std::size_t>(s.horizon_min), 0);
        game::spread(schedule, s.t_attack, s.horizon_min, s.bullet_budget);
        double previous = -1.0;
        for (int t_cop = s.t_attack; t_cop <= s.horizon_min; ++t_cop) {
            s.t_cop = t_cop;
            double loss = game::simulate(s, schedule, p).loss_v;
            EXPECT_GE(loss, previous - 1e-12) << "trial " << trial << " t_cop " << t_cop;
            previous = loss;
        }

        s.t_cop = std::uniform_int_distribution<int>(s.t_attack, s.horizon_min)(rng);
        previous = -1.0;
        for (int budget = 1; budget <= 200; budget += 7) {
            s.bullet_budget = budget;
            double loss = game::simulate(s, game::uniform_schedule(s), p).loss_v;
            EXPECT_GE(loss, previous - 1e-12) << "trial " << trial << " budget " << budget;
            previous = loss;
        }
    }
}

TEST(Calibrate, HitsTargetRate) {
    auto s = game::default_scenario();
    auto schedule = game::uniform_schedule(s);
    auto cal = game::calibrate(s, schedule, game::default_policy(), 0.639);
    EXPECT_NEAR(cal.achieved_rate, 0.639, 1e-6);
    s.miller = cal.curve;
    EXPECT_NEAR(game::casualty_rate(s, schedule, game::default_policy()), 0.639, 1e-6);
}

TEST(Calibrate, FixedPoint) {
    auto s = game::default_scenario();
    s.miller.i_high = 0.42;
    auto schedule = game::uniform_schedule(s);
    double rate = game::casualty_rate(s, schedule, game::default_policy());
    auto cal = game::calibrate(s, schedule, game::default_policy(), rate, 1e-12);
    EXPECT_NEAR(cal.curve.i_high, 0.42, 1e-9);
}

TEST(Calibrate, RejectsUnreachableTargets) {
    auto s = game::default_scenario();
    auto schedule = game::uniform_schedule(s);
    EXPECT_THROW(game::calibrate(s, schedule, {}, 0.0), std::invalid_argument);
    std::vector<int> none(31, 0);
    EXPECT_THROW(game::calibrate(s, none, {}, 0.5), std::invalid_argument);
}

TEST(MonteCarlo, SeededRunsRepeat) {
    auto s = game::default_scenario();
    auto schedule = game::uniform_schedule(s);
    auto a = game::simulate_monte_carlo(s, schedule, {}, 500, 99);
    auto b = game::simulate_monte_carlo(s, schedule, {}, 500, 99);
    EXPECT_EQ(a.mean_loss_v, b.mean_loss_v);
    EXPECT_EQ(a.stopped_fraction, b.stopped_fraction);
    auto c = game::simulate_monte_carlo(s, schedule, {}, 500, 100);
    EXPECT_NE(a.mean_loss_v, c.mean_loss_v);
}

TEST(MonteCarlo, CertainStopMatchesExpectation) {
    auto s = game::default_scenario();
    game::DefenderPolicy p;
    p.stop_rate = 1.0;
    auto schedule = game::uniform_schedule(s);
    auto mc = game::simulate_monte_carlo(s, schedule, p, 50, 1);
    auto ex = game::simulate(s, schedule, p);
    EXPECT_DOUBLE_EQ(mc.mean_loss_v, ex.loss_v);
    EXPECT_DOUBLE_EQ(mc.stopped_fraction, 1.0);
}
