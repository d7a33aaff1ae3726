#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mss::game {

/// Injury scale I(t): 0 before t_attack, i_high until t_cop, then
/// i_high * i_low_decay^(t - t_cop).
struct MillerCurve {
    double i_high = 1.0;
    double i_low_decay = 0.5;
};

struct Scenario {
    int n_shooters = 1;
    int bullet_budget = 78;
    int horizon_min = 31;
    int t_attack = 0;
    int t_cop = 7;
    std::vector<double> victims{1.0};
    double material_cost_per_min = 0.0;
    MillerCurve miller;
    /// Expectation mode halts once the cumulative stop probability reaches this.
    double stop_threshold = 0.5;

    /// Throws std::invalid_argument describing the first violated invariant.
    void check() const;
    double mean_victim_value() const;
};

struct DefenderPolicy {
    int officers = 2;
    double weapon_level = 1.0;
    /// Per officer-minute stop probability at weapon level 1.
    double stop_rate = 0.015;
    /// Cost per officer per engagement minute.
    double unexpected_cost_rate = 0.0;

    void check() const;
};

struct SimOutcome {
    double loss_v = 0.0;
    double loss_m = 0.0;
    double defender_payoff = 0.0;
    double stop_contribution = 0.0;
    double unexpected_cost = 0.0;
    /// Minute in which the attack was stopped; absent when it ran to the horizon.
    std::optional<int> stop_time;
    int active_minutes = 0;
    int engagement_minutes = 0;
    int bullets_used = 0;
    /// Accumulated loss_v at the end of each minute.
    std::vector<double> casualty_trajectory;

    double shooter_loss() const { return loss_v + loss_m; }
};

double injury_scale(int t, const Scenario& scenario);

/// 1 - (1 - stop_rate * weapon_level)^officers, clamped to [0, 1].
double stop_probability_per_minute(const DefenderPolicy& policy);

/// Probability the attack has been stopped by the end of minute t.
double cumulative_stop_probability(int t, const Scenario& scenario, const DefenderPolicy& policy);

/// Deterministic expectation-mode simulation. Throws std::invalid_argument
/// when the schedule length differs from the horizon, a minute is negative,
/// or the schedule exceeds the bullet budget.
SimOutcome simulate(const Scenario& scenario, std::span<const int> bullets_per_min,
                    const DefenderPolicy& policy);

struct MonteCarloSummary {
    int runs = 0;
    std::uint64_t seed = 0;
    double mean_loss_v = 0.0;
    double mean_loss_m = 0.0;
    double mean_defender_payoff = 0.0;
    double stopped_fraction = 0.0;
    /// Mean stop minute over runs that were stopped.
    std::optional<double> mean_stop_time;
};

/// Stochastic stopping: each engaged minute the attack ends with the
/// per-minute stop probability. Seeded, so repeatable.
MonteCarloSummary simulate_monte_carlo(const Scenario& scenario, std::span<const int> bullets_per_min,
                                       const DefenderPolicy& policy, int runs, std::uint64_t seed);

/// Spreads `bullets` over minutes [from, to) as evenly as possible, earlier
/// minutes taking the remainder.
void spread(std::vector<int>& schedule, int from, int to, int bullets);

/// The budget spread evenly over the whole horizon.
std::vector<int> uniform_schedule(const Scenario& scenario);

/// Shooter grid: every way of placing up to floor(B / chunk) chunks of
/// `chunk` bullets into `blocks` equal slices of the horizon.
struct ScheduleGridSpec {
    int chunk = 6;
    int blocks = 4;
};

std::vector<std::vector<int>> schedule_grid(const Scenario& scenario, const ScheduleGridSpec& spec);

/// Defender grid: officers 1..officer_cap crossed with weapon levels.
struct DefenderGridSpec {
    int officer_cap = 32;
    std::vector<double> weapon_levels{0.5, 1.0, 1.5, 2.0};
};

std::vector<DefenderPolicy> defender_grid(const DefenderPolicy& base, const DefenderGridSpec& spec);

/// Outcomes for each grid element, in grid order. Evaluated concurrently.
std::vector<SimOutcome> evaluate_schedules(const Scenario& scenario,
                                           std::span<const std::vector<int>> grid,
                                           const DefenderPolicy& policy);
std::vector<SimOutcome> evaluate_policies(const Scenario& scenario, std::span<const int> schedule,
                                          std::span<const DefenderPolicy> grid);

struct ShooterChoice {
    std::size_t index = 0;
    std::vector<int> schedule;
    SimOutcome outcome;
};

struct DefenderChoice {
    std::size_t index = 0;
    DefenderPolicy policy;
    SimOutcome outcome;
};

/// Maximizes loss_v + loss_m, then minimizes bullets used, then takes the
/// earliest grid index. Throws on an empty grid.
ShooterChoice shooter_best_response(const Scenario& scenario, const DefenderPolicy& policy,
                                    std::span<const std::vector<int>> grid);

/// Maximizes defender_payoff, ties to the earliest grid index.
DefenderChoice defender_best_response(const Scenario& scenario, std::span<const int> schedule,
                                      std::span<const DefenderPolicy> grid);

struct Calibration {
    MillerCurve curve;
    double achieved_rate = 0.0;
    int iterations = 0;
};

/// Casualties per minute over the crime window (t_attack to horizon).
double casualty_rate(const Scenario& scenario, std::span<const int> schedule,
                     const DefenderPolicy& policy);

/// Bisection on i_high in [1e-9, 1e6] so that casualty_rate matches
/// target_rate. Throws std::invalid_argument for a non-positive target or
/// one outside the reachable range.
Calibration calibrate(const Scenario& scenario_template, std::span<const int> schedule,
                      const DefenderPolicy& policy, double target_rate, double tolerance = 1e-9);

/// Default template: 31-minute window, police at minute 7, 78 bullets.
Scenario default_scenario();
DefenderPolicy default_policy();

} // namespace mss::game
