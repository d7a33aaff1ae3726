#include "mss/gametheory.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <stdexcept>
#include <thread>

namespace mss::game {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) {
        throw std::invalid_argument(message);
    }
}

int check_schedule(const Scenario& scenario, std::span<const int> bullets_per_min) {
    require(static_cast<int>(bullets_per_min.size()) == scenario.horizon_min,
            "schedule length " + std::to_string(bullets_per_min.size()) +
                " does not match horizon " + std::to_string(scenario.horizon_min));
    long total = 0;
    for (int b : bullets_per_min) {
        require(b >= 0, "schedule entries must be non-negative");
        total += b;
    }
    require(total <= scenario.bullet_budget, "schedule uses " + std::to_string(total) +
                                                 " bullets, budget is " +
                                                 std::to_string(scenario.bullet_budget));
    return static_cast<int>(total);
}

// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn) {
    std::vector<T> out(count);
    const std::size_t workers =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
    const std::size_t per = (count + workers - 1) / std::max<std::size_t>(workers, 1);
    std::vector<std::future<void>> jobs;
    for (std::size_t begin = 0; begin < count; begin += per) {
        const std::size_t end = std::min(count, begin + per);
        jobs.push_back(std::async(std::launch::async, [&, begin, end] {
            for (std::size_t i = begin; i < end; ++i) {
                out[i] = fn(i);
            }
        }));
    }
    for (auto& job : jobs) {
        job.get();
    }
    return out;
}

void enumerate_counts(int blocks, int remaining, std::vector<int>& current,
                      std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == blocks) {
        out.push_back(current);
        return;
    }
    for (int c = 0; c <= remaining; ++c) {
        current.push_back(c);
        enumerate_counts(blocks, remaining - c, current, out);
        current.pop_back();
    }
}

} // namespace

void Scenario::check() const {
    require(n_shooters >= 1, "n_shooters must be positive");
    require(bullet_budget >= 1, "bullet_budget must be positive");
    require(horizon_min >= 1, "horizon_min must be positive");
    require(t_attack >= 0, "t_attack must be non-negative");
    require(t_attack <= t_cop && t_cop <= horizon_min,
            "need t_attack <= t_cop <= horizon_min");
    require(!victims.empty(), "victims must not be empty");
    for (double v : victims) {
        require(std::isfinite(v) && v >= 0.0, "victim values must be finite and non-negative");
    }
    require(std::isfinite(material_cost_per_min) && material_cost_per_min >= 0.0,
            "material_cost_per_min must be non-negative");
    require(miller.i_high > 0.0 && std::isfinite(miller.i_high), "i_high must be positive");
    require(miller.i_low_decay > 0.0 && miller.i_low_decay < 1.0, "i_low_decay must lie in (0, 1)");
    require(stop_threshold > 0.0 && stop_threshold <= 1.0, "stop_threshold must lie in (0, 1]");
}

double Scenario::mean_victim_value() const {
    double sum = 0.0;
    for (double v : victims) {
        sum += v;
    }
    return sum / static_cast<double>(victims.size());
}

void DefenderPolicy::check() const {
    require(officers >= 1, "officers must be positive");
    require(weapon_level > 0.0 && std::isfinite(weapon_level), "weapon_level must be positive");
    require(stop_rate > 0.0 && stop_rate <= 1.0, "stop_rate must lie in (0, 1]");
    require(unexpected_cost_rate >= 0.0 && std::isfinite(unexpected_cost_rate),
            "unexpected_cost_rate must be non-negative");
}

double injury_scale(int t, const Scenario& scenario) {
    if (t < scenario.t_attack) {
        return 0.0;
    }
    if (t < scenario.t_cop) {
        return scenario.miller.i_high;
    }
    return scenario.miller.i_high * std::pow(scenario.miller.i_low_decay, t - scenario.t_cop);
}

double stop_probability_per_minute(const DefenderPolicy& policy) {
    const double per_officer = std::clamp(policy.stop_rate * policy.weapon_level, 0.0, 1.0);
    return std::clamp(1.0 - std::pow(1.0 - per_officer, policy.officers), 0.0, 1.0);
}

double cumulative_stop_probability(int t, const Scenario& scenario, const DefenderPolicy& policy) {
    if (t < scenario.t_cop) {
        return 0.0;
    }
    const double s = stop_probability_per_minute(policy);
    return 1.0 - std::pow(1.0 - s, t - scenario.t_cop + 1);
}

SimOutcome simulate(const Scenario& scenario, std::span<const int> bullets_per_min,
                    const DefenderPolicy& policy) {
    scenario.check();
    policy.check();
    SimOutcome out;
    out.bullets_used = check_schedule(scenario, bullets_per_min);
    out.casualty_trajectory.assign(static_cast<std::size_t>(scenario.horizon_min), 0.0);

    const double n = scenario.n_shooters;
    const double victim_value = scenario.mean_victim_value();
    double cumulative = 0.0;
    int t = 0;
    for (; t < scenario.horizon_min; ++t) {
        if (t >= scenario.t_attack) {
            cumulative += n * bullets_per_min[t] * injury_scale(t, scenario) * victim_value;
            ++out.active_minutes;
        }
        out.casualty_trajectory[t] = cumulative;
        if (t >= scenario.t_cop &&
            cumulative_stop_probability(t, scenario, policy) >= scenario.stop_threshold) {
            out.stop_time = t;
            break;
        }
    }
    for (int rest = t + 1; rest < scenario.horizon_min; ++rest) {
        out.casualty_trajectory[rest] = cumulative;
    }
    out.loss_v = cumulative;
    out.loss_m = n * scenario.material_cost_per_min * out.active_minutes;

    if (scenario.t_cop < scenario.horizon_min) {
        const int last = out.stop_time ? *out.stop_time : scenario.horizon_min - 1;
        out.engagement_minutes = last - scenario.t_cop + 1;
    }
    for (int tp = scenario.t_cop; tp < scenario.horizon_min; ++tp) {
        out.stop_contribution += n * cumulative_stop_probability(tp, scenario, policy);
    }
    out.unexpected_cost =
        policy.unexpected_cost_rate * policy.officers * out.engagement_minutes;
    out.defender_payoff = out.stop_contribution - out.unexpected_cost;
    return out;
}

MonteCarloSummary simulate_monte_carlo(const Scenario& scenario, std::span<const int> bullets_per_min,
                                       const DefenderPolicy& policy, int runs, std::uint64_t seed) {
    scenario.check();
    policy.check();
    check_schedule(scenario, bullets_per_min);
    require(runs >= 1, "runs must be positive");

    MonteCarloSummary summary;
    summary.runs = runs;
    summary.seed = seed;
    std::mt19937_64 rng(seed);
    const double s = stop_probability_per_minute(policy);
    const double n = scenario.n_shooters;
    const double victim_value = scenario.mean_victim_value();
    double stop_sum = 0.0;
    int stopped = 0;
    for (int r = 0; r < runs; ++r) {
        double loss_v = 0.0;
        int active = 0;
        std::optional<int> stop_time;
        for (int t = 0; t < scenario.horizon_min; ++t) {
            if (t >= scenario.t_attack) {
                loss_v += n * bullets_per_min[t] * injury_scale(t, scenario) * victim_value;
                ++active;
            }
            if (t >= scenario.t_cop && unit_draw(rng) < s) {
                stop_time = t;
                break;
            }
        }
        int engagement = 0;
        double contribution = 0.0;
        if (scenario.t_cop < scenario.horizon_min) {
            const int last = stop_time ? *stop_time : scenario.horizon_min - 1;
            engagement = last - scenario.t_cop + 1;
            if (stop_time) {
                contribution = n * (scenario.horizon_min - *stop_time);
            }
        }
        summary.mean_loss_v += loss_v;
        summary.mean_loss_m += n * scenario.material_cost_per_min * active;
        summary.mean_defender_payoff +=
            contribution - policy.unexpected_cost_rate * policy.officers * engagement;
        if (stop_time) {
            ++stopped;
            stop_sum += *stop_time;
        }
    }
    summary.mean_loss_v /= runs;
    summary.mean_loss_m /= runs;
    summary.mean_defender_payoff /= runs;
    summary.stopped_fraction = static_cast<double>(stopped) / runs;
    if (stopped > 0) {
        summary.mean_stop_time = stop_sum / stopped;
    }
    return summary;
}

void spread(std::vector<int>& schedule, int from, int to, int bullets) {
    const int length = to - from;
    if (length <= 0) {
        require(bullets == 0, "cannot spread bullets over an empty interval");
        return;
    }
    const int base = bullets / length;
    const int extra = bullets % length;
    for (int t = from; t < to; ++t) {
        schedule[t] += base + (t - from < extra ? 1 : 0);
    }
}

std::vector<int> uniform_schedule(const Scenario& scenario) {
    std::vector<int> schedule(static_cast<std::size_t>(scenario.horizon_min), 0);
    spread(schedule, 0, scenario.horizon_min, scenario.bullet_budget);
    return schedule;
}

std::vector<std::vector<int>> schedule_grid(const Scenario& scenario, const ScheduleGridSpec& spec) {
    require(spec.chunk >= 1, "grid chunk must be positive");
    require(spec.blocks >= 1 && spec.blocks <= scenario.horizon_min,
            "grid blocks must lie in [1, horizon]");
    const int max_chunks = scenario.bullet_budget / spec.chunk;
    std::vector<std::vector<int>> counts;
    std::vector<int> current;
    enumerate_counts(spec.blocks, max_chunks, current, counts);

    std::vector<std::vector<int>> grid;
    grid.reserve(counts.size());
    for (const auto& c : counts) {
        std::vector<int> schedule(static_cast<std::size_t>(scenario.horizon_min), 0);
        for (int k = 0; k < spec.blocks; ++k) {
            const int from = k * scenario.horizon_min / spec.blocks;
            const int to = (k + 1) * scenario.horizon_min / spec.blocks;
            spread(schedule, from, to, c[k] * spec.chunk);
        }
        grid.push_back(std::move(schedule));
    }
    return grid;
}

std::vector<DefenderPolicy> defender_grid(const DefenderPolicy& base, const DefenderGridSpec& spec) {
    require(spec.officer_cap >= 1, "officer cap must be positive");
    require(!spec.weapon_levels.empty(), "weapon levels must not be empty");
    std::vector<DefenderPolicy> grid;
    for (int officers = 1; officers <= spec.officer_cap; ++officers) {
        for (double w : spec.weapon_levels) {
            DefenderPolicy p = base;
            p.officers = officers;
            p.weapon_level = w;
            grid.push_back(p);
        }
    }
    return grid;
}

std::vector<SimOutcome> evaluate_schedules(const Scenario& scenario,
                                           std::span<const std::vector<int>> grid,
                                           const DefenderPolicy& policy) {
    return parallel_map<SimOutcome>(grid.size(),
                                    [&](std::size_t i) { return simulate(scenario, grid[i], policy); });
}

std::vector<SimOutcome> evaluate_policies(const Scenario& scenario, std::span<const int> schedule,
                                          std::span<const DefenderPolicy> grid) {
    return parallel_map<SimOutcome>(grid.size(),
                                    [&](std::size_t i) { return simulate(scenario, schedule, grid[i]); });
}

ShooterChoice shooter_best_response(const Scenario& scenario, const DefenderPolicy& policy,
                                    std::span<const std::vector<int>> grid) {
    require(!grid.empty(), "shooter grid is empty");
    const auto outcomes = evaluate_schedules(scenario, grid, policy);
    std::size_t best = 0;
    for (std::size_t i = 1; i < outcomes.size(); ++i) {
        const auto& a = outcomes[i];
        const auto& b = outcomes[best];
        if (a.shooter_loss() > b.shooter_loss() ||
            (a.shooter_loss() == b.shooter_loss() && a.bullets_used < b.bullets_used)) {
            best = i;
        }
    }
    return {best, grid[best], outcomes[best]};
}

DefenderChoice defender_best_response(const Scenario& scenario, std::span<const int> schedule,
                                      std::span<const DefenderPolicy> grid) {
    require(!grid.empty(), "defender grid is empty");
    const auto outcomes = evaluate_policies(scenario, schedule, grid);
    std::size_t best = 0;
    for (std::size_t i = 1; i < outcomes.size(); ++i) {
        if (outcomes[i].defender_payoff > outcomes[best].defender_payoff) {
            best = i;
        }
    }
    return {best, grid[best], outcomes[best]};
}

double casualty_rate(const Scenario& scenario, std::span<const int> schedule,
                     const DefenderPolicy& policy) {
    const auto out = simulate(scenario, schedule, policy);
    return out.loss_v / static_cast<double>(scenario.horizon_min - scenario.t_attack);
}

Calibration calibrate(const Scenario& scenario_template, std::span<const int> schedule,
                      const DefenderPolicy& policy, double target_rate, double tolerance) {
    require(target_rate > 0.0 && std::isfinite(target_rate), "calibration target must be positive");
    require(scenario_template.horizon_min > scenario_template.t_attack,
            "calibration needs a non-empty crime window");
    Scenario s = scenario_template;
    auto rate_at = [&](double i_high) {
        s.miller.i_high = i_high;
        return casualty_rate(s, schedule, policy);
    };
    double lo = 1e-9;
    double hi = 1e6;
    const double rate_lo = rate_at(lo);
    const double rate_hi = rate_at(hi);
    require(target_rate >= rate_lo && target_rate <= rate_hi,
            "calibration target outside the reachable range [" + std::to_string(rate_lo) + ", " +
                std::to_string(rate_hi) + "]");

    Calibration result;
    double mid = lo;
    double rate = rate_lo;
    for (int it = 1; it <= 300; ++it) {
        result.iterations = it;
        mid = 0.5 * (lo + hi);
        rate = rate_at(mid);
        if (std::fabs(rate - target_rate) <= tolerance) {
            break;
        }
        if (rate < target_rate) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    result.curve = scenario_template.miller;
    result.curve.i_high = mid;
    result.achieved_rate = rate;
    return result;
}

Scenario default_scenario() { return Scenario{}; }

DefenderPolicy default_policy() { return DefenderPolicy{}; }

} // namespace mss::game
