#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mss/gametheory.hpp"

namespace mss::game {

enum class SimMode { Expectation, MonteCarlo };

/// Everything a scenario file can set. Keys (one `key = value` per line,
/// `#` starts a comment):
///   n_shooters bullet_budget horizon_min t_attack t_cop victims
///   material_cost_per_min i_high i_low_decay stop_threshold
///   officers weapon_level stop_rate unexpected_cost_rate
///   schedule (comma list, or "uniform")
///   grid_chunk grid_blocks officer_cap weapon_levels
///   mode (expectation|monte_carlo) seed runs
struct ScenarioFile {
    Scenario scenario;
    DefenderPolicy policy;
    std::optional<std::vector<int>> schedule;
    ScheduleGridSpec shooter_grid;
    DefenderGridSpec defender_grid;
    SimMode mode = SimMode::Expectation;
    std::uint64_t seed = 0;
    int runs = 1000;

    /// The explicit schedule, or the uniform spread of the budget.
    std::vector<int> resolved_schedule() const;
};

/// Throws std::invalid_argument naming the line on unknown keys or bad values.
ScenarioFile parse_scenario_file(std::string_view text);
std::string serialize_scenario_file(const ScenarioFile& file);

std::string_view to_string(SimMode mode);
std::optional<SimMode> sim_mode_from_string(std::string_view text);

} // namespace mss::game
