#include "mss/scenario_file.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace mss::game {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line, const std::string& message) {
    throw std::invalid_argument("scenario line " + std::to_string(line) + ": " + message);
}

template <class T>
T parse_value(std::string_view text, int line, std::string_view key) {
    text = trim(text);
    T value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        fail(line, "invalid value '" + std::string(text) + "' for " + std::string(key));
    }
    return value;
}

template <class T>
std::vector<T> parse_list(std::string_view text, int line, std::string_view key) {
    std::vector<T> out;
    while (true) {
        const auto comma = text.find(',');
        out.push_back(parse_value<T>(text.substr(0, comma), line, key));
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    return out;
}

template <class T>
std::string join_list(const std::vector<T>& values) {
    std::ostringstream os;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            os << ',';
        }
        os << values[i];
    }
    return os.str();
}

} // namespace

std::vector<int> ScenarioFile::resolved_schedule() const {
    return schedule ? *schedule : uniform_schedule(scenario);
}

std::string_view to_string(SimMode mode) {
    return mode == SimMode::Expectation ? "expectation" : "monte_carlo";
}

std::optional<SimMode> sim_mode_from_string(std::string_view text) {
    if (text == "expectation") {
        return SimMode::Expectation;
    }
    if (text == "monte_carlo") {
        return SimMode::MonteCarlo;
    }
    return std::nullopt;
}

ScenarioFile parse_scenario_file(std::string_view text) {
    ScenarioFile file;
    auto& s = file.scenario;
    auto& p = file.policy;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            fail(line_no, "expected key = value");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));

        if (key == "n_shooters") {
            s.n_shooters = parse_value<int>(value, line_no, key);
        } else if (key == "bullet_budget") {
            s.bullet_budget = parse_value<int>(value, line_no, key);
        } else if (key == "horizon_min") {
            s.horizon_min = parse_value<int>(value, line_no, key);
        } else if (key == "t_attack") {
            s.t_attack = parse_value<int>(value, line_no, key);
        } else if (key == "t_cop") {
            s.t_cop = parse_value<int>(value, line_no, key);
        } else if (key == "victims") {
            s.victims = parse_list<double>(value, line_no, key);
        } else if (key == "material_cost_per_min") {
            s.material_cost_per_min = parse_value<double>(value, line_no, key);
        } else if (key == "i_high") {
            s.miller.i_high = parse_value<double>(value, line_no, key);
        } else if (key == "i_low_decay") {
            s.miller.i_low_decay = parse_value<double>(value, line_no, key);
        } else if (key == "stop_threshold") {
            s.stop_threshold = parse_value<double>(value, line_no, key);
        } else if (key == "officers") {
            p.officers = parse_value<int>(value, line_no, key);
        } else if (key == "weapon_level") {
            p.weapon_level = parse_value<double>(value, line_no, key);
        } else if (key == "stop_rate") {
            p.stop_rate = parse_value<double>(value, line_no, key);
        } else if (key == "unexpected_cost_rate") {
            p.unexpected_cost_rate = parse_value<double>(value, line_no, key);
        } else if (key == "schedule") {
            if (value == "uniform") {
                file.schedule.reset();
            } else {
                file.schedule = parse_list<int>(value, line_no, key);
            }
        } else if (key == "grid_chunk") {
            file.shooter_grid.chunk = parse_value<int>(value, line_no, key);
        } else if (key == "grid_blocks") {
            file.shooter_grid.blocks = parse_value<int>(value, line_no, key);
        } else if (key == "officer_cap") {
            file.defender_grid.officer_cap = parse_value<int>(value, line_no, key);
        } else if (key == "weapon_levels") {
            file.defender_grid.weapon_levels = parse_list<double>(value, line_no, key);
        } else if (key == "mode") {
            auto mode = sim_mode_from_string(value);
            if (!mode) {
                fail(line_no, "mode must be expectation or monte_carlo");
            }
            file.mode = *mode;
        } else if (key == "seed") {
            file.seed = parse_value<std::uint64_t>(value, line_no, key);
        } else if (key == "runs") {
            file.runs = parse_value<int>(value, line_no, key);
        } else {
            fail(line_no, "unknown key '" + key + "'");
        }
    }
    s.check();
    p.check();
    return file;
}

std::string serialize_scenario_file(const ScenarioFile& file) {
    const auto& s = file.scenario;
    const auto& p = file.policy;
    std::ostringstream os;
    os.precision(17);
    os << "n_shooters = " << s.n_shooters << '\n'
       << "bullet_budget = " << s.bullet_budget << '\n'
       << "horizon_min = " << s.horizon_min << '\n'
       << "t_attack = " << s.t_attack << '\n'
       << "t_cop = " << s.t_cop << '\n'
       << "victims = " << join_list(s.victims) << '\n'
       << "material_cost_per_min = " << s.material_cost_per_min << '\n'
       << "i_high = " << s.miller.i_high << '\n'
       << "i_low_decay = " << s.miller.i_low_decay << '\n'
       << "stop_threshold = " << s.stop_threshold << '\n'
       << "officers = " << p.officers << '\n'
       << "weapon_level = " << p.weapon_level << '\n'
       << "stop_rate = " << p.stop_rate << '\n'
       << "unexpected_cost_rate = " << p.unexpected_cost_rate << '\n'
       << "schedule = " << (file.schedule ? join_list(*file.schedule) : "uniform") << '\n'
       << "grid_chunk = " << file.shooter_grid.chunk << '\n'
       << "grid_blocks = " << file.shooter_grid.blocks << '\n'
       << "officer_cap = " << file.defender_grid.officer_cap << '\n'
       << "weapon_levels = " << join_list(file.defender_grid.weapon_levels) << '\n'
       << "mode = " << to_string(file.mode) << '\n'
       << "seed = " << file.seed << '\n'
       << "runs = " << file.runs << '\n';
    return os.str();
}

} // namespace mss::game
