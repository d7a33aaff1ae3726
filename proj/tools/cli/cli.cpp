#include "cli/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli/report.hpp"

namespace mss::cli {

namespace fs = std::filesystem;

namespace {

struct Options {
    std::string corpus;
    std::string format = "csv";
    std::string out_dir;
    bool stamp = false;
    std::string state_counts;

    std::string target;
    std::string variant;
    std::string exclude_years;
    double svr_c = 1.0;
    double svr_epsilon = 0.1;
    std::optional<double> svr_gamma;

    std::string scenario;
    std::optional<double> calibrate;
    std::string mode;
    std::optional<std::uint64_t> seed;
    std::optional<int> runs;
    std::string sweep = "none";
};

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string utc_stamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

fs::path corpus_path(const Options& opt) {
    if (!opt.corpus.empty()) {
        return opt.corpus;
    }
    if (const char* env = std::getenv("INCIDENT_CORPUS"); env && *env) {
        return env;
    }
    return default_data_dir();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
    f << text;
}

void emit(const Bundle& bundle, const std::string& command, const Options& opt, Format format,
          std::ostream& out) {
    const auto stamp = opt.stamp ? std::optional(utc_stamp()) : std::nullopt;
    if (opt.out_dir.empty()) {
        if (format == Format::Csv && bundle.tables.size() == 1 && bundle.diffs.empty()) {
            out << render_table(bundle.tables.front(), format);
        } else {
            out << render_bundle(bundle, format, stamp);
        }
        return;
    }
    const fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    const std::string ext(extension(format));
    for (const auto& t : bundle.tables) {
        write_file(dir / (t.name + "." + ext), render_table(t, format));
    }
    write_file(dir / ("diffs." + ext), render_table(diffs_table(bundle.diffs), format));
    write_file(dir / (command + "." + ext), render_bundle(bundle, format, stamp));
    out << "wrote " << bundle.tables.size() + 2 << " files to " << dir.string() << '\n';
}

AnalysisInputs load_inputs(const Options& opt) {
    AnalysisInputs in;
    in.corpus = load_corpus(corpus_path(opt));
    if (!opt.state_counts.empty()) {
        in.school_state_counts = parse_state_counts(read_text_file(opt.state_counts));
    }
    in.forecast.svr_c = opt.svr_c;
    in.forecast.svr_epsilon = opt.svr_epsilon;
    in.forecast.svr_gamma = opt.svr_gamma;
    if (!opt.exclude_years.empty()) {
        try {
            in.forecast.excluded_years = parse_year_list(opt.exclude_years);
        } catch (const std::invalid_argument& e) {
            throw UsageError(std::string("--exclude-years: ") + e.what());
        }
    }
    return in;
}

void print_findings(const ValidationReport& report, std::ostream& err) {
    for (const auto& f : report.errors) {
        err << "error: record " << f.record_id << " " << f.field << ": " << f.message << '\n';
    }
}

int execute(const std::string& command, const Options& opt, std::ostream& out, std::ostream& err) {
    const auto format = format_from_string(opt.format);
    if (!format) {
        throw UsageError("--format must be csv, json or md");
    }

    if (command == "simulate") {
        SimulateRequest req;
        if (!opt.scenario.empty()) {
            req.file = game::parse_scenario_file(read_text_file(opt.scenario));
        }
        if (!opt.mode.empty()) {
            auto mode = game::sim_mode_from_string(opt.mode);
            if (!mode) {
                throw UsageError("--mode must be expectation or monte_carlo");
            }
            req.file.mode = *mode;
        }
        if (opt.seed) {
            req.file.seed = *opt.seed;
        }
        if (opt.runs) {
            req.file.runs = *opt.runs;
        }
        req.calibrate_target = opt.calibrate;
        req.sweep = opt.sweep;
        emit(simulate_bundle(req), command, opt, *format, out);
        return kExitOk;
    }

    const auto in = load_inputs(opt);
    const auto report = validate(in.corpus.incidents);
    if (command == "validate") {
        emit(validate_bundle(in, report), command, opt, *format, out);
        print_findings(report, err);
        return report.ok() ? kExitOk : kExitValidation;
    }
    if (!report.ok()) {
        print_findings(report, err);
        err << "corpus has validation errors; run `validate` for details\n";
        return kExitValidation;
    }
    if (command == "stats") {
        emit(stats_bundle(in), command, opt, *format, out);
    } else if (command == "timeline") {
        emit(timeline_bundle(in), command, opt, *format, out);
    } else if (command == "forecast") {
        std::optional<Target> target;
        std::optional<Variant> variant;
        if (!opt.target.empty() && opt.target != "both") {
            target = target_from_string(opt.target);
            if (!target) {
                throw UsageError("--target must be events, casualties or both");
            }
        }
        if (!opt.variant.empty() && opt.variant != "both") {
            variant = variant_from_string(opt.variant);
            if (!variant) {
                throw UsageError("--variant must be with_covid, without_covid or both");
            }
        }
        auto bundle = forecast_bundle(in, target, variant);
        if (*format == Format::Csv && opt.out_dir.empty()) {
            // Plain table output: the forecast rows only.
            bundle.tables.pop_back();
            bundle.diffs.clear();
        }
        emit(bundle, command, opt, *format, out);
    } else if (command == "report") {
        emit(report_bundle(in), command, opt, *format, out);
    }
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mass school shooting analyses: corpus checks, statistics, forecasts and the "
                 "attack-defense simulator",
                 "mss"};
    app.require_subcommand(1, 1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--corpus", opt.corpus,
                        "Corpus directory or incidents CSV (default: bundled; env INCIDENT_CORPUS)");
        sub->add_option("--format", opt.format, "Output format")
            ->check(CLI::IsMember({"csv", "json", "md"}));
        sub->add_option("--out", opt.out_dir, "Write one file per table into this directory");
        sub->add_flag("--stamp", opt.stamp, "Add a generated-at timestamp to the output");
    };
    auto add_forecast = [&](CLI::App* sub) {
        sub->add_option("--exclude-years", opt.exclude_years,
                        "Years dropped by the without_covid variant (default 2022-2023)");
        sub->add_option("--svr-c", opt.svr_c, "SVR box constraint")->check(CLI::PositiveNumber);
        sub->add_option("--svr-epsilon", opt.svr_epsilon, "SVR insensitive tube")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--svr-gamma", opt.svr_gamma,
                        "RBF width (default 1 / variance of training years)")
            ->check(CLI::PositiveNumber);
    };

    auto* validate_cmd = app.add_subcommand("validate", "Check corpus invariants and cross-table totals");
    add_common(validate_cmd);
    auto* stats_cmd = app.add_subcommand("stats", "Probabilities and correlation tests");
    add_common(stats_cmd);
    stats_cmd->add_option("--state-counts", opt.state_counts,
                          "CSV of per-state school-shooting counts (state,count)");
    auto* timeline_cmd = app.add_subcommand("timeline", "Four-phase attack timelines");
    add_common(timeline_cmd);
    auto* forecast_cmd = app.add_subcommand("forecast", "Fit the four forecasting models");
    add_common(forecast_cmd);
    add_forecast(forecast_cmd);
    forecast_cmd->add_option("--target", opt.target, "events, casualties or both")
        ->check(CLI::IsMember({"events", "casualties", "both"}));
    forecast_cmd->add_option("--variant", opt.variant, "with_covid, without_covid or both")
        ->check(CLI::IsMember({"with_covid", "without_covid", "both"}));
    auto* simulate_cmd = app.add_subcommand("simulate", "Run the shooter/defender simulator");
    simulate_cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "md"}));
    simulate_cmd->add_option("--out", opt.out_dir, "Write one file per table into this directory");
    simulate_cmd->add_flag("--stamp", opt.stamp, "Add a generated-at timestamp to the output");
    simulate_cmd->add_option("--scenario", opt.scenario, "Scenario file (key = value lines)");
    simulate_cmd->add_option("--calibrate", opt.calibrate,
                             "Fit i_high to this casualties-per-minute rate first")
        ->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--mode", opt.mode, "expectation or monte_carlo")
        ->check(CLI::IsMember({"expectation", "monte_carlo"}));
    simulate_cmd->add_option("--seed", opt.seed, "Monte Carlo seed");
    simulate_cmd->add_option("--runs", opt.runs, "Monte Carlo replications")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--sweep", opt.sweep, "Emit a grid sweep: none, shooter or defender")
        ->check(CLI::IsMember({"none", "shooter", "defender"}));
    auto* report_cmd = app.add_subcommand("report", "Every table and figure series with diffs");
    add_common(report_cmd);
    add_forecast(report_cmd);
    report_cmd->add_option("--state-counts", opt.state_counts,
                           "CSV of per-state school-shooting counts (state,count)");

    if (!args.empty() && !args.front().starts_with('-') &&
        app.get_subcommand_no_throw(args.front()) == nullptr) {
        err << "error: unknown subcommand '" << args.front() << "'\n\n" << app.help();
        return kExitUsage;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return execute(command, opt, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    } catch (const CorpusError& e) {
        err << "corpus error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}

} // namespace mss::cli
