#include "cli/report.hpp"

#include "mss/published.hpp"

namespace mss::cli {

namespace {

std::string yes_no(bool v) { return v ? "yes" : "no"; }

std::string opt_int(const std::optional<int>& v) { return v ? integer(*v) : std::string(); }

std::vector<ForecastRow> rows_for(std::span<const ForecastRow> rows, Target target) {
    std::vector<ForecastRow> out;
    for (const auto& r : rows) {
        if (r.target == target) {
            out.push_back(r);
        }
    }
    return out;
}

PhaseAverages derived_averages(const CorpusBundle& corpus, std::vector<Incident>& subset,
                               std::vector<TimelineBreakdown>& derived) {
    subset = timeline_subset(corpus.incidents, corpus.timeline_rows);
    derived.clear();
    std::vector<int> casualties;
    for (const auto& inc : subset) {
        derived.push_back(derive_phases(inc));
        casualties.push_back(inc.casualty());
    }
    return phase_averages(derived, casualties);
}

PhaseAverages published_averages(const CorpusBundle& corpus) {
    return phase_averages(published_breakdowns(corpus.timeline_rows),
                          published_casualties(corpus.timeline_rows));
}

DiscrepancyList prefixed(DiscrepancyList list, const std::string& prefix) {
    for (auto& d : list) {
        d.cell = prefix + d.cell;
    }
    return list;
}

void append(DiscrepancyList& into, const DiscrepancyList& from) {
    into.insert(into.end(), from.begin(), from.end());
}

} // namespace

Table table1(std::span<const Incident> incidents) {
    Table t{"table1", "Historical incidents and casualties",
            {"year", "events", "injured", "killed", "casualty"}, {}};
    const auto events = yearly_series(incidents, SeriesLabel::Events);
    const auto injured = yearly_series(incidents, SeriesLabel::Injured);
    const auto killed = yearly_series(incidents, SeriesLabel::Killed);
    const auto casualty = yearly_series(incidents, SeriesLabel::Casualty);
    for (int y = events.start_year; y <= events.end_year(); ++y) {
        t.add_row({integer(y), fixed(events.at(y), 0), fixed(injured.at(y), 0),
                   fixed(killed.at(y), 0), fixed(casualty.at(y), 0)});
    }
    t.add_row({"Total", fixed(events.total(), 0), fixed(injured.total(), 0),
               fixed(killed.total(), 0), fixed(casualty.total(), 0)});
    return t;
}

Table forecast_table(std::string name, std::string title, std::span<const ForecastRow> rows,
                     const ForecastOptions& options, bool with_average) {
    Table t{std::move(name), std::move(title), {"model_id", "model_name"}, {}};
    const auto years = forecast_years(options);
    for (int y : years) {
        t.columns.push_back("y" + std::to_string(y));
    }
    for (const char* c : {"mse", "mae", "mape", "training_data"}) {
        t.columns.emplace_back(c);
    }
    for (const auto& r : rows) {
        std::vector<std::string> cells{r.model_id, r.model_name};
        for (double p : r.predictions_raw) {
            cells.push_back(fixed(p, 4));
        }
        cells.push_back(fixed(r.holdout.mse, 4));
        cells.push_back(fixed(r.holdout.mae, 4));
        cells.push_back(optional_fixed(r.holdout.mape, 4));
        cells.push_back(r.training_label);
        t.add_row(std::move(cells));
    }
    if (with_average && !rows.empty()) {
        std::vector<std::string> cells{"Average", ""};
        for (double p : average_predictions(rows)) {
            cells.push_back(fixed(p, 4));
        }
        cells.insert(cells.end(), {"", "", "", ""});
        t.add_row(std::move(cells));
    }
    return t;
}

Table holdout_table(std::span<const ForecastRow> rows) {
    Table t{"holdout", "Chronological holdout used for the error metrics",
            {"target", "model_id", "train_size", "test_size", "mape_excluded_zero_actuals",
             "predictions_clamped"},
            {}};
    for (const auto& r : rows) {
        std::string clamped;
        for (std::size_t k = 0; k < r.predictions_clamped.size(); ++k) {
            clamped += (k ? " " : "") + fixed(r.predictions_clamped[k], 4);
        }
        t.add_row({std::string(to_string(r.target)), r.model_id, integer(r.train_size),
                   integer(r.test_size), integer(r.holdout.mape_excluded), clamped});
    }
    return t;
}

Table table4(std::span<const PublishedTimelineRow> rows) {
    Table t{"table4", "Timeline of the 16 incidents (distances in miles)",
            {"incident_id", "school_name", "casualty", "bullets", "kiv_min", "va_min", "pom_min",
             "shootout_min", "dist_police_mi", "dist_hospital_mi", "crime_time_min"},
            {}};
    for (const auto& r : rows) {
        t.add_row({integer(r.incident_id), r.school_name, integer(r.casualty), integer(r.bullets),
                   fixed(r.kiv_min, 0), fixed(r.va_min, 0), fixed(r.pom_min, 0),
                   fixed(r.shootout_min, 0), fixed(km_to_miles(r.dist_police_km), 1),
                   fixed(km_to_miles(r.dist_hospital_km), 1), fixed(r.crime_time_min, 0)});
    }
    if (!rows.empty()) {
        const auto avg =
            phase_averages(published_breakdowns(rows), published_casualties(rows));
        const auto means = published_column_means(rows);
        t.add_row({"Average", "", fixed(avg.mean_casualty, 4), fixed(means.bullets, 4),
                   fixed(avg.mean_kiv, 4), fixed(avg.mean_va, 4), fixed(avg.mean_pom, 4),
                   fixed(avg.mean_shootout, 4), fixed(km_to_miles(means.dist_police_km), 4),
                   fixed(km_to_miles(means.dist_hospital_km), 4), fixed(avg.mean_crime_time, 4)});
    }
    return t;
}

Table phase_averages_table(const PhaseAverages& published, const PhaseAverages& derived) {
    Table t{"phase_averages", "Phase averages and casualty rate",
            {"source", "n", "mean_kiv", "mean_va", "mean_pom", "mean_shootout", "mean_crime_time",
             "mean_casualty", "casualties_per_minute"},
            {}};
    auto row = [&](const char* source, const PhaseAverages& a) {
        t.add_row({source, integer(a.n), fixed(a.mean_kiv, 4), fixed(a.mean_va, 4),
                   fixed(a.mean_pom, 4), fixed(a.mean_shootout, 4), fixed(a.mean_crime_time, 4),
                   fixed(a.mean_casualty, 4), fixed(a.casualties_per_minute, 4)});
    };
    row("published_columns", published);
    row("derived_from_timestamps", derived);
    return t;
}

Table derived_timeline_table(std::span<const TimelineBreakdown> derived) {
    Table t{"timeline_derived", "Phases derived from timestamps",
            {"incident_id", "kiv_min", "va_min", "pom_min", "shootout_min", "crime_time_min",
             "anomalies"},
            {}};
    for (const auto& d : derived) {
        std::string flags;
        for (std::size_t i = 0; i < d.anomalies.size(); ++i) {
            flags += (i ? "; " : "") + d.anomalies[i];
        }
        t.add_row({integer(d.incident_id), fixed(d.kiv_min, 0), fixed(d.va_min, 0),
                   fixed(d.pom_min, 0), fixed(d.shootout_min, 0), fixed(d.crime_time_min, 0),
                   flags});
    }
    return t;
}

Table table6(std::span<const CorrelationResult> results) {
    Table t{"table6", "Correlation between casualty and each factor",
            {"factor", "n", "r", "t_stat", "p_two_tailed", "significant_0.05", "significant_0.01",
             "published_r", "published_p"},
            {}};
    for (const auto& r : results) {
        std::string pub_r;
        std::string pub_p;
        for (const auto& cell : published::kCorrelations) {
            if (cell.factor == r.factor) {
                pub_r = fixed(cell.r, 3);
                pub_p = significant(cell.p, 2);
            }
        }
        t.add_row({r.factor, integer(r.n), fixed(r.r, 4), fixed(r.t_stat, 4),
                   significant(r.p_two_tailed, 6), yes_no(r.significant_at(0.05)),
                   yes_no(r.significant_at(0.01)), pub_r, pub_p});
    }
    return t;
}

Table fig5(std::span<const LocationBin> bins) {
    Table t{"fig5_histogram", "Locations", {"location", "count", "percent"}, {}};
    for (const auto& b : bins) {
        t.add_row({b.location, integer(b.count), fixed(b.percent, 2)});
    }
    return t;
}

Table fig1(std::span<const Incident> incidents,
           const std::optional<std::map<std::string, int>>& school_counts) {
    Table t{"fig1_state_counts", "Shootings by state", {"state", "mass_shootings", "school_shootings"},
            {}};
    const auto counts = state_counts(incidents);
    for (auto code : us_state_codes()) {
        std::string school;
        if (school_counts) {
            school = integer(state_count(*school_counts, code));
        }
        t.add_row({std::string(code), integer(state_count(counts, code)), school});
    }
    return t;
}

Table figure_table(std::string name, std::string title, const FigureSeries& series) {
    Table t{std::move(name), std::move(title), {"year", "observed"}, {}};
    for (const auto& id : series.row_ids) {
        t.columns.push_back(id);
    }
    t.columns.emplace_back("average");
    for (std::size_t i = 0; i < series.years.size(); ++i) {
        std::vector<std::string> cells{integer(series.years[i]), optional_fixed(series.observed[i], 0)};
        for (const auto& column : series.columns) {
            cells.push_back(optional_fixed(column[i], 4));
        }
        cells.push_back(optional_fixed(series.average[i], 4));
        t.add_row(std::move(cells));
    }
    return t;
}

Table probabilities_table(const ProbabilitySummary& summary) {
    Table t{"probabilities", "Per-school shooting probabilities",
            {"case", "events", "years", "schools", "annual_rate", "per_school_annual", "one_in",
             "one_in_rounded", "exposure_years", "lifetime", "lifetime_percent", "lifetime_one_in",
             "lifetime_one_in_rounded"},
            {}};
    auto row = [&](const char* name, const ProbabilityResult& r) {
        const auto one_in = r.one_in();
        const auto life_one_in = r.lifetime_one_in();
        t.add_row({name, integer(r.events), integer(r.years), integer(r.schools),
                   fixed(r.annual_rate, 4), significant(r.per_school_annual, 6),
                   one_in ? fixed(*one_in, 1) : "inf", one_in ? fixed(*one_in, 0) : "inf",
                   integer(r.exposure_years), significant(r.lifetime, 6),
                   fixed(r.lifetime_percent(), 4), life_one_in ? fixed(*life_one_in, 1) : "inf",
                   life_one_in ? fixed(*life_one_in, 0) : "inf"});
    };
    row("school_shootings", summary.school);
    row("mass_school_shootings", summary.mass);
    return t;
}

Table state_correlation_table(const CorrelationResult& result) {
    Table t{"state_correlation", "State-level correlation of mass and school shootings",
            {"n", "r", "t_stat", "p_two_tailed", "published_r", "published_p"}, {}};
    t.add_row({integer(result.n), fixed(result.r, 4), fixed(result.t_stat, 4),
               significant(result.p_two_tailed, 6), fixed(published::kStateCorrelation, 3),
               significant(published::kStateCorrelationP, 3)});
    return t;
}

Table validation_table(const ValidationReport& report) {
    Table t{"validation", "Validation findings", {"severity", "record_id", "field", "message"}, {}};
    for (const auto& f : report.errors) {
        t.add_row({"error", integer(f.record_id), f.field, f.message});
    }
    for (const auto& f : report.warnings) {
        t.add_row({"warning", integer(f.record_id), f.field, f.message});
    }
    return t;
}

DiscrepancyList cross_table_discrepancies(const ValidationReport& report) {
    DiscrepancyList out;
    for (const auto& d : report.cross_table_diffs) {
        out.push_back({d.key + "." + d.field, d.recomputed, d.bundled});
    }
    return out;
}

Bundle validate_bundle(const AnalysisInputs&, const ValidationReport& report) {
    Bundle b;
    b.tables.push_back(validation_table(report));
    b.diffs["table1"] = cross_table_discrepancies(report);
    return b;
}

Bundle stats_bundle(const AnalysisInputs& in) {
    Bundle b;
    const auto summary = published_probability_summary();
    b.tables.push_back(probabilities_table(summary));
    b.diffs["probabilities"] = compare_probabilities(summary);

    const auto correlations = correlation_table(factor_records(in.corpus.timeline_rows));
    b.tables.push_back(table6(correlations));
    b.diffs["table6"] = compare_correlations(correlations);

    DiscrepancyList state_diffs;
    if (in.school_state_counts) {
        const auto state = state_correlation(state_counts(in.corpus.incidents), *in.school_state_counts);
        b.tables.push_back(state_correlation_table(state));
        state_diffs = compare_state_correlation(state);
    }
    b.diffs["fig1_state_counts"] = state_diffs;
    return b;
}

Bundle timeline_bundle(const AnalysisInputs& in) {
    Bundle b;
    std::vector<Incident> subset;
    std::vector<TimelineBreakdown> derived;
    const auto derived_avg = derived_averages(in.corpus, subset, derived);
    const auto published_avg = published_averages(in.corpus);
    b.tables.push_back(table4(in.corpus.timeline_rows));
    b.tables.push_back(derived_timeline_table(derived));
    b.tables.push_back(phase_averages_table(published_avg, derived_avg));

    auto diffs = compare_with_published(subset, derived, in.corpus.timeline_rows);
    append(diffs, compare_averages(published_avg));
    append(diffs, compare_column_means(published_column_means(in.corpus.timeline_rows)));
    append(diffs, prefixed(compare_averages(derived_avg), "derived."));
    b.diffs["table4"] = diffs;
    return b;
}

Bundle forecast_bundle(const AnalysisInputs& in, std::optional<Target> target,
                       std::optional<Variant> variant) {
    Bundle b;
    std::vector<ForecastRow> all_rows;
    for (Target tg : {Target::Events, Target::Casualties}) {
        if (target && *target != tg) {
            continue;
        }
        auto rows = run_target(in.corpus.incidents, tg, in.forecast);
        const std::string name = tg == Target::Events ? "table2" : "table3";
        b.diffs[name] = compare_forecasts(rows, tg);
        if (variant) {
            std::erase_if(rows, [&](const ForecastRow& r) { return r.variant != *variant; });
        }
        b.tables.push_back(forecast_table(
            name, tg == Target::Events ? "Predicted incidents" : "Predicted casualties", rows,
            in.forecast, !variant));
        all_rows.insert(all_rows.end(), rows.begin(), rows.end());
    }
    b.tables.push_back(holdout_table(all_rows));
    return b;
}

Bundle report_bundle(const AnalysisInputs& in) {
    Bundle b;
    const auto& incidents = in.corpus.incidents;
    const auto report = validate(incidents);

    b.tables.push_back(table1(incidents));
    b.diffs["table1"] = cross_table_discrepancies(report);

    const auto rows = run_harness(incidents, in.forecast);
    const auto events = rows_for(rows, Target::Events);
    const auto casualties = rows_for(rows, Target::Casualties);
    b.tables.push_back(forecast_table("table2", "Predicted incidents", events, in.forecast, true));
    b.diffs["table2"] = compare_forecasts(events, Target::Events);
    b.tables.push_back(
        forecast_table("table3", "Predicted casualties", casualties, in.forecast, true));
    b.diffs["table3"] = compare_forecasts(casualties, Target::Casualties);

    auto timeline = timeline_bundle(in);
    b.tables.push_back(timeline.tables[0]);
    b.diffs["table4"] = timeline.diffs["table4"];

    auto stats = stats_bundle(in);
    b.tables.push_back(stats.tables[1]);
    b.diffs["table6"] = stats.diffs["table6"];

    const auto bins = location_histogram(incidents);
    b.tables.push_back(fig5(bins));
    b.diffs["fig5_histogram"] = compare_locations(bins);

    b.tables.push_back(fig1(incidents, in.school_state_counts));
    b.diffs["fig1_state_counts"] = stats.diffs["fig1_state_counts"];

    b.tables.push_back(figure_table("fig6_series", "Observed and forecast incidents",
                                    figure_series(yearly_series(incidents, SeriesLabel::Events), events)));
    b.diffs["fig6_series"] = {};
    b.tables.push_back(
        figure_table("fig7_series", "Observed and forecast casualties",
                     figure_series(yearly_series(incidents, SeriesLabel::Casualty), casualties)));
    b.diffs["fig7_series"] = {};

    b.tables.push_back(timeline.tables[2]);
    b.tables.push_back(stats.tables[0]);
    b.diffs["probabilities"] = stats.diffs["probabilities"];
    if (stats.tables.size() > 2) {
        b.tables.push_back(stats.tables[2]);
    }
    return b;
}

Bundle simulate_bundle(const SimulateRequest& request) {
    using namespace game;
    Bundle b;
    ScenarioFile file = request.file;
    const auto schedule = file.resolved_schedule();

    if (request.calibrate_target) {
        const auto cal = calibrate(file.scenario, schedule, file.policy, *request.calibrate_target);
        file.scenario.miller = cal.curve;
        Table t{"calibration", "Injury scale calibrated to a casualty rate",
                {"target_rate", "i_high", "achieved_rate", "iterations"}, {}};
        t.add_row({significant(*request.calibrate_target, 10), significant(cal.curve.i_high, 12),
                   significant(cal.achieved_rate, 12), integer(cal.iterations)});
        b.tables.push_back(std::move(t));
    }

    Table summary{"simulation", "Simulation outcome", {"metric", "value"}, {}};
    summary.add_row({"mode", std::string(to_string(file.mode))});
    summary.add_row({"i_high", significant(file.scenario.miller.i_high, 12)});
    summary.add_row({"stop_probability_per_minute",
                     significant(stop_probability_per_minute(file.policy), 12)});
    if (file.mode == SimMode::Expectation) {
        const auto out = simulate(file.scenario, schedule, file.policy);
        summary.add_row({"loss_v", significant(out.loss_v, 12)});
        summary.add_row({"loss_m", significant(out.loss_m, 12)});
        summary.add_row({"defender_payoff", significant(out.defender_payoff, 12)});
        summary.add_row({"stop_contribution", significant(out.stop_contribution, 12)});
        summary.add_row({"unexpected_cost", significant(out.unexpected_cost, 12)});
        summary.add_row({"stop_time", out.stop_time ? integer(*out.stop_time) : "horizon"});
        summary.add_row({"active_minutes", integer(out.active_minutes)});
        summary.add_row({"engagement_minutes", integer(out.engagement_minutes)});
        summary.add_row({"bullets_used", integer(out.bullets_used)});
        b.tables.push_back(std::move(summary));

        Table traj{"trajectory", "Per-minute casualty trajectory",
                   {"minute", "bullets", "injury_scale", "cumulative_loss_v"}, {}};
        for (int t = 0; t < file.scenario.horizon_min; ++t) {
            traj.add_row({integer(t), integer(schedule[t]),
                          significant(injury_scale(t, file.scenario), 12),
                          significant(out.casualty_trajectory[t], 12)});
        }
        b.tables.push_back(std::move(traj));
    } else {
        const auto mc = simulate_monte_carlo(file.scenario, schedule, file.policy, file.runs, file.seed);
        summary.add_row({"runs", integer(mc.runs)});
        summary.add_row({"seed", std::to_string(mc.seed)});
        summary.add_row({"mean_loss_v", significant(mc.mean_loss_v, 12)});
        summary.add_row({"mean_loss_m", significant(mc.mean_loss_m, 12)});
        summary.add_row({"mean_defender_payoff", significant(mc.mean_defender_payoff, 12)});
        summary.add_row({"stopped_fraction", significant(mc.stopped_fraction, 12)});
        summary.add_row({"mean_stop_time",
                         mc.mean_stop_time ? significant(*mc.mean_stop_time, 12) : ""});
        b.tables.push_back(std::move(summary));
    }

    if (request.sweep == "shooter") {
        const auto grid = schedule_grid(file.scenario, file.shooter_grid);
        const auto outcomes = evaluate_schedules(file.scenario, grid, file.policy);
        const auto best = shooter_best_response(file.scenario, file.policy, grid);
        Table t{"sweep", "Shooter schedule grid",
                {"index", "schedule", "bullets_used", "loss_v", "loss_m", "stop_time", "best"}, {}};
        for (std::size_t i = 0; i < grid.size(); ++i) {
            std::string sched;
            for (std::size_t k = 0; k < grid[i].size(); ++k) {
                sched += (k ? " " : "") + integer(grid[i][k]);
            }
            const auto& o = outcomes[i];
            t.add_row({integer(static_cast<long>(i)), sched, integer(o.bullets_used),
                       significant(o.loss_v, 12), significant(o.loss_m, 12),
                       opt_int(o.stop_time), yes_no(i == best.index)});
        }
        b.tables.push_back(std::move(t));
    } else if (request.sweep == "defender") {
        const auto grid = defender_grid(file.policy, file.defender_grid);
        const auto outcomes = evaluate_policies(file.scenario, schedule, grid);
        const auto best = defender_best_response(file.scenario, schedule, grid);
        Table t{"sweep", "Defender policy grid",
                {"index", "officers", "weapon_level", "defender_payoff", "loss_v", "stop_time",
                 "best"},
                {}};
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto& o = outcomes[i];
            t.add_row({integer(static_cast<long>(i)), integer(grid[i].officers),
                       significant(grid[i].weapon_level, 6), significant(o.defender_payoff, 12),
                       significant(o.loss_v, 12), opt_int(o.stop_time), yes_no(i == best.index)});
        }
        b.tables.push_back(std::move(t));
    }
    return b;
}

} // namespace mss::cli
