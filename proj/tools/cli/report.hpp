#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>

#include "cli/table.hpp"
#include "mss/corpus.hpp"
#include "mss/corpus_files.hpp"
#include "mss/forecast.hpp"
#include "mss/gametheory.hpp"
#include "mss/scenario_file.hpp"
#include "mss/stats.hpp"
#include "mss/timeline.hpp"

namespace mss::cli {

struct AnalysisInputs {
    CorpusBundle corpus;
    /// Optional per-state school-shooting counts for the state correlation.
    std::optional<std::map<std::string, int>> school_state_counts;
    ForecastOptions forecast;
};

Table table1(std::span<const Incident> incidents);
Table forecast_table(std::string name, std::string title, std::span<const ForecastRow> rows,
                     const ForecastOptions& options, bool with_average);
Table holdout_table(std::span<const ForecastRow> rows);
Table table4(std::span<const PublishedTimelineRow> rows);
Table phase_averages_table(const PhaseAverages& published, const PhaseAverages& derived);
Table derived_timeline_table(std::span<const TimelineBreakdown> derived);
Table table6(std::span<const CorrelationResult> results);
Table fig5(std::span<const LocationBin> bins);
Table fig1(std::span<const Incident> incidents,
           const std::optional<std::map<std::string, int>>& school_counts);
Table figure_table(std::string name, std::string title, const FigureSeries& series);
Table probabilities_table(const ProbabilitySummary& summary);
Table state_correlation_table(const CorrelationResult& result);
Table validation_table(const ValidationReport& report);

DiscrepancyList cross_table_discrepancies(const ValidationReport& report);

Bundle validate_bundle(const AnalysisInputs& in, const ValidationReport& report);
Bundle stats_bundle(const AnalysisInputs& in);
Bundle timeline_bundle(const AnalysisInputs& in);
Bundle forecast_bundle(const AnalysisInputs& in, std::optional<Target> target,
                       std::optional<Variant> variant);
/// The nine report tables (plus phase averages and probabilities) and the
/// diffs for each.
Bundle report_bundle(const AnalysisInputs& in);

struct SimulateRequest {
    game::ScenarioFile file;
    std::optional<double> calibrate_target;
    /// "none", "shooter" or "defender".
    std::string sweep = "none";
};

Bundle simulate_bundle(const SimulateRequest& request);

} // namespace mss::cli
