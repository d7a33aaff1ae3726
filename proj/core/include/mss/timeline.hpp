#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mss/corpus.hpp"
#include "mss/discrepancy.hpp"
#include "mss/stats.hpp"

namespace mss {

/// Four-phase split of one attack, in minutes:
///   KIV      arrival -> first shot
///   VA       first shot -> first 911 call
///   POM      911 call -> police arrival
///   Shootout police arrival -> stop
/// crime_time_min is first shot -> stop.
struct TimelineBreakdown {
    int incident_id = 0;
    double kiv_min = 0.0;
    double va_min = 0.0;
    double pom_min = 0.0;
    double shootout_min = 0.0;
    double crime_time_min = 0.0;
    std::vector<std::string> anomalies;

    bool anomaly_free() const { return anomalies.empty(); }
};

/// Requires all five timestamps (throws std::invalid_argument naming the
/// first missing one). Negative differences are clamped to zero and
/// flagged in `anomalies`.
TimelineBreakdown derive_phases(const Incident& incident);

struct PhaseAverages {
    double mean_kiv = 0.0;
    double mean_va = 0.0;
    double mean_pom = 0.0;
    double mean_shootout = 0.0;
    double mean_crime_time = 0.0;
    double mean_casualty = 0.0;
    double casualties_per_minute = 0.0;
    int n = 0;
};

PhaseAverages phase_averages(std::span<const TimelineBreakdown> breakdowns,
                             std::span<const int> casualties);

/// One row of the published 16-incident timeline table, verbatim.
struct PublishedTimelineRow {
    int incident_id = 0;
    std::string school_name;
    int casualty = 0;
    int bullets = 0;
    double kiv_min = 0.0;
    double va_min = 0.0;
    double pom_min = 0.0;
    double shootout_min = 0.0;
    double dist_police_km = 0.0;
    double dist_hospital_km = 0.0;
    double crime_time_min = 0.0;

    TimelineBreakdown as_breakdown() const;
};

std::string_view published_timeline_header();
std::vector<PublishedTimelineRow> parse_published_timeline(std::string_view csv_text);

/// The incidents listed in `rows`, in row order. Throws std::invalid_argument
/// if a row references an unknown incident.
std::vector<Incident> timeline_subset(std::span<const Incident> incidents,
                                      std::span<const PublishedTimelineRow> rows);

std::vector<TimelineBreakdown> published_breakdowns(std::span<const PublishedTimelineRow> rows);
std::vector<int> published_casualties(std::span<const PublishedTimelineRow> rows);

struct PublishedColumnMeans {
    double bullets = 0.0;
    double dist_police_km = 0.0;
    double dist_hospital_km = 0.0;
};

PublishedColumnMeans published_column_means(std::span<const PublishedTimelineRow> rows);

/// Column means against the printed average row (1 decimal, kilometres).
DiscrepancyList compare_column_means(const PublishedColumnMeans& means);

/// Cell-level differences between timestamp-derived values for `subset`
/// (parallel to `rows`) and the published table.
DiscrepancyList compare_with_published(std::span<const Incident> subset,
                                       std::span<const TimelineBreakdown> derived,
                                       std::span<const PublishedTimelineRow> rows);

/// Differences between the averages and the published average row.
DiscrepancyList compare_averages(const PhaseAverages& averages);

/// Factor records built from the published columns.
std::vector<FactorRecord> factor_records(std::span<const PublishedTimelineRow> rows);

/// Factor records built from incident fields and derived phases.
std::vector<FactorRecord> factor_records(std::span<const Incident> subset,
                                         std::span<const TimelineBreakdown> derived);

} // namespace mss
