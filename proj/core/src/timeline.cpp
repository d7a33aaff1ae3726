#include "mss/timeline.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "mss/csv.hpp"
#include "mss/published.hpp"

namespace mss {

namespace {

constexpr std::string_view kHeader =
    "incident_id,school_name,casualty,bullets,kiv_min,va_min,pom_min,shootout_min,"
    "dist_police_km,dist_hospital_km,crime_time_min";

double parse_number(const std::string& cell, std::size_t row, std::string_view column) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || cell.empty() || value < 0) {
        throw CorpusError(row, std::string(column), "expected a non-negative number, got '" + cell + "'");
    }
    return value;
}

const ClockTime& require(const std::optional<ClockTime>& t, std::string_view field, int id) {
    if (!t) {
        throw std::invalid_argument("incident " + std::to_string(id) + ": missing " +
                                    std::string(field));
    }
    return *t;
}

} // namespace

TimelineBreakdown derive_phases(const Incident& incident) {
    const auto& arrived = require(incident.t_arrived, "t_arrived", incident.id);
    const auto& fired = require(incident.t_fired, "t_fired", incident.id);
    const auto& call = require(incident.t_911, "t_911", incident.id);
    const auto& police = require(incident.t_police, "t_police", incident.id);
    const auto& stop = require(incident.t_stop, "t_stop", incident.id);

    TimelineBreakdown out;
    out.incident_id = incident.id;
    auto phase = [&](const ClockTime& from, const ClockTime& to, std::string_view flag) {
        int minutes = minutes_between(from, to);
        if (minutes < 0) {
            out.anomalies.emplace_back(flag);
            return 0.0;
        }
        return static_cast<double>(minutes);
    };
    out.kiv_min = phase(arrived, fired, "first shot preceded arrival");
    out.va_min = phase(fired, call, "911 preceded first shot");
    out.pom_min = phase(call, police, "police arrival preceded 911 call");
    out.shootout_min = phase(police, stop, "stop preceded police arrival");
    out.crime_time_min = phase(fired, stop, "stop preceded first shot");
    return out;
}

PhaseAverages phase_averages(std::span<const TimelineBreakdown> breakdowns,
                             std::span<const int> casualties) {
    if (breakdowns.empty()) {
        throw std::invalid_argument("phase_averages: empty input");
    }
    if (breakdowns.size() != casualties.size()) {
        throw std::invalid_argument("phase_averages: breakdowns and casualties differ in length");
    }
    PhaseAverages avg;
    for (std::size_t i = 0; i < breakdowns.size(); ++i) {
        const auto& b = breakdowns[i];
        avg.mean_kiv += b.kiv_min;
        avg.mean_va += b.va_min;
        avg.mean_pom += b.pom_min;
        avg.mean_shootout += b.shootout_min;
        avg.mean_crime_time += b.crime_time_min;
        avg.mean_casualty += casualties[i];
    }
    const double n = static_cast<double>(breakdowns.size());
    avg.n = static_cast<int>(breakdowns.size());
    avg.mean_kiv /= n;
    avg.mean_va /= n;
    avg.mean_pom /= n;
    avg.mean_shootout /= n;
    avg.mean_crime_time /= n;
    avg.mean_casualty /= n;
    avg.casualties_per_minute =
        avg.mean_crime_time > 0.0 ? avg.mean_casualty / avg.mean_crime_time : 0.0;
    return avg;
}

TimelineBreakdown PublishedTimelineRow::as_breakdown() const {
    return {incident_id, kiv_min, va_min, pom_min, shootout_min, crime_time_min, {}};
}

std::string_view published_timeline_header() { return kHeader; }

std::vector<PublishedTimelineRow> parse_published_timeline(std::string_view csv_text) {
    auto records = csv::parse(csv_text);
    if (records.empty() || csv::join(records.front().fields) != kHeader) {
        throw CorpusError(0, "header", "expected header '" + std::string(kHeader) + "'");
    }
    std::vector<PublishedTimelineRow> rows;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& f = records[i].fields;
        if (f.size() != 11) {
            throw CorpusError(i, "*", "expected 11 fields, got " + std::to_string(f.size()));
        }
        PublishedTimelineRow row;
        row.incident_id = static_cast<int>(parse_number(f[0], i, "incident_id"));
        row.school_name = f[1];
        row.casualty = static_cast<int>(parse_number(f[2], i, "casualty"));
        row.bullets = static_cast<int>(parse_number(f[3], i, "bullets"));
        row.kiv_min = parse_number(f[4], i, "kiv_min");
        row.va_min = parse_number(f[5], i, "va_min");
        row.pom_min = parse_number(f[6], i, "pom_min");
        row.shootout_min = parse_number(f[7], i, "shootout_min");
        row.dist_police_km = parse_number(f[8], i, "dist_police_km");
        row.dist_hospital_km = parse_number(f[9], i, "dist_hospital_km");
        row.crime_time_min = parse_number(f[10], i, "crime_time_min");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Incident> timeline_subset(std::span<const Incident> incidents,
                                      std::span<const PublishedTimelineRow> rows) {
    std::vector<Incident> subset;
    subset.reserve(rows.size());
    for (const auto& row : rows) {
        auto it = std::find_if(incidents.begin(), incidents.end(),
                               [&](const Incident& inc) { return inc.id == row.incident_id; });
        if (it == incidents.end()) {
            throw std::invalid_argument("timeline row references unknown incident " +
                                        std::to_string(row.incident_id));
        }
        subset.push_back(*it);
    }
    return subset;
}

std::vector<TimelineBreakdown> published_breakdowns(std::span<const PublishedTimelineRow> rows) {
    std::vector<TimelineBreakdown> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(row.as_breakdown());
    }
    return out;
}

std::vector<int> published_casualties(std::span<const PublishedTimelineRow> rows) {
    std::vector<int> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        out.push_back(row.casualty);
    }
    return out;
}

PublishedColumnMeans published_column_means(std::span<const PublishedTimelineRow> rows) {
    PublishedColumnMeans means;
    if (rows.empty()) {
        return means;
    }
    for (const auto& row : rows) {
        means.bullets += row.bullets;
        means.dist_police_km += row.dist_police_km;
        means.dist_hospital_km += row.dist_hospital_km;
    }
    const double n = static_cast<double>(rows.size());
    means.bullets /= n;
    means.dist_police_km /= n;
    means.dist_hospital_km /= n;
    return means;
}

DiscrepancyList compare_column_means(const PublishedColumnMeans& means) {
    const auto& pub = published::kTimelineAverages;
    DiscrepancyList diffs;
    if (differs_at_precision(means.bullets, pub.bullets, 1)) {
        diffs.push_back({"mean_bullets", means.bullets, pub.bullets});
    }
    if (differs_at_precision(means.dist_police_km, pub.dist_police_km, 1)) {
        diffs.push_back({"mean_dist_police_km", means.dist_police_km, pub.dist_police_km});
    }
    if (differs_at_precision(means.dist_hospital_km, pub.dist_hospital_km, 1)) {
        diffs.push_back({"mean_dist_hospital_km", means.dist_hospital_km, pub.dist_hospital_km});
    }
    return diffs;
}

DiscrepancyList compare_with_published(std::span<const Incident> subset,
                                       std::span<const TimelineBreakdown> derived,
                                       std::span<const PublishedTimelineRow> rows) {
    if (subset.size() != rows.size() || derived.size() != rows.size()) {
        throw std::invalid_argument("compare_with_published: inputs differ in length");
    }
    DiscrepancyList diffs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const auto& d = derived[i];
        const auto& inc = subset[i];
        std::string prefix = "incident " + std::to_string(row.incident_id) + ".";
        auto check = [&](std::string_view name, double computed, double published) {
            if (computed != published) {
                diffs.push_back({prefix + std::string(name), computed, published});
            }
        };
        check("casualty", inc.casualty(), row.casualty);
        if (inc.bullets_fired) {
            check("bullets", *inc.bullets_fired, row.bullets);
        }
        check("kiv_min", d.kiv_min, row.kiv_min);
        check("va_min", d.va_min, row.va_min);
        check("pom_min", d.pom_min, row.pom_min);
        check("shootout_min", d.shootout_min, row.shootout_min);
        check("crime_time_min", d.crime_time_min, row.crime_time_min);
        if (inc.dist_police_km) {
            check("dist_police_km", *inc.dist_police_km, row.dist_police_km);
        }
        if (inc.dist_hospital_km) {
            check("dist_hospital_km", *inc.dist_hospital_km, row.dist_hospital_km);
        }
    }
    return diffs;
}

DiscrepancyList compare_averages(const PhaseAverages& averages) {
    const auto& pub = published::kTimelineAverages;
    DiscrepancyList diffs;
    auto check = [&](std::string_view name, double computed, double published, int decimals) {
        if (differs_at_precision(computed, published, decimals)) {
            diffs.push_back({std::string(name), computed, published});
        }
    };
    check("mean_kiv", averages.mean_kiv, pub.kiv, 1);
    check("mean_va", averages.mean_va, pub.va, 1);
    check("mean_pom", averages.mean_pom, pub.pom, 1);
    check("mean_shootout", averages.mean_shootout, pub.shootout, 1);
    check("mean_crime_time", averages.mean_crime_time, pub.crime_time, 0);
    check("mean_casualty", averages.mean_casualty, pub.casualty, 1);
    check("casualties_per_minute", averages.casualties_per_minute, pub.casualties_per_minute, 3);
    return diffs;
}

std::vector<FactorRecord> factor_records(std::span<const PublishedTimelineRow> rows) {
    std::vector<FactorRecord> out;
    for (const auto& row : rows) {
        FactorRecord rec;
        rec.id = row.incident_id;
        rec.casualty = row.casualty;
        rec[Factor::Bullets] = row.bullets;
        rec[Factor::Kiv] = row.kiv_min;
        rec[Factor::Va] = row.va_min;
        rec[Factor::Pom] = row.pom_min;
        rec[Factor::Shootout] = row.shootout_min;
        rec[Factor::DistPolice] = row.dist_police_km;
        rec[Factor::DistHospital] = row.dist_hospital_km;
        rec[Factor::CrimeTime] = row.crime_time_min;
        out.push_back(rec);
    }
    return out;
}

std::vector<FactorRecord> factor_records(std::span<const Incident> subset,
                                         std::span<const TimelineBreakdown> derived) {
    if (subset.size() != derived.size()) {
        throw std::invalid_argument("factor_records: inputs differ in length");
    }
    std::vector<FactorRecord> out;
    for (std::size_t i = 0; i < subset.size(); ++i) {
        const auto& inc = subset[i];
        const auto& d = derived[i];
        FactorRecord rec;
        rec.id = inc.id;
        rec.casualty = inc.casualty();
        if (inc.bullets_fired) {
            rec[Factor::Bullets] = *inc.bullets_fired;
        }
        rec[Factor::Kiv] = d.kiv_min;
        rec[Factor::Va] = d.va_min;
        rec[Factor::Pom] = d.pom_min;
        rec[Factor::Shootout] = d.shootout_min;
        rec[Factor::DistPolice] = inc.dist_police_km;
        rec[Factor::DistHospital] = inc.dist_hospital_km;
        rec[Factor::CrimeTime] = d.crime_time_min;
        out.push_back(rec);
    }
    return out;
}

} // namespace mss
