#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mss/discrepancy.hpp"

namespace mss {

enum class SchoolType { Public, Private };

enum class Location {
    Classroom,
    Hallway,
    Outside,
    ParkingLot,
    EntryDoor,
    Cafeteria,
    Gym,
    Office,
    Field,
    Library,
    Bathroom,
    Bus,
    Other,
};

std::string_view to_string(SchoolType type);
std::string_view to_string(Location location);
std::optional<Location> location_from_string(std::string_view text);

/// All location values in histogram order.
std::span<const Location> all_locations();

struct Date {
    int year = 0;
    int month = 0;
    int day = 0;

    /// Parses YYYY-MM-DD; throws std::invalid_argument otherwise.
    static Date parse(std::string_view iso);
    std::string iso() const;

    friend auto operator<=>(const Date&, const Date&) = default;
};

/// Wall-clock time at minute resolution. `day_offset` counts midnights
/// crossed since the incident date, so 11:50 PM precedes 12:05 AM +1d.
class ClockTime {
public:
    ClockTime() = default;
    ClockTime(int minute_of_day, int day_offset = 0);

    /// Parses "H:MM AM|PM" with an optional "+Nd" suffix.
    static ClockTime parse(std::string_view text);

    int minute_of_day() const { return minute_of_day_; }
    int day_offset() const { return day_offset_; }
    /// Minutes since midnight of the incident date.
    int absolute_minutes() const { return day_offset_ * 24 * 60 + minute_of_day_; }

    ClockTime shifted(int minutes) const;
    std::string to_string() const;

    friend bool operator==(const ClockTime& a, const ClockTime& b) {
        return a.absolute_minutes() == b.absolute_minutes();
    }
    friend auto operator<=>(const ClockTime& a, const ClockTime& b) {
        return a.absolute_minutes() <=> b.absolute_minutes();
    }

private:
    int minute_of_day_ = 0;
    int day_offset_ = 0;
};

/// Minutes from `from` to `to` (negative when `to` is earlier).
inline int minutes_between(const ClockTime& from, const ClockTime& to) {
    return to.absolute_minutes() - from.absolute_minutes();
}

struct Incident {
    int id = 0;
    std::string school_name;
    std::string city;
    std::string state;
    SchoolType school_type = SchoolType::Public;
    Date date;
    int killed = 0;
    int injured = 0;
    std::optional<int> bullets_fired;
    std::optional<ClockTime> t_arrived;
    std::optional<ClockTime> t_fired;
    std::optional<ClockTime> t_911;
    std::optional<ClockTime> t_police;
    std::optional<ClockTime> t_stop;
    std::string weapon;
    std::optional<Location> location;
    std::optional<double> dist_police_km;
    std::optional<double> dist_hospital_km;

    int casualty() const { return killed + injured; }

    friend bool operator==(const Incident&, const Incident&) = default;
};

/// Raised by parse_incidents; carries the offending 1-based data row (0 for
/// the header) and column name.
class CorpusError : public std::runtime_error {
public:
    CorpusError(std::size_t row, std::string column, const std::string& message);

    std::size_t row() const { return row_; }
    const std::string& column() const { return column_; }

private:
    std::size_t row_;
    std::string column_;
};

/// The exact incidents.csv header.
std::string_view incidents_header();

std::vector<Incident> parse_incidents(std::string_view csv_text);
std::string serialize_incidents(std::span<const Incident> incidents);

std::string read_text_file(const std::filesystem::path& path);
std::vector<Incident> load_incidents(const std::filesystem::path& path);

/// Two-letter codes for the 50 states plus DC, sorted.
std::span<const std::string_view> us_state_codes();
bool is_us_state_code(std::string_view code);

constexpr double kKmPerMile = 1.609344;
inline double km_to_miles(double km) { return km / kKmPerMile; }

struct Finding {
    int record_id = 0;
    std::string field;
    std::string message;
};

struct CrossTableDiff {
    /// Year ("2006") or incident id ("incident 14").
    std::string key;
    std::string field;
    double bundled = 0.0;
    double recomputed = 0.0;
};

struct ValidationReport {
    std::vector<Finding> errors;
    std::vector<Finding> warnings;
    std::vector<CrossTableDiff> cross_table_diffs;

    bool ok() const { return errors.empty(); }
};

/// Checks record invariants, timestamp ordering, and the recomputed yearly
/// aggregates against the published yearly table. Never throws.
ValidationReport validate(std::span<const Incident> incidents);

enum class SeriesLabel { Events, Killed, Injured, Casualty };

std::string_view to_string(SeriesLabel label);
std::optional<SeriesLabel> series_label_from_string(std::string_view text);

inline constexpr int kFirstYear = 1999;
inline constexpr int kLastYear = 2024;

struct YearlySeries {
    int start_year = kFirstYear;
    std::vector<double> values;
    SeriesLabel label = SeriesLabel::Events;

    int end_year() const { return start_year + static_cast<int>(values.size()) - 1; }
    double at(int year) const;
    double total() const;
};

YearlySeries yearly_series(std::span<const Incident> incidents, SeriesLabel label,
                           int start_year = kFirstYear, int end_year = kLastYear);

struct LocationBin {
    std::string location;
    int count = 0;
    /// count / corpus size, as a percentage rounded to 2 decimals.
    double percent = 0.0;
};

/// Bins in all_locations() order followed by "unknown" when any incident
/// lacks a location; zero-count bins are omitted. Unknowns stay in the
/// denominator.
std::vector<LocationBin> location_histogram(std::span<const Incident> incidents);

/// Histogram bins against the printed location counts and percentages.
DiscrepancyList compare_locations(std::span<const LocationBin> bins);

std::map<std::string, int> state_counts(std::span<const Incident> incidents);

/// Count for `state`, 0 when absent.
int state_count(const std::map<std::string, int>& counts, std::string_view state);

/// Parses an external "state,count" CSV (header required).
std::map<std::string, int> parse_state_counts(std::string_view csv_text);

} // namespace mss
