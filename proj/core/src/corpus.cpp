#include "mss/corpus.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "mss/csv.hpp"
#include "mss/published.hpp"

namespace mss {

namespace {

constexpr std::array<std::string_view, 13> kLocationNames{
    "classroom", "hallway", "outside", "parking_lot", "entry_door", "cafeteria", "gym",
    "office",    "field",   "library", "bathroom",    "bus",        "other",
};

constexpr std::array<Location, 13> kLocations{
    Location::Classroom, Location::Hallway, Location::Outside, Location::ParkingLot,
    Location::EntryDoor, Location::Cafeteria, Location::Gym, Location::Office,
    Location::Field, Location::Library, Location::Bathroom, Location::Bus, Location::Other,
};

constexpr std::array<std::string_view, 51> kStateCodes{
    "AK", "AL", "AR", "AZ", "CA", "CO", "CT", "DC", "DE", "FL", "GA", "HI", "IA",
    "ID", "IL", "IN", "KS", "KY", "LA", "MA", "MD", "ME", "MI", "MN", "MO", "MS",
    "MT", "NC", "ND", "NE", "NH", "NJ", "NM", "NV", "NY", "OH", "OK", "OR", "PA",
    "RI", "SC", "SD", "TN", "TX", "UT", "VA", "VT", "WA", "WI", "WV", "WY",
};

constexpr std::array<std::string_view, 18> kColumns{
    "id",      "school_name", "city",     "state",    "school_type", "date",
    "killed",  "injured",     "bullets",  "t_arrived", "t_fired",    "t_911",
    "t_police", "t_stop",     "weapon",   "location", "dist_police_km", "dist_hospital_km",
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

bool is_absent(std::string_view cell) {
    cell = trim(cell);
    return cell.empty() || cell == "-";
}

std::optional<long> parse_long(std::string_view s) {
    s = trim(s);
    long value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        return std::nullopt;
    }
    return value;
}

std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    double value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        return std::nullopt;
    }
    return value;
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), ptr);
}

bool leap_year(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
    static constexpr std::array<int, 12> kDays{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && leap_year(y) ? 29 : kDays[static_cast<std::size_t>(m - 1)];
}

struct RowParser {
    std::size_t row;
    const csv::Row& cells;

    std::string_view cell(std::size_t col) const { return cells[col]; }

    [[noreturn]] void fail(std::size_t col, const std::string& message) const {
        throw CorpusError(row, std::string(kColumns[col]), message);
    }

    int required_count(std::size_t col) const {
        auto v = parse_long(cell(col));
        if (!v) {
            fail(col, "not an integer: '" + std::string(cell(col)) + "'");
        }
        if (*v < 0) {
            fail(col, "negative count " + std::to_string(*v));
        }
        return static_cast<int>(*v);
    }

    std::optional<int> optional_count(std::size_t col) const {
        if (is_absent(cell(col))) {
            return std::nullopt;
        }
        return required_count(col);
    }

    std::optional<double> optional_distance(std::size_t col) const {
        if (is_absent(cell(col))) {
            return std::nullopt;
        }
        auto v = parse_double(cell(col));
        if (!v || !std::isfinite(*v)) {
            fail(col, "not a number: '" + std::string(cell(col)) + "'");
        }
        if (*v < 0) {
            fail(col, "negative distance");
        }
        return v;
    }

    std::optional<ClockTime> optional_time(std::size_t col) const {
        if (is_absent(cell(col))) {
            return std::nullopt;
        }
        try {
            return ClockTime::parse(cell(col));
        } catch (const std::invalid_argument& e) {
            fail(col, e.what());
        }
    }
};

Incident parse_row(std::size_t row, const csv::Row& cells) {
    if (cells.size() != kColumns.size()) {
        throw CorpusError(row, "*",
                          "expected " + std::to_string(kColumns.size()) + " fields, got " +
                              std::to_string(cells.size()));
    }
    RowParser p{row, cells};
    Incident inc;

    auto id = parse_long(p.cell(0));
    if (!id || *id <= 0) {
        p.fail(0, "id must be a positive integer");
    }
    inc.id = static_cast<int>(*id);
    inc.school_name = std::string(trim(p.cell(1)));
    inc.city = std::string(trim(p.cell(2)));
    inc.state = std::string(trim(p.cell(3)));
    if (!is_us_state_code(inc.state)) {
        p.fail(3, "unknown state code '" + inc.state + "'");
    }
    auto type = trim(p.cell(4));
    if (type == "public") {
        inc.school_type = SchoolType::Public;
    } else if (type == "private") {
        inc.school_type = SchoolType::Private;
    } else {
        p.fail(4, "school_type must be public or private");
    }
    try {
        inc.date = Date::parse(trim(p.cell(5)));
    } catch (const std::invalid_argument& e) {
        p.fail(5, e.what());
    }
    inc.killed = p.required_count(6);
    inc.injured = p.required_count(7);
    inc.bullets_fired = p.optional_count(8);
    inc.t_arrived = p.optional_time(9);
    inc.t_fired = p.optional_time(10);
    inc.t_911 = p.optional_time(11);
    inc.t_police = p.optional_time(12);
    inc.t_stop = p.optional_time(13);
    inc.weapon = is_absent(p.cell(14)) ? std::string{} : std::string(trim(p.cell(14)));
    if (!is_absent(p.cell(15))) {
        inc.location = location_from_string(trim(p.cell(15)));
        if (!inc.location) {
            p.fail(15, "unknown location '" + std::string(p.cell(15)) + "'");
        }
    }
    inc.dist_police_km = p.optional_distance(16);
    inc.dist_hospital_km = p.optional_distance(17);
    return inc;
}

struct NamedTime {
    std::string_view field;
    const std::optional<ClockTime>* value;
};

std::string order_message(std::string_view earlier, std::string_view later) {
    if (earlier == "t_fired" && later == "t_911") {
        return "911 preceded first shot";
    }
    if (earlier == "t_arrived" && later == "t_fired") {
        return "first shot preceded arrival";
    }
    if (earlier == "t_911" && later == "t_police") {
        return "police arrival preceded 911 call";
    }
    if (earlier == "t_police" && later == "t_stop") {
        return "stop preceded police arrival";
    }
    return std::string(later) + " precedes " + std::string(earlier);
}

} // namespace

std::string_view to_string(SchoolType type) {
    return type == SchoolType::Public ? "public" : "private";
}

std::string_view to_string(Location location) {
    return kLocationNames[static_cast<std::size_t>(location)];
}

std::optional<Location> location_from_string(std::string_view text) {
    for (std::size_t i = 0; i < kLocationNames.size(); ++i) {
        if (kLocationNames[i] == text) {
            return kLocations[i];
        }
    }
    return std::nullopt;
}

std::span<const Location> all_locations() { return kLocations; }

Date Date::parse(std::string_view iso) {
    auto bad = [&] { return std::invalid_argument("invalid ISO date '" + std::string(iso) + "'"); };
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') {
        throw bad();
    }
    auto y = parse_long(iso.substr(0, 4));
    auto m = parse_long(iso.substr(5, 2));
    auto d = parse_long(iso.substr(8, 2));
    if (!y || !m || !d || *m < 1 || *m > 12) {
        throw bad();
    }
    Date date{static_cast<int>(*y), static_cast<int>(*m), static_cast<int>(*d)};
    if (date.day < 1 || date.day > days_in_month(date.year, date.month)) {
        throw bad();
    }
    return date;
}

std::string Date::iso() const {
    std::array<char, 16> buf{};
    std::snprintf(buf.data(), buf.size(), "%04d-%02d-%02d", year, month, day);
    return buf.data();
}

ClockTime::ClockTime(int minute_of_day, int day_offset)
    : minute_of_day_(minute_of_day), day_offset_(day_offset) {
    if (minute_of_day < 0 || minute_of_day >= 24 * 60 || day_offset < 0) {
        throw std::invalid_argument("clock time out of range");
    }
}

ClockTime ClockTime::parse(std::string_view text) {
    auto bad = [&] {
        return std::invalid_argument("invalid clock time '" + std::string(text) +
                                     "' (expected H:MM AM|PM[+Nd])");
    };
    std::string_view s = trim(text);
    int day_offset = 0;
    if (auto plus = s.find('+'); plus != std::string_view::npos) {
        std::string_view suffix = trim(s.substr(plus + 1));
        s = trim(s.substr(0, plus));
        if (suffix.size() < 2 || suffix.back() != 'd') {
            throw bad();
        }
        auto days = parse_long(suffix.substr(0, suffix.size() - 1));
        if (!days || *days < 0) {
            throw bad();
        }
        day_offset = static_cast<int>(*days);
    }
    auto space = s.rfind(' ');
    if (space == std::string_view::npos) {
        throw bad();
    }
    std::string_view marker = s.substr(space + 1);
    std::string_view hm = trim(s.substr(0, space));
    auto colon = hm.find(':');
    if (colon == std::string_view::npos || hm.size() - colon - 1 != 2) {
        throw bad();
    }
    auto hour = parse_long(hm.substr(0, colon));
    auto minute = parse_long(hm.substr(colon + 1));
    if (!hour || !minute || *hour < 1 || *hour > 12 || *minute < 0 || *minute > 59) {
        throw bad();
    }
    int h24 = static_cast<int>(*hour % 12);
    if (marker == "PM") {
        h24 += 12;
    } else if (marker != "AM") {
        throw bad();
    }
    return ClockTime(h24 * 60 + static_cast<int>(*minute), day_offset);
}

ClockTime ClockTime::shifted(int minutes) const {
    int total = absolute_minutes() + minutes;
    if (total < 0) {
        throw std::invalid_argument("clock time shifted before the incident date");
    }
    return ClockTime(total % (24 * 60), total / (24 * 60));
}

std::string ClockTime::to_string() const {
    int h24 = minute_of_day_ / 60;
    int minute = minute_of_day_ % 60;
    int h12 = h24 % 12 == 0 ? 12 : h24 % 12;
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%d:%02d %s", h12, minute, h24 < 12 ? "AM" : "PM");
    std::string out = buf.data();
    if (day_offset_ > 0) {
        out += " +" + std::to_string(day_offset_) + "d";
    }
    return out;
}

CorpusError::CorpusError(std::size_t row, std::string column, const std::string& message)
    : std::runtime_error("row " + std::to_string(row) + ", column " + column + ": " + message),
      row_(row), column_(std::move(column)) {}

std::string_view incidents_header() {
    static const std::string header = [] {
        std::string h;
        for (std::size_t i = 0; i < kColumns.size(); ++i) {
            if (i != 0) {
                h.push_back(',');
            }
            h += kColumns[i];
        }
        return h;
    }();
    return header;
}

std::vector<Incident> parse_incidents(std::string_view csv_text) {
    if (csv_text.starts_with("\xEF\xBB\xBF")) {
        csv_text.remove_prefix(3);
    }
    std::vector<csv::Record> records;
    try {
        records = csv::parse(csv_text);
    } catch (const std::runtime_error& e) {
        throw CorpusError(0, "*", e.what());
    }
    if (records.empty() || csv::join(records.front().fields) != incidents_header()) {
        throw CorpusError(0, "header", "expected header '" + std::string(incidents_header()) + "'");
    }
    std::vector<Incident> out;
    out.reserve(records.size() - 1);
    for (std::size_t i = 1; i < records.size(); ++i) {
        out.push_back(parse_row(i, records[i].fields));
    }
    return out;
}

std::string serialize_incidents(std::span<const Incident> incidents) {
    auto opt_int = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string{}; };
    auto opt_time = [](const std::optional<ClockTime>& v) { return v ? v->to_string() : std::string{}; };
    auto opt_double = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; };

    std::ostringstream out;
    out << incidents_header() << '\n';
    for (const auto& inc : incidents) {
        csv::Row row{
            std::to_string(inc.id),
            inc.school_name,
            inc.city,
            inc.state,
            std::string(to_string(inc.school_type)),
            inc.date.iso(),
            std::to_string(inc.killed),
            std::to_string(inc.injured),
            opt_int(inc.bullets_fired),
            opt_time(inc.t_arrived),
            opt_time(inc.t_fired),
            opt_time(inc.t_911),
            opt_time(inc.t_police),
            opt_time(inc.t_stop),
            inc.weapon,
            inc.location ? std::string(to_string(*inc.location)) : std::string{},
            opt_double(inc.dist_police_km),
            opt_double(inc.dist_hospital_km),
        };
        out << csv::join(row) << '\n';
    }
    return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Incident> load_incidents(const std::filesystem::path& path) {
    return parse_incidents(read_text_file(path));
}

std::span<const std::string_view> us_state_codes() { return kStateCodes; }

bool is_us_state_code(std::string_view code) {
    return std::binary_search(kStateCodes.begin(), kStateCodes.end(), code);
}

ValidationReport validate(std::span<const Incident> incidents) {
    ValidationReport report;
    std::set<int> seen;

    for (const auto& inc : incidents) {
        auto error = [&](std::string field, std::string message) {
            report.errors.push_back({inc.id, std::move(field), std::move(message)});
        };
        if (!seen.insert(inc.id).second) {
            error("id", "duplicate id");
        }
        if (inc.killed < 0 || inc.injured < 0) {
            error(inc.killed < 0 ? "killed" : "injured", "negative count");
        }
        if (inc.casualty() < 4) {
            error("injured", "fewer than four victims shot (" + std::to_string(inc.casualty()) + ")");
        }
        if (inc.date < Date{kFirstYear, 1, 1} || inc.date > Date{kLastYear, 12, 31}) {
            error("date", "outside " + std::to_string(kFirstYear) + ".." + std::to_string(kLastYear));
        }
        if (!is_us_state_code(inc.state)) {
            error("state", "unknown state code '" + inc.state + "'");
        }

        const std::array<NamedTime, 5> sequence{{
            {"t_arrived", &inc.t_arrived},
            {"t_fired", &inc.t_fired},
            {"t_911", &inc.t_911},
            {"t_police", &inc.t_police},
            {"t_stop", &inc.t_stop},
        }};
        const NamedTime* previous = nullptr;
        for (const auto& current : sequence) {
            if (!current.value->has_value()) {
                continue;
            }
            if (previous != nullptr && **current.value < **previous->value) {
                report.warnings.push_back(
                    {inc.id, std::string(current.field),
                     order_message(previous->field, current.field) + " (" +
                         (*current.value)->to_string() + " < " + (*previous->value)->to_string() +
                         ")"});
            }
            previous = &current;
        }
    }

    const std::array<std::pair<SeriesLabel, int published::YearRow::*>, 4> fields{{
        {SeriesLabel::Events, &published::YearRow::events},
        {SeriesLabel::Killed, &published::YearRow::killed},
        {SeriesLabel::Injured, &published::YearRow::injured},
        {SeriesLabel::Casualty, &published::YearRow::casualty},
    }};
    std::vector<YearlySeries> series;
    for (const auto& [label, member] : fields) {
        series.push_back(yearly_series(incidents, label));
    }
    for (const auto& row : published::kYearly) {
        for (std::size_t f = 0; f < fields.size(); ++f) {
            double recomputed = series[f].at(row.year);
            double bundled = row.*(fields[f].second);
            if (recomputed != bundled) {
                report.cross_table_diffs.push_back({std::to_string(row.year),
                                                    std::string(to_string(fields[f].first)),
                                                    bundled, recomputed});
            }
        }
    }
    return report;
}

std::string_view to_string(SeriesLabel label) {
    switch (label) {
    case SeriesLabel::Events:
        return "events";
    case SeriesLabel::Killed:
        return "killed";
    case SeriesLabel::Injured:
        return "injured";
    case SeriesLabel::Casualty:
        return "casualty";
    }
    return "events";
}

std::optional<SeriesLabel> series_label_from_string(std::string_view text) {
    for (auto label : {SeriesLabel::Events, SeriesLabel::Killed, SeriesLabel::Injured,
                       SeriesLabel::Casualty}) {
        if (to_string(label) == text) {
            return label;
        }
    }
    if (text == "casualties") {
        return SeriesLabel::Casualty;
    }
    return std::nullopt;
}

double YearlySeries::at(int year) const {
    if (year < start_year || year > end_year()) {
        throw std::out_of_range("year " + std::to_string(year) + " outside series");
    }
    return values[static_cast<std::size_t>(year - start_year)];
}

double YearlySeries::total() const { return std::accumulate(values.begin(), values.end(), 0.0); }

YearlySeries yearly_series(std::span<const Incident> incidents, SeriesLabel label, int start_year,
                           int end_year) {
    if (end_year < start_year) {
        throw std::invalid_argument("yearly_series: end_year before start_year");
    }
    YearlySeries series{start_year, std::vector<double>(static_cast<std::size_t>(end_year - start_year + 1), 0.0),
                        label};
    for (const auto& inc : incidents) {
        int year = inc.date.year;
        if (year < start_year || year > end_year) {
            continue;
        }
        double amount = 0.0;
        switch (label) {
        case SeriesLabel::Events:
            amount = 1.0;
            break;
        case SeriesLabel::Killed:
            amount = inc.killed;
            break;
        case SeriesLabel::Injured:
            amount = inc.injured;
            break;
        case SeriesLabel::Casualty:
            amount = inc.casualty();
            break;
        }
        series.values[static_cast<std::size_t>(year - start_year)] += amount;
    }
    return series;
}

std::vector<LocationBin> location_histogram(std::span<const Incident> incidents) {
    std::vector<LocationBin> bins;
    if (incidents.empty()) {
        return bins;
    }
    std::array<int, kLocations.size()> counts{};
    int unknown = 0;
    for (const auto& inc : incidents) {
        if (inc.location) {
            ++counts[static_cast<std::size_t>(*inc.location)];
        } else {
            ++unknown;
        }
    }
    double total = static_cast<double>(incidents.size());
    auto percent = [&](int count) { return std::round(10000.0 * count / total) / 100.0; };
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] > 0) {
            bins.push_back({std::string(kLocationNames[i]), counts[i], percent(counts[i])});
        }
    }
    if (unknown > 0) {
        bins.push_back({"unknown", unknown, percent(unknown)});
    }
    return bins;
}

DiscrepancyList compare_locations(std::span<const LocationBin> bins) {
    DiscrepancyList diffs;
    for (const auto& cell : published::kLocations) {
        auto it = std::find_if(bins.begin(), bins.end(),
                               [&](const LocationBin& b) { return b.location == cell.location; });
        const double count = it == bins.end() ? 0.0 : it->count;
        const double pct = it == bins.end() ? 0.0 : it->percent;
        const std::string name(cell.location);
        if (count != cell.count) {
            diffs.push_back({name + ".count", count, static_cast<double>(cell.count)});
        }
        if (differs_at_precision(pct, cell.percent, 2)) {
            diffs.push_back({name + ".percent", pct, cell.percent});
        }
    }
    return diffs;
}

std::map<std::string, int> state_counts(std::span<const Incident> incidents) {
    std::map<std::string, int> counts;
    for (const auto& inc : incidents) {
        ++counts[inc.state];
    }
    return counts;
}

int state_count(const std::map<std::string, int>& counts, std::string_view state) {
    auto it = counts.find(std::string(state));
    return it == counts.end() ? 0 : it->second;
}

std::map<std::string, int> parse_state_counts(std::string_view csv_text) {
    auto records = csv::parse(csv_text);
    if (records.empty() || records.front().fields.size() != 2 ||
        trim(records.front().fields[0]) != "state") {
        throw CorpusError(0, "header", "expected header 'state,count'");
    }
    std::map<std::string, int> counts;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& f = records[i].fields;
        if (f.size() != 2) {
            throw CorpusError(i, "*", "expected 2 fields");
        }
        std::string state(trim(f[0]));
        if (!is_us_state_code(state)) {
            throw CorpusError(i, "state", "unknown state code '" + state + "'");
        }
        auto count = parse_long(f[1]);
        if (!count || *count < 0) {
            throw CorpusError(i, "count", "count must be a non-negative integer");
        }
        if (!counts.emplace(state, static_cast<int>(*count)).second) {
            throw CorpusError(i, "state", "duplicate state " + state);
        }
    }
    return counts;
}

} // namespace mss
