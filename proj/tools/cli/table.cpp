#include "cli/table.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mss/csv.hpp"

namespace mss::cli {

namespace {

using nlohmann::json;

bool looks_numeric(const std::string& cell) {
    if (cell.empty()) {
        return false;
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    return ec == std::errc{} && ptr == cell.data() + cell.size() && std::isfinite(v);
}

json cell_json(const std::string& cell) {
    if (cell.empty()) {
        return nullptr;
    }
    if (looks_numeric(cell)) {
        if (cell.find_first_of(".eE") == std::string::npos) {
            return std::stoll(cell);
        }
        return std::stod(cell);
    }
    return cell;
}

json table_json(const Table& table) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            obj[table.columns[i]] = cell_json(row[i]);
        }
        rows.push_back(std::move(obj));
    }
    return json{{"title", table.title}, {"columns", table.columns}, {"rows", rows}};
}

json diffs_json(const std::map<std::string, DiscrepancyList>& diffs) {
    json out = json::object();
    for (const auto& [name, list] : diffs) {
        json arr = json::array();
        for (const auto& d : list) {
            arr.push_back({{"cell", d.cell}, {"computed", d.computed}, {"published", d.published}});
        }
        out[name] = std::move(arr);
    }
    return out;
}

std::string markdown_cell(const std::string& cell) {
    std::string out;
    for (char c : cell) {
        if (c == '|') {
            out += "\\|";
        } else {
            out += c;
        }
    }
    return out;
}

} // namespace

std::optional<Format> format_from_string(std::string_view text) {
    if (text == "csv") {
        return Format::Csv;
    }
    if (text == "json") {
        return Format::Json;
    }
    if (text == "md") {
        return Format::Markdown;
    }
    return std::nullopt;
}

std::string_view extension(Format format) {
    switch (format) {
    case Format::Csv:
        return "csv";
    case Format::Json:
        return "json";
    case Format::Markdown:
        return "md";
    }
    return "txt";
}

void Table::add_row(std::vector<std::string> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("table " + name + ": row has " + std::to_string(row.size()) +
                               " cells, expected " + std::to_string(columns.size()));
    }
    rows.push_back(std::move(row));
}

std::string fixed(double value, int decimals) {
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
    std::string s(buf);
    if (s.find_first_not_of("-0.") == std::string::npos) {
        // Avoid "-0.00".
        if (s.front() == '-') {
            s.erase(0, 1);
        }
    }
    return s;
}

std::string significant(double value, int digits) {
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

std::string integer(long value) { return std::to_string(value); }

std::string optional_fixed(const std::optional<double>& value, int decimals) {
    return value ? fixed(*value, decimals) : std::string();
}

std::string render_table(const Table& table, Format format) {
    std::ostringstream os;
    switch (format) {
    case Format::Csv:
        os << csv::join(table.columns) << '\n';
        for (const auto& row : table.rows) {
            os << csv::join(row) << '\n';
        }
        break;
    case Format::Json:
        os << table_json(table).dump(2) << '\n';
        break;
    case Format::Markdown: {
        os << "## " << table.title << "\n\n|";
        for (const auto& c : table.columns) {
            os << ' ' << markdown_cell(c) << " |";
        }
        os << "\n|";
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            os << " --- |";
        }
        os << '\n';
        for (const auto& row : table.rows) {
            os << '|';
            for (const auto& cell : row) {
                os << ' ' << markdown_cell(cell) << " |";
            }
            os << '\n';
        }
        break;
    }
    }
    return os.str();
}

Table diffs_table(const std::map<std::string, DiscrepancyList>& diffs) {
    Table t{"diffs", "Differences from published values", {"table", "cell", "computed", "published"}, {}};
    for (const auto& [name, list] : diffs) {
        for (const auto& d : list) {
            t.add_row({name, d.cell, significant(d.computed, 10), significant(d.published, 10)});
        }
    }
    return t;
}

std::string render_bundle(const Bundle& bundle, Format format,
                          const std::optional<std::string>& stamp) {
    std::ostringstream os;
    switch (format) {
    case Format::Json: {
        json doc = json::object();
        json tables = json::object();
        for (const auto& t : bundle.tables) {
            tables[t.name] = table_json(t);
        }
        doc["tables"] = std::move(tables);
        doc["diffs"] = diffs_json(bundle.diffs);
        if (stamp) {
            doc["generated_at"] = *stamp;
        }
        os << doc.dump(2) << '\n';
        break;
    }
    case Format::Csv: {
        if (stamp) {
            os << "# generated_at " << *stamp << "\n\n";
        }
        bool first = true;
        for (const auto& t : bundle.tables) {
            if (!first) {
                os << '\n';
            }
            first = false;
            os << "# " << t.name << '\n' << render_table(t, format);
        }
        if (!bundle.diffs.empty()) {
            os << "\n# diffs\n" << render_table(diffs_table(bundle.diffs), format);
        }
        break;
    }
    case Format::Markdown: {
        if (stamp) {
            os << "Generated at " << *stamp << "\n\n";
        }
        for (const auto& t : bundle.tables) {
            os << render_table(t, format) << '\n';
        }
        if (!bundle.diffs.empty()) {
            os << "## Differences from published values\n\n";
            for (const auto& [name, list] : bundle.diffs) {
                os << "### " << name << "\n\n";
                if (list.empty()) {
                    os << "none\n\n";
                    continue;
                }
                os << "| cell | computed | published |\n| --- | --- | --- |\n";
                for (const auto& d : list) {
                    os << "| " << markdown_cell(d.cell) << " | " << significant(d.computed, 10)
                       << " | " << significant(d.published, 10) << " |\n";
                }
                os << '\n';
            }
        }
        break;
    }
    }
    return os.str();
}

} // namespace mss::cli
