#include "mss/forecast.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <stdexcept>

#include "mss/published.hpp"

namespace mss {

namespace {

constexpr std::array<ModelKind, 4> kModels{ModelKind::Zip, ModelKind::Ols, ModelKind::SvrLinear,
                                           ModelKind::SvrRbf};

int parse_year(std::string_view text) {
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    int year = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), year);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw std::invalid_argument("invalid year '" + std::string(text) + "'");
    }
    return year;
}

std::vector<double> centered_years(const RegressionDataset& data, const YearEncoding& enc) {
    std::vector<double> xs;
    xs.reserve(data.size());
    for (int y : data.years) {
        xs.push_back(enc.centered(y));
    }
    return xs;
}

const std::array<published::ForecastCells, 8>& published_rows(Target target) {
    return target == Target::Events ? published::kIncidentForecasts : published::kCasualtyForecasts;
}

const std::array<double, 6>& published_average(Target target) {
    return target == Target::Events ? published::kIncidentForecastAverage
                                    : published::kCasualtyForecastAverage;
}

} // namespace

std::string_view to_string(Target target) {
    return target == Target::Events ? "events" : "casualties";
}

std::string_view to_string(Variant variant) {
    return variant == Variant::WithCovid ? "with_covid" : "without_covid";
}

std::string_view model_name(ModelKind kind) {
    switch (kind) {
    case ModelKind::Zip:
        return "Zero-Inflated Poisson";
    case ModelKind::Ols:
        return "Linear Regression";
    case ModelKind::SvrLinear:
        return "SVR Linear";
    case ModelKind::SvrRbf:
        return "SVR RBF";
    }
    return "";
}

std::string_view model_number(ModelKind kind) {
    switch (kind) {
    case ModelKind::Zip:
        return "1";
    case ModelKind::Ols:
        return "2";
    case ModelKind::SvrLinear:
        return "3";
    case ModelKind::SvrRbf:
        return "4";
    }
    return "";
}

std::optional<Target> target_from_string(std::string_view text) {
    if (text == "events") {
        return Target::Events;
    }
    if (text == "casualties" || text == "casualty") {
        return Target::Casualties;
    }
    return std::nullopt;
}

std::optional<Variant> variant_from_string(std::string_view text) {
    if (text == "with_covid") {
        return Variant::WithCovid;
    }
    if (text == "without_covid") {
        return Variant::WithoutCovid;
    }
    return std::nullopt;
}

std::span<const ModelKind> all_models() { return kModels; }

SeriesLabel series_label(Target target) {
    return target == Target::Events ? SeriesLabel::Events : SeriesLabel::Casualty;
}

std::string training_label(std::span<const int> years) {
    std::vector<std::string> runs;
    std::size_t i = 0;
    while (i < years.size()) {
        std::size_t j = i;
        while (j + 1 < years.size() && years[j + 1] == years[j] + 1) {
            ++j;
        }
        if (j == i) {
            runs.push_back(std::to_string(years[i]));
        } else {
            runs.push_back(std::to_string(years[i]) + "-" + std::to_string(years[j]));
        }
        i = j + 1;
    }
    std::string label;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        if (k > 0) {
            label += k + 1 == runs.size() ? " and " : ", ";
        }
        label += runs[k];
    }
    return label;
}

std::vector<int> parse_year_list(std::string_view text) {
    std::vector<int> years;
    while (!text.empty()) {
        auto comma = text.find(',');
        std::string_view item = text.substr(0, comma);
        auto dash = item.find('-');
        if (dash == std::string_view::npos) {
            years.push_back(parse_year(item));
        } else {
            int from = parse_year(item.substr(0, dash));
            int to = parse_year(item.substr(dash + 1));
            if (to < from) {
                throw std::invalid_argument("invalid year range '" + std::string(item) + "'");
            }
            for (int y = from; y <= to; ++y) {
                years.push_back(y);
            }
        }
        if (comma == std::string_view::npos) {
            break;
        }
        text.remove_prefix(comma + 1);
    }
    std::sort(years.begin(), years.end());
    years.erase(std::unique(years.begin(), years.end()), years.end());
    return years;
}

RegressionDataset make_dataset(const YearlySeries& series, Variant variant,
                               std::span<const int> excluded_years) {
    RegressionDataset data;
    data.variant = variant;
    for (int year = series.start_year; year <= series.end_year(); ++year) {
        if (variant == Variant::WithoutCovid &&
            std::find(excluded_years.begin(), excluded_years.end(), year) != excluded_years.end()) {
            continue;
        }
        data.years.push_back(year);
        data.ys.push_back(series.at(year));
    }
    return data;
}

Split chronological_split(const RegressionDataset& data, double holdout_fraction) {
    if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0)) {
        throw std::invalid_argument("chronological_split: fraction must lie in (0, 1)");
    }
    const std::size_t n = data.size();
    const auto test_n =
        static_cast<std::size_t>(std::ceil(holdout_fraction * static_cast<double>(n) - 1e-9));
    if (test_n == 0 || test_n + 2 > n) {
        throw std::invalid_argument("chronological_split: series too short");
    }
    const std::size_t train_n = n - test_n;
    Split split;
    split.train.variant = split.test.variant = data.variant;
    split.train.years.assign(data.years.begin(), data.years.begin() + train_n);
    split.train.ys.assign(data.ys.begin(), data.ys.begin() + train_n);
    split.test.years.assign(data.years.begin() + train_n, data.years.end());
    split.test.ys.assign(data.ys.begin() + train_n, data.ys.end());
    return split;
}

Metrics metrics(std::span<const double> actual, std::span<const double> predicted) {
    if (actual.size() != predicted.size()) {
        throw std::invalid_argument("metrics: length mismatch");
    }
    if (actual.empty()) {
        throw std::invalid_argument("metrics: empty input");
    }
    Metrics m;
    double ape = 0.0;
    int ape_n = 0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = actual[i] - predicted[i];
        m.mse += e * e;
        m.mae += std::fabs(e);
        if (actual[i] != 0.0) {
            ape += std::fabs(e) / std::fabs(actual[i]);
            ++ape_n;
        } else {
            ++m.mape_excluded;
        }
    }
    const double n = static_cast<double>(actual.size());
    m.mse /= n;
    m.mae /= n;
    if (ape_n > 0) {
        m.mape = ape / ape_n;
    }
    return m;
}

FittedModel::FittedModel(ModelKind kind, Fit fit, YearEncoding encoding)
    : kind_(kind), fit_(std::move(fit)), encoding_(encoding) {}

double FittedModel::predict_raw(int year) const {
    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, ZipModel>) {
                return f.mean(encoding_.zip(year));
            } else {
                return f.predict(encoding_.centered(year));
            }
        },
        fit_);
}

double FittedModel::predict(int year) const { return std::max(0.0, predict_raw(year)); }

std::vector<double> FittedModel::predict_raw(std::span<const int> years) const {
    std::vector<double> out;
    out.reserve(years.size());
    for (int y : years) {
        out.push_back(predict_raw(y));
    }
    return out;
}

std::vector<double> FittedModel::predict(std::span<const int> years) const {
    std::vector<double> out;
    out.reserve(years.size());
    for (int y : years) {
        out.push_back(predict(y));
    }
    return out;
}

double default_rbf_gamma(std::span<const int> years, const YearEncoding& encoding) {
    if (years.size() < 2) {
        throw std::invalid_argument("default_rbf_gamma: need at least 2 years");
    }
    double mean = 0.0;
    for (int y : years) {
        mean += encoding.centered(y);
    }
    mean /= static_cast<double>(years.size());
    double var = 0.0;
    for (int y : years) {
        const double d = encoding.centered(y) - mean;
        var += d * d;
    }
    var /= static_cast<double>(years.size());
    return 1.0 / var;
}

FittedModel fit_model(ModelKind kind, const RegressionDataset& train,
                      const ForecastOptions& options) {
    const auto& enc = options.encoding;
    switch (kind) {
    case ModelKind::Ols:
        return {kind, regression::fit_ols(centered_years(train, enc), train.ys), enc};
    case ModelKind::Zip: {
        std::vector<double> xs;
        for (int y : train.years) {
            xs.push_back(enc.zip(y));
        }
        return {kind, fit_zip(xs, train.ys, options.zip), enc};
    }
    case ModelKind::SvrLinear:
    case ModelKind::SvrRbf: {
        SvrParams params;
        params.kernel = kind == ModelKind::SvrLinear ? SvrKernel::Linear : SvrKernel::Rbf;
        params.c = options.svr_c;
        params.epsilon = options.svr_epsilon;
        params.gamma = options.svr_gamma ? *options.svr_gamma : default_rbf_gamma(train.years, enc);
        return {kind, fit_svr(centered_years(train, enc), train.ys, params), enc};
    }
    }
    throw std::invalid_argument("fit_model: unknown model kind");
}

std::vector<int> forecast_years(const ForecastOptions& options) {
    std::vector<int> years;
    for (int y = options.first_forecast_year; y <= options.last_forecast_year; ++y) {
        years.push_back(y);
    }
    return years;
}

ForecastRow run_model(const YearlySeries& series, Target target, ModelKind kind, Variant variant,
                      const ForecastOptions& options) {
    const auto data = make_dataset(series, variant, options.excluded_years);
    const auto split = chronological_split(data, options.holdout_fraction);
    const auto model = fit_model(kind, split.train, options);

    ForecastRow row;
    row.model_id = std::string(model_number(kind)) + (variant == Variant::WithCovid ? "a" : "b");
    row.model_name = std::string(model_name(kind));
    row.kind = kind;
    row.target = target;
    row.variant = variant;
    row.years = forecast_years(options);
    row.predictions_raw = model.predict_raw(row.years);
    row.predictions_clamped = model.predict(row.years);
    row.holdout = metrics(split.test.ys, model.predict_raw(split.test.years));
    row.training_label = training_label(data.years);
    row.train_size = static_cast<int>(split.train.size());
    row.test_size = static_cast<int>(split.test.size());
    return row;
}

std::vector<ForecastRow> run_target(std::span<const Incident> incidents, Target target,
                                    const ForecastOptions& options) {
    const auto series = yearly_series(incidents, series_label(target));
    std::vector<std::future<ForecastRow>> jobs;
    for (ModelKind kind : kModels) {
        for (Variant variant : {Variant::WithCovid, Variant::WithoutCovid}) {
            jobs.push_back(std::async(std::launch::async, [&series, target, kind, variant, &options] {
                return run_model(series, target, kind, variant, options);
            }));
        }
    }
    std::vector<ForecastRow> rows;
    rows.reserve(jobs.size());
    for (auto& job : jobs) {
        rows.push_back(job.get());
    }
    return rows;
}

std::vector<ForecastRow> run_harness(std::span<const Incident> incidents,
                                     const ForecastOptions& options) {
    auto events = std::async(std::launch::async,
                             [&] { return run_target(incidents, Target::Events, options); });
    auto rows = run_target(incidents, Target::Casualties, options);
    auto out = events.get();
    out.insert(out.end(), rows.begin(), rows.end());
    return out;
}

std::vector<double> average_predictions(std::span<const ForecastRow> rows) {
    if (rows.empty()) {
        return {};
    }
    std::vector<double> avg(rows.front().predictions_raw.size(), 0.0);
    for (const auto& row : rows) {
        if (row.predictions_raw.size() != avg.size()) {
            throw std::invalid_argument("average_predictions: rows cover different years");
        }
        for (std::size_t k = 0; k < avg.size(); ++k) {
            avg[k] += row.predictions_raw[k];
        }
    }
    for (double& v : avg) {
        v /= static_cast<double>(rows.size());
    }
    return avg;
}

DiscrepancyList compare_forecasts(std::span<const ForecastRow> rows, Target target) {
    DiscrepancyList diffs;
    std::vector<ForecastRow> selected;
    for (const auto& row : rows) {
        if (row.target == target) {
            selected.push_back(row);
        }
    }
    for (const auto& cell : published_rows(target)) {
        auto it = std::find_if(selected.begin(), selected.end(),
                               [&](const ForecastRow& r) { return r.model_id == cell.model_id; });
        if (it == selected.end()) {
            continue;
        }
        const std::string id(cell.model_id);
        for (std::size_t k = 0; k < cell.predictions.size() && k < it->years.size(); ++k) {
            if (differs_at_precision(it->predictions_raw[k], cell.predictions[k], 2)) {
                diffs.push_back({id + ".y" + std::to_string(it->years[k]), it->predictions_raw[k],
                                 cell.predictions[k]});
            }
        }
        if (differs_at_precision(it->holdout.mse, cell.mse, 2)) {
            diffs.push_back({id + ".mse", it->holdout.mse, cell.mse});
        }
        if (differs_at_precision(it->holdout.mae, cell.mae, 2)) {
            diffs.push_back({id + ".mae", it->holdout.mae, cell.mae});
        }
    }
    if (!selected.empty()) {
        const auto avg = average_predictions(selected);
        const auto& pub = published_average(target);
        for (std::size_t k = 0; k < pub.size() && k < avg.size(); ++k) {
            if (differs_at_precision(avg[k], pub[k], 2)) {
                diffs.push_back({"average.y" + std::to_string(selected.front().years[k]), avg[k],
                                 pub[k]});
            }
        }
    }
    return diffs;
}

FigureSeries figure_series(const YearlySeries& observed, std::span<const ForecastRow> rows) {
    FigureSeries fig;
    int last = observed.end_year();
    for (const auto& row : rows) {
        if (!row.years.empty()) {
            last = std::max(last, row.years.back());
        }
    }
    for (int y = observed.start_year; y <= last; ++y) {
        fig.years.push_back(y);
        fig.observed.push_back(y <= observed.end_year() ? std::optional(observed.at(y))
                                                        : std::nullopt);
    }
    const auto avg = average_predictions(rows);
    fig.average.assign(fig.years.size(), std::nullopt);
    for (const auto& row : rows) {
        fig.row_ids.push_back(row.model_id);
        std::vector<std::optional<double>> column(fig.years.size());
        for (std::size_t k = 0; k < row.years.size(); ++k) {
            const auto pos = static_cast<std::size_t>(row.years[k] - observed.start_year);
            if (pos < column.size()) {
                column[pos] = row.predictions_raw[k];
                fig.average[pos] = avg[k];
            }
        }
        fig.columns.push_back(std::move(column));
    }
    return fig;
}

} // namespace mss
