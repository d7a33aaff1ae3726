#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mss/corpus.hpp"
#include "mss/discrepancy.hpp"
#include "mss/regression.hpp"
#include "mss/svr.hpp"
#include "mss/zip.hpp"

namespace mss {

enum class Target { Events, Casualties };
enum class Variant { WithCovid, WithoutCovid };
enum class ModelKind { Zip, Ols, SvrLinear, SvrRbf };

std::string_view to_string(Target target);
std::string_view to_string(Variant variant);
std::string_view model_name(ModelKind kind);
/// "1".."4" in table order.
std::string_view model_number(ModelKind kind);
std::optional<Target> target_from_string(std::string_view text);
std::optional<Variant> variant_from_string(std::string_view text);
std::span<const ModelKind> all_models();

/// Year covariates. OLS and SVR use year - center; ZIP additionally divides
/// by zip_scale before the exponential links.
struct YearEncoding {
    double center = 2011.5;
    double zip_scale = 10.0;

    double centered(int year) const { return year - center; }
    double zip(int year) const { return (year - center) / zip_scale; }
};

struct RegressionDataset {
    std::vector<int> years;
    std::vector<double> ys;
    Variant variant = Variant::WithCovid;

    std::size_t size() const { return years.size(); }
};

/// Training-data label built from the year runs, e.g. "1999-2024" or
/// "1999-2021 and 2024".
std::string training_label(std::span<const int> years);

/// Years parsed from "2020-2023" or "2022,2023" style lists.
std::vector<int> parse_year_list(std::string_view text);

/// The series restricted to its variant: all years, or all years except
/// `excluded_years` for without_covid.
RegressionDataset make_dataset(const YearlySeries& series, Variant variant,
                               std::span<const int> excluded_years);

struct Split {
    RegressionDataset train;
    RegressionDataset test;
};

/// Chronological split holding out the last ceil(holdout_fraction * n)
/// points.
Split chronological_split(const RegressionDataset& data, double holdout_fraction);

struct Metrics {
    double mse = 0.0;
    double mae = 0.0;
    /// Absent when every actual is zero.
    std::optional<double> mape;
    int mape_excluded = 0;
};

Metrics metrics(std::span<const double> actual, std::span<const double> predicted);

struct ForecastOptions {
    double svr_c = 1.0;
    double svr_epsilon = 0.1;
    /// RBF width; default 1 / var(centered training years).
    std::optional<double> svr_gamma;
    std::vector<int> excluded_years{2022, 2023};
    double holdout_fraction = 0.2;
    int first_forecast_year = 2025;
    int last_forecast_year = 2030;
    YearEncoding encoding;
    ZipOptions zip;
};

/// A fitted model of any kind, predicting in calendar years.
class FittedModel {
public:
    using Fit = std::variant<regression::LinearFit, ZipModel, SvrModel>;

    FittedModel(ModelKind kind, Fit fit, YearEncoding encoding);

    ModelKind kind() const { return kind_; }
    const Fit& fit() const { return fit_; }
    const YearEncoding& encoding() const { return encoding_; }

    double predict_raw(int year) const;
    /// Count predictions clamped at 0 from below.
    double predict(int year) const;
    std::vector<double> predict_raw(std::span<const int> years) const;
    std::vector<double> predict(std::span<const int> years) const;

private:
    ModelKind kind_;
    Fit fit_;
    YearEncoding encoding_;
};

/// Population variance of the centered years.
double default_rbf_gamma(std::span<const int> years, const YearEncoding& encoding);

FittedModel fit_model(ModelKind kind, const RegressionDataset& train,
                      const ForecastOptions& options);

struct ForecastRow {
    std::string model_id;
    std::string model_name;
    ModelKind kind = ModelKind::Ols;
    Target target = Target::Events;
    Variant variant = Variant::WithCovid;
    std::vector<int> years;
    std::vector<double> predictions_raw;
    std::vector<double> predictions_clamped;
    Metrics holdout;
    std::string training_label;
    int train_size = 0;
    int test_size = 0;
};

std::vector<int> forecast_years(const ForecastOptions& options);

/// One row: fit on the chronological training part, predict the forecast
/// years, score on the held-out part.
ForecastRow run_model(const YearlySeries& series, Target target, ModelKind kind, Variant variant,
                      const ForecastOptions& options);

/// Eight rows (4 models x 2 variants) for one target, in table order
/// 1a, 1b, 2a, ... 4b. Fits run concurrently.
std::vector<ForecastRow> run_target(std::span<const Incident> incidents, Target target,
                                    const ForecastOptions& options = {});

/// Sixteen rows: events then casualties.
std::vector<ForecastRow> run_harness(std::span<const Incident> incidents,
                                     const ForecastOptions& options = {});

/// Per-year mean of raw predictions across rows.
std::vector<double> average_predictions(std::span<const ForecastRow> rows);

/// Differences at 2 decimals against the printed forecast table of `target`.
DiscrepancyList compare_forecasts(std::span<const ForecastRow> rows, Target target);

/// Plot-ready series for the forecast figures: observed values through the
/// last observed year, then each row's raw forecast and the average.
struct FigureSeries {
    std::vector<int> years;
    std::vector<std::optional<double>> observed;
    std::vector<std::string> row_ids;
    /// columns[k][y]: forecast of row k for years[y], absent for observed years.
    std::vector<std::vector<std::optional<double>>> columns;
    std::vector<std::optional<double>> average;
};

FigureSeries figure_series(const YearlySeries& observed, std::span<const ForecastRow> rows);

SeriesLabel series_label(Target target);

} // namespace mss
