#include <gtest/gtest.h>

#include <algorithm>

#include "mss/corpus_files.hpp"
#include "mss/forecast.hpp"

namespace {

const std::vector<mss::Incident>& incidents() {
    static const auto all = mss::load_corpus(mss::default_data_dir()).incidents;
    return all;
}

const mss::ForecastRow& row(const std::vector<mss::ForecastRow>& rows, std::string_view id) {
    return *std::find_if(rows.begin(), rows.end(),
                         [&](const mss::ForecastRow& r) { return r.model_id == id; });
}

} // namespace

TEST(Metrics, SmallCase) {
    std::vector<double> actual{0, 2};
    std::vector<double> predicted{1, 1};
    auto m = mss::metrics(actual, predicted);
    EXPECT_DOUBLE_EQ(m.mse, 1.0);
    EXPECT_DOUBLE_EQ(m.mae, 1.0);
    ASSERT_TRUE(m.mape);
    EXPECT_DOUBLE_EQ(*m.mape, 0.5);
    EXPECT_EQ(m.mape_excluded, 1);
}

TEST(Metrics, AllZeroActualsHaveNoMape) {
    std::vector<double> actual{0, 0};
    std::vector<double> predicted{1, 3};
    EXPECT_FALSE(mss::metrics(actual, predicted).mape.has_value());
}

TEST(Metrics, PermutationInvariant) {
    std::vector<double> a{1, 4, 0, 2, 7};
    std::vector<double> p{2, 3, 1, 2, 5};
    auto base = mss::metrics(a, p);
    std::vector<std::size_t> idx{3, 0, 4, 2, 1};
    std::vector<double> a2;
    std::vector<double> p2;
    for (auto i : idx) {
        a2.push_back(a[i]);
        p2.push_back(p[i]);
    }
    auto moved = mss::metrics(a2, p2);
    EXPECT_DOUBLE_EQ(moved.mse, base.mse);
    EXPECT_DOUBLE_EQ(moved.mae, base.mae);
    EXPECT_DOUBLE_EQ(*moved.mape, *base.mape);
}

TEST(Dataset, TrainingLabels) {
    std::vector<int> all;
    for (int y = 1999; y <= 2024; ++y) {
        all.push_back(y);
    }
    EXPECT_EQ(mss::training_label(all), "1999-2024");
    std::vector<int> gap(all.begin(), all.end());
    gap.erase(std::remove_if(gap.begin(), gap.end(), [](int y) { return y == 2022 || y == 2023; }),
              gap.end());
    EXPECT_EQ(mss::training_label(gap), "1999-2021 and 2024");
    std::vector<int> three{2000, 2002, 2003, 2007};
    EXPECT_EQ(mss::training_label(three), "2000, 2002-2003 and 2007");
}

TEST(Dataset, YearLists) {
    EXPECT_EQ(mss::parse_year_list("2020-2023"), (std::vector<int>{2020, 2021, 2022, 2023}));
    EXPECT_EQ(mss::parse_year_list("2022,2023"), (std::vector<int>{2022, 2023}));
    EXPECT_THROW(mss::parse_year_list("20x2"), std::invalid_argument);
}

TEST(Dataset, ChronologicalSplit) {
    auto events = mss::yearly_series(incidents(), mss::SeriesLabel::Events);
    std::vector<int> excluded{2022, 2023};
    auto data = mss::make_dataset(events, mss::Variant::WithCovid, excluded);
    ASSERT_EQ(data.size(), 26u);
    auto split = mss::chronological_split(data, 0.2);
    EXPECT_EQ(split.test.size(), 6u);
    EXPECT_EQ(split.train.years.back(), 2018);
    EXPECT_EQ(split.test.years.front(), 2019);
    auto without = mss::make_dataset(events, mss::Variant::WithoutCovid, excluded);
    EXPECT_EQ(without.size(), 24u);
}

TEST(Forecast, OlsEventsRow) {
    auto r = mss::run_model(mss::yearly_series(incidents(), mss::SeriesLabel::Events),
                            mss::Target::Events, mss::ModelKind::Ols, mss::Variant::WithCovid, {});
    EXPECT_EQ(r.model_id, "2a");
    EXPECT_EQ(r.training_label, "1999-2024");
    EXPECT_NEAR(r.predictions_raw.front(), 2.13, 0.02);
    // Increasing trend.
    EXPECT_TRUE(std::is_sorted(r.predictions_raw.begin(), r.predictions_raw.end()));
}

TEST(Forecast, OlsCasualtiesRow) {
    auto r = mss::run_model(mss::yearly_series(incidents(), mss::SeriesLabel::Casualty),
                            mss::Target::Casualties, mss::ModelKind::Ols, mss::Variant::WithCovid,
                            {});
    EXPECT_NEAR(r.predictions_raw.front(), 30.77, 0.3);
}

TEST(Forecast, HarnessLayout) {
    auto rows = mss::run_harness(incidents());
    ASSERT_EQ(rows.size(), 16u);
    const std::vector<std::string> ids{"1a", "1b", "2a", "2b", "3a", "3b", "4a", "4b"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].model_id, ids[i % 8]);
        EXPECT_EQ(rows[i].target, i < 8 ? mss::Target::Events : mss::Target::Casualties);
        EXPECT_EQ(rows[i].years.front(), 2025);
        EXPECT_EQ(rows[i].years.back(), 2030);
        EXPECT_EQ(rows[i].training_label,
                  i % 2 == 0 ? "1999-2024" : "1999-2021 and 2024");
        for (double v : rows[i].predictions_clamped) {
            EXPECT_GE(v, 0.0);
        }
    }
}

TEST(Forecast, ConcurrentMatchesSequential) {
    auto concurrent = mss::run_target(incidents(), mss::Target::Events);
    auto events = mss::yearly_series(incidents(), mss::SeriesLabel::Events);
    std::size_t i = 0;
    for (auto kind : mss::all_models()) {
        for (auto variant : {mss::Variant::WithCovid, mss::Variant::WithoutCovid}) {
            auto seq = mss::run_model(events, mss::Target::Events, kind, variant, {});
            EXPECT_EQ(seq.predictions_raw, concurrent[i].predictions_raw) << seq.model_id;
            EXPECT_EQ(seq.holdout.mse, concurrent[i].holdout.mse);
            ++i;
        }
    }
}

TEST(Forecast, QualitativeBandsForEvents) {
    auto rows = mss::run_target(incidents(), mss::Target::Events);
    double zip = row(rows, "1a").predictions_raw.front();
    EXPECT_GE(zip, 2.0);
    EXPECT_LE(zip, 3.0);
    for (auto id : {"3a", "4a"}) {
        double svr = row(rows, id).predictions_raw.front();
        EXPECT_GE(svr, 1.0) << id;
        EXPECT_LE(svr, 2.0) << id;
    }
}

TEST(Forecast, DroppingLateYearsWorsensCasualtyHoldout) {
    auto rows = mss::run_target(incidents(), mss::Target::Casualties);
    for (std::size_t i = 0; i < rows.size(); i += 2) {
        EXPECT_GT(rows[i + 1].holdout.mse, rows[i].holdout.mse) << rows[i].model_id;
    }
}

TEST(Forecast, AverageOfRows) {
    auto rows = mss::run_target(incidents(), mss::Target::Events);
    auto avg = mss::average_predictions(rows);
    ASSERT_EQ(avg.size(), 6u);
    double sum = 0.0;
    for (const auto& r : rows) {
        sum += r.predictions_raw[0];
    }
    EXPECT_NEAR(avg[0], sum / 8.0, 1e-12);
}

TEST(Forecast, FigureSeriesShape) {
    auto events = mss::yearly_series(incidents(), mss::SeriesLabel::Events);
    auto rows = mss::run_target(incidents(), mss::Target::Events);
    auto fig = mss::figure_series(events, rows);
    EXPECT_EQ(fig.years.front(), 1999);
    EXPECT_EQ(fig.years.back(), 2030);
    EXPECT_EQ(fig.columns.size(), 8u);
    EXPECT_TRUE(fig.observed[25].has_value());
    EXPECT_FALSE(fig.observed[26].has_value());
    EXPECT_FALSE(fig.columns[0][25].has_value());
    EXPECT_TRUE(fig.average[26].has_value());
}

TEST(Forecast, RbfGammaIsInverseVariance) {
    std::vector<int> years{2000, 2001, 2002};
    mss::YearEncoding enc;
    EXPECT_NEAR(mss::default_rbf_gamma(years, enc), 1.0 / (2.0 / 3.0), 1e-12);
}
