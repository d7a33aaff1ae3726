#include <gtest/gtest.h>

#include <algorithm>

#include "mss/corpus_files.hpp"
#include "mss/timeline.hpp"

namespace {

const mss::CorpusBundle& bundle() {
    static const auto b = mss::load_corpus(mss::default_data_dir());
    return b;
}

const mss::Incident& incident_named(std::string_view name) {
    const auto& all = bundle().incidents;
    return *std::find_if(all.begin(), all.end(),
                         [&](const mss::Incident& i) { return i.school_name == name; });
}

mss::TimelineBreakdown phases(double kiv, double va, double pom, double shoot, double crime) {
    return {0, kiv, va, pom, shoot, crime, {}};
}

} // namespace

TEST(DerivePhases, Covenant) {
    auto b = mss::derive_phases(incident_named("The Covenant School"));
    EXPECT_EQ(b.kiv_min, 17);
    EXPECT_EQ(b.va_min, 2);
    EXPECT_EQ(b.pom_min, 10);
    EXPECT_EQ(b.shootout_min, 4);
    EXPECT_EQ(b.crime_time_min, 16);
    EXPECT_TRUE(b.anomaly_free());
}

TEST(DerivePhases, Columbine) {
    auto b = mss::derive_phases(incident_named("Columbine High School"));
    EXPECT_EQ(b.kiv_min, 4);
    EXPECT_EQ(b.va_min, 3);
    EXPECT_EQ(b.pom_min, 2);
    EXPECT_EQ(b.shootout_min, 44);
    EXPECT_EQ(b.crime_time_min, 49);
}

TEST(DerivePhases, EarlyCallClampedAndFlagged) {
    auto b = mss::derive_phases(incident_named("West Nickel Mines Amish School"));
    EXPECT_EQ(b.va_min, 0);
    EXPECT_FALSE(b.anomaly_free());
    EXPECT_EQ(b.anomalies.front(), "911 preceded first shot");
}

TEST(DerivePhases, MissingTimestampNamed) {
    auto inc = incident_named("The Covenant School");
    inc.t_police.reset();
    try {
        mss::derive_phases(inc);
        FAIL();
    } catch (const std::invalid_argument& e) {
        EXPECT_NE(std::string(e.what()).find("t_police"), std::string::npos);
    }
}

TEST(DerivePhases, SumIdentityWithoutAnomalies) {
    for (const auto& inc : mss::timeline_subset(bundle().incidents, bundle().timeline_rows)) {
        auto b = mss::derive_phases(inc);
        if (b.anomaly_free()) {
            EXPECT_EQ(b.va_min + b.pom_min + b.shootout_min, b.crime_time_min) << inc.id;
        }
    }
}

TEST(DerivePhases, TranslationInvariant) {
    auto inc = incident_named("Columbine High School");
    auto base = mss::derive_phases(inc);
    for (auto* t : {&inc.t_arrived, &inc.t_fired, &inc.t_911, &inc.t_police, &inc.t_stop}) {
        *t = (*t)->shifted(-37);
    }
    auto moved = mss::derive_phases(inc);
    EXPECT_EQ(moved.kiv_min, base.kiv_min);
    EXPECT_EQ(moved.shootout_min, base.shootout_min);
    EXPECT_EQ(moved.crime_time_min, base.crime_time_min);
}

TEST(PhaseAverages, Singleton) {
    std::vector<mss::TimelineBreakdown> one{phases(5, 1, 2, 3, 6)};
    std::vector<int> casualties{12};
    auto avg = mss::phase_averages(one, casualties);
    EXPECT_EQ(avg.n, 1);
    EXPECT_DOUBLE_EQ(avg.mean_kiv, 5);
    EXPECT_DOUBLE_EQ(avg.casualties_per_minute, 2.0);
}

TEST(PhaseAverages, Errors) {
    std::vector<mss::TimelineBreakdown> one{phases(5, 1, 2, 3, 6)};
    std::vector<int> none;
    EXPECT_THROW(mss::phase_averages({}, none), std::invalid_argument);
    EXPECT_THROW(mss::phase_averages(one, none), std::invalid_argument);
}

TEST(PhaseAverages, PublishedColumns) {
    const auto& rows = bundle().timeline_rows;
    ASSERT_EQ(rows.size(), 16u);
    auto avg = mss::phase_averages(mss::published_breakdowns(rows), mss::published_casualties(rows));
    EXPECT_NEAR(avg.mean_kiv, 15.3, 0.05);
    EXPECT_NEAR(avg.mean_va, 3.2, 0.05);
    EXPECT_NEAR(avg.mean_pom, 3.6, 0.05);
    EXPECT_NEAR(avg.mean_shootout, 24.2, 0.05);
    EXPECT_NEAR(avg.mean_crime_time, 31.0, 0.05);
    EXPECT_NEAR(avg.casualties_per_minute, 0.639, 0.005);
    EXPECT_TRUE(mss::compare_averages(avg).empty());
}

TEST(PublishedTable, RowsTwoAndSixteenMatchDerived) {
    const auto& rows = bundle().timeline_rows;
    auto subset = mss::timeline_subset(bundle().incidents, rows);
    for (std::size_t i : {std::size_t{1}, std::size_t{15}}) {
        auto d = mss::derive_phases(subset[i]);
        EXPECT_EQ(d.kiv_min, rows[i].kiv_min);
        EXPECT_EQ(d.va_min, rows[i].va_min);
        EXPECT_EQ(d.pom_min, rows[i].pom_min);
        EXPECT_EQ(d.shootout_min, rows[i].shootout_min);
        EXPECT_EQ(d.crime_time_min, rows[i].crime_time_min);
    }
}

TEST(PublishedTable, KnownCellDifferences) {
    const auto& rows = bundle().timeline_rows;
    auto subset = mss::timeline_subset(bundle().incidents, rows);
    std::vector<mss::TimelineBreakdown> derived;
    for (const auto& inc : subset) {
        derived.push_back(mss::derive_phases(inc));
    }
    auto diffs = mss::compare_with_published(subset, derived, rows);
    auto has = [&](std::string_view cell) {
        return std::any_of(diffs.begin(), diffs.end(),
                           [&](const mss::Discrepancy& d) { return d.cell == cell; });
    };
    EXPECT_TRUE(has("incident 1.kiv_min"));
    EXPECT_TRUE(has("incident 3.pom_min"));
    EXPECT_TRUE(has("incident 3.shootout_min"));
    EXPECT_FALSE(has("incident 2.kiv_min"));
}

TEST(PublishedTable, BulletsAverageDisagreesWithRows) {
    auto means = mss::published_column_means(bundle().timeline_rows);
    auto diffs = mss::compare_column_means(means);
    ASSERT_EQ(diffs.size(), 1u);
    EXPECT_EQ(diffs[0].cell, "mean_bullets");
}

TEST(PublishedTable, HeaderEnforced) {
    EXPECT_THROW(mss::parse_published_timeline("a,b\n1,2\n"), mss::CorpusError);
}
