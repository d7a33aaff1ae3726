#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli/cli.hpp"

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = mss::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t count_lines_starting(const std::string& text, std::string_view prefix) {
    std::istringstream in(text);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) {
        if (line.starts_with(prefix)) {
            ++n;
        }
    }
    return n;
}

} // namespace

TEST(Cli, ValidateReportsEarlyCallWarning) {
    auto r = run({"validate"});
    EXPECT_EQ(r.code, mss::cli::kExitOk);
    EXPECT_NE(r.out.find("warning,14,t_911,911 preceded first shot"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    auto unknown = run({"bogus"});
    EXPECT_EQ(unknown.code, mss::cli::kExitUsage);
    EXPECT_NE(unknown.err.find("unknown subcommand 'bogus'"), std::string::npos);
    EXPECT_NE(unknown.err.find("Usage:"), std::string::npos);
    EXPECT_TRUE(unknown.out.empty());
    EXPECT_EQ(run({}).code, mss::cli::kExitUsage);
    EXPECT_EQ(run({"report", "--no-such-flag"}).code, mss::cli::kExitUsage);
    EXPECT_EQ(run({"report", "--format", "xml"}).code, mss::cli::kExitUsage);
}

TEST(Cli, HelpExitsCleanly) {
    auto r = run({"report", "--help"});
    EXPECT_EQ(r.code, mss::cli::kExitOk);
    EXPECT_NE(r.out.find("--exclude-years"), std::string::npos);
}

TEST(Cli, MissingCorpusIsAnError) {
    auto r = run({"validate", "--corpus", "/nonexistent/incidents.csv"});
    EXPECT_EQ(r.code, mss::cli::kExitValidation);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, ForecastWithoutCovidRows) {
    auto r = run({"forecast", "--target", "events", "--variant", "without_covid", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.starts_with(
        "model_id,model_name,y2025,y2026,y2027,y2028,y2029,y2030,mse,mae,mape,training_data\n"));
    EXPECT_EQ(count_lines_starting(r.out, "1b,") + count_lines_starting(r.out, "2b,") +
                  count_lines_starting(r.out, "3b,") + count_lines_starting(r.out, "4b,"),
              4u);
    std::size_t labelled = 0;
    for (std::size_t pos = 0; (pos = r.out.find(",1999-2021 and 2024\n", pos)) != std::string::npos;
         ++pos) {
        ++labelled;
    }
    EXPECT_EQ(labelled, 4u);
}

TEST(Cli, ExcludeYearsChangesLabel) {
    auto r = run({"forecast", "--variant", "without_covid", "--exclude-years", "2020-2023"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("1999-2019 and 2024"), std::string::npos);
}

TEST(Cli, ReportMarkdownHasEveryTable) {
    auto r = run({"report", "--format", "md"});
    ASSERT_EQ(r.code, 0) << r.err;
    for (auto name : {"table1", "table2", "table3", "table4", "table6", "fig5_histogram",
                      "fig1_state_counts", "fig6_series", "fig7_series"}) {
        EXPECT_NE(r.out.find(std::string("### ") + name), std::string::npos) << name;
    }
    EXPECT_GE(count_lines_starting(r.out, "## "), 9u);
    EXPECT_NE(r.out.find("mean_bullets"), std::string::npos);
}

TEST(Cli, ReportJsonIsDeterministic) {
    auto a = run({"report", "--format", "json"});
    auto b = run({"report", "--format", "json"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out.find("generated_at"), std::string::npos);
}

TEST(Cli, StampIsOptIn) {
    auto r = run({"validate", "--format", "json", "--stamp"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("generated_at"), std::string::npos);
}

TEST(Cli, OutWritesOneFilePerTable) {
    auto dir = std::filesystem::temp_directory_path() / "mss_cli_out_test";
    std::filesystem::remove_all(dir);
    auto r = run({"report", "--format", "csv", "--out", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    for (auto name : {"table1.csv", "table4.csv", "fig6_series.csv", "diffs.csv", "report.csv"}) {
        EXPECT_TRUE(std::filesystem::exists(dir / name)) << name;
    }
    std::filesystem::remove_all(dir);
}

TEST(Cli, SimulateDefaultScenario) {
    auto r = run({"simulate", "--calibrate", "0.639"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("0.639"), std::string::npos);
}

TEST(Cli, SimulateSweepEmitsGrid) {
    auto r = run({"simulate", "--sweep", "defender", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_GE(count_lines_starting(r.out, ""), 128u);
}
