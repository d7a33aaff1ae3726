#pragma once

// Printed reference values used only for cross-checks and diffs. No
// computation reads these as inputs.

#include <array>
#include <string_view>

namespace mss::published {

struct YearRow {
    int year;
    int events;
    int injured;
    int killed;
    int casualty;
};

inline constexpr std::array<YearRow, 26> kYearly{{
    {1999, 3, 35, 13, 48}, {2000, 0, 0, 0, 0},    {2001, 2, 18, 2, 20},  {2002, 0, 0, 0, 0},
    {2003, 1, 4, 1, 5},    {2004, 0, 0, 0, 0},    {2005, 1, 5, 9, 14},   {2006, 1, 5, 5, 10},
    {2007, 2, 36, 32, 68}, {2008, 1, 16, 5, 21},  {2009, 0, 0, 0, 0},    {2010, 0, 0, 0, 0},
    {2011, 0, 0, 0, 0},    {2012, 3, 6, 36, 42},  {2013, 1, 3, 5, 8},    {2014, 2, 17, 10, 27},
    {2015, 1, 7, 9, 16},   {2016, 2, 8, 0, 8},    {2017, 1, 3, 1, 4},    {2018, 4, 53, 29, 82},
    {2019, 4, 31, 3, 34},  {2020, 0, 0, 0, 0},    {2021, 1, 7, 4, 11},   {2022, 5, 36, 26, 62},
    {2023, 6, 20, 17, 37}, {2024, 2, 13, 4, 17},
}};

inline constexpr int kTotalEvents = 43;
inline constexpr int kTotalInjured = 323;
inline constexpr int kTotalKilled = 211;
inline constexpr int kTotalCasualty = 534;

// Probability figures.
inline constexpr long kSchoolCount = 134960;
inline constexpr int kYears = 26;
inline constexpr int kSchoolShootings = 510;
inline constexpr int kMassShootings = 43;
inline constexpr int kExposureYears = 17;
inline constexpr double kSchoolAnnualPerSchool = 1.45e-4;
inline constexpr long kSchoolOneIn = 6880;
inline constexpr double kMassAnnualPerSchool = 1.23e-5;
inline constexpr long kMassOneIn = 81604;
inline constexpr double kSchoolLifetimePercent = 0.245;
inline constexpr long kSchoolLifetimeOneIn = 408;
inline constexpr double kMassLifetimePercent = 0.021;
inline constexpr long kMassLifetimeOneIn = 4801;
inline constexpr double kStateCorrelation = 0.754;
inline constexpr double kStateCorrelationP = 4.48e-7;

struct CorrelationCell {
    std::string_view factor;
    double r;
    double p;
};

inline constexpr std::array<CorrelationCell, 8> kCorrelations{{
    {"bullets", 0.592, 1.5e-3},
    {"kiv", -0.341, 5.3e-1},
    {"va", 0.041, 2.4e-4},
    {"pom", -0.354, 5.5e-4},
    {"shootout", -0.148, 7.5e-1},
    {"dist_police", -0.342, 9.9e-4},
    {"dist_hospital", -0.162, 4.2e-3},
    {"crime_time", -0.162, 4.3e-1},
}};

struct TimelineAverages {
    double casualty = 19.8;
    double bullets = 78.3;
    double kiv = 15.3;
    double va = 3.2;
    double pom = 3.6;
    double shootout = 24.2;
    double dist_police_km = 4.4;
    double dist_hospital_km = 6.7;
    double crime_time = 31.0;
    double casualties_per_minute = 0.639;
};

inline constexpr TimelineAverages kTimelineAverages{};

struct ForecastCells {
    std::string_view model_id;
    std::string_view model_name;
    std::array<double, 6> predictions;
    double mse;
    double mae;
    std::string_view training_data;
};

inline constexpr std::array<ForecastCells, 8> kIncidentForecasts{{
    {"1a", "Zero-Inflated Poisson", {2.47, 2.58, 2.70, 2.82, 2.94, 3.07}, 5.07, 1.85, "1999-2024"},
    {"1b", "Zero-Inflated Poisson", {1.09, 1.09, 1.09, 1.09, 1.09, 1.10}, 3.82, 1.59, "1999-2021 and 2024"},
    {"2a", "Linear Regression", {2.13, 2.18, 2.24, 2.29, 2.34, 2.40}, 5.54, 1.87, "1999-2024"},
    {"2b", "Linear Regression", {1.10, 1.11, 1.11, 1.11, 1.11, 1.12}, 3.80, 1.58, "1999-2021 and 2024"},
    {"3a", "SVR Linear", {1.40, 1.43, 1.45, 1.48, 1.50, 1.52}, 7.53, 2.28, "1999-2024"},
    {"3b", "SVR Linear", {0.90, 0.90, 0.90, 0.90, 0.90, 0.90}, 4.25, 1.66, "1999-2021 and 2024"},
    {"4a", "SVR RBF", {1.46, 1.41, 1.37, 1.34, 1.33, 1.32}, 6.42, 2.06, "1999-2024"},
    {"4b", "SVR RBF", {1.01, 1.01, 1.01, 1.01, 1.02, 1.02}, 3.86, 1.58, "1999-2021 and 2024"},
}};

inline constexpr std::array<double, 6> kIncidentForecastAverage{1.44, 1.46, 1.48, 1.50, 1.53, 1.56};

inline constexpr std::array<ForecastCells, 8> kCasualtyForecasts{{
    {"1a", "Zero-Inflated Poisson", {24.18, 24.70, 25.25, 25.82, 26.42, 27.05}, 157.51, 10.53, "1999-2024"},
    {"1b", "Zero-Inflated Poisson", {18.25, 18.78, 19.34, 19.95, 20.60, 21.30}, 389.01, 14.38, "1999-2021 and 2024"},
    {"2a", "Linear Regression", {30.77, 31.50, 32.24, 32.98, 33.71, 34.44}, 135.80, 10.10, "1999-2024"},
    {"2b", "Linear Regression", {17.91, 18.00, 18.08, 18.17, 18.25, 18.32}, 401.67, 14.88, "1999-2021 and 2024"},
    {"3a", "SVR Linear", {17.53, 18.04, 18.53, 19.03, 19.54, 20.03}, 168.51, 10.20, "1999-2024"},
    {"3b", "SVR Linear", {23.60, 24.40, 25.19, 25.99, 26.78, 27.57}, 341.69, 13.89, "1999-2021 and 2024"},
    {"4a", "SVR RBF", {10.03, 9.93, 9.86, 9.81, 9.78, 9.77}, 200.27, 10.47, "1999-2024"},
    {"4b", "SVR RBF", {9.54, 9.52, 9.51, 9.50, 9.50, 9.50}, 350.21, 12.29, "1999-2021 and 2024"},
}};

inline constexpr std::array<double, 6> kCasualtyForecastAverage{18.98, 19.36, 19.75, 20.16, 20.57, 21.00};

struct LocationCell {
    std::string_view location;
    int count;
    double percent;
};

inline constexpr std::array<LocationCell, 3> kLocations{{
    {"classroom", 13, 30.23},
    {"hallway", 9, 20.93},
    {"outside", 6, 13.95},
}};

} // namespace mss::published
