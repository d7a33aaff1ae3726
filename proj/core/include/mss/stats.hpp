#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mss/discrepancy.hpp"

namespace mss {

/// Sample Pearson correlation. Throws std::invalid_argument on length
/// mismatch, n < 3, or a constant input (r undefined).
double pearson(std::span<const double> x, std::span<const double> y);

/// t = r * sqrt((n - 2) / (1 - r^2)); infinite when |r| = 1.
double t_statistic(double r, int n);

/// Two-tailed p-value of r under the null of zero correlation, via the
/// Student t distribution with n - 2 degrees of freedom. Exactly 1 at r = 0
/// and exactly 0 at |r| = 1. Throws for n < 3 or |r| > 1.
double p_value_two_tailed(double r, int n);

struct CorrelationResult {
    std::string factor;
    double r = 0.0;
    int n = 0;
    double t_stat = 0.0;
    double p_two_tailed = 1.0;

    bool significant_at(double alpha) const { return p_two_tailed < alpha; }
};

/// Correlates the pairs where both values are present (pairwise deletion).
CorrelationResult correlate(std::string factor, std::span<const std::optional<double>> x,
                            std::span<const std::optional<double>> y);

enum class Factor { Bullets, Kiv, Va, Pom, Shootout, DistPolice, DistHospital, CrimeTime };

inline constexpr std::size_t kFactorCount = 8;

std::string_view to_string(Factor factor);
std::span<const Factor> all_factors();

/// One incident's casualty count and the candidate explanatory factors.
struct FactorRecord {
    int id = 0;
    double casualty = 0.0;
    std::array<std::optional<double>, kFactorCount> factors{};

    std::optional<double>& operator[](Factor f) { return factors[static_cast<std::size_t>(f)]; }
    const std::optional<double>& operator[](Factor f) const {
        return factors[static_cast<std::size_t>(f)];
    }
};

/// One result per factor in all_factors() order, each against casualty.
std::vector<CorrelationResult> correlation_table(std::span<const FactorRecord> records);

/// Recomputed r (3 decimals) and p (2 significant digits) against the
/// printed correlation table.
DiscrepancyList compare_correlations(std::span<const CorrelationResult> results);

/// Correlates per-state mass-shooting counts with an external per-state
/// school-shooting table. n is the number of states in `school_counts`;
/// states absent from `mass_counts` count as 0.
CorrelationResult state_correlation(const std::map<std::string, int>& mass_counts,
                                    const std::map<std::string, int>& school_counts);

/// Recomputed state-level r (3 decimals) and p (2 significant digits)
/// against the printed values.
DiscrepancyList compare_state_correlation(const CorrelationResult& result);

struct ProbabilityResult {
    long events = 0;
    int years = 1;
    long schools = 1;
    double annual_rate = 0.0;
    double per_school_annual = 0.0;
    int exposure_years = 1;
    double lifetime = 0.0;

    /// 1 / per_school_annual, absent when the probability is zero.
    std::optional<double> one_in() const;
    std::optional<double> lifetime_one_in() const;
    double lifetime_percent() const { return 100.0 * lifetime; }
};

ProbabilityResult per_school_probability(long events, int years, long schools);

/// 1 - (1 - p)^k, computed without cancellation for small p.
double lifetime_exposure(double per_school_annual, int exposure_years);

/// Adds the lifetime figure to a rate result.
ProbabilityResult with_exposure(ProbabilityResult result, int exposure_years);

/// The school and mass-shooting figures from the published counts
/// (510 / 43 events, 26 years, 134,960 schools, 17-year exposure).
struct ProbabilitySummary {
    ProbabilityResult school;
    ProbabilityResult mass;
};

ProbabilitySummary published_probability_summary();

/// Recomputed probability figures against the printed ones.
DiscrepancyList compare_probabilities(const ProbabilitySummary& summary);

/// Rounds to `digits` significant digits.
double round_significant(double value, int digits);

} // namespace mss
