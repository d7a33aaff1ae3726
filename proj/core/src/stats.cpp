#include "mss/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mss/corpus.hpp"
#include "mss/published.hpp"
#include "mss/special.hpp"

namespace mss {

namespace {

constexpr std::array<Factor, kFactorCount> kFactors{
    Factor::Bullets, Factor::Kiv,        Factor::Va,           Factor::Pom,
    Factor::Shootout, Factor::DistPolice, Factor::DistHospital, Factor::CrimeTime,
};

bool differs_significant(double computed, double published, int digits) {
    return round_significant(computed, digits) != round_significant(published, digits);
}

} // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("pearson: length mismatch");
    }
    const std::size_t n = x.size();
    if (n < 3) {
        throw std::invalid_argument("pearson: need at least 3 pairs");
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw std::invalid_argument("pearson: constant input, correlation undefined");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double t_statistic(double r, int n) {
    if (n < 3) {
        throw std::invalid_argument("t_statistic: n must be at least 3");
    }
    if (std::fabs(r) >= 1.0) {
        return std::copysign(std::numeric_limits<double>::infinity(), r);
    }
    return r * std::sqrt((n - 2) / (1.0 - r * r));
}

double p_value_two_tailed(double r, int n) {
    if (n < 3) {
        throw std::invalid_argument("p_value_two_tailed: n must be at least 3");
    }
    if (!(std::fabs(r) <= 1.0)) {
        throw std::invalid_argument("p_value_two_tailed: |r| must not exceed 1");
    }
    if (r == 0.0) {
        return 1.0;
    }
    if (std::fabs(r) == 1.0) {
        return 0.0;
    }
    // df / (df + t^2) simplifies to 1 - r^2.
    const double df = n - 2;
    return special::incomplete_beta(1.0 - r * r, 0.5 * df, 0.5);
}

CorrelationResult correlate(std::string factor, std::span<const std::optional<double>> x,
                            std::span<const std::optional<double>> y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("correlate: length mismatch");
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] && y[i]) {
            xs.push_back(*x[i]);
            ys.push_back(*y[i]);
        }
    }
    CorrelationResult result;
    result.factor = std::move(factor);
    result.n = static_cast<int>(xs.size());
    result.r = pearson(xs, ys);
    result.t_stat = t_statistic(result.r, result.n);
    result.p_two_tailed = p_value_two_tailed(result.r, result.n);
    return result;
}

std::string_view to_string(Factor factor) {
    switch (factor) {
    case Factor::Bullets:
        return "bullets";
    case Factor::Kiv:
        return "kiv";
    case Factor::Va:
        return "va";
    case Factor::Pom:
        return "pom";
    case Factor::Shootout:
        return "shootout";
    case Factor::DistPolice:
        return "dist_police";
    case Factor::DistHospital:
        return "dist_hospital";
    case Factor::CrimeTime:
        return "crime_time";
    }
    return "bullets";
}

std::span<const Factor> all_factors() { return kFactors; }

std::vector<CorrelationResult> correlation_table(std::span<const FactorRecord> records) {
    std::vector<std::optional<double>> casualty;
    casualty.reserve(records.size());
    for (const auto& rec : records) {
        casualty.emplace_back(rec.casualty);
    }
    std::vector<CorrelationResult> results;
    for (Factor f : kFactors) {
        std::vector<std::optional<double>> column;
        column.reserve(records.size());
        for (const auto& rec : records) {
            column.push_back(rec[f]);
        }
        results.push_back(correlate(std::string(to_string(f)), column, casualty));
    }
    return results;
}

DiscrepancyList compare_correlations(std::span<const CorrelationResult> results) {
    DiscrepancyList diffs;
    for (const auto& cell : published::kCorrelations) {
        auto it = std::find_if(results.begin(), results.end(),
                               [&](const CorrelationResult& r) { return r.factor == cell.factor; });
        if (it == results.end()) {
            continue;
        }
        if (differs_at_precision(it->r, cell.r, 3)) {
            diffs.push_back({std::string(cell.factor) + ".r", it->r, cell.r});
        }
        if (differs_significant(it->p_two_tailed, cell.p, 2)) {
            diffs.push_back({std::string(cell.factor) + ".p", it->p_two_tailed, cell.p});
        }
    }
    return diffs;
}

CorrelationResult state_correlation(const std::map<std::string, int>& mass_counts,
                                    const std::map<std::string, int>& school_counts) {
    std::vector<std::optional<double>> mass;
    std::vector<std::optional<double>> school;
    for (const auto& [state, count] : school_counts) {
        school.emplace_back(count);
        mass.emplace_back(state_count(mass_counts, state));
    }
    return correlate("state_counts", mass, school);
}

DiscrepancyList compare_state_correlation(const CorrelationResult& result) {
    DiscrepancyList diffs;
    if (differs_at_precision(result.r, published::kStateCorrelation, 3)) {
        diffs.push_back({"state_counts.r", result.r, published::kStateCorrelation});
    }
    if (differs_significant(result.p_two_tailed, published::kStateCorrelationP, 2)) {
        diffs.push_back({"state_counts.p", result.p_two_tailed, published::kStateCorrelationP});
    }
    return diffs;
}

std::optional<double> ProbabilityResult::one_in() const {
    if (per_school_annual <= 0.0) {
        return std::nullopt;
    }
    return 1.0 / per_school_annual;
}

std::optional<double> ProbabilityResult::lifetime_one_in() const {
    if (lifetime <= 0.0) {
        return std::nullopt;
    }
    return 1.0 / lifetime;
}

ProbabilityResult per_school_probability(long events, int years, long schools) {
    if (events < 0) {
        throw std::invalid_argument("per_school_probability: events must be non-negative");
    }
    if (years < 1 || schools < 1) {
        throw std::invalid_argument("per_school_probability: years and schools must be positive");
    }
    ProbabilityResult result;
    result.events = events;
    result.years = years;
    result.schools = schools;
    result.annual_rate = static_cast<double>(events) / years;
    result.per_school_annual = result.annual_rate / static_cast<double>(schools);
    result.exposure_years = 1;
    result.lifetime = result.per_school_annual;
    return result;
}

double lifetime_exposure(double per_school_annual, int exposure_years) {
    if (!(per_school_annual >= 0.0 && per_school_annual <= 1.0)) {
        throw std::invalid_argument("lifetime_exposure: probability must lie in [0, 1]");
    }
    if (exposure_years < 1) {
        throw std::invalid_argument("lifetime_exposure: exposure_years must be positive");
    }
    if (per_school_annual == 1.0) {
        return 1.0;
    }
    return -std::expm1(exposure_years * std::log1p(-per_school_annual));
}

ProbabilityResult with_exposure(ProbabilityResult result, int exposure_years) {
    result.exposure_years = exposure_years;
    result.lifetime = lifetime_exposure(result.per_school_annual, exposure_years);
    return result;
}

ProbabilitySummary published_probability_summary() {
    return {
        with_exposure(per_school_probability(published::kSchoolShootings, published::kYears,
                                             published::kSchoolCount),
                      published::kExposureYears),
        with_exposure(per_school_probability(published::kMassShootings, published::kYears,
                                             published::kSchoolCount),
                      published::kExposureYears),
    };
}

DiscrepancyList compare_probabilities(const ProbabilitySummary& summary) {
    DiscrepancyList diffs;
    auto check = [&](const ProbabilityResult& res, std::string_view prefix, double annual,
                     long one_in, double lifetime_percent, long lifetime_one_in) {
        std::string p(prefix);
        if (differs_significant(res.per_school_annual, annual, 3)) {
            diffs.push_back({p + ".per_school_annual", res.per_school_annual, annual});
        }
        if (auto r = res.one_in(); r && std::llround(*r) != one_in) {
            diffs.push_back({p + ".one_in", *r, static_cast<double>(one_in)});
        }
        double percent = res.lifetime_percent();
        if (differs_at_precision(percent, lifetime_percent, 3)) {
            diffs.push_back({p + ".lifetime_percent", percent, lifetime_percent});
        }
        if (auto r = res.lifetime_one_in(); r && std::llround(*r) != lifetime_one_in) {
            diffs.push_back({p + ".lifetime_one_in", *r, static_cast<double>(lifetime_one_in)});
        }
    };
    check(summary.school, "school", published::kSchoolAnnualPerSchool, published::kSchoolOneIn,
          published::kSchoolLifetimePercent, published::kSchoolLifetimeOneIn);
    check(summary.mass, "mass", published::kMassAnnualPerSchool, published::kMassOneIn,
          published::kMassLifetimePercent, published::kMassLifetimeOneIn);
    return diffs;
}

double round_significant(double value, int digits) {
    if (value == 0.0 || !std::isfinite(value)) {
        return value;
    }
    const double magnitude = std::floor(std::log10(std::fabs(value)));
    const double scale = std::pow(10.0, digits - 1 - magnitude);
    return std::round(value * scale) / scale;
}

} // namespace mss
