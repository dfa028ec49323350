#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "citeproj/impact.hpp"
#include "citeproj/metrics.hpp"

namespace citeproj {

struct Histogram {
    std::vector<double> bin_edges; // ascending, size = bins + 1
    std::vector<std::size_t> counts;
    std::vector<double> masses; // counts / sample_count, all zero when empty
    std::size_t sample_count = 0;
    std::size_t clamped_count = 0; // out-of-range values forced into end bins
};

/// Equal-width histogram normalized to unit mass. A value on an interior edge
/// falls in the higher bin; a value at hi falls in the last bin; values
/// outside [lo, hi] are clamped into the end bins and counted as clamped.
inline Histogram normalized_histogram(const std::vector<double>& values,
                                      std::size_t bin_count, double lo, double hi) {
    if (bin_count < 1) throw std::invalid_argument("histogram needs at least one bin");
    if (!(lo < hi)) throw std::invalid_argument("histogram range must satisfy lo < hi");

    Histogram h;
    h.bin_edges.resize(bin_count + 1);
    for (std::size_t i = 0; i <= bin_count; ++i)
        h.bin_edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bin_count);
    h.counts.assign(bin_count, 0);
    h.masses.assign(bin_count, 0.0);

    for (double v : values) {
        double scaled = (v - lo) / (hi - lo) * static_cast<double>(bin_count);
        long bin = static_cast<long>(std::floor(scaled));
        if (v < lo) {
            bin = 0;
            ++h.clamped_count;
        } else if (v > hi) {
            bin = static_cast<long>(bin_count) - 1;
            ++h.clamped_count;
        } else if (bin >= static_cast<long>(bin_count)) {
            bin = static_cast<long>(bin_count) - 1; // v == hi
        }
        ++h.counts[static_cast<std::size_t>(bin)];
    }
    h.sample_count = values.size();
    if (h.sample_count > 0)
        for (std::size_t i = 0; i < bin_count; ++i)
            h.masses[i] = static_cast<double>(h.counts[i]) / static_cast<double>(h.sample_count);
    return h;
}

namespace detail {

// Continued fraction for the regularized incomplete beta (Lentz's method).
inline double beta_cont_fraction(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double tol = 1e-12;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double result = d;
    for (int m = 1; m <= 300; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        result *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        result *= delta;
        if (std::abs(delta - 1.0) < tol) break;
    }
    return result;
}

} // namespace detail

/// Regularized incomplete beta I_x(a, b), tolerance 1e-12.
inline double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * detail::beta_cont_fraction(a, b, x) / a;
    return 1.0 - front * detail::beta_cont_fraction(b, a, 1.0 - x) / b;
}

/// CDF of Student's t with (possibly fractional) df degrees of freedom.
inline double student_t_cdf(double t, double df) {
    if (df <= 0.0) throw std::invalid_argument("degrees of freedom must be positive");
    if (t == 0.0) return 0.5;
    double x = df / (df + t * t);
    double tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, x);
    return t < 0.0 ? tail : 1.0 - tail;
}

/// Two-sided p-value for a t statistic: P(|T| >= |t|).
inline double student_t_two_sided_p(double t, double df) {
    if (df <= 0.0) throw std::invalid_argument("degrees of freedom must be positive");
    if (t == 0.0) return 1.0;
    if (std::isinf(t)) return 0.0;
    return regularized_incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

struct TTestResult {
    double t_statistic = 0.0;
    double degrees_of_freedom = 0.0;
    double p_value = 1.0;
    double mean_a = 0.0;
    double mean_b = 0.0;
    std::size_t n_a = 0;
    std::size_t n_b = 0;
};

namespace detail {

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sample_variance(const std::vector<double>& v, double mean) {
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s / static_cast<double>(v.size() - 1);
}

} // namespace detail

/// Welch's unequal-variance t-test, two-sided, with Welch-Satterthwaite
/// degrees of freedom. Each sample needs at least two values. Two constant
/// samples with equal means give t = 0, p = 1; with different means the
/// statistic is reported as +-infinity and p as 0.
inline TTestResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("welch t-test needs at least two values per sample");

    TTestResult r;
    r.n_a = a.size();
    r.n_b = b.size();
    r.mean_a = detail::mean_of(a);
    r.mean_b = detail::mean_of(b);
    double va = detail::sample_variance(a, r.mean_a);
    double vb = detail::sample_variance(b, r.mean_b);
    double sa = va / static_cast<double>(r.n_a);
    double sb = vb / static_cast<double>(r.n_b);
    double se2 = sa + sb;

    if (se2 == 0.0) {
        r.degrees_of_freedom = static_cast<double>(r.n_a + r.n_b - 2);
        if (r.mean_a == r.mean_b) {
            r.t_statistic = 0.0;
            r.p_value = 1.0;
        } else {
            r.t_statistic = r.mean_a < r.mean_b ? -std::numeric_limits<double>::infinity()
                                                : std::numeric_limits<double>::infinity();
            r.p_value = 0.0;
        }
        return r;
    }

    r.t_statistic = (r.mean_a - r.mean_b) / std::sqrt(se2);
    r.degrees_of_freedom = se2 * se2 /
                           (sa * sa / static_cast<double>(r.n_a - 1) +
                            sb * sb / static_cast<double>(r.n_b - 1));
    r.p_value = student_t_two_sided_p(r.t_statistic, r.degrees_of_freedom);
    return r;
}

/// P-values below 2.2e-16 print as "< 2.2e-16"; everything else as %.6g.
inline std::string format_p_value(double p) {
    if (p < 2.2e-16) return "< 2.2e-16";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", p);
    return buf;
}

struct GroupMeansRow {
    std::string metric;
    std::string area;
    bool available = false; // false when a stratum is empty for this area
    double mean_high = std::numeric_limits<double>::quiet_NaN();
    double mean_mid = std::numeric_limits<double>::quiet_NaN();
    double mean_low = std::numeric_limits<double>::quiet_NaN();
    // NaN when the pair cannot be tested (a side below two members).
    double p_high_mid = std::numeric_limits<double>::quiet_NaN();
    double p_mid_low = std::numeric_limits<double>::quiet_NaN();
    double p_high_low = std::numeric_limits<double>::quiet_NaN();
};

struct GroupMeansTable {
    std::vector<GroupMeansRow> rows; // metric-major, areas sorted within
};

/// Per (metric, area): stratum means and the three pairwise Welch p-values.
/// Rows come out metric-major (density first), areas sorted. Areas with an
/// empty stratum keep their rows but are marked unavailable.
inline GroupMeansTable group_means_table(const std::map<PaperId, MetricVector>& vectors,
                                         const std::vector<ImpactRecord>& records) {
    // values[area][stratum][metric] -> samples
    std::map<std::string, std::array<std::array<std::vector<double>, 6>, 3>> samples;
    for (const auto& rec : records) {
        int s;
        switch (rec.stratum) {
            case Stratum::High: s = 0; break;
            case Stratum::Mid: s = 1; break;
            case Stratum::Low: s = 2; break;
            default: continue;
        }
        auto it = vectors.find(rec.paper);
        if (it == vectors.end())
            throw std::invalid_argument("no metric vector for paper '" + rec.paper + "'");
        auto& area_slot = samples[rec.area];
        for (std::size_t m = 0; m < 6; ++m)
            area_slot[static_cast<std::size_t>(s)][m].push_back(it->second[m]);
    }

    auto mean_or_nan = [](const std::vector<double>& v) {
        return v.empty() ? std::numeric_limits<double>::quiet_NaN() : detail::mean_of(v);
    };
    auto p_or_nan = [](const std::vector<double>& x, const std::vector<double>& y) {
        if (x.size() < 2 || y.size() < 2) return std::numeric_limits<double>::quiet_NaN();
        return welch_t_test(x, y).p_value;
    };

    GroupMeansTable table;
    for (std::size_t m = 0; m < 6; ++m) {
        for (const auto& [area, groups] : samples) {
            GroupMeansRow row;
            row.metric = MetricVector::names[m];
            row.area = area;
            const auto& high = groups[0][m];
            const auto& mid = groups[1][m];
            const auto& low = groups[2][m];
            row.available = !high.empty() && !mid.empty() && !low.empty();
            row.mean_high = mean_or_nan(high);
            row.mean_mid = mean_or_nan(mid);
            row.mean_low = mean_or_nan(low);
            row.p_high_mid = p_or_nan(high, mid);
            row.p_mid_low = p_or_nan(mid, low);
            row.p_high_low = p_or_nan(high, low);
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

/// Histogram range shared by report writers: metrics 0-4 live in [0, 1];
/// the constraint (index 5) can exceed 1, so its range runs to the observed
/// maximum (or 1 when nothing positive was seen).
inline std::pair<double, double> histogram_range_for_metric(std::size_t metric_index,
                                                            double max_observed) {
    if (metric_index == 5) return {0.0, max_observed > 0.0 ? max_observed : 1.0};
    return {0.0, 1.0};
}

struct TemporalMetricSplit {
    std::string metric;
    Histogram early;
    Histogram late;
    TTestResult test; // early vs late
};

struct TemporalReport {
    int cutoff_year = 0;
    int year_min = 0;
    int year_max = 0;
    std::size_t n_early = 0;
    std::size_t n_late = 0;
    std::vector<TemporalMetricSplit> metrics; // one per metric, fixed order
};

/// Splits papers at the cutoff year ([min, cutoff] vs (cutoff, max]) and
/// compares each metric across the two eras with paired histograms and a
/// Welch t-test.
inline TemporalReport temporal_split(const std::vector<ImpactRecord>& records,
                                     const std::map<PaperId, MetricVector>& vectors,
                                     int cutoff_year, std::size_t bin_count = 20) {
    TemporalReport report;
    report.cutoff_year = cutoff_year;

    std::array<std::vector<double>, 6> early, late;
    bool first = true;
    for (const auto& rec : records) {
        auto it = vectors.find(rec.paper);
        if (it == vectors.end())
            throw std::invalid_argument("no metric vector for paper '" + rec.paper + "'");
        if (first) {
            report.year_min = report.year_max = rec.year;
            first = false;
        } else {
            report.year_min = std::min(report.year_min, rec.year);
            report.year_max = std::max(report.year_max, rec.year);
        }
        auto& side = rec.year <= cutoff_year ? early : late;
        for (std::size_t m = 0; m < 6; ++m) side[m].push_back(it->second[m]);
    }
    report.n_early = early[0].size();
    report.n_late = late[0].size();
    if (report.n_early == 0)
        throw std::invalid_argument("temporal cutoff " + std::to_string(cutoff_year) +
                                    " leaves the early side empty");
    if (report.n_late == 0)
        throw std::invalid_argument("temporal cutoff " + std::to_string(cutoff_year) +
                                    " leaves the late side empty");

    for (std::size_t m = 0; m < 6; ++m) {
        double max_seen = 0.0;
        for (double v : early[m]) max_seen = std::max(max_seen, v);
        for (double v : late[m]) max_seen = std::max(max_seen, v);
        auto [lo, hi] = histogram_range_for_metric(m, max_seen);

        TemporalMetricSplit split;
        split.metric = MetricVector::names[m];
        split.early = normalized_histogram(early[m], bin_count, lo, hi);
        split.late = normalized_histogram(late[m], bin_count, lo, hi);
        split.test = welch_t_test(early[m], late[m]);
        report.metrics.push_back(std::move(split));
    }
    return report;
}

} // namespace citeproj
