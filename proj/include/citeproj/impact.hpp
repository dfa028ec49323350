#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "citeproj/graph.hpp"
#include "citeproj/metrics.hpp"

namespace citeproj {

enum class Stratum { High, Mid, Low, Unassigned };

inline const char* to_string(Stratum s) {
    switch (s) {
        case Stratum::High: return "High";
        case Stratum::Mid: return "Mid";
        case Stratum::Low: return "Low";
        default: return "Unassigned";
    }
}

inline Stratum stratum_from_string(const std::string& s) {
    if (s == "High") return Stratum::High;
    if (s == "Mid") return Stratum::Mid;
    if (s == "Low") return Stratum::Low;
    if (s == "Unassigned") return Stratum::Unassigned;
    throw std::invalid_argument("unknown stratum '" + s + "'");
}

struct ImpactRecord {
    PaperId paper;
    std::uint64_t raw_citations = 0;
    int year = 0;
    std::string area;
    double impact = 0.0;
    // True when the paper's (year, area) cohort mean is positive; only such
    // records can be placed in a stratum.
    bool cohort_positive = false;
    Stratum stratum = Stratum::Unassigned;
};

struct StrataConfig {
    double high_fraction = 0.10;
    double low_fraction = 0.25;
};

enum class CohortMean { inclusive, exclusive };

/// Within-dataset citation counts (in-degree), for every paper.
inline std::map<PaperId, std::uint64_t> citation_counts(const CitationGraph& g) {
    std::map<PaperId, std::uint64_t> counts;
    for (NodeIndex v = 0; v < g.node_count(); ++v)
        counts[g.id_of(v)] = g.in_degree(v);
    return counts;
}

struct ImpactResult {
    std::vector<ImpactRecord> records; // sorted by paper id
    std::size_t skipped_no_meta = 0;
};

/// Citation counts normalized by the mean count of the paper's (year, area)
/// cohort. Inclusive mode keeps the paper in its own cohort mean, which makes
/// cohort impacts average to exactly 1; the exclusive mode is available for
/// the strict "all other publications" reading. Papers without metadata are
/// skipped and counted; zero-mean cohorts yield impact 0 and no stratum.
inline ImpactResult normalized_impact(const CitationGraph& g,
                                      CohortMean mode = CohortMean::inclusive) {
    ImpactResult result;

    struct Cohort {
        std::uint64_t total = 0;
        std::size_t size = 0;
    };
    std::map<std::pair<int, std::string>, Cohort> cohorts;
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        const auto& meta = g.meta_of(v);
        if (!meta) {
            ++result.skipped_no_meta;
            continue;
        }
        auto& c = cohorts[{meta->year, meta->area}];
        c.total += g.in_degree(v);
        c.size += 1;
    }

    for (NodeIndex v = 0; v < g.node_count(); ++v) {
        const auto& meta = g.meta_of(v);
        if (!meta) continue;
        const auto& c = cohorts[{meta->year, meta->area}];
        ImpactRecord rec;
        rec.paper = g.id_of(v);
        rec.raw_citations = g.in_degree(v);
        rec.year = meta->year;
        rec.area = meta->area;

        double mean = 0.0;
        if (mode == CohortMean::inclusive) {
            mean = static_cast<double>(c.total) / static_cast<double>(c.size);
        } else if (c.size > 1) {
            mean = static_cast<double>(c.total - rec.raw_citations) /
                   static_cast<double>(c.size - 1);
        }
        if (mean > 0.0) {
            rec.impact = static_cast<double>(rec.raw_citations) / mean;
            rec.cohort_positive = true;
        }
        result.records.push_back(std::move(rec));
    }
    std::sort(result.records.begin(), result.records.end(),
              [](const ImpactRecord& a, const ImpactRecord& b) { return a.paper < b.paper; });
    return result;
}

namespace detail {

// Nearest-rank count: smallest integer >= fraction * n, with a relative
// epsilon so that values like 0.10 * 100 land on the integer they denote.
inline std::size_t nearest_rank_count(double fraction, std::size_t n) {
    double x = fraction * static_cast<double>(n);
    double r = std::round(x);
    if (std::abs(x - r) < 1e-9 * std::max(1.0, std::abs(x))) x = r;
    return static_cast<std::size_t>(std::ceil(x));
}

} // namespace detail

/// Assigns High / Mid / Low strata per area by impact rank: the top
/// ceil(high_fraction * n) records are High, the bottom ceil(low_fraction * n)
/// Low, the remainder Mid. Ties break by paper id. Records from zero-mean
/// cohorts keep their Unassigned stratum. Input order is preserved.
inline std::vector<ImpactRecord> stratify(std::vector<ImpactRecord> records,
                                          const StrataConfig& cfg = {}) {
    if (cfg.high_fraction < 0 || cfg.low_fraction < 0 ||
        cfg.high_fraction + cfg.low_fraction >= 1.0)
        throw std::invalid_argument("strata fractions must be nonnegative and sum below 1");

    std::map<std::string, std::vector<std::size_t>> by_area;
    for (std::size_t i = 0; i < records.size(); ++i) {
        records[i].stratum = Stratum::Unassigned;
        if (records[i].cohort_positive) by_area[records[i].area].push_back(i);
    }

    for (auto& [area, idx] : by_area) {
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            if (records[a].impact != records[b].impact)
                return records[a].impact > records[b].impact;
            return records[a].paper < records[b].paper;
        });
        const std::size_t n = idx.size();
        std::size_t n_high = std::min(detail::nearest_rank_count(cfg.high_fraction, n), n);
        std::size_t n_low = std::min(detail::nearest_rank_count(cfg.low_fraction, n), n - n_high);
        for (std::size_t r = 0; r < n; ++r) {
            Stratum s = Stratum::Mid;
            if (r < n_high) s = Stratum::High;
            else if (r >= n - n_low) s = Stratum::Low;
            records[idx[r]].stratum = s;
        }
    }
    return records;
}

struct CurveRow {
    int bin = 0; // floor of impact, capped; bin 0 holds impacts below 1
    std::size_t count = 0;
    MetricVector medians;
};

struct CurveTable {
    std::vector<CurveRow> rows; // ascending by bin, empty bins omitted
};

inline double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    std::size_t n = values.size();
    if (n == 0) return 0.0;
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

/// Per-impact-bin medians of every metric. Impacts are binned by floor
/// (capped), so bin 0 collects everything below 1, including the zero-impact
/// papers. Records from zero-mean cohorts are left out.
inline CurveTable median_metric_by_impact(const std::vector<ImpactRecord>& records,
                                          const std::map<PaperId, MetricVector>& vectors,
                                          int bin_cap = 20) {
    std::map<int, std::vector<const MetricVector*>> bins;
    for (const auto& rec : records) {
        if (!rec.cohort_positive) continue;
        auto it = vectors.find(rec.paper);
        if (it == vectors.end())
            throw std::invalid_argument("no metric vector for paper '" + rec.paper + "'");
        int bin = std::min(static_cast<int>(std::floor(rec.impact)), bin_cap);
        bins[bin].push_back(&it->second);
    }

    CurveTable table;
    for (const auto& [bin, members] : bins) {
        CurveRow row;
        row.bin = bin;
        row.count = members.size();
        std::array<double*, 6> out = {&row.medians.density,          &row.medians.clustering,
                                      &row.medians.connectivity,     &row.medians.max_betweenness,
                                      &row.medians.focal_betweenness, &row.medians.focal_constraint};
        for (std::size_t m = 0; m < 6; ++m) {
            std::vector<double> values;
            values.reserve(members.size());
            for (const auto* v : members) values.push_back((*v)[m]);
            *out[m] = median_of(std::move(values));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

} // namespace citeproj
