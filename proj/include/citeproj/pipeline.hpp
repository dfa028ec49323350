#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "citeproj/graph.hpp"
#include "citeproj/impact.hpp"
#include "citeproj/io.hpp"
#include "citeproj/metrics.hpp"
#include "citeproj/nullmodel.hpp"
#include "citeproj/parallel.hpp"
#include "citeproj/projection.hpp"
#include "citeproj/stats.hpp"

#include "json.hpp"

namespace citeproj {

struct RunConfig {
    std::string edges_path;
    std::string meta_path;
    std::string out_dir;
    std::size_t min_refs = 10;
    ConstraintVariant constraint = ConstraintVariant::standard_burt;
    StrataConfig strata;
    CohortMean cohort = CohortMean::inclusive;
    std::uint64_t seed = 42;
    std::uint64_t swap_factor = 100;
    std::size_t samples = 1; // randomized samples per paper; 0 skips nullmodel
    std::size_t bins = 20;
    std::optional<int> cutoff_year;
    unsigned jobs = 1;
};

namespace detail {

// Stage wrapper so every error message names the pipeline stage it came from.
template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string(name) + ": " + e.what());
    }
}

} // namespace detail

struct MetricsRow {
    PaperId paper;
    std::size_t n_cited = 0;
    MetricVector metrics;
};

/// Projects every focal paper and computes its metric vector. Slots are
/// indexed by position, so any jobs setting yields the same rows.
inline std::vector<MetricsRow> compute_metrics(const CitationGraph& g,
                                               const std::vector<PaperId>& focal_set,
                                               ConstraintVariant variant, unsigned jobs = 1) {
    std::vector<MetricsRow> rows(focal_set.size());
    parallel_for(focal_set.size(), jobs, [&](std::size_t i) {
        ProjectionPair pair = project(g, focal_set[i]);
        rows[i].paper = focal_set[i];
        rows[i].n_cited = pair.cited.size();
        rows[i].metrics = metric_vector(pair, variant);
    });
    return rows;
}

inline void write_metrics_csv(std::ostream& out, const std::vector<MetricsRow>& rows) {
    out << "paper_id,n_cited";
    for (const char* name : MetricVector::names) out << ',' << name;
    out << '\n';
    for (const auto& row : rows) {
        out << row.paper << ',' << row.n_cited;
        for (std::size_t m = 0; m < 6; ++m) out << ',' << io::format_g6(row.metrics[m]);
        out << '\n';
    }
}

inline std::vector<MetricsRow> read_metrics_csv(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) io::fail_at(source, 1, "empty metrics file");
    std::vector<MetricsRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view row_text = io::strip_cr(line);
        if (row_text.empty()) continue;
        auto fields = io::split(row_text, ',');
        if (fields.size() != 8)
            io::fail_at(source, line_no, "expected 8 fields, got " + std::to_string(fields.size()));
        MetricsRow row;
        row.paper = PaperId(fields[0]);
        try {
            row.n_cited = static_cast<std::size_t>(std::stoull(std::string(fields[1])));
            std::array<double*, 6> slots = {
                &row.metrics.density,          &row.metrics.clustering,
                &row.metrics.connectivity,     &row.metrics.max_betweenness,
                &row.metrics.focal_betweenness, &row.metrics.focal_constraint};
            for (std::size_t m = 0; m < 6; ++m) *slots[m] = std::stod(std::string(fields[2 + m]));
        } catch (const std::exception&) {
            io::fail_at(source, line_no, "malformed numeric field");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void write_impact_csv(std::ostream& out, const std::vector<ImpactRecord>& records) {
    out << "paper_id,year,area,raw_citations,impact,stratum\n";
    for (const auto& r : records)
        out << r.paper << ',' << r.year << ',' << r.area << ',' << r.raw_citations << ','
            << io::format_g6(r.impact) << ',' << to_string(r.stratum) << '\n';
}

/// Reads impact rows back. cohort_positive is reconstructed from the stratum
/// column: pipeline output assigns a stratum to exactly the records whose
/// cohort mean was positive.
inline std::vector<ImpactRecord> read_impact_csv(std::istream& in, const std::string& source) {
    std::string line;
    if (!std::getline(in, line)) io::fail_at(source, 1, "empty impact file");
    std::vector<ImpactRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view row_text = io::strip_cr(line);
        if (row_text.empty()) continue;
        auto fields = io::split(row_text, ',');
        if (fields.size() != 6)
            io::fail_at(source, line_no, "expected 6 fields, got " + std::to_string(fields.size()));
        ImpactRecord rec;
        rec.paper = PaperId(fields[0]);
        rec.area = std::string(fields[2]);
        rec.year = io::parse_int(fields[1], source, line_no, "year");
        try {
            rec.raw_citations = std::stoull(std::string(fields[3]));
            rec.impact = std::stod(std::string(fields[4]));
            rec.stratum = stratum_from_string(std::string(fields[5]));
        } catch (const std::exception&) {
            io::fail_at(source, line_no, "malformed field");
        }
        rec.cohort_positive = rec.stratum != Stratum::Unassigned;
        records.push_back(std::move(rec));
    }
    return records;
}

inline void write_curves_csv(std::ostream& out, const CurveTable& table) {
    out << "bin,count";
    for (const char* name : MetricVector::names) out << ',' << name;
    out << '\n';
    for (const auto& row : table.rows) {
        out << row.bin << ',' << row.count;
        for (std::size_t m = 0; m < 6; ++m) out << ',' << io::format_g6(row.medians[m]);
        out << '\n';
    }
}

inline void write_table1_csv(std::ostream& out, const GroupMeansTable& table) {
    out << "metric,area,mean_high,mean_mid,mean_low,p_high_mid,p_mid_low,p_high_low\n";
    auto cell = [](double v) { return std::isnan(v) ? std::string("n/a") : io::format_g6(v); };
    auto p_cell = [](double v) { return std::isnan(v) ? std::string("n/a") : format_p_value(v); };
    for (const auto& row : table.rows) {
        out << row.metric << ',' << row.area << ',' << cell(row.mean_high) << ','
            << cell(row.mean_mid) << ',' << cell(row.mean_low) << ',' << p_cell(row.p_high_mid)
            << ',' << p_cell(row.p_mid_low) << ',' << p_cell(row.p_high_low) << '\n';
    }
}

inline void write_paired_histogram_csv(std::ostream& out, const Histogram& first,
                                       const Histogram& second, const std::string& first_name,
                                       const std::string& second_name) {
    out << "bin_lo,bin_hi,mass_" << first_name << ",mass_" << second_name << '\n';
    for (std::size_t i = 0; i + 1 < first.bin_edges.size(); ++i)
        out << io::format_g6(first.bin_edges[i]) << ',' << io::format_g6(first.bin_edges[i + 1])
            << ',' << io::format_g6(first.masses[i]) << ',' << io::format_g6(second.masses[i])
            << '\n';
}

namespace detail {

inline nlohmann::json histogram_json(const Histogram& h) {
    return {{"bin_edges", h.bin_edges},
            {"masses", h.masses},
            {"sample_count", h.sample_count},
            {"clamped_count", h.clamped_count}};
}

inline nlohmann::json ttest_json(const TTestResult& t) {
    return {{"t", t.t_statistic},          {"df", t.degrees_of_freedom},
            {"p", t.p_value},              {"p_formatted", format_p_value(t.p_value)},
            {"mean_a", t.mean_a},          {"mean_b", t.mean_b},
            {"n_a", t.n_a},                {"n_b", t.n_b}};
}

inline std::ofstream open_artifact(const std::filesystem::path& dir, const std::string& name) {
    return io::open_output((dir / name).string());
}

} // namespace detail

inline nlohmann::json table1_json(const GroupMeansTable& table) {
    nlohmann::json rows = nlohmann::json::array();
    auto num = [](double v) {
        return std::isnan(v) ? nlohmann::json() : nlohmann::json(v);
    };
    for (const auto& r : table.rows)
        rows.push_back({{"metric", r.metric},
                        {"area", r.area},
                        {"available", r.available},
                        {"mean_high", num(r.mean_high)},
                        {"mean_mid", num(r.mean_mid)},
                        {"mean_low", num(r.mean_low)},
                        {"p_high_mid", num(r.p_high_mid)},
                        {"p_mid_low", num(r.p_mid_low)},
                        {"p_high_low", num(r.p_high_low)}});
    return rows;
}

inline nlohmann::json comparison_json(const ComparisonReport& report) {
    nlohmann::json metrics = nlohmann::json::array();
    for (const auto& cmp : report.metrics)
        metrics.push_back({{"metric", cmp.metric},
                           {"real", detail::histogram_json(cmp.real)},
                           {"random", detail::histogram_json(cmp.random)},
                           {"test", detail::ttest_json(cmp.test)}});
    return {{"paper_count", report.paper_count},
            {"samples_per_paper", report.samples_per_paper},
            {"seed", report.seed},
            {"swap_factor", report.swap_factor},
            {"metrics", metrics}};
}

inline nlohmann::json temporal_json(const TemporalReport& report) {
    nlohmann::json metrics = nlohmann::json::array();
    for (const auto& split : report.metrics)
        metrics.push_back({{"metric", split.metric},
                           {"early", detail::histogram_json(split.early)},
                           {"late", detail::histogram_json(split.late)},
                           {"test", detail::ttest_json(split.test)}});
    return {{"cutoff_year", report.cutoff_year},
            {"year_min", report.year_min},
            {"year_max", report.year_max},
            {"n_early", report.n_early},
            {"n_late", report.n_late},
            {"metrics", metrics}};
}

inline void write_comparison_csvs(const std::filesystem::path& dir, const ComparisonReport& report) {
    for (const auto& cmp : report.metrics) {
        auto out = detail::open_artifact(dir, "fig3_" + cmp.metric + ".csv");
        write_paired_histogram_csv(out, cmp.real, cmp.random, "real", "random");
    }
}

inline void write_temporal_csvs(const std::filesystem::path& dir, const TemporalReport& report) {
    for (const auto& split : report.metrics) {
        auto out = detail::open_artifact(dir, "fig5_" + split.metric + ".csv");
        write_paired_histogram_csv(out, split.early, split.late, "early", "late");
    }
}

struct RunSummary {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t cycle_edges = 0;
    std::size_t eligible = 0;
    std::size_t impact_records = 0;
    std::size_t skipped_no_meta = 0;
    std::map<std::string, std::size_t> strata_sizes;
};

/// Full pipeline: ingest -> eligibility -> projection -> metrics -> impact ->
/// strata -> reports, plus the null-model comparison when samples >= 1 and
/// the temporal split when a cutoff year is set. All artifacts land under
/// cfg.out_dir and are byte-stable for fixed inputs, config, and seed.
inline RunSummary run_pipeline(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    RunSummary summary;

    CitationGraph g = detail::stage("ingest", [&] {
        auto edges = io::open_input(cfg.edges_path, "edge");
        auto meta = io::open_input(cfg.meta_path, "metadata");
        return load_citation_graph(edges, meta, cfg.edges_path, cfg.meta_path);
    });
    CycleReport cycles = validate_acyclicity(g);
    summary.nodes = g.node_count();
    summary.edges = g.edge_count();
    summary.cycle_edges = cycles.cycle_edge_count;

    std::vector<PaperId> eligible = detail::stage("eligibility", [&] {
        auto list = eligible_focal_papers(g, cfg.min_refs);
        if (list.empty())
            throw std::runtime_error("no eligible focal papers (min-refs " +
                                     std::to_string(cfg.min_refs) + ")");
        return list;
    });
    summary.eligible = eligible.size();

    fs::create_directories(cfg.out_dir);
    const fs::path out_dir = cfg.out_dir;

    std::vector<MetricsRow> rows = detail::stage("metrics", [&] {
        return compute_metrics(g, eligible, cfg.constraint, cfg.jobs);
    });
    {
        auto out = detail::open_artifact(out_dir, "metrics.csv");
        write_metrics_csv(out, rows);
    }

    // Impact: cohort means over every paper with metadata, but the analysis
    // universe (CSV, strata, curves, tests) is the eligible focal set.
    std::vector<ImpactRecord> records = detail::stage("impact", [&] {
        ImpactResult result = normalized_impact(g, cfg.cohort);
        summary.skipped_no_meta = result.skipped_no_meta;
        std::set<PaperId> keep(eligible.begin(), eligible.end());
        std::vector<ImpactRecord> filtered;
        for (auto& rec : result.records)
            if (keep.count(rec.paper)) filtered.push_back(std::move(rec));
        return filtered;
    });
    records = detail::stage("strata", [&] { return stratify(records, cfg.strata); });
    summary.impact_records = records.size();
    for (const auto& rec : records) ++summary.strata_sizes[to_string(rec.stratum)];
    {
        auto out = detail::open_artifact(out_dir, "impact.csv");
        write_impact_csv(out, records);
    }

    std::map<PaperId, MetricVector> vectors;
    for (const auto& row : rows) vectors[row.paper] = row.metrics;

    nlohmann::json report_json;
    detail::stage("report", [&] {
        CurveTable curves = median_metric_by_impact(records, vectors);
        GroupMeansTable table = group_means_table(vectors, records);
        {
            auto out = detail::open_artifact(out_dir, "fig4_curves.csv");
            write_curves_csv(out, curves);
        }
        {
            auto out = detail::open_artifact(out_dir, "table1.csv");
            write_table1_csv(out, table);
        }
        nlohmann::json curve_rows = nlohmann::json::array();
        for (const auto& row : curves.rows) {
            nlohmann::json medians;
            for (std::size_t m = 0; m < 6; ++m)
                medians[MetricVector::names[m]] = row.medians[m];
            curve_rows.push_back({{"bin", row.bin}, {"count", row.count}, {"medians", medians}});
        }
        report_json = {{"input",
                        {{"nodes", summary.nodes},
                         {"edges", summary.edges},
                         {"cycle_edges", summary.cycle_edges},
                         {"skipped_no_meta", summary.skipped_no_meta}}},
                       {"eligible", summary.eligible},
                       {"strata", summary.strata_sizes},
                       {"curves", curve_rows},
                       {"table1", table1_json(table)}};
        return 0;
    });

    if (cfg.samples >= 1) {
        ComparisonReport comparison = detail::stage("nullmodel", [&] {
            CompareOptions opt;
            opt.samples_per_paper = cfg.samples;
            opt.swap_factor = cfg.swap_factor;
            opt.constraint = cfg.constraint;
            opt.bin_count = cfg.bins;
            opt.jobs = cfg.jobs;
            return compare_real_vs_random(g, eligible, cfg.seed, opt);
        });
        write_comparison_csvs(out_dir, comparison);
        auto out = detail::open_artifact(out_dir, "nullmodel.json");
        out << comparison_json(comparison).dump(2) << '\n';
    }

    if (cfg.cutoff_year) {
        TemporalReport temporal = detail::stage("temporal", [&] {
            return temporal_split(records, vectors, *cfg.cutoff_year, cfg.bins);
        });
        write_temporal_csvs(out_dir, temporal);
        auto out = detail::open_artifact(out_dir, "temporal.json");
        out << temporal_json(temporal).dump(2) << '\n';
    }

    {
        auto out = detail::open_artifact(out_dir, "report.json");
        out << report_json.dump(2) << '\n';
    }
    return summary;
}

} // namespace citeproj
