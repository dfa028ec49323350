// citeproj command-line front end. Every subcommand is independently
// invocable: the analysis commands read the raw edge/meta files, while
// `report` and `temporal` work off previously written CSV artifacts.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "citeproj/citeproj.hpp"

namespace {

using namespace citeproj;
namespace fs = std::filesystem;

struct InputArgs {
    std::string edges;
    std::string meta;
    std::size_t min_refs = 10;
};

void add_input_flags(CLI::App* cmd, InputArgs& in) {
    cmd->add_option("--edges", in.edges, "Edge list TSV: citing<TAB>cited")->required();
    cmd->add_option("--meta", in.meta, "Metadata CSV: paper_id,year,area")->required();
    cmd->add_option("--min-refs", in.min_refs,
                    "Focal papers must cite strictly more than this many papers")
        ->capture_default_str();
}

void add_constraint_flag(CLI::App* cmd, ConstraintVariant& variant) {
    static const std::map<std::string, ConstraintVariant> names{
        {"burt", ConstraintVariant::standard_burt},
        {"as-printed", ConstraintVariant::as_printed}};
    cmd->add_option("--constraint", variant, "Constraint formula variant")
        ->transform(CLI::CheckedTransformer(names, CLI::ignore_case))
        ->default_str("burt");
}

CitationGraph load_graph(const InputArgs& in) {
    auto edges = io::open_input(in.edges, "edge");
    auto meta = io::open_input(in.meta, "metadata");
    return load_citation_graph(edges, meta, in.edges, in.meta);
}

std::string safe_filename(const PaperId& id) {
    std::string name = id;
    for (char& c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
    return name;
}

std::ifstream open_artifact_in(const fs::path& dir, const std::string& name) {
    return io::open_input((dir / name).string(), name);
}

int run_ingest(const InputArgs& in, const std::string& out_dir) {
    CitationGraph g = load_graph(in);
    CycleReport cycles = validate_acyclicity(g);
    const LoadStats& stats = g.stats();

    std::cout << "nodes: " << g.node_count() << "\n"
              << "edges: " << g.edge_count() << "\n"
              << "self loops dropped: " << stats.self_loops_dropped << "\n"
              << "duplicate edges dropped: " << stats.duplicate_edges_dropped << "\n"
              << "papers without metadata: " << stats.nodes_without_meta << "\n"
              << "cycle edges: " << cycles.cycle_edge_count
              << (cycles.is_dag() ? " (acyclic)" : " (cycles tolerated)") << "\n";
    for (const auto& cycle : cycles.sample_cycles) {
        std::cout << "  sample cycle:";
        for (const auto& id : cycle) std::cout << ' ' << id;
        std::cout << "\n";
    }

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
        nlohmann::json doc{{"nodes", g.node_count()},
                           {"edges", g.edge_count()},
                           {"edge_rows", stats.edge_rows},
                           {"self_loops_dropped", stats.self_loops_dropped},
                           {"duplicate_edges_dropped", stats.duplicate_edges_dropped},
                           {"nodes_without_meta", stats.nodes_without_meta},
                           {"cycle_edges", cycles.cycle_edge_count},
                           {"is_dag", cycles.is_dag()}};
        auto out = io::open_output((fs::path(out_dir) / "ingest.json").string());
        out << doc.dump(2) << '\n';
    }
    return 0;
}

int run_project(const InputArgs& in, const std::string& paper, const std::string& out_dir) {
    CitationGraph g = load_graph(in);
    ProjectionPair pair = project(g, paper);
    if (out_dir.empty()) {
        write_projection_tsv(std::cout, pair);
    } else {
        fs::create_directories(out_dir);
        std::string name = "projection_" + safe_filename(paper) + ".tsv";
        auto out = io::open_output((fs::path(out_dir) / name).string());
        write_projection_tsv(out, pair);
        std::cout << "wrote " << name << " (" << pair.cited.size() << " cited, "
                  << pair.gp_edges.size() << " edges)\n";
    }
    return 0;
}

int run_metrics(const InputArgs& in, ConstraintVariant variant, unsigned jobs,
                const std::string& out_dir) {
    CitationGraph g = load_graph(in);
    auto eligible = eligible_focal_papers(g, in.min_refs);
    auto rows = compute_metrics(g, eligible, variant, jobs);
    fs::create_directories(out_dir);
    auto out = io::open_output((fs::path(out_dir) / "metrics.csv").string());
    write_metrics_csv(out, rows);
    std::cout << "metrics.csv: " << rows.size() << " eligible papers\n";
    return 0;
}

int run_impact(const InputArgs& in, const StrataConfig& strata, bool exclusive,
               const std::string& out_dir) {
    CitationGraph g = load_graph(in);
    auto eligible = eligible_focal_papers(g, in.min_refs);
    ImpactResult result =
        normalized_impact(g, exclusive ? CohortMean::exclusive : CohortMean::inclusive);
    std::set<PaperId> keep(eligible.begin(), eligible.end());
    std::vector<ImpactRecord> records;
    for (auto& rec : result.records)
        if (keep.count(rec.paper)) records.push_back(std::move(rec));
    records = stratify(records, strata);
    fs::create_directories(out_dir);
    auto out = io::open_output((fs::path(out_dir) / "impact.csv").string());
    write_impact_csv(out, records);
    std::cout << "impact.csv: " << records.size() << " records ("
              << result.skipped_no_meta << " papers without metadata skipped)\n";
    return 0;
}

int run_report(const std::string& out_dir) {
    const fs::path dir = out_dir;
    auto metrics_in = open_artifact_in(dir, "metrics.csv");
    auto rows = read_metrics_csv(metrics_in, (dir / "metrics.csv").string());
    auto impact_in = open_artifact_in(dir, "impact.csv");
    auto records = read_impact_csv(impact_in, (dir / "impact.csv").string());

    std::map<PaperId, MetricVector> vectors;
    for (const auto& row : rows) vectors[row.paper] = row.metrics;

    CurveTable curves = median_metric_by_impact(records, vectors);
    GroupMeansTable table = group_means_table(vectors, records);
    {
        auto out = io::open_output((dir / "fig4_curves.csv").string());
        write_curves_csv(out, curves);
    }
    {
        auto out = io::open_output((dir / "table1.csv").string());
        write_table1_csv(out, table);
    }
    nlohmann::json curve_rows = nlohmann::json::array();
    for (const auto& row : curves.rows) {
        nlohmann::json medians;
        for (std::size_t m = 0; m < 6; ++m) medians[MetricVector::names[m]] = row.medians[m];
        curve_rows.push_back({{"bin", row.bin}, {"count", row.count}, {"medians", medians}});
    }
    std::map<std::string, std::size_t> strata_sizes;
    for (const auto& rec : records) ++strata_sizes[to_string(rec.stratum)];
    nlohmann::json doc{{"records", records.size()},
                       {"strata", strata_sizes},
                       {"curves", curve_rows},
                       {"table1", table1_json(table)}};
    auto out = io::open_output((dir / "report.json").string());
    out << doc.dump(2) << '\n';
    std::cout << "report: " << table.rows.size() << " table rows, " << curves.rows.size()
              << " curve bins\n";
    return 0;
}

int run_nullmodel(const InputArgs& in, std::uint64_t seed, const CompareOptions& opt,
                  const std::string& out_dir) {
    CitationGraph g = load_graph(in);
    auto eligible = eligible_focal_papers(g, in.min_refs);
    ComparisonReport report = compare_real_vs_random(g, eligible, seed, opt);
    fs::create_directories(out_dir);
    write_comparison_csvs(out_dir, report);
    auto out = io::open_output((fs::path(out_dir) / "nullmodel.json").string());
    out << comparison_json(report).dump(2) << '\n';
    std::cout << "nullmodel: " << report.paper_count << " papers x " << report.samples_per_paper
              << " samples\n";
    for (const auto& cmp : report.metrics)
        std::cout << "  " << cmp.metric << ": real mean " << io::format_g6(cmp.test.mean_a)
                  << ", random mean " << io::format_g6(cmp.test.mean_b) << ", p "
                  << format_p_value(cmp.test.p_value) << "\n";
    return 0;
}

int run_temporal(int cutoff_year, std::size_t bins, const std::string& out_dir) {
    const fs::path dir = out_dir;
    auto metrics_in = open_artifact_in(dir, "metrics.csv");
    auto rows = read_metrics_csv(metrics_in, (dir / "metrics.csv").string());
    auto impact_in = open_artifact_in(dir, "impact.csv");
    auto records = read_impact_csv(impact_in, (dir / "impact.csv").string());

    std::map<PaperId, MetricVector> vectors;
    for (const auto& row : rows) vectors[row.paper] = row.metrics;

    TemporalReport report = temporal_split(records, vectors, cutoff_year, bins);
    write_temporal_csvs(dir, report);
    auto out = io::open_output((dir / "temporal.json").string());
    out << temporal_json(report).dump(2) << '\n';
    std::cout << "temporal: " << report.n_early << " papers through " << cutoff_year << ", "
              << report.n_late << " after\n";
    return 0;
}

int run_synth(const CorpusSpec& spec, const std::string& out_dir) {
    SynthCorpus corpus = generate_corpus(spec);
    fs::create_directories(out_dir);
    {
        auto out = io::open_output((fs::path(out_dir) / "edges.tsv").string());
        corpus.write_edges(out);
    }
    {
        auto out = io::open_output((fs::path(out_dir) / "meta.csv").string());
        corpus.write_meta(out);
    }
    {
        auto out = io::open_output((fs::path(out_dir) / "labels.csv").string());
        corpus.write_labels(out);
    }
    std::cout << "synth: " << corpus.focals.size() << " focal papers, " << corpus.edges.size()
              << " edges, " << corpus.citer_count << " citers\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Citation projection graph analytics"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Declarative config file; command-line flags win");

    InputArgs in;
    std::string out_dir;
    std::string paper;
    ConstraintVariant variant = ConstraintVariant::standard_burt;
    StrataConfig strata;
    bool exclusive_cohort = false;
    std::uint64_t seed = 42;
    std::uint64_t swap_factor = 100;
    std::size_t samples = 1;
    std::size_t bins = 20;
    int cutoff_year = 0;
    unsigned jobs = 1;
    CorpusSpec corpus_spec;

    auto* ingest = app.add_subcommand("ingest", "Load and validate a citation graph");
    add_input_flags(ingest, in);
    ingest->add_option("--out", out_dir, "Directory for ingest.json (optional)");

    auto* project_cmd = app.add_subcommand("project", "Extract one paper's projection graphs");
    add_input_flags(project_cmd, in);
    project_cmd->add_option("--paper", paper, "Focal paper id")->required();
    project_cmd->add_option("--out", out_dir, "Directory for the TSV (stdout when omitted)");

    auto* metrics_cmd = app.add_subcommand("metrics", "Compute the six metrics per eligible paper");
    add_input_flags(metrics_cmd, in);
    add_constraint_flag(metrics_cmd, variant);
    metrics_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
    metrics_cmd->add_option("--out", out_dir, "Output directory")->required();

    auto* impact_cmd = app.add_subcommand("impact", "Normalized impact and strata");
    add_input_flags(impact_cmd, in);
    impact_cmd->add_option("--high-frac", strata.high_fraction, "High stratum fraction")
        ->capture_default_str();
    impact_cmd->add_option("--low-frac", strata.low_fraction, "Low stratum fraction")
        ->capture_default_str();
    impact_cmd->add_flag("--exclusive-cohort", exclusive_cohort,
                         "Leave each paper out of its own cohort mean");
    impact_cmd->add_option("--out", out_dir, "Output directory")->required();

    auto* report_cmd = app.add_subcommand("report", "Curve and table reports from prior artifacts");
    report_cmd->add_option("--out", out_dir, "Directory holding metrics.csv and impact.csv")
        ->required();

    auto* null_cmd = app.add_subcommand("nullmodel", "Compare real graphs against degree-preserving randomizations");
    add_input_flags(null_cmd, in);
    add_constraint_flag(null_cmd, variant);
    null_cmd->add_option("--seed", seed, "Master random seed")->capture_default_str();
    null_cmd->add_option("--samples", samples, "Randomized samples per paper")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    null_cmd->add_option("--swap-factor", swap_factor, "Swap attempts per edge")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    null_cmd->add_option("--bins", bins, "Histogram bins")->capture_default_str();
    null_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
    null_cmd->add_option("--out", out_dir, "Output directory")->required();

    auto* temporal_cmd = app.add_subcommand("temporal", "Early/late era comparison from prior artifacts");
    temporal_cmd->add_option("--cutoff-year", cutoff_year, "Last year of the early era")->required();
    temporal_cmd->add_option("--bins", bins, "Histogram bins")->capture_default_str();
    temporal_cmd->add_option("--out", out_dir, "Directory holding metrics.csv and impact.csv")
        ->required();

    auto* synth_cmd = app.add_subcommand("synth", "Generate a labeled synthetic corpus");
    synth_cmd->add_option("--areas", corpus_spec.areas, "Area names")->capture_default_str();
    synth_cmd->add_option("--years", corpus_spec.years, "Publication years to cycle through")
        ->capture_default_str();
    synth_cmd->add_option("--idiosyncratic", corpus_spec.idiosyncratic,
                          "Idiosyncratic papers per area")
        ->capture_default_str();
    synth_cmd->add_option("--within-community", corpus_spec.within_community,
                          "Within-community papers per area")
        ->capture_default_str();
    synth_cmd->add_option("--brokerage", corpus_spec.brokerage, "Brokerage papers per area")
        ->capture_default_str();
    synth_cmd->add_option("--n-cited", corpus_spec.n_cited, "References per focal paper")
        ->capture_default_str();
    synth_cmd->add_option("--seed", corpus_spec.seed, "Master random seed")->capture_default_str();
    synth_cmd->add_option("--out", out_dir, "Output directory")->required();

    auto* run_cmd = app.add_subcommand("run", "Full pipeline over one corpus");
    add_input_flags(run_cmd, in);
    add_constraint_flag(run_cmd, variant);
    run_cmd->add_option("--high-frac", strata.high_fraction, "High stratum fraction")
        ->capture_default_str();
    run_cmd->add_option("--low-frac", strata.low_fraction, "Low stratum fraction")
        ->capture_default_str();
    run_cmd->add_flag("--exclusive-cohort", exclusive_cohort,
                      "Leave each paper out of its own cohort mean");
    run_cmd->add_option("--seed", seed, "Master random seed")->capture_default_str();
    run_cmd->add_option("--swap-factor", swap_factor, "Swap attempts per edge")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    run_cmd->add_option("--samples", samples, "Randomized samples per paper (0 skips the null model)")
        ->capture_default_str();
    run_cmd->add_option("--bins", bins, "Histogram bins")->capture_default_str();
    auto* cutoff_opt =
        run_cmd->add_option("--cutoff-year", cutoff_year, "Enable the temporal split at this year");
    run_cmd->add_option("--jobs", jobs, "Worker threads")->capture_default_str();
    run_cmd->add_option("--out", out_dir, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(ingest)) return run_ingest(in, out_dir);
        if (app.got_subcommand(project_cmd)) return run_project(in, paper, out_dir);
        if (app.got_subcommand(metrics_cmd)) return run_metrics(in, variant, jobs, out_dir);
        if (app.got_subcommand(impact_cmd)) return run_impact(in, strata, exclusive_cohort, out_dir);
        if (app.got_subcommand(report_cmd)) return run_report(out_dir);
        if (app.got_subcommand(null_cmd)) {
            CompareOptions opt;
            opt.samples_per_paper = samples;
            opt.swap_factor = swap_factor;
            opt.constraint = variant;
            opt.bin_count = bins;
            opt.jobs = jobs;
            return run_nullmodel(in, seed, opt, out_dir);
        }
        if (app.got_subcommand(temporal_cmd)) return run_temporal(cutoff_year, bins, out_dir);
        if (app.got_subcommand(synth_cmd)) return run_synth(corpus_spec, out_dir);
        if (app.got_subcommand(run_cmd)) {
            RunConfig cfg;
            cfg.edges_path = in.edges;
            cfg.meta_path = in.meta;
            cfg.out_dir = out_dir;
            cfg.min_refs = in.min_refs;
            cfg.constraint = variant;
            cfg.strata = strata;
            cfg.cohort = exclusive_cohort ? CohortMean::exclusive : CohortMean::inclusive;
            cfg.seed = seed;
            cfg.swap_factor = swap_factor;
            cfg.samples = samples;
            cfg.bins = bins;
            if (cutoff_opt->count() > 0) cfg.cutoff_year = cutoff_year;
            cfg.jobs = jobs;
            RunSummary summary = run_pipeline(cfg);
            std::cout << "run: " << summary.nodes << " nodes, " << summary.edges << " edges, "
                      << summary.eligible << " eligible papers\n";
            for (const auto& [stratum, count] : summary.strata_sizes)
                std::cout << "  " << stratum << ": " << count << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
