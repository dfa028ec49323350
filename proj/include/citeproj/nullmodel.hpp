#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "citeproj/graph.hpp"
#include "citeproj/metrics.hpp"
#include "citeproj/parallel.hpp"
#include "citeproj/projection.hpp"
#include "citeproj/rng.hpp"
#include "citeproj/stats.hpp"

namespace citeproj {

struct RandomizedGraph {
    PaperId source_focal;
    std::uint64_t seed = 0;
    // Directed edges over the source pair's local cited indices. In- and
    // out-degree multisets match the source exactly; simple by construction.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::uint64_t attempted_swaps = 0;
    std::uint64_t accepted_swaps = 0;
};

/// Degree-preserving randomization of G_p by directed double-edge swaps:
/// (a->b),(c->d) => (a->d),(c->b), rejecting swaps that would introduce a
/// self-loop or a duplicate edge. swap_factor * |E| swaps are attempted.
/// Deterministic per (input, seed, swap_factor). Graphs with fewer than two
/// edges come back unchanged. The focal paper's own edges are not touched;
/// a randomized G_p0 reattaches them as-is.
inline RandomizedGraph randomize_degree_preserving(const ProjectionPair& gp,
                                                   std::uint64_t seed,
                                                   std::uint64_t swap_factor = 100) {
    if (swap_factor < 1) throw std::invalid_argument("swap_factor must be at least 1");

    RandomizedGraph out;
    out.source_focal = gp.focal;
    out.seed = seed;
    out.edges = gp.gp_edges;
    if (out.edges.size() < 2) return out;

    auto key = [](std::uint32_t a, std::uint32_t b) {
        return (static_cast<std::uint64_t>(a) << 32) | b;
    };
    std::unordered_set<std::uint64_t> present;
    present.reserve(out.edges.size() * 2);
    for (const auto& [a, b] : out.edges) present.insert(key(a, b));

    Rng rng(seed);
    const std::uint64_t n_edges = out.edges.size();
    out.attempted_swaps = swap_factor * n_edges;
    for (std::uint64_t step = 0; step < out.attempted_swaps; ++step) {
        std::size_t i = static_cast<std::size_t>(rng.below(n_edges));
        std::size_t j = static_cast<std::size_t>(rng.below(n_edges));
        if (i == j) continue;
        auto [a, b] = out.edges[i];
        auto [c, d] = out.edges[j];
        if (a == d || c == b) continue; // would create a self-loop
        present.erase(key(a, b));
        present.erase(key(c, d));
        if (present.count(key(a, d)) || present.count(key(c, b))) {
            present.insert(key(a, b));
            present.insert(key(c, d));
            continue; // would create a duplicate edge
        }
        out.edges[i] = {a, d};
        out.edges[j] = {c, b};
        present.insert(key(a, d));
        present.insert(key(c, b));
        ++out.accepted_swaps;
    }
    return out;
}

/// Rewraps a randomized edge set as a ProjectionPair over the source's cited
/// papers, so the metric functions apply unchanged. The focal paper's edges
/// to every cited paper are implied, exactly as in the source pair.
inline ProjectionPair as_projection(const ProjectionPair& source, const RandomizedGraph& r) {
    ProjectionPair pair;
    pair.focal = source.focal;
    pair.cited = source.cited;
    pair.gp_edges = r.edges;
    std::sort(pair.gp_edges.begin(), pair.gp_edges.end());
    return pair;
}

/// Randomized counterpart edges as paper-id rows, sorted, for golden files.
inline void write_randomized_tsv(std::ostream& out, const ProjectionPair& source,
                                 const RandomizedGraph& r) {
    std::vector<std::pair<PaperId, PaperId>> rows;
    rows.reserve(r.edges.size());
    for (const auto& [a, b] : r.edges)
        rows.emplace_back(source.cited[a], source.cited[b]);
    std::sort(rows.begin(), rows.end());
    for (const auto& [from, to] : rows) out << from << '\t' << to << '\n';
}

struct MetricComparison {
    std::string metric;
    Histogram real;
    Histogram random;
    TTestResult test; // real vs random
};

struct ComparisonReport {
    std::size_t paper_count = 0;
    std::size_t samples_per_paper = 0;
    std::uint64_t seed = 0;
    std::uint64_t swap_factor = 0;
    // Density is skipped: randomization preserves node and edge counts, so it
    // cannot move. Five sections, clustering through focal_constraint.
    std::vector<MetricComparison> metrics;
};

struct CompareOptions {
    std::size_t samples_per_paper = 1;
    std::uint64_t swap_factor = 100;
    ConstraintVariant constraint = ConstraintVariant::standard_burt;
    std::size_t bin_count = 20;
    unsigned jobs = 1;
};

/// Projects each focal paper, randomizes it samples_per_paper times, and
/// compares real against randomized metric distributions with histograms and
/// Welch t-tests. Child seeds derive from (seed, paper id, sample index), so
/// results are identical at any jobs setting.
inline ComparisonReport compare_real_vs_random(const CitationGraph& g,
                                               const std::vector<PaperId>& focal_set,
                                               std::uint64_t seed,
                                               const CompareOptions& opt = {}) {
    if (focal_set.empty()) throw std::invalid_argument("focal set is empty");
    if (opt.samples_per_paper < 1)
        throw std::invalid_argument("samples_per_paper must be at least 1");

    struct Slot {
        MetricVector real;
        std::vector<MetricVector> random;
    };
    std::vector<Slot> slots(focal_set.size());
    parallel_for(focal_set.size(), opt.jobs, [&](std::size_t i) {
        ProjectionPair pair = project(g, focal_set[i]);
        Slot& slot = slots[i];
        slot.real = metric_vector(pair, opt.constraint);
        slot.random.reserve(opt.samples_per_paper);
        for (std::size_t s = 0; s < opt.samples_per_paper; ++s) {
            std::uint64_t child = derive_seed(seed, focal_set[i], s);
            RandomizedGraph rg = randomize_degree_preserving(pair, child, opt.swap_factor);
            slot.random.push_back(metric_vector(as_projection(pair, rg), opt.constraint));
        }
    });

    ComparisonReport report;
    report.paper_count = focal_set.size();
    report.samples_per_paper = opt.samples_per_paper;
    report.seed = seed;
    report.swap_factor = opt.swap_factor;
    for (std::size_t m = 1; m < 6; ++m) {
        std::vector<double> real, random;
        real.reserve(slots.size());
        random.reserve(slots.size() * opt.samples_per_paper);
        for (const auto& slot : slots) {
            real.push_back(slot.real[m]);
            for (const auto& v : slot.random) random.push_back(v[m]);
        }
        double max_seen = 0.0;
        for (double v : real) max_seen = std::max(max_seen, v);
        for (double v : random) max_seen = std::max(max_seen, v);
        auto [lo, hi] = histogram_range_for_metric(m, max_seen);

        MetricComparison cmp;
        cmp.metric = MetricVector::names[m];
        cmp.real = normalized_histogram(real, opt.bin_count, lo, hi);
        cmp.random = normalized_histogram(random, opt.bin_count, lo, hi);
        cmp.test = welch_t_test(real, random);
        report.metrics.push_back(std::move(cmp));
    }
    return report;
}

} // namespace citeproj
