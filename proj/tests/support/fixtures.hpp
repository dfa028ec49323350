#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "citeproj/graph.hpp"
#include "citeproj/projection.hpp"
#include "citeproj/rng.hpp"

#include "oracles.hpp"

namespace fixtures {

inline std::string cited_name(std::size_t i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "c%05zu", i);
    return buf;
}

/// Projection pair with n cited papers and the given local-index edges.
inline citeproj::ProjectionPair make_projection(
    std::size_t n_cited, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
    std::string focal = "p0") {
    citeproj::ProjectionPair pair;
    pair.focal = std::move(focal);
    for (std::size_t i = 0; i < n_cited; ++i) pair.cited.push_back(cited_name(i));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    pair.gp_edges = std::move(edges);
    return pair;
}

/// Random directed pair with 1..max_nodes cited papers and varied density.
/// Some pairs get both directions of an edge, exercising parallel merging.
inline citeproj::ProjectionPair random_pair(citeproj::Rng& rng, std::size_t max_nodes = 7) {
    std::size_t n = 1 + static_cast<std::size_t>(rng.below(max_nodes));
    double p = rng.unit();
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a + 1; b < n; ++b) {
            if (!rng.bernoulli(p)) continue;
            if (rng.bernoulli(0.5)) edges.emplace_back(a, b);
            else edges.emplace_back(b, a);
            if (rng.bernoulli(0.2)) edges.emplace_back(b, a); // may duplicate; deduped below
        }
    return make_projection(n, std::move(edges));
}

inline oracles::SimpleGraph gp_simple(const citeproj::ProjectionPair& pair) {
    oracles::SimpleGraph g(pair.cited.size());
    for (const auto& [a, b] : pair.gp_edges) g.add_edge(a, b);
    return g;
}

inline oracles::SimpleGraph gp0_simple(const citeproj::ProjectionPair& pair) {
    oracles::SimpleGraph g(pair.cited.size() + 1);
    for (const auto& [a, b] : pair.gp_edges) g.add_edge(a, b);
    std::size_t focal = pair.cited.size();
    for (std::size_t i = 0; i < pair.cited.size(); ++i) g.add_edge(focal, i);
    return g;
}

inline citeproj::CitationGraph graph_from(const std::string& edges_tsv,
                                          const std::string& meta_csv) {
    std::stringstream edges(edges_tsv), meta(meta_csv);
    return citeproj::load_citation_graph(edges, meta, "edges", "meta");
}

} // namespace fixtures
