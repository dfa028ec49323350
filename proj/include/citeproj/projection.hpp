#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <unordered_map>
#include <utility>
#include <vector>

#include "citeproj/graph.hpp"

namespace citeproj {

/// The two projection graphs of a focal paper. `cited` holds the references
/// of the focal paper sorted by id; `gp_edges` are the citations among them,
/// as (citing, cited) pairs of positions into `cited`. The focal paper's own
/// outgoing edges (one per reference) are implied and never stored: together
/// with `gp_edges` they form the augmented graph, so its edge count is always
/// |gp_edges| + |cited|. No stored edge ever touches the focal paper.
struct ProjectionPair {
    PaperId focal;
    std::vector<PaperId> cited;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> gp_edges;

    std::size_t gp0_edge_count() const { return gp_edges.size() + cited.size(); }
};

/// Extracts the projection pair of `focal`: its references plus the induced
/// citations among them. Pure; throws std::out_of_range for unknown papers.
inline ProjectionPair project(const CitationGraph& g, const PaperId& focal) {
    NodeIndex v0 = g.node(focal);

    ProjectionPair pair;
    pair.focal = focal;
    pair.cited.reserve(g.out_degree(v0));
    for (NodeIndex w : g.out_neighbors(v0)) pair.cited.push_back(g.id_of(w));
    std::sort(pair.cited.begin(), pair.cited.end());

    std::unordered_map<NodeIndex, std::uint32_t> local;
    local.reserve(pair.cited.size());
    for (std::uint32_t i = 0; i < pair.cited.size(); ++i)
        local.emplace(g.node(pair.cited[i]), i);

    for (std::uint32_t i = 0; i < pair.cited.size(); ++i) {
        NodeIndex u = g.node(pair.cited[i]);
        for (NodeIndex w : g.out_neighbors(u)) {
            auto it = local.find(w);
            if (it != local.end()) pair.gp_edges.emplace_back(i, it->second);
        }
    }
    std::sort(pair.gp_edges.begin(), pair.gp_edges.end());
    return pair;
}

/// Writes the pair as two TSV edge-list sections separated by sentinel lines.
inline void write_projection_tsv(std::ostream& out, const ProjectionPair& pair) {
    out << "# gp\n";
    for (const auto& [a, b] : pair.gp_edges)
        out << pair.cited[a] << '\t' << pair.cited[b] << '\n';
    out << "# gp0\n";
    for (const auto& [a, b] : pair.gp_edges)
        out << pair.cited[a] << '\t' << pair.cited[b] << '\n';
    for (const auto& c : pair.cited) out << pair.focal << '\t' << c << '\n';
}

} // namespace citeproj
