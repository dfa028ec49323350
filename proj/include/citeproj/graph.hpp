#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "citeproj/io.hpp"

namespace citeproj {

using PaperId = std::string;
using NodeIndex = std::uint32_t;

struct PaperMeta {
    int year = 0;
    std::string area;
};

struct LoadStats {
    std::size_t edge_rows = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_edges_dropped = 0;
    std::size_t nodes_without_meta = 0;
};

/// Directed citation network: edge (u, v) means u cites v, so the
/// out-neighbors of a paper are its references. Immutable after loading;
/// every read operation is safe to run concurrently.
class CitationGraph {
public:
    NodeIndex intern(const PaperId& id) {
        auto it = index_.find(id);
        if (it != index_.end()) return it->second;
        NodeIndex idx = static_cast<NodeIndex>(ids_.size());
        ids_.push_back(id);
        meta_.emplace_back();
        out_.emplace_back();
        in_.emplace_back();
        index_.emplace(id, idx);
        return idx;
    }

    std::size_t node_count() const { return ids_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    bool has_node(const PaperId& id) const { return index_.count(id) != 0; }

    NodeIndex node(const PaperId& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw std::out_of_range("unknown paper '" + id + "'");
        return it->second;
    }

    const PaperId& id_of(NodeIndex v) const { return ids_[v]; }
    const std::optional<PaperMeta>& meta_of(NodeIndex v) const { return meta_[v]; }
    const std::vector<NodeIndex>& out_neighbors(NodeIndex v) const { return out_[v]; }
    const std::vector<NodeIndex>& in_neighbors(NodeIndex v) const { return in_[v]; }
    std::size_t out_degree(NodeIndex v) const { return out_[v].size(); }
    std::size_t in_degree(NodeIndex v) const { return in_[v].size(); }

    bool has_edge(NodeIndex u, NodeIndex v) const {
        const auto& nbrs = out_[u];
        return std::binary_search(nbrs.begin(), nbrs.end(), v);
    }

    void set_meta(NodeIndex v, PaperMeta m) { meta_[v] = std::move(m); }

    // Deduplicates and sorts adjacency; called once at the end of loading.
    void finalize(std::vector<std::pair<NodeIndex, NodeIndex>> edges, LoadStats stats) {
        std::sort(edges.begin(), edges.end());
        std::size_t raw = edges.size();
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        stats.duplicate_edges_dropped = raw - edges.size();
        for (const auto& [u, v] : edges) {
            out_[u].push_back(v);
            in_[v].push_back(u);
        }
        for (auto& nbrs : in_) std::sort(nbrs.begin(), nbrs.end());
        edge_count_ = edges.size();
        for (std::size_t v = 0; v < meta_.size(); ++v)
            if (!meta_[v]) ++stats.nodes_without_meta;
        stats_ = stats;
    }

    const LoadStats& stats() const { return stats_; }

private:
    std::vector<PaperId> ids_;
    std::unordered_map<PaperId, NodeIndex> index_;
    std::vector<std::optional<PaperMeta>> meta_;
    std::vector<std::vector<NodeIndex>> out_;
    std::vector<std::vector<NodeIndex>> in_;
    std::size_t edge_count_ = 0;
    LoadStats stats_;
};

struct CycleReport {
    std::size_t cycle_edge_count = 0;
    std::vector<std::vector<PaperId>> sample_cycles; // at most 10
    bool is_dag() const { return cycle_edge_count == 0; }
};

namespace detail {

inline void check_paper_token(std::string_view token, const std::string& source,
                              std::size_t line_no, const char* what) {
    if (token.empty()) io::fail_at(source, line_no, std::string("empty ") + what);
    if (io::has_whitespace(token))
        io::fail_at(source, line_no, std::string(what) + " contains whitespace");
}

} // namespace detail

/// Loads the network from an edge stream (TSV: citing_id<TAB>cited_id, '#'
/// comments allowed) and a metadata stream (CSV with header
/// paper_id,year,area). Papers referenced by edges but absent from the
/// metadata are kept with missing meta; self-loops are dropped and counted,
/// duplicate edges collapse.
inline CitationGraph load_citation_graph(std::istream& edge_source, std::istream& meta_source,
                                         const std::string& edge_name = "edges",
                                         const std::string& meta_name = "meta") {
    CitationGraph g;
    LoadStats stats;

    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(meta_source, line)) {
        ++line_no;
        std::string_view row = io::strip_cr(line);
        if (row.empty() || row.front() == '#') continue;
        if (!saw_header) {
            if (row != "paper_id,year,area")
                io::fail_at(meta_name, line_no, "expected header 'paper_id,year,area'");
            saw_header = true;
            continue;
        }
        auto fields = io::split(row, ',');
        if (fields.size() != 3)
            io::fail_at(meta_name, line_no, "expected 3 comma-separated fields, got " +
                                                std::to_string(fields.size()));
        detail::check_paper_token(fields[0], meta_name, line_no, "paper id");
        int year = io::parse_int(fields[1], meta_name, line_no, "year");
        if (year < 1800 || year > 2100)
            io::fail_at(meta_name, line_no, "year " + std::to_string(year) + " outside [1800, 2100]");
        if (fields[2].empty()) io::fail_at(meta_name, line_no, "empty area");
        PaperId id(fields[0]);
        NodeIndex v = g.intern(id);
        if (g.meta_of(v))
            io::fail_at(meta_name, line_no, "duplicate metadata for paper '" + id + "'");
        g.set_meta(v, PaperMeta{year, std::string(fields[2])});
    }

    std::vector<std::pair<NodeIndex, NodeIndex>> edges;
    line_no = 0;
    while (std::getline(edge_source, line)) {
        ++line_no;
        std::string_view row = io::strip_cr(line);
        if (row.empty() || row.front() == '#') continue;
        auto fields = io::split(row, '\t');
        if (fields.size() != 2)
            io::fail_at(edge_name, line_no, "expected 2 tab-separated fields, got " +
                                                std::to_string(fields.size()));
        detail::check_paper_token(fields[0], edge_name, line_no, "citing id");
        detail::check_paper_token(fields[1], edge_name, line_no, "cited id");
        ++stats.edge_rows;
        NodeIndex u = g.intern(PaperId(fields[0]));
        NodeIndex v = g.intern(PaperId(fields[1]));
        if (u == v) {
            ++stats.self_loops_dropped;
            continue;
        }
        edges.emplace_back(u, v);
    }
    if (stats.edge_rows == 0) throw ParseError(edge_name + ": empty edge source");

    g.finalize(std::move(edges), stats);
    return g;
}

namespace detail {

// Iterative Tarjan; assigns a strongly connected component id per node.
inline std::vector<NodeIndex> strongly_connected_components(const CitationGraph& g,
                                                            std::size_t& component_count) {
    const std::size_t n = g.node_count();
    constexpr NodeIndex kUnvisited = ~NodeIndex{0};
    std::vector<NodeIndex> comp(n, kUnvisited), low(n, 0), disc(n, kUnvisited);
    std::vector<bool> on_stack(n, false);
    std::vector<NodeIndex> stack;
    NodeIndex timer = 0;
    component_count = 0;

    struct Frame {
        NodeIndex v;
        std::size_t next_child;
    };
    std::vector<Frame> dfs;

    for (NodeIndex root = 0; root < n; ++root) {
        if (disc[root] != kUnvisited) continue;
        dfs.push_back({root, 0});
        while (!dfs.empty()) {
            auto& [v, child] = dfs.back();
            if (child == 0) {
                disc[v] = low[v] = timer++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            const auto& nbrs = g.out_neighbors(v);
            if (child < nbrs.size()) {
                NodeIndex w = nbrs[child++];
                if (disc[w] == kUnvisited) {
                    dfs.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], disc[w]);
                }
            } else {
                if (low[v] == disc[v]) {
                    while (true) {
                        NodeIndex w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = static_cast<NodeIndex>(component_count);
                        if (w == v) break;
                    }
                    ++component_count;
                }
                NodeIndex finished = v;
                dfs.pop_back();
                if (!dfs.empty()) low[dfs.back().v] = std::min(low[dfs.back().v], low[finished]);
            }
        }
    }
    return comp;
}

} // namespace detail

/// Reports how far the graph is from a DAG: an edge participates in a cycle
/// exactly when both endpoints share a strongly connected component.
/// Diagnostic only; cycles are tolerated everywhere else.
inline CycleReport validate_acyclicity(const CitationGraph& g) {
    CycleReport report;
    std::size_t comp_count = 0;
    auto comp = detail::strongly_connected_components(g, comp_count);

    const std::size_t n = g.node_count();
    for (NodeIndex u = 0; u < n; ++u)
        for (NodeIndex v : g.out_neighbors(u))
            if (comp[u] == comp[v]) ++report.cycle_edge_count;

    if (report.cycle_edge_count == 0) return report;

    // One sample cycle per nontrivial component, found by walking back to the
    // start inside the component.
    std::vector<bool> sampled(comp_count, false);
    for (NodeIndex start = 0; start < n && report.sample_cycles.size() < 10; ++start) {
        NodeIndex c = comp[start];
        if (sampled[c]) continue;
        bool nontrivial = false;
        for (NodeIndex w : g.out_neighbors(start))
            if (comp[w] == c) nontrivial = true;
        if (!nontrivial) continue;
        sampled[c] = true;

        // BFS within the component from start back to start.
        std::vector<NodeIndex> parent(n, ~NodeIndex{0});
        std::vector<NodeIndex> queue{start};
        bool closed = false;
        for (std::size_t qi = 0; qi < queue.size() && !closed; ++qi) {
            NodeIndex u = queue[qi];
            for (NodeIndex w : g.out_neighbors(u)) {
                if (comp[w] != c) continue;
                if (w == start) {
                    std::vector<PaperId> cycle;
                    for (NodeIndex x = u; x != start; x = parent[x]) cycle.push_back(g.id_of(x));
                    cycle.push_back(g.id_of(start));
                    std::reverse(cycle.begin(), cycle.end());
                    report.sample_cycles.push_back(std::move(cycle));
                    closed = true;
                    break;
                }
                if (parent[w] == ~NodeIndex{0}) {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
    }
    return report;
}

/// Papers citing strictly more than `min_refs` others within the dataset,
/// sorted by id.
inline std::vector<PaperId> eligible_focal_papers(const CitationGraph& g,
                                                  std::size_t min_refs = 10) {
    std::vector<PaperId> out;
    for (NodeIndex v = 0; v < g.node_count(); ++v)
        if (g.out_degree(v) > min_refs) out.push_back(g.id_of(v));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace citeproj
