#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <vector>

#include "citeproj/projection.hpp"

namespace citeproj {

/// Simple undirected graph obtained by dropping edge direction and merging
/// parallels. All six structural metrics are evaluated on such views.
struct UndirectedView {
    std::size_t node_count = 0;
    std::size_t edge_count = 0;
    std::vector<std::vector<std::uint32_t>> adj; // sorted, unique, no self-loops

    std::size_t degree(std::uint32_t v) const { return adj[v].size(); }

    bool adjacent(std::uint32_t a, std::uint32_t b) const {
        const auto& n = adj[a];
        return std::binary_search(n.begin(), n.end(), b);
    }
};

namespace detail {

inline UndirectedView make_view(std::size_t n,
                                const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                bool attach_last_to_all) {
    UndirectedView view;
    view.node_count = n;
    view.adj.assign(n, {});
    for (const auto& [a, b] : edges) {
        view.adj[a].push_back(b);
        view.adj[b].push_back(a);
    }
    if (attach_last_to_all) {
        const auto focal = static_cast<std::uint32_t>(n - 1);
        for (std::uint32_t c = 0; c + 1 < n; ++c) {
            view.adj[focal].push_back(c);
            view.adj[c].push_back(focal);
        }
    }
    for (auto& nbrs : view.adj) {
        std::sort(nbrs.begin(), nbrs.end());
        nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        view.edge_count += nbrs.size();
    }
    view.edge_count /= 2;
    return view;
}

} // namespace detail

/// Undirected view of the plain projection graph (references only).
inline UndirectedView gp_view(const ProjectionPair& pair) {
    return detail::make_view(pair.cited.size(), pair.gp_edges, false);
}

/// Undirected view of the augmented graph: the focal paper occupies the last
/// index and connects to every reference.
inline UndirectedView gp0_view(const ProjectionPair& pair) {
    if (pair.cited.empty()) return detail::make_view(1, {}, false);
    return detail::make_view(pair.cited.size() + 1, pair.gp_edges, true);
}

inline std::uint32_t gp0_focal_index(const ProjectionPair& pair) {
    return static_cast<std::uint32_t>(pair.cited.size());
}

// ---- view-level metric kernels ----------------------------------------------

inline double view_density(const UndirectedView& v) {
    if (v.node_count < 2) return 0.0;
    double n = static_cast<double>(v.node_count);
    return 2.0 * static_cast<double>(v.edge_count) / (n * (n - 1.0));
}

// Average over all nodes of (closed triads at v) / (deg(v) choose 2);
// nodes of degree < 2 contribute zero.
inline double view_clustering(const UndirectedView& v) {
    if (v.node_count == 0) return 0.0;
    double total = 0.0;
    for (std::uint32_t i = 0; i < v.node_count; ++i) {
        const auto& nbrs = v.adj[i];
        if (nbrs.size() < 2) continue;
        std::size_t closed = 0;
        for (std::size_t a = 0; a < nbrs.size(); ++a)
            for (std::size_t b = a + 1; b < nbrs.size(); ++b)
                if (v.adjacent(nbrs[a], nbrs[b])) ++closed;
        double triples = 0.5 * static_cast<double>(nbrs.size()) *
                         static_cast<double>(nbrs.size() - 1);
        total += static_cast<double>(closed) / triples;
    }
    return total / static_cast<double>(v.node_count);
}

inline double view_connectivity(const UndirectedView& v) {
    if (v.node_count == 0) return 0.0;
    std::vector<std::uint32_t> comp(v.node_count, ~std::uint32_t{0});
    std::size_t largest = 0;
    std::vector<std::uint32_t> queue;
    std::uint32_t next_comp = 0;
    for (std::uint32_t s = 0; s < v.node_count; ++s) {
        if (comp[s] != ~std::uint32_t{0}) continue;
        queue.assign(1, s);
        comp[s] = next_comp;
        std::size_t size = 0;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            ++size;
            for (std::uint32_t w : v.adj[queue[qi]]) {
                if (comp[w] == ~std::uint32_t{0}) {
                    comp[w] = next_comp;
                    queue.push_back(w);
                }
            }
        }
        largest = std::max(largest, size);
        ++next_comp;
    }
    return static_cast<double>(largest) / static_cast<double>(v.node_count);
}

/// Brandes accumulation for unweighted undirected graphs. Returns, per node,
/// the sum over ordered pairs (s, t) of the fraction of s-t shortest paths
/// through the node; each unordered pair is therefore counted twice.
inline std::vector<double> brandes_betweenness(const UndirectedView& v) {
    const std::size_t n = v.node_count;
    std::vector<double> centrality(n, 0.0);
    std::vector<std::int32_t> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<std::vector<std::uint32_t>> pred(n);
    std::vector<std::uint32_t> order;
    order.reserve(n);

    for (std::uint32_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : pred) p.clear();
        order.clear();

        dist[s] = 0;
        sigma[s] = 1.0;
        std::deque<std::uint32_t> queue{s};
        while (!queue.empty()) {
            std::uint32_t u = queue.front();
            queue.pop_front();
            order.push_back(u);
            for (std::uint32_t w : v.adj[u]) {
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[u] + 1) {
                    sigma[w] += sigma[u];
                    pred[w].push_back(u);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            std::uint32_t w = *it;
            for (std::uint32_t u : pred[w])
                delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
            if (w != s) centrality[w] += delta[w];
        }
    }
    return centrality;
}

// Normalization shared by M4 and M5: raw Brandes values count ordered pairs,
// so dividing by (n-1)(n-2) yields the fraction of unordered pairs.
inline double normalized_betweenness(double raw, std::size_t n) {
    return raw / (static_cast<double>(n - 1) * static_cast<double>(n - 2));
}

inline double view_max_betweenness(const UndirectedView& v) {
    if (v.node_count < 3) return 0.0;
    auto raw = brandes_betweenness(v);
    return normalized_betweenness(*std::max_element(raw.begin(), raw.end()), v.node_count);
}

inline double view_node_betweenness(const UndirectedView& v, std::uint32_t node) {
    if (v.node_count < 3) return 0.0;
    auto raw = brandes_betweenness(v);
    return normalized_betweenness(raw[node], v.node_count);
}

enum class ConstraintVariant {
    standard_burt, // square of (direct proportion + one-step indirect proportions)
    as_printed     // sum of squared per-intermediary products, no direct term
};

/// Burt-style network constraint of `node`, with unit edge weights. The
/// proportion p(i,j) is 1/deg(i) for neighbors and 0 otherwise. An isolated
/// node has constraint 0.
inline double view_constraint(const UndirectedView& v, std::uint32_t node,
                              ConstraintVariant variant = ConstraintVariant::standard_burt) {
    const auto& nbrs = v.adj[node];
    if (nbrs.empty()) return 0.0;
    const double p_i = 1.0 / static_cast<double>(nbrs.size());

    double total = 0.0;
    for (std::uint32_t j = 0; j < v.node_count; ++j) {
        if (j == node) continue;
        if (variant == ConstraintVariant::standard_burt) {
            double c = v.adjacent(node, j) ? p_i : 0.0;
            for (std::uint32_t k : nbrs) {
                if (k == j) continue;
                if (v.adjacent(k, j)) c += p_i / static_cast<double>(v.degree(k));
            }
            total += c * c;
        } else {
            for (std::uint32_t k : nbrs) {
                if (k == j) continue;
                if (v.adjacent(k, j)) {
                    double term = p_i / static_cast<double>(v.degree(k));
                    total += term * term;
                }
            }
        }
    }
    return total;
}

// ---- the six per-paper metrics ----------------------------------------------

struct MetricVector {
    double density = 0.0;           // M1
    double clustering = 0.0;        // M2
    double connectivity = 0.0;      // M3
    double max_betweenness = 0.0;   // M4
    double focal_betweenness = 0.0; // M5
    double focal_constraint = 0.0;  // M6

    static constexpr std::array<const char*, 6> names = {
        "density",          "clustering",        "connectivity",
        "max_betweenness", "focal_betweenness", "focal_constraint"};

    double operator[](std::size_t i) const {
        const std::array<const double*, 6> fields = {&density,          &clustering,
                                                     &connectivity,     &max_betweenness,
                                                     &focal_betweenness, &focal_constraint};
        return *fields[i];
    }
};

inline double density(const ProjectionPair& pair) { return view_density(gp_view(pair)); }
inline double clustering(const ProjectionPair& pair) { return view_clustering(gp_view(pair)); }
inline double connectivity(const ProjectionPair& pair) { return view_connectivity(gp_view(pair)); }
inline double max_betweenness(const ProjectionPair& pair) {
    return view_max_betweenness(gp_view(pair));
}
inline double focal_betweenness(const ProjectionPair& pair) {
    return view_node_betweenness(gp0_view(pair), gp0_focal_index(pair));
}
inline double focal_constraint(const ProjectionPair& pair,
                               ConstraintVariant variant = ConstraintVariant::standard_burt) {
    return view_constraint(gp0_view(pair), gp0_focal_index(pair), variant);
}

/// All six metrics: M1-M4 on the plain projection, M5-M6 on the augmented one.
inline MetricVector metric_vector(const ProjectionPair& pair,
                                  ConstraintVariant variant = ConstraintVariant::standard_burt) {
    MetricVector m;
    UndirectedView gp = gp_view(pair);
    m.density = view_density(gp);
    m.clustering = view_clustering(gp);
    m.connectivity = view_connectivity(gp);
    m.max_betweenness = view_max_betweenness(gp);

    UndirectedView gp0 = gp0_view(pair);
    std::uint32_t focal = gp0_focal_index(pair);
    m.focal_betweenness = view_node_betweenness(gp0, focal);
    m.focal_constraint = view_constraint(gp0, focal, variant);
    return m;
}

} // namespace citeproj
