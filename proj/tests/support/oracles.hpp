#pragma once

// Brute-force reference implementations for the metric tests. Deliberately
// naive: dense adjacency matrices, explicit shortest-path enumeration, direct
// p-matrix evaluation. Only usable for small graphs.

#include <algorithm>
#include <cstddef>
#include <vector>

namespace oracles {

struct SimpleGraph {
    std::size_t n = 0;
    std::vector<std::vector<bool>> adj; // symmetric, no self-loops

    explicit SimpleGraph(std::size_t nodes)
        : n(nodes), adj(nodes, std::vector<bool>(nodes, false)) {}

    void add_edge(std::size_t a, std::size_t b) {
        if (a == b) return;
        adj[a][b] = adj[b][a] = true;
    }

    std::size_t degree(std::size_t v) const {
        std::size_t d = 0;
        for (std::size_t w = 0; w < n; ++w)
            if (adj[v][w]) ++d;
        return d;
    }

    std::size_t edge_count() const {
        std::size_t e = 0;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                if (adj[a][b]) ++e;
        return e;
    }
};

inline double density(const SimpleGraph& g) {
    if (g.n < 2) return 0.0;
    return 2.0 * static_cast<double>(g.edge_count()) /
           (static_cast<double>(g.n) * static_cast<double>(g.n - 1));
}

inline double clustering(const SimpleGraph& g) {
    if (g.n == 0) return 0.0;
    double total = 0.0;
    for (std::size_t v = 0; v < g.n; ++v) {
        std::vector<std::size_t> nbrs;
        for (std::size_t w = 0; w < g.n; ++w)
            if (g.adj[v][w]) nbrs.push_back(w);
        if (nbrs.size() < 2) continue;
        std::size_t closed = 0, triples = 0;
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                ++triples;
                if (g.adj[nbrs[i]][nbrs[j]]) ++closed;
            }
        total += static_cast<double>(closed) / static_cast<double>(triples);
    }
    return total / static_cast<double>(g.n);
}

inline double connectivity(const SimpleGraph& g) {
    if (g.n == 0) return 0.0;
    std::vector<bool> seen(g.n, false);
    std::size_t largest = 0;
    for (std::size_t s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> stack{s};
        seen[s] = true;
        std::size_t size = 0;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            ++size;
            for (std::size_t w = 0; w < g.n; ++w)
                if (g.adj[v][w] && !seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        largest = std::max(largest, size);
    }
    return static_cast<double>(largest) / static_cast<double>(g.n);
}

namespace detail {

// All shortest s->t paths, found by walking BFS layers backwards.
inline void collect_paths(const SimpleGraph& g, const std::vector<int>& dist, std::size_t s,
                          std::size_t v, std::vector<std::size_t>& partial,
                          std::vector<std::vector<std::size_t>>& out) {
    partial.push_back(v);
    if (v == s) {
        out.emplace_back(partial.rbegin(), partial.rend());
    } else {
        for (std::size_t u = 0; u < g.n; ++u)
            if (g.adj[u][v] && dist[u] == dist[v] - 1)
                collect_paths(g, dist, s, u, partial, out);
    }
    partial.pop_back();
}

} // namespace detail

/// Betweenness by literal enumeration of every shortest path, summed over
/// ordered (s, t) pairs; no normalization.
inline std::vector<double> betweenness(const SimpleGraph& g) {
    std::vector<double> score(g.n, 0.0);
    for (std::size_t s = 0; s < g.n; ++s) {
        std::vector<int> dist(g.n, -1);
        std::vector<std::size_t> queue{s};
        dist[s] = 0;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            std::size_t v = queue[qi];
            for (std::size_t w = 0; w < g.n; ++w)
                if (g.adj[v][w] && dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
        }
        for (std::size_t t = 0; t < g.n; ++t) {
            if (t == s || dist[t] <= 0) continue;
            std::vector<std::vector<std::size_t>> paths;
            std::vector<std::size_t> partial;
            detail::collect_paths(g, dist, s, t, partial, paths);
            for (std::size_t v = 0; v < g.n; ++v) {
                if (v == s || v == t) continue;
                std::size_t through = 0;
                for (const auto& path : paths)
                    if (std::find(path.begin(), path.end(), v) != path.end()) ++through;
                score[v] += static_cast<double>(through) / static_cast<double>(paths.size());
            }
        }
    }
    return score;
}

/// Burt constraint via the dense proportion matrix p[i][j] = adj / degree.
inline double constraint(const SimpleGraph& g, std::size_t i, bool standard) {
    if (g.degree(i) == 0) return 0.0;
    std::vector<std::vector<double>> p(g.n, std::vector<double>(g.n, 0.0));
    for (std::size_t a = 0; a < g.n; ++a) {
        std::size_t d = g.degree(a);
        if (d == 0) continue;
        for (std::size_t b = 0; b < g.n; ++b)
            if (g.adj[a][b]) p[a][b] = 1.0 / static_cast<double>(d);
    }
    double total = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) {
        if (j == i) continue;
        if (standard) {
            double inner = p[i][j];
            for (std::size_t k = 0; k < g.n; ++k)
                if (k != i && k != j) inner += p[i][k] * p[k][j];
            total += inner * inner;
        } else {
            for (std::size_t k = 0; k < g.n; ++k) {
                if (k == j) continue;
                double term = p[i][k] * p[k][j];
                total += term * term;
            }
        }
    }
    return total;
}

} // namespace oracles
