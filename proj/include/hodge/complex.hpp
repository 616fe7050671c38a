#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hodge/sparse.hpp"

namespace hodge {

enum class graph_kind { path, cycle, star, wheel, complete };

// A finite simple undirected graph. Edges keep the orientation they were
// given (tail, head); validation is up to `validate` or the complex builder.
struct graph {
    index_t n_vertices = 0;
    std::vector<std::pair<index_t, index_t>> edges;

    void validate() const {
        if (n_vertices < 0) throw invalid_input("graph: negative vertex count");
        std::vector<std::pair<index_t, index_t>> canon;
        canon.reserve(edges.size());
        for (const auto& [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n_vertices || v >= n_vertices)
                throw invalid_input("graph: edge (" + std::to_string(u) + "," +
                                    std::to_string(v) + ") out of range");
            if (u == v) throw invalid_input("graph: self loop at vertex " + std::to_string(u));
            canon.emplace_back(std::min(u, v), std::max(u, v));
        }
        std::sort(canon.begin(), canon.end());
        if (std::adjacent_find(canon.begin(), canon.end()) != canon.end())
            throw invalid_input("graph: duplicate edge");
    }

    index_t max_degree() const {
        std::vector<index_t> deg(static_cast<std::size_t>(n_vertices), 0);
        for (const auto& [u, v] : edges) {
            ++deg[u];
            ++deg[v];
        }
        index_t m = 0;
        for (index_t d : deg) m = std::max(m, d);
        return m;
    }
};

// An oriented two-dimensional clique complex. Orientation is canonical:
// edges are stored (i, j) with i < j in lexicographic order, triangles
// (i, j, k) with i < j < k in lexicographic order. Immutable once built.
struct complex2 {
    index_t n0 = 0;
    std::vector<std::pair<index_t, index_t>> edges;
    std::vector<std::array<index_t, 3>> triangles;

    index_t n1() const { return static_cast<index_t>(edges.size()); }
    index_t n2() const { return static_cast<index_t>(triangles.size()); }

    // Ordinal of the canonical edge (i, j), i < j; -1 if absent.
    index_t edge_index(index_t i, index_t j) const {
        if (i > j) std::swap(i, j);
        auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(i, j));
        if (it == edges.end() || *it != std::make_pair(i, j)) return -1;
        return static_cast<index_t>(it - edges.begin());
    }

    index_t triangle_index(index_t i, index_t j, index_t k) const {
        std::array<index_t, 3> t{i, j, k};
        std::sort(t.begin(), t.end());
        auto it = std::lower_bound(triangles.begin(), triangles.end(), t);
        if (it == triangles.end() || *it != t) return -1;
        return static_cast<index_t>(it - triangles.begin());
    }
};

// A p-cochain: one real value per oriented p-simplex, in canonical order.
struct cochain {
    int dim = 0;
    std::vector<double> values;
};

// Build the clique complex: every edge of g, plus one triangle per
// 3-clique. Triangles are found by intersecting the sorted neighbor lists
// of each edge's endpoints, keeping only completions k > j so each
// 3-clique is emitted exactly once, already in lexicographic order.
inline complex2 build_clique_complex(const graph& g) {
    g.validate();
    complex2 c;
    c.n0 = g.n_vertices;
    c.edges.reserve(g.edges.size());
    for (const auto& [u, v] : g.edges) c.edges.emplace_back(std::min(u, v), std::max(u, v));
    std::sort(c.edges.begin(), c.edges.end());

    std::vector<std::vector<index_t>> adj(static_cast<std::size_t>(c.n0));
    for (const auto& [i, j] : c.edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());

    for (const auto& [i, j] : c.edges) {
        const auto& ai = adj[i];
        const auto& aj = adj[j];
        auto pi = std::upper_bound(ai.begin(), ai.end(), j);
        auto pj = std::upper_bound(aj.begin(), aj.end(), j);
        while (pi != ai.end() && pj != aj.end()) {
            if (*pi < *pj) ++pi;
            else if (*pj < *pi) ++pj;
            else {
                c.triangles.push_back({i, j, *pi});
                ++pi;
                ++pj;
            }
        }
    }
    return c;
}

// First boundary operator, n0 x n1. The column of edge (i, j) holds -1 at
// the tail i and +1 at the head j.
inline sparse_matrix boundary_1(const complex2& c) {
    std::vector<triplet> t;
    t.reserve(2 * c.edges.size());
    for (index_t e = 0; e < c.n1(); ++e) {
        t.push_back({c.edges[e].first, e, -1.0});
        t.push_back({c.edges[e].second, e, 1.0});
    }
    return sparse_matrix::from_triplets(c.n0, c.n1(), std::move(t));
}

// Second boundary operator, n1 x n2. The column of triangle (i, j, k)
// holds +1 at edges (i, j) and (j, k) and -1 at edge (i, k), the signs of
// the faces under canonical orientation.
inline sparse_matrix boundary_2(const complex2& c) {
    std::vector<triplet> t;
    t.reserve(3 * c.triangles.size());
    for (index_t f = 0; f < c.n2(); ++f) {
        const auto& [i, j, k] = c.triangles[f];
        t.push_back({c.edge_index(i, j), f, 1.0});
        t.push_back({c.edge_index(j, k), f, 1.0});
        t.push_back({c.edge_index(i, k), f, -1.0});
    }
    return sparse_matrix::from_triplets(c.n1(), c.n2(), std::move(t));
}

// Hodge Laplacians of the complex. The vertex Laplacian d1 d1^T is the
// usual graph Laplacian; the middle one combines both boundary operators.
inline sparse_matrix laplacian_0(const complex2& c) {
    return gram(boundary_1(c), gram_side::left);
}

inline sparse_matrix laplacian_1(const complex2& c) {
    return add(gram(boundary_1(c), gram_side::right), gram(boundary_2(c), gram_side::left));
}

inline sparse_matrix laplacian_2(const complex2& c) {
    return gram(boundary_2(c), gram_side::right);
}

inline index_t euler_characteristic(const complex2& c) { return c.n0 - c.n1() + c.n2(); }

// Connected component label per vertex (labels are dense, assigned in
// order of first BFS discovery from vertex 0 upward).
inline std::vector<index_t> vertex_components(const complex2& c) {
    std::vector<std::vector<index_t>> adj(static_cast<std::size_t>(c.n0));
    for (const auto& [i, j] : c.edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    std::vector<index_t> comp(static_cast<std::size_t>(c.n0), -1);
    index_t label = 0;
    std::vector<index_t> queue;
    for (index_t s = 0; s < c.n0; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = label;
        queue.assign(1, s);
        for (std::size_t h = 0; h < queue.size(); ++h) {
            for (index_t w : adj[queue[h]]) {
                if (comp[w] == -1) {
                    comp[w] = label;
                    queue.push_back(w);
                }
            }
        }
        ++label;
    }
    return comp;
}

inline index_t component_count(const complex2& c) {
    auto comp = vertex_components(c);
    index_t m = 0;
    for (index_t l : comp) m = std::max(m, l + 1);
    return m;
}

}  // namespace hodge
