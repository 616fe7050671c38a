#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "hodge/sparse.hpp"

namespace hodge {

// A permutation of n indices stored as forward[old] = new.
struct permutation {
    std::vector<index_t> forward;

    index_t size() const { return static_cast<index_t>(forward.size()); }

    static permutation identity(index_t n) {
        permutation p;
        p.forward.resize(static_cast<std::size_t>(n));
        std::iota(p.forward.begin(), p.forward.end(), index_t{0});
        return p;
    }

    permutation inverse() const {
        permutation inv;
        inv.forward.assign(forward.size(), -1);
        for (std::size_t i = 0; i < forward.size(); ++i) {
            index_t f = forward[i];
            if (f < 0 || f >= size() || inv.forward[f] != -1)
                throw invalid_input("permutation: not a bijection");
            inv.forward[f] = static_cast<index_t>(i);
        }
        return inv;
    }

    bool is_valid() const {
        std::vector<char> seen(forward.size(), 0);
        for (index_t f : forward) {
            if (f < 0 || f >= size() || seen[f]) return false;
            seen[f] = 1;
        }
        return true;
    }
};

// Symmetric reordering B = P A P^T, i.e. entry (i, j) moves to
// (forward[i], forward[j]).
inline sparse_matrix symmetric_permute(const sparse_matrix& a, const permutation& p) {
    if (a.rows() != a.cols()) throw dimension_error("symmetric_permute: matrix not square");
    if (p.size() != a.rows()) throw dimension_error("symmetric_permute: permutation size mismatch");
    std::vector<triplet> t;
    t.reserve(static_cast<std::size_t>(a.nnz()));
    for (index_t i = 0; i < a.rows(); ++i)
        for (index_t k = a.row_ptr()[i]; k < a.row_ptr()[i + 1]; ++k)
            t.push_back({p.forward[i], p.forward[a.col_idx()[k]], a.values()[k]});
    return sparse_matrix::from_triplets(a.rows(), a.cols(), std::move(t));
}

inline std::vector<double> permute_vector(const std::vector<double>& x, const permutation& p) {
    if (static_cast<index_t>(x.size()) != p.size())
        throw dimension_error("permute_vector: size mismatch");
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[p.forward[i]] = x[i];
    return y;
}

// Rows sorted by ascending nonzero count; equal counts keep their original
// relative order.
inline permutation degree_order(const sparse_matrix& a) {
    index_t n = a.rows();
    std::vector<index_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), index_t{0});
    std::stable_sort(order.begin(), order.end(), [&](index_t x, index_t y) {
        return (a.row_ptr()[x + 1] - a.row_ptr()[x]) < (a.row_ptr()[y + 1] - a.row_ptr()[y]);
    });
    permutation p;
    p.forward.assign(static_cast<std::size_t>(n), 0);
    for (index_t pos = 0; pos < n; ++pos) p.forward[order[pos]] = pos;
    return p;
}

// Reverse Cuthill-McKee on the pattern of a square matrix, treated as an
// undirected graph (diagonal ignored). Each component is traversed
// breadth-first from its minimum-degree vertex (ties to the lowest index),
// neighbors visited in ascending degree (ties again by index), and the
// concatenated visit order is reversed. Intended for structurally symmetric
// patterns; an asymmetric pattern is symmetrized implicitly by following
// row adjacency only.
inline permutation rcm_order(const sparse_matrix& a) {
    if (a.rows() != a.cols()) throw dimension_error("rcm_order: matrix not square");
    index_t n = a.rows();
    auto degree = [&](index_t v) {
        index_t d = a.row_ptr()[v + 1] - a.row_ptr()[v];
        // Do not count a stored diagonal as adjacency.
        if (a.at(v, v) != 0.0) --d;
        return d;
    };
    std::vector<index_t> visit;
    visit.reserve(static_cast<std::size_t>(n));
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<index_t> neighbors;
    for (;;) {
        // Start vertex: unvisited minimum degree, lowest index on ties.
        index_t start = -1, best = -1;
        for (index_t v = 0; v < n; ++v) {
            if (seen[v]) continue;
            index_t d = degree(v);
            if (start == -1 || d < best) {
                start = v;
                best = d;
            }
        }
        if (start == -1) break;
        seen[start] = 1;
        visit.push_back(start);
        for (std::size_t head = visit.size() - 1; head < visit.size(); ++head) {
            index_t v = visit[head];
            neighbors.clear();
            for (index_t k = a.row_ptr()[v]; k < a.row_ptr()[v + 1]; ++k) {
                index_t w = a.col_idx()[k];
                if (w != v && !seen[w]) {
                    seen[w] = 1;
                    neighbors.push_back(w);
                }
            }
            std::sort(neighbors.begin(), neighbors.end(), [&](index_t x, index_t y) {
                index_t dx = degree(x), dy = degree(y);
                return dx != dy ? dx < dy : x < y;
            });
            visit.insert(visit.end(), neighbors.begin(), neighbors.end());
        }
    }
    permutation p;
    p.forward.assign(static_cast<std::size_t>(n), 0);
    for (index_t pos = 0; pos < n; ++pos) p.forward[visit[pos]] = n - 1 - pos;
    return p;
}

}  // namespace hodge
