#pragma once

#include <vector>

#include "hodge/rng.hpp"
#include "hodge/sparse.hpp"

namespace testutil {

// Random sparse matrix with roughly `fill` fraction of entries set,
// values uniform in [-1, 1], plus deliberate duplicate triplets so
// canonicalization is exercised.
inline hodge::sparse_matrix random_sparse(hodge::index_t rows, hodge::index_t cols, double fill,
                                          std::uint64_t seed) {
    hodge::rng gen(seed);
    std::vector<hodge::triplet> t;
    for (hodge::index_t i = 0; i < rows; ++i)
        for (hodge::index_t j = 0; j < cols; ++j)
            if (gen.next_double() < fill) t.push_back({i, j, gen.next_symmetric()});
    return hodge::sparse_matrix::from_triplets(rows, cols, std::move(t));
}

// Random symmetric positive definite matrix M = B^T B + delta I as a
// sparse matrix (dense pattern, small n).
inline hodge::sparse_matrix random_spd(hodge::index_t n, double delta, std::uint64_t seed) {
    hodge::rng gen(seed);
    std::vector<double> b(static_cast<std::size_t>(n) * n);
    for (auto& v : b) v = gen.next_symmetric();
    std::vector<hodge::triplet> t;
    for (hodge::index_t i = 0; i < n; ++i)
        for (hodge::index_t j = 0; j < n; ++j) {
            double s = i == j ? delta : 0.0;
            for (hodge::index_t k = 0; k < n; ++k) s += b[k * n + i] * b[k * n + j];
            t.push_back({i, j, s});
        }
    return hodge::sparse_matrix::from_triplets(n, n, std::move(t));
}

inline std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
    hodge::rng gen(seed);
    std::vector<double> v(n);
    for (auto& e : v) e = gen.next_symmetric();
    return v;
}

}  // namespace testutil
