#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "hodge/complex.hpp"
#include "hodge/generators.hpp"
#include "hodge/ranking.hpp"
#include "hodge/spectral.hpp"

namespace hodge {

namespace detail {

// Numerical rank of a dense row-major matrix by Gaussian elimination with
// complete pivoting. The acceptance floor for a pivot is max(m, n) * eps *
// gmax * 16 where gmax tracks the largest entry seen so far, fill-in
// included: a floor fixed at the original max|entry| undercuts elimination
// growth and promotes leftover noise in dependent rows to rank.
inline index_t dense_rank(std::vector<double> a, index_t rows, index_t cols) {
    double gmax = 0.0;
    for (double v : a) gmax = std::max(gmax, std::abs(v));
    if (gmax == 0.0) return 0;
    const double floor_scale = static_cast<double>(std::max(rows, cols)) *
                               std::numeric_limits<double>::epsilon() * 16.0;
    index_t rank = 0;
    while (rank < rows && rank < cols) {
        index_t pi = rank, pj = rank;
        double pv = 0.0;
        for (index_t i = rank; i < rows; ++i)
            for (index_t j = rank; j < cols; ++j)
                if (std::abs(a[i * cols + j]) > pv) {
                    pv = std::abs(a[i * cols + j]);
                    pi = i;
                    pj = j;
                }
        gmax = std::max(gmax, pv);
        if (pv <= floor_scale * gmax) break;
        if (pi != rank)
            for (index_t j = rank; j < cols; ++j)
                std::swap(a[rank * cols + j], a[pi * cols + j]);
        if (pj != rank)
            for (index_t i = 0; i < rows; ++i)
                std::swap(a[i * cols + rank], a[i * cols + pj]);
        const double piv = a[rank * cols + rank];
        for (index_t i = rank + 1; i < rows; ++i) {
            const double f = a[i * cols + rank] / piv;
            if (f == 0.0) continue;
            a[i * cols + rank] = 0.0;
            for (index_t j = rank + 1; j < cols; ++j) a[i * cols + j] -= f * a[rank * cols + j];
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

// Betti number beta_p as the kernel dimension of the p-th Laplacian,
// counted from its spectrum. dense_threshold caps the size handled by the
// dense eigenvalue path; larger operators fall back to the iterative one.
inline index_t betti(const complex2& c, int p, index_t dense_threshold = 2000) {
    if (p < 0 || p > 2) throw invalid_input("betti: p must be 0, 1 or 2");
    sparse_matrix lap;
    if (p == 0) lap = laplacian_0(c);
    else if (p == 1) lap = laplacian_1(c);
    else lap = laplacian_2(c);
    if (lap.rows() == 0) return 0;
    return extreme_eigs(lap, dense_threshold).kernel_dim;
}

// beta_1 again, by a different route: harmonic flows are the common kernel
// of d1 and d2^T, i.e. the nullity of the stacked matrix [d1; d2^T],
// computed here by dense elimination rank. Cross-checks the spectral
// count.
inline index_t betti1_stacked(const complex2& c) {
    if (c.n1() == 0) return 0;
    const sparse_matrix m = vstack(boundary_1(c), boundary_2(c).transpose());
    return c.n1() - detail::dense_rank(to_dense_rowmajor(m), m.rows(), m.cols());
}

// ||harmonic part|| / ||omega|| for a nonzero flow.
inline double harmonic_fraction(const complex2& c, const std::vector<double>& omega,
                                method m = method::automatic, const solve_options& opts = {}) {
    double on = 0.0;
    for (double v : omega) on += v * v;
    if (on == 0.0) throw invalid_input("harmonic_fraction: omega is zero");
    hodge_result r = decompose(c, omega, m, opts);
    return r.harmonic_norm / std::sqrt(on);
}

// Density landmarks for the first Betti number of a random clique complex
// on n vertices: below 1/n and above n^(-1/3) homology is expected
// trivial; between 1/n and n^(-1/2) it is expected nontrivial.
inline std::array<double, 3> kahle_thresholds(index_t n) {
    if (n < 2) throw invalid_input("kahle_thresholds: need n >= 2");
    const double x = static_cast<double>(n);
    return {1.0 / x, std::pow(x, -0.5), std::pow(x, -1.0 / 3.0)};
}

struct sweep_row {
    index_t n = 0;
    double rho = 0.0;
    index_t trial = 0;
    index_t n1 = 0;
    index_t n2 = 0;
    index_t betti1 = 0;
    double harmonic_fraction = 0.0;
};

// Random-complex density sweep: for each density and trial, an
// Erdos-Renyi clique complex, its beta_1, and the harmonic fraction of a
// fresh random flow on it. Per-cell seeds are derived from the master
// seed and the (density, trial) indices, so any cell can be reproduced in
// isolation.
inline std::vector<sweep_row> density_sweep(index_t n, const std::vector<double>& rhos,
                                            index_t trials, std::uint64_t master_seed) {
    if (n < 2) throw invalid_input("density_sweep: need n >= 2");
    if (trials < 1) throw invalid_input("density_sweep: need at least one trial");
    std::vector<sweep_row> rows;
    rows.reserve(rhos.size() * static_cast<std::size_t>(trials));
    for (std::size_t ri = 0; ri < rhos.size(); ++ri) {
        for (index_t t = 0; t < trials; ++t) {
            const std::uint64_t cell_seed = derive_seed(master_seed, ri, t);
            const graph g = gen_erdos_renyi(n, rhos[ri], cell_seed);
            const complex2 c = build_clique_complex(g);
            sweep_row row;
            row.n = n;
            row.rho = rhos[ri];
            row.trial = t;
            row.n1 = c.n1();
            row.n2 = c.n2();
            row.betti1 = betti(c, 1);
            if (c.n1() > 0) {
                rng gen(derive_seed(cell_seed, 0x0e6a));
                std::vector<double> omega(static_cast<std::size_t>(c.n1()));
                for (auto& v : omega) v = gen.next_symmetric();
                row.harmonic_fraction = harmonic_fraction(c, omega);
            }
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace hodge
