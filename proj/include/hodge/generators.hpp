#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "hodge/complex.hpp"
#include "hodge/rng.hpp"
#include "hodge/solvers.hpp"

namespace hodge {

// Erdos-Renyi G(n, p): every unordered pair independently with
// probability p, pairs visited in lexicographic order so a seed pins the
// graph exactly.
inline graph gen_erdos_renyi(index_t n, double p, std::uint64_t seed) {
    if (n < 1) throw invalid_input("gen_erdos_renyi: need n >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw invalid_input("gen_erdos_renyi: p must be in [0, 1]");
    rng gen(seed);
    graph g;
    g.n_vertices = n;
    for (index_t i = 0; i < n; ++i)
        for (index_t j = i + 1; j < n; ++j)
            if (gen.next_double() < p) g.edges.emplace_back(i, j);
    return g;
}

// Watts-Strogatz: ring lattice where each vertex reaches its k/2 nearest
// successors, then every lattice edge is rewired with probability
// p_rewire to a uniformly random head, rejecting self loops and
// duplicates (the original edge is kept if no valid head turns up). Edge
// count is exactly n k / 2 either way.
inline graph gen_watts_strogatz(index_t n, index_t k, double p_rewire, std::uint64_t seed) {
    if (n < 3) throw invalid_input("gen_watts_strogatz: need n >= 3");
    if (k < 2 || k % 2 != 0 || k >= n)
        throw invalid_input("gen_watts_strogatz: need even k with 2 <= k < n");
    if (!(p_rewire >= 0.0 && p_rewire <= 1.0))
        throw invalid_input("gen_watts_strogatz: p_rewire must be in [0, 1]");
    rng gen(seed);

    auto key = [n](index_t a, index_t b) {
        if (a > b) std::swap(a, b);
        return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(n) +
               static_cast<std::uint64_t>(b);
    };
    std::vector<std::pair<index_t, index_t>> edges;
    std::unordered_set<std::uint64_t> present;
    for (index_t d = 1; d <= k / 2; ++d) {
        for (index_t i = 0; i < n; ++i) {
            index_t j = (i + d) % n;
            edges.emplace_back(i, j);
            present.insert(key(i, j));
        }
    }
    for (auto& [u, v] : edges) {
        if (gen.next_double() >= p_rewire) continue;
        for (index_t attempt = 0; attempt < 8 * n; ++attempt) {
            index_t w = static_cast<index_t>(gen.below(static_cast<std::uint64_t>(n)));
            if (w == u || present.count(key(u, w))) continue;
            present.erase(key(u, v));
            present.insert(key(u, w));
            v = w;
            break;
        }
    }
    graph g;
    g.n_vertices = n;
    g.edges = std::move(edges);
    return g;
}

// Barabasi-Albert preferential attachment: m isolated seed vertices, every
// later arrival attaches to m distinct existing vertices with probability
// proportional to degree (uniform while all degrees are zero). Edge count
// is exactly m (n - m).
inline graph gen_barabasi_albert(index_t n, index_t m, std::uint64_t seed) {
    if (m < 1 || m >= n) throw invalid_input("gen_barabasi_albert: need 1 <= m < n");
    rng gen(seed);
    graph g;
    g.n_vertices = n;
    std::vector<index_t> pool;  // one entry per edge endpoint, degree-proportional draws
    pool.reserve(2 * static_cast<std::size_t>(m) * static_cast<std::size_t>(n - m));
    std::vector<index_t> targets;
    for (index_t v = m; v < n; ++v) {
        targets.clear();
        while (static_cast<index_t>(targets.size()) < m) {
            index_t t;
            if (pool.empty())
                t = static_cast<index_t>(gen.below(static_cast<std::uint64_t>(v)));
            else
                t = pool[gen.below(pool.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end())
                targets.push_back(t);
        }
        for (index_t t : targets) {
            g.edges.emplace_back(std::min(t, v), std::max(t, v));
            pool.push_back(t);
            pool.push_back(v);
        }
    }
    return g;
}

inline graph gen_special(graph_kind kind, index_t n) {
    graph g;
    g.n_vertices = n;
    switch (kind) {
        case graph_kind::path:
            if (n < 2) throw invalid_input("gen_special: path needs n >= 2");
            for (index_t i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
            return g;
        case graph_kind::cycle:
            if (n < 3) throw invalid_input("gen_special: cycle needs n >= 3");
            for (index_t i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
            g.edges.emplace_back(0, n - 1);
            return g;
        case graph_kind::star:
            if (n < 3) throw invalid_input("gen_special: star needs n >= 3");
            for (index_t i = 1; i < n; ++i) g.edges.emplace_back(0, i);
            return g;
        case graph_kind::wheel:
            // Hub plus a rim cycle; a rim of fewer than three vertices
            // would duplicate an edge, hence n >= 4.
            if (n < 4) throw invalid_input("gen_special: wheel needs n >= 4");
            for (index_t i = 1; i < n; ++i) g.edges.emplace_back(0, i);
            for (index_t i = 1; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
            g.edges.emplace_back(1, n - 1);
            return g;
        case graph_kind::complete:
            if (n < 2) throw invalid_input("gen_special: complete needs n >= 2");
            for (index_t i = 0; i < n; ++i)
                for (index_t j = i + 1; j < n; ++j) g.edges.emplace_back(i, j);
            return g;
    }
    throw invalid_input("gen_special: unknown kind");
}

enum class harmonic_mode { none, lsq_residual };

// A synthetic edge flow with known decomposition:
//   omega = d1^T alpha + d2 beta + h
// with alpha, beta drawn uniformly from [-1, 1] and, when requested, h the
// least squares residual of a fresh random flow against [d1^T | d2]. The
// residual is orthogonal to both gradient and curl ranges, i.e. harmonic,
// up to solver accuracy; when the harmonic space is trivial the residual
// collapses to noise and is snapped to exactly zero.
struct problem_instance {
    complex2 c;
    std::vector<double> alpha_true;
    std::vector<double> beta_true;
    std::vector<double> harmonic_true;
    std::vector<double> omega;
    double grad_norm_true = 0.0;
    double curl_norm_true = 0.0;
    double harmonic_norm_true = 0.0;
    std::uint64_t seed = 0;
};

inline problem_instance gen_instance(const graph& g, std::uint64_t seed,
                                     harmonic_mode mode = harmonic_mode::lsq_residual) {
    problem_instance inst;
    inst.seed = seed;
    inst.c = build_clique_complex(g);
    const index_t n0 = inst.c.n0, n1 = inst.c.n1(), n2 = inst.c.n2();
    rng gen(derive_seed(seed, 0x1a57));

    inst.alpha_true.resize(static_cast<std::size_t>(n0));
    for (auto& v : inst.alpha_true) v = gen.next_symmetric();
    inst.beta_true.resize(static_cast<std::size_t>(n2));
    for (auto& v : inst.beta_true) v = gen.next_symmetric();

    const sparse_matrix d1 = boundary_1(inst.c);
    const sparse_matrix d2 = boundary_2(inst.c);
    const sparse_matrix d1t = d1.transpose();

    std::vector<double> grad = d1t.matvec(inst.alpha_true);
    std::vector<double> curl = n2 > 0 ? d2.matvec(inst.beta_true)
                                      : std::vector<double>(static_cast<std::size_t>(n1), 0.0);

    inst.harmonic_true.assign(static_cast<std::size_t>(n1), 0.0);
    if (mode == harmonic_mode::lsq_residual && n1 > 0) {
        std::vector<double> rho(static_cast<std::size_t>(n1));
        for (auto& v : rho) v = gen.next_symmetric();
        const sparse_matrix m = hstack(d1t, d2);
        solve_options lo;
        lo.tol = 1e-12;
        lo.max_iter = 20 * std::max<index_t>(n1, n0 + n2);
        solve_result fit = lsqr(m, rho, lo);
        std::vector<double> mh = m.matvec(fit.x);
        double rho_norm = 0.0, h_norm = 0.0;
        for (std::size_t i = 0; i < rho.size(); ++i) {
            inst.harmonic_true[i] = rho[i] - mh[i];
            rho_norm += rho[i] * rho[i];
            h_norm += inst.harmonic_true[i] * inst.harmonic_true[i];
        }
        rho_norm = std::sqrt(rho_norm);
        h_norm = std::sqrt(h_norm);
        if (h_norm <= 1e-8 * rho_norm) {
            // Trivial harmonic space: the residual is solver noise.
            inst.harmonic_true.assign(static_cast<std::size_t>(n1), 0.0);
        } else {
            auto relnorm = [&](const std::vector<double>& y) {
                double s = 0.0;
                for (double v : y) s += v * v;
                return std::sqrt(s) / h_norm;
            };
            if (relnorm(d1.matvec(inst.harmonic_true)) > 1e-8 ||
                relnorm(d2.transpose().matvec(inst.harmonic_true)) > 1e-8)
                throw numerical_error("gen_instance: residual failed the harmonicity check");
        }
    }

    inst.omega.resize(static_cast<std::size_t>(n1));
    double gn = 0.0, cn = 0.0, hn = 0.0;
    for (std::size_t i = 0; i < inst.omega.size(); ++i) {
        inst.omega[i] = grad[i] + curl[i] + inst.harmonic_true[i];
        gn += grad[i] * grad[i];
        cn += curl[i] * curl[i];
        hn += inst.harmonic_true[i] * inst.harmonic_true[i];
    }
    inst.grad_norm_true = std::sqrt(gn);
    inst.curl_norm_true = std::sqrt(cn);
    inst.harmonic_norm_true = std::sqrt(hn);
    return inst;
}

}  // namespace hodge
