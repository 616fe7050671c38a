#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "hodge/generators.hpp"
#include "hodge/ranking.hpp"
#include "hodge/spectral.hpp"
#include "hodge/topology.hpp"

namespace hodge {

// Runs CG on the consistent system A x = b with b = A x_true and reports
// how many iterations bring the energy-norm error ||x_true - x_k||_A
// under target * ||x_true - 0||_A. The energy seminorm ignores any kernel
// component of x_true, matching what CG can actually reduce. Returns -1
// if the target was never met; per-iteration errors optionally collected.
inline index_t cg_iterations_to_energy_error(const sparse_matrix& a,
                                             const std::vector<double>& x_true, double target,
                                             std::vector<double>* errors = nullptr) {
    std::vector<double> b = a.matvec(x_true);
    auto energy = [&](const std::vector<double>& e) {
        std::vector<double> ae = a.matvec(e);
        double s = 0.0;
        for (std::size_t i = 0; i < e.size(); ++i) s += e[i] * ae[i];
        return std::sqrt(std::max(0.0, s));
    };
    const double e0 = energy(x_true);
    if (e0 == 0.0) return 0;
    index_t hit = -1;
    solve_options opts;
    opts.tol = 1e-14;
    opts.max_iter = 20 * std::max<index_t>(a.rows(), 1);
    auto observer = [&](index_t k, const std::vector<double>& x) {
        if (hit != -1) return;
        std::vector<double> e(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) e[i] = x_true[i] - x[i];
        const double err = energy(e) / e0;
        if (errors) errors->push_back(err);
        if (err <= target) hit = k;
    };
    cg(a, b, opts, observer);
    return hit;
}

struct spectral_row {
    graph_kind kind;
    index_t n = 0;
    double kappa_exact = 0.0;
    double kappa_known = 0.0;
    index_t bound_exact = 0;  // iteration bound from the measured condition number
    index_t bound_known = 0;  // iteration bound from the closed form / a priori bounds
    index_t actual = 0;       // measured CG iterations to the energy-error target
};

inline const char* kind_name(graph_kind k) {
    switch (k) {
        case graph_kind::path: return "path";
        case graph_kind::cycle: return "cycle";
        case graph_kind::star: return "star";
        case graph_kind::wheel: return "wheel";
        case graph_kind::complete: return "complete";
    }
    return "?";
}

inline graph_kind kind_from_name(const std::string& s) {
    if (s == "path") return graph_kind::path;
    if (s == "cycle") return graph_kind::cycle;
    if (s == "star") return graph_kind::star;
    if (s == "wheel") return graph_kind::wheel;
    if (s == "complete") return graph_kind::complete;
    throw invalid_input("unknown graph kind '" + s + "'");
}

// A priori condition number of the vertex Laplacian. Exact spectra for
// the four closed-form families; for wheels the edge-connectivity lower
// bound (eta = 3) under the Gerschgorin upper bound, hence an upper bound
// on the true condition number.
inline double known_laplacian_kappa(graph_kind kind, index_t n) {
    const double pi = 3.14159265358979323846;
    const double x = static_cast<double>(n);
    switch (kind) {
        case graph_kind::path:
            return (1.0 + std::cos(pi / x)) / (1.0 - std::cos(pi / x));
        case graph_kind::cycle: {
            const double lmin = 1.0 - std::cos(2.0 * pi / x);
            const double lmax = 1.0 - std::cos(2.0 * pi * static_cast<double>(n / 2) / x);
            return lmax / lmin;
        }
        case graph_kind::star:
            return x;
        case graph_kind::complete:
            return 1.0;
        case graph_kind::wheel:
            return 2.0 * (x - 1.0) / general_lambda_min_bound(n, 3);
    }
    throw invalid_input("known_laplacian_kappa: unknown kind");
}

// One bound-versus-actual measurement on the vertex Laplacian of a
// special graph, with a random synthetic solution.
inline spectral_row spectral_bound_row(graph_kind kind, index_t n, double target,
                                       std::uint64_t seed) {
    spectral_row row;
    row.kind = kind;
    row.n = n;
    const complex2 c = build_clique_complex(gen_special(kind, n));
    const sparse_matrix lap = laplacian_0(c);
    const spectral_summary s = extreme_eigs(lap, std::max<index_t>(400, n));
    row.kappa_exact = s.kappa;
    row.kappa_known = known_laplacian_kappa(kind, n);
    row.bound_exact = cg_iteration_bound(row.kappa_exact, target);
    row.bound_known = cg_iteration_bound(row.kappa_known, target);
    rng gen(derive_seed(seed, static_cast<std::uint64_t>(kind), n));
    std::vector<double> x_true(static_cast<std::size_t>(n));
    for (auto& v : x_true) v = gen.next_symmetric();
    row.actual = cg_iterations_to_energy_error(lap, x_true, target);
    return row;
}

struct bench_config {
    std::string family = "er";  // er | ws | ba
    index_t n = 100;
    double p = 0.1;           // er edge probability
    index_t k = 10;           // ws lattice degree
    double p_rewire = 0.3;    // ws rewiring probability
    index_t m = 5;            // ba attachments per arrival
    std::vector<method> methods{method::cg_ne, method::minres_ne, method::cg_kkt,
                                method::minres_kkt, method::lsqr};
    index_t trials = 5;
    double tol = 1e-8;
    std::uint64_t seed = 12345;
    harmonic_mode hmode = harmonic_mode::lsq_residual;
};

struct bench_row {
    std::string family;
    index_t n0 = 0, n1 = 0, n2 = 0;
    double edge_density = 0.0;      // n1 / C(n0, 2)
    double triangle_density = 0.0;  // n2 / C(n0, 3)
    std::string method;
    double rel_err_grad = 0.0;
    double rel_err_curl = 0.0;
    double err_harmonic = 0.0;
    bool harmonic_err_is_absolute = false;  // true when the true harmonic part is zero
    index_t iters_alpha = 0, iters_beta = 0;
    double secs_alpha = 0.0, secs_beta = 0.0;
};

inline graph make_family_graph(const bench_config& cfg, std::uint64_t seed) {
    if (cfg.family == "er") return gen_erdos_renyi(cfg.n, cfg.p, seed);
    if (cfg.family == "ws") return gen_watts_strogatz(cfg.n, cfg.k, cfg.p_rewire, seed);
    if (cfg.family == "ba") return gen_barabasi_albert(cfg.n, cfg.m, seed);
    throw invalid_input("make_family_graph: unknown family '" + cfg.family + "'");
}

namespace detail {

inline double err_against(const std::vector<double>& got, const std::vector<double>& truth,
                          double truth_norm) {
    double d = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        const double e = got[i] - truth[i];
        d += e * e;
    }
    d = std::sqrt(d);
    return truth_norm > 0.0 ? d / truth_norm : d;
}

template <typename T>
T median_of(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace detail

// Every method runs on the same per-trial instances. Error columns are
// means over trials; iteration and time columns are the median trial so
// they remain actual measured values.
inline std::vector<bench_row> run_bench(const bench_config& cfg) {
    if (cfg.trials < 1) throw invalid_input("run_bench: need at least one trial");
    std::vector<problem_instance> instances;
    instances.reserve(static_cast<std::size_t>(cfg.trials));
    for (index_t t = 0; t < cfg.trials; ++t) {
        const std::uint64_t s = derive_seed(cfg.seed, t);
        instances.push_back(gen_instance(make_family_graph(cfg, s), derive_seed(s, 0x117),
                                         cfg.hmode));
    }
    const complex2& c0 = instances.front().c;
    const double pairs = static_cast<double>(c0.n0) * (c0.n0 - 1) / 2.0;
    const double triples = pairs * (c0.n0 - 2) / 3.0;

    std::vector<bench_row> rows;
    solve_options opts;
    opts.tol = cfg.tol;
    for (method m : cfg.methods) {
        bench_row row;
        row.family = cfg.family;
        row.method = method_name(m);
        std::vector<double> eg, ec, eh, sa, sb;
        std::vector<index_t> ia, ib;
        bool habs = false;
        for (const auto& inst : instances) {
            hodge_result r = decompose(inst.c, inst.omega, m, opts);
            std::vector<double> grad_t(inst.omega.size()), curl_t(inst.omega.size());
            {
                const sparse_matrix d1t = boundary_1(inst.c).transpose();
                grad_t = d1t.matvec(inst.alpha_true);
                if (inst.c.n2() > 0) curl_t = boundary_2(inst.c).matvec(inst.beta_true);
            }
            eg.push_back(detail::err_against(r.grad_part, grad_t, inst.grad_norm_true));
            ec.push_back(detail::err_against(r.curl_part, curl_t, inst.curl_norm_true));
            eh.push_back(detail::err_against(r.harmonic, inst.harmonic_true,
                                             inst.harmonic_norm_true));
            habs = habs || inst.harmonic_norm_true == 0.0;
            ia.push_back(r.report_alpha.iterations);
            ib.push_back(r.report_beta.iterations);
            sa.push_back(r.report_alpha.elapsed_seconds);
            sb.push_back(r.report_beta.elapsed_seconds);
        }
        row.n0 = c0.n0;
        row.n1 = c0.n1();
        row.n2 = c0.n2();
        row.edge_density = pairs > 0 ? row.n1 / pairs : 0.0;
        row.triangle_density = triples > 0 ? row.n2 / triples : 0.0;
        auto mean = [](const std::vector<double>& v) {
            double s = 0.0;
            for (double e : v) s += e;
            return s / static_cast<double>(v.size());
        };
        row.rel_err_grad = mean(eg);
        row.rel_err_curl = mean(ec);
        row.err_harmonic = mean(eh);
        row.harmonic_err_is_absolute = habs;
        row.iters_alpha = detail::median_of(ia);
        row.iters_beta = detail::median_of(ib);
        row.secs_alpha = detail::median_of(sa);
        row.secs_beta = detail::median_of(sb);
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void write_bench_csv(std::ostream& out, const std::vector<bench_row>& rows) {
    out << "family,n0,n1,n2,edge_density,triangle_density,method,rel_err_grad,rel_err_curl,"
           "err_harmonic,harmonic_err_is_absolute,iters_alpha,iters_beta,secs_alpha,secs_beta\n";
    for (const auto& r : rows) {
        out << r.family << ',' << r.n0 << ',' << r.n1 << ',' << r.n2 << ',' << r.edge_density
            << ',' << r.triangle_density << ',' << r.method << ',' << r.rel_err_grad << ','
            << r.rel_err_curl << ',' << r.err_harmonic << ','
            << (r.harmonic_err_is_absolute ? 1 : 0) << ',' << r.iters_alpha << ',' << r.iters_beta
            << ',' << r.secs_alpha << ',' << r.secs_beta << '\n';
    }
}

inline void write_sweep_csv(std::ostream& out, const std::vector<sweep_row>& rows) {
    out << "n,rho,trial,n1,n2,betti1,harmonic_fraction\n";
    for (const auto& r : rows)
        out << r.n << ',' << r.rho << ',' << r.trial << ',' << r.n1 << ',' << r.n2 << ','
            << r.betti1 << ',' << r.harmonic_fraction << '\n';
}

inline void write_spectral_csv(std::ostream& out, const std::vector<spectral_row>& rows) {
    out << "kind,n,kappa_exact,kappa_known,bound_exact,bound_known,actual\n";
    for (const auto& r : rows)
        out << kind_name(r.kind) << ',' << r.n << ',' << r.kappa_exact << ',' << r.kappa_known
            << ',' << r.bound_exact << ',' << r.bound_known << ',' << r.actual << '\n';
}

}  // namespace hodge
