#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "hodge/complex.hpp"
#include "hodge/solvers.hpp"

namespace hodge {

// Solution strategies for the two least squares problems. All five agree
// up to solver tolerance; they differ in which equivalent formulation is
// iterated on:
//   cg_ne / minres_ne   normal equations (vertex or triangle Laplacian)
//   cg_kkt / minres_kkt symmetric saddle-point (augmented) system
//   lsqr                the rectangular problem itself
// `automatic` picks cg_ne for potentials and, for the curl problem,
// switches to lsqr when the triangle Laplacian would be dense enough that
// its matvec costs more than the two boundary matvecs of an lsqr step.
enum class method { automatic, cg_ne, minres_ne, cg_kkt, minres_kkt, lsqr };

inline std::string method_name(method m) {
    switch (m) {
        case method::automatic: return "auto";
        case method::cg_ne: return "cg-ne";
        case method::minres_ne: return "minres-ne";
        case method::cg_kkt: return "cg-kkt";
        case method::minres_kkt: return "minres-kkt";
        case method::lsqr: return "lsqr";
    }
    return "?";
}

inline method method_from_name(const std::string& s) {
    if (s == "auto") return method::automatic;
    if (s == "cg-ne") return method::cg_ne;
    if (s == "minres-ne") return method::minres_ne;
    if (s == "cg-kkt") return method::cg_kkt;
    if (s == "minres-kkt") return method::minres_kkt;
    if (s == "lsqr") return method::lsqr;
    throw invalid_input("unknown method '" + s + "'");
}

struct hodge_result {
    std::vector<double> alpha;      // vertex potential, mean-centered per component
    std::vector<double> beta;       // triangle potential
    std::vector<double> grad_part;  // d1^T alpha
    std::vector<double> curl_part;  // d2 beta
    std::vector<double> harmonic;   // omega - grad - curl
    double grad_norm = 0.0;
    double curl_norm = 0.0;
    double harmonic_norm = 0.0;
    method method_alpha = method::automatic;  // resolved choices
    method method_beta = method::automatic;
    solve_report report_alpha;
    solve_report report_beta;
};

namespace detail {

inline double vnorm(const std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return std::sqrt(s);
}

// The gauge: potentials are determined up to a constant per connected
// component; fix it by centering the mean of each component at zero.
inline void center_per_component(std::vector<double>& alpha, const complex2& c) {
    const std::vector<index_t> comp = vertex_components(c);
    index_t ncomp = 0;
    for (index_t l : comp) ncomp = std::max(ncomp, l + 1);
    std::vector<double> sum(static_cast<std::size_t>(ncomp), 0.0);
    std::vector<index_t> count(static_cast<std::size_t>(ncomp), 0);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        sum[comp[i]] += alpha[i];
        ++count[comp[i]];
    }
    for (std::size_t i = 0; i < alpha.size(); ++i)
        alpha[i] -= sum[comp[i]] / static_cast<double>(count[comp[i]]);
}

// Exact nonzero count of d2^T d2 predicted from the d2 pattern alone: two
// triangles share at most one edge, so every pair of triangles on a common
// edge contributes exactly one off-diagonal entry on each side.
inline index_t predict_triangle_laplacian_nnz(const sparse_matrix& d2) {
    index_t nnz = d2.cols();
    for (index_t e = 0; e < d2.rows(); ++e) {
        const index_t t = d2.row_ptr()[e + 1] - d2.row_ptr()[e];
        nnz += t * (t - 1);
    }
    return nnz;
}

inline method resolve_alpha_method(method m) {
    return m == method::automatic ? method::cg_ne : m;
}

inline method resolve_beta_method(method m, const sparse_matrix& d2) {
    if (m != method::automatic) return m;
    if (d2.cols() == 0) return method::cg_ne;
    return predict_triangle_laplacian_nnz(d2) < 7 * d2.cols() ? method::cg_ne : method::lsqr;
}

}  // namespace detail

// Least squares vertex potential: minimize ||omega - d1^T alpha||. Returns
// the centered potential and the solver report.
inline solve_result solve_ranking(const complex2& c, const std::vector<double>& omega,
                                  method m = method::automatic, const solve_options& opts = {}) {
    if (static_cast<index_t>(omega.size()) != c.n1())
        throw dimension_error("solve_ranking: omega must have one value per edge");
    const sparse_matrix d1 = boundary_1(c);
    const sparse_matrix d1t = d1.transpose();
    solve_result res;
    switch (detail::resolve_alpha_method(m)) {
        case method::cg_ne:
            res = cg(gram(d1, gram_side::left), d1.matvec(omega), opts);
            break;
        case method::minres_ne:
            res = minres(gram(d1, gram_side::left), d1.matvec(omega), opts);
            break;
        case method::cg_kkt:
        case method::minres_kkt: {
            const sparse_matrix k = assemble_kkt(c.n1(), d1t, d1);
            std::vector<double> rhs = omega;
            rhs.resize(static_cast<std::size_t>(c.n1() + c.n0), 0.0);
            solve_result full = detail::resolve_alpha_method(m) == method::cg_kkt
                                    ? cg(k, rhs, opts)
                                    : minres(k, rhs, opts);
            res.report = full.report;
            res.x.assign(full.x.begin() + c.n1(), full.x.end());
            break;
        }
        case method::lsqr:
            res = lsqr(d1t, omega, opts);
            break;
        case method::automatic:
            break;  // unreachable
    }
    detail::center_per_component(res.x, c);
    return res;
}

// Least squares triangle potential: minimize ||omega - d2 beta||. The
// right-hand side may be the full flow or the residual of the first
// problem; by orthogonality of the ranges both give the same beta.
inline solve_result solve_curl(const complex2& c, const std::vector<double>& omega,
                               method m = method::automatic, const solve_options& opts = {}) {
    if (static_cast<index_t>(omega.size()) != c.n1())
        throw dimension_error("solve_curl: omega must have one value per edge");
    const sparse_matrix d2 = boundary_2(c);
    if (c.n2() == 0) {
        solve_result res;
        res.report.converged = true;
        return res;
    }
    switch (detail::resolve_beta_method(m, d2)) {
        case method::cg_ne:
            return cg(gram(d2, gram_side::right), d2.transpose().matvec(omega), opts);
        case method::minres_ne:
            return minres(gram(d2, gram_side::right), d2.transpose().matvec(omega), opts);
        case method::cg_kkt:
        case method::minres_kkt: {
            const sparse_matrix k = assemble_kkt(c.n1(), d2, d2.transpose());
            std::vector<double> rhs = omega;
            rhs.resize(static_cast<std::size_t>(c.n1() + c.n2()), 0.0);
            solve_result full = detail::resolve_beta_method(m, d2) == method::cg_kkt
                                    ? cg(k, rhs, opts)
                                    : minres(k, rhs, opts);
            solve_result res;
            res.report = full.report;
            res.x.assign(full.x.begin() + c.n1(), full.x.end());
            return res;
        }
        case method::lsqr:
            return lsqr(d2, omega, opts);
        case method::automatic:
            break;  // unreachable
    }
    throw invalid_input("solve_curl: unknown method");
}

// Full orthogonal decomposition omega = grad + curl + harmonic. Solves the
// two least squares problems with the requested method and takes the
// harmonic part as the remainder, then checks it is actually harmonic:
// ||d1 h|| and ||d2^T h|| must both be at most 1e-6 ||omega||.
inline hodge_result decompose(const complex2& c, const std::vector<double>& omega,
                              method m = method::automatic, const solve_options& opts = {}) {
    if (static_cast<index_t>(omega.size()) != c.n1())
        throw dimension_error("decompose: omega must have one value per edge");
    const sparse_matrix d1 = boundary_1(c);
    const sparse_matrix d2 = boundary_2(c);

    hodge_result out;
    out.method_alpha = detail::resolve_alpha_method(m);
    out.method_beta = detail::resolve_beta_method(m, d2);

    solve_result a = solve_ranking(c, omega, m, opts);
    out.alpha = std::move(a.x);
    out.report_alpha = std::move(a.report);
    out.grad_part = d1.transpose().matvec(out.alpha);

    solve_result b = solve_curl(c, omega, m, opts);
    out.beta = std::move(b.x);
    out.report_beta = std::move(b.report);
    out.curl_part = c.n2() > 0 ? d2.matvec(out.beta)
                               : std::vector<double>(omega.size(), 0.0);

    out.harmonic.resize(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i)
        out.harmonic[i] = omega[i] - out.grad_part[i] - out.curl_part[i];

    out.grad_norm = detail::vnorm(out.grad_part);
    out.curl_norm = detail::vnorm(out.curl_part);
    out.harmonic_norm = detail::vnorm(out.harmonic);

    const double omega_norm = detail::vnorm(omega);
    const double div_res = detail::vnorm(d1.matvec(out.harmonic));
    const double curl_res = detail::vnorm(d2.transpose().matvec(out.harmonic));
    if (div_res > 1e-6 * omega_norm || curl_res > 1e-6 * omega_norm)
        throw decomposition_error(
            "decompose: remainder is not harmonic (||d1 h|| = " + std::to_string(div_res) +
                ", ||d2^T h|| = " + std::to_string(curl_res) + ", ||omega|| = " +
                std::to_string(omega_norm) + ")",
            div_res, curl_res);
    return out;
}

// Vertex ids ordered best-to-worst by potential; ties stay in index order.
inline std::vector<index_t> ranking_from_alpha(const std::vector<double>& alpha) {
    std::vector<index_t> order(alpha.size());
    std::iota(order.begin(), order.end(), index_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](index_t a, index_t b) { return alpha[a] > alpha[b]; });
    return order;
}

struct consistency_report {
    bool consistent = false;
    double residual_norm = 0.0;
};

// A flow is consistent when it is a pure gradient: the first least squares
// problem then fits it exactly. Decided by the residual against tol *
// ||omega||; the solve itself runs two orders tighter than the decision.
inline consistency_report consistency_check(const complex2& c, const std::vector<double>& omega,
                                            double tol = 1e-8) {
    consistency_report rep;
    const double omega_norm = detail::vnorm(omega);
    if (omega_norm == 0.0) {
        rep.consistent = true;
        return rep;
    }
    solve_options opts;
    opts.tol = std::min(1e-10, tol / 100.0);
    solve_result a = solve_ranking(c, omega, method::cg_ne, opts);
    std::vector<double> r = boundary_1(c).transpose().matvec(a.x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = omega[i] - r[i];
    rep.residual_norm = detail::vnorm(r);
    rep.consistent = rep.residual_norm <= tol * omega_norm;
    return rep;
}

}  // namespace hodge
