#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "hodge/sparse.hpp"

namespace hodge {

struct solve_options {
    double tol = 1e-8;       // relative residual target
    index_t max_iter = 0;    // 0 means 10 * problem size
    bool record_history = false;
};

struct solve_report {
    index_t iterations = 0;
    bool converged = false;
    double final_relres = 0.0;
    std::vector<double> residual_history;  // filled when record_history
    double elapsed_seconds = 0.0;
    index_t matvecs = 0;
};

struct solve_result {
    std::vector<double> x;
    solve_report report;
};

// Optional per-iteration hook, called with the iterate after each update.
using iteration_observer = std::function<void(index_t, const std::vector<double>&)>;

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

inline void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

class stopwatch {
public:
    stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// Conjugate gradients on a symmetric system A x = b, started from zero so
// the iterates stay in the Krylov space range(A); a singular but
// consistent system is solved without touching kernel components. Also
// usable on the symmetric indefinite saddle systems at desk scale, where a
// true breakdown (p^T A p = 0) has probability zero; a detected breakdown
// or non-finite value throws.
inline solve_result cg(const sparse_matrix& a, const std::vector<double>& b,
                       const solve_options& opts = {}, const iteration_observer& observe = {}) {
    if (a.rows() != a.cols()) throw dimension_error("cg: matrix not square");
    if (static_cast<index_t>(b.size()) != a.rows()) throw dimension_error("cg: rhs size mismatch");
    detail::stopwatch clock;
    const index_t n = a.rows();
    const index_t maxit = opts.max_iter > 0 ? opts.max_iter : 10 * std::max<index_t>(n, 1);

    solve_result out;
    out.x.assign(b.size(), 0.0);
    const double bnorm = detail::norm2(b);
    if (opts.record_history) out.report.residual_history.push_back(bnorm == 0.0 ? 0.0 : 1.0);
    if (bnorm == 0.0) {
        out.report.converged = true;
        out.report.elapsed_seconds = clock.seconds();
        return out;
    }

    std::vector<double> r = b, p = b;
    double rr = detail::dot(r, r);
    for (index_t k = 1; k <= maxit; ++k) {
        std::vector<double> ap = a.matvec(p);
        ++out.report.matvecs;
        const double pap = detail::dot(p, ap);
        if (!std::isfinite(pap) || pap == 0.0)
            throw numerical_error("cg: breakdown, p^T A p = " + std::to_string(pap));
        const double alpha = rr / pap;
        detail::axpy(alpha, p, out.x);
        detail::axpy(-alpha, ap, r);
        const double rr_next = detail::dot(r, r);
        const double relres = std::sqrt(rr_next) / bnorm;
        if (!std::isfinite(relres)) throw numerical_error("cg: non-finite residual");
        out.report.iterations = k;
        out.report.final_relres = relres;
        if (opts.record_history) out.report.residual_history.push_back(relres);
        if (observe) observe(k, out.x);
        if (relres <= opts.tol) {
            out.report.converged = true;
            break;
        }
        const double beta = rr_next / rr;
        rr = rr_next;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta * p[i];
    }
    out.report.elapsed_seconds = clock.seconds();
    return out;
}

// MINRES (Paige & Saunders) for symmetric, possibly indefinite or
// singular-but-consistent systems. Lanczos recurrence plus Givens QR of
// the tridiagonal; phibar tracks ||r_k|| so the reported residuals are
// monotone nonincreasing.
inline solve_result minres(const sparse_matrix& a, const std::vector<double>& b,
                           const solve_options& opts = {},
                           const iteration_observer& observe = {}) {
    if (a.rows() != a.cols()) throw dimension_error("minres: matrix not square");
    if (static_cast<index_t>(b.size()) != a.rows())
        throw dimension_error("minres: rhs size mismatch");
    detail::stopwatch clock;
    const index_t n = a.rows();
    const index_t maxit = opts.max_iter > 0 ? opts.max_iter : 10 * std::max<index_t>(n, 1);

    solve_result out;
    out.x.assign(b.size(), 0.0);
    const double bnorm = detail::norm2(b);
    if (opts.record_history) out.report.residual_history.push_back(bnorm == 0.0 ? 0.0 : 1.0);
    if (bnorm == 0.0) {
        out.report.converged = true;
        out.report.elapsed_seconds = clock.seconds();
        return out;
    }

    const double beta1 = bnorm;
    std::vector<double> r1 = b, r2 = b, y = b;
    std::vector<double> w(b.size(), 0.0), w1(b.size(), 0.0), w2(b.size(), 0.0);
    double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0, phibar = beta1;
    double cs = -1.0, sn = 0.0;

    for (index_t k = 1; k <= maxit; ++k) {
        const double s = 1.0 / beta;
        std::vector<double> v(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) v[i] = s * y[i];
        y = a.matvec(v);
        ++out.report.matvecs;
        if (k >= 2) detail::axpy(-beta / oldb, r1, y);
        const double alfa = detail::dot(v, y);
        detail::axpy(-alfa / beta, r2, y);
        r1 = r2;
        r2 = y;
        oldb = beta;
        beta = detail::norm2(y);
        if (!std::isfinite(beta)) throw numerical_error("minres: non-finite Lanczos vector");

        // Apply the previous rotation, then form and apply the next one.
        const double oldeps = epsln;
        const double delta = cs * dbar + sn * alfa;
        const double gbar = sn * dbar - cs * alfa;
        epsln = sn * beta;
        dbar = -cs * beta;
        double gamma = std::sqrt(gbar * gbar + beta * beta);
        gamma = std::max(gamma, std::numeric_limits<double>::epsilon());
        cs = gbar / gamma;
        sn = beta / gamma;
        const double phi = cs * phibar;
        phibar = sn * phibar;

        w1 = w2;
        w2 = w;
        for (std::size_t i = 0; i < w.size(); ++i)
            w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) / gamma;
        detail::axpy(phi, w, out.x);

        const double relres = phibar / bnorm;
        out.report.iterations = k;
        out.report.final_relres = relres;
        if (opts.record_history) out.report.residual_history.push_back(relres);
        if (observe) observe(k, out.x);
        if (relres <= opts.tol) {
            out.report.converged = true;
            break;
        }
        if (beta <= bnorm * std::numeric_limits<double>::epsilon()) {
            // Lanczos found an invariant subspace; the iterate is as good
            // as the Krylov space allows.
            out.report.converged = relres <= opts.tol;
            break;
        }
    }
    out.report.elapsed_seconds = clock.seconds();
    return out;
}

// LSQR (Paige & Saunders) for min ||b - A x||, A rectangular, no damping.
// Golub-Kahan bidiagonalization with two stopping tests at opts.tol: the
// residual test ||r||/||b|| for compatible systems, and the normal
// equations test ||A^T r|| / (||A|| ||r||) for incompatible ones. Started
// from zero, the iterates stay in range(A^T), so the minimum-norm least
// squares solution is produced.
inline solve_result lsqr(const sparse_matrix& a, const std::vector<double>& b,
                         const solve_options& opts = {}) {
    if (static_cast<index_t>(b.size()) != a.rows())
        throw dimension_error("lsqr: rhs size mismatch");
    detail::stopwatch clock;
    const index_t maxit =
        opts.max_iter > 0 ? opts.max_iter : 10 * std::max<index_t>(std::max(a.rows(), a.cols()), 1);
    const sparse_matrix at = a.transpose();

    solve_result out;
    out.x.assign(static_cast<std::size_t>(a.cols()), 0.0);

    std::vector<double> u = b;
    double beta = detail::norm2(u);
    const double bnorm = beta;
    if (opts.record_history) out.report.residual_history.push_back(bnorm == 0.0 ? 0.0 : 1.0);
    if (beta == 0.0) {
        out.report.converged = true;
        out.report.elapsed_seconds = clock.seconds();
        return out;
    }
    for (auto& e : u) e /= beta;
    std::vector<double> v = at.matvec(u);
    ++out.report.matvecs;
    double alfa = detail::norm2(v);
    if (alfa == 0.0) {
        // A^T b = 0: x = 0 already minimizes, residual is all of b.
        out.report.converged = true;
        out.report.final_relres = 1.0;
        out.report.elapsed_seconds = clock.seconds();
        return out;
    }
    for (auto& e : v) e /= alfa;

    std::vector<double> w = v;
    double phibar = beta, rhobar = alfa;
    double norm_a2 = alfa * alfa;

    for (index_t k = 1; k <= maxit; ++k) {
        // Continue the bidiagonalization.
        std::vector<double> au = a.matvec(v);
        ++out.report.matvecs;
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = au[i] - alfa * u[i];
        beta = detail::norm2(u);
        if (beta > 0.0) {
            for (auto& e : u) e /= beta;
            std::vector<double> atv = at.matvec(u);
            ++out.report.matvecs;
            for (std::size_t i = 0; i < v.size(); ++i) v[i] = atv[i] - beta * v[i];
            alfa = detail::norm2(v);
            if (alfa > 0.0)
                for (auto& e : v) e /= alfa;
        } else {
            alfa = 0.0;
        }
        norm_a2 += beta * beta + alfa * alfa;

        // Rotate the bidiagonal system and update x.
        const double rho = std::sqrt(rhobar * rhobar + beta * beta);
        const double c = rhobar / rho;
        const double s = beta / rho;
        const double theta = s * alfa;
        rhobar = -c * alfa;
        const double phi = c * phibar;
        phibar = s * phibar;
        detail::axpy(phi / rho, w, out.x);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = v[i] - (theta / rho) * w[i];

        const double rnorm = phibar;
        const double arnorm = phibar * alfa * std::abs(c);
        if (!std::isfinite(rnorm)) throw numerical_error("lsqr: non-finite residual");
        const double relres = rnorm / bnorm;
        const double norm_a = std::sqrt(norm_a2);
        const double netest = (rnorm > 0.0 && norm_a > 0.0) ? arnorm / (norm_a * rnorm) : 0.0;
        out.report.iterations = k;
        out.report.final_relres = relres;
        if (opts.record_history) out.report.residual_history.push_back(relres);
        if (relres <= opts.tol || netest <= opts.tol) {
            out.report.converged = true;
            break;
        }
    }
    out.report.elapsed_seconds = clock.seconds();
    return out;
}

namespace detail {

// Dense CG used for the small Schur block. The block is definite but of
// either sign: a saddle partition gives a negative definite block, and the
// plain recurrence solves that exactly as well (it equals CG on the
// negated system). Only a genuine breakdown throws.
inline std::vector<double> dense_cg(const std::vector<double>& m, index_t n,
                                    const std::vector<double>& b, double tol, index_t maxit) {
    std::vector<double> x(b.size(), 0.0);
    const double bnorm = norm2(b);
    if (bnorm == 0.0) return x;
    std::vector<double> r = b, p = b, mp(b.size());
    double rr = dot(r, r);
    for (index_t k = 0; k < maxit; ++k) {
        for (index_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (index_t j = 0; j < n; ++j) s += m[i * n + j] * p[j];
            mp[i] = s;
        }
        const double pmp = dot(p, mp);
        if (!std::isfinite(pmp) || pmp == 0.0)
            throw numerical_error("schur_solve: dense block breakdown");
        const double alpha = rr / pmp;
        axpy(alpha, p, x);
        axpy(-alpha, mp, r);
        const double rr_next = dot(r, r);
        if (std::sqrt(rr_next) <= tol * bnorm) break;
        const double beta_cg = rr_next / rr;
        rr = rr_next;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + beta_cg * p[i];
    }
    return x;
}

}  // namespace detail

// Two-level Schur complement iteration for a symmetric system partitioned
// at split index k:
//
//   [ A11  A12 ] [x1]   [b1]
//   [ A21  A22 ] [x2] = [b2]
//
// The inverse of A11 is only ever applied approximately, by a CG run with
// a fixed small iteration budget. One approximate Schur block
// S = A22 - A21 inv(A11) A12 is formed densely up front; each outer sweep
// solves S e2 = r2 - A21 inv(A11) r1, back-substitutes
// A11 e1 = r1 - A12 e2, applies the correction and recomputes the true
// residual. The outer loop repeats until the usual relative residual test
// passes. A11 should be the large well-conditioned block; n - k stays
// small so the dense block is cheap.
inline solve_result schur_solve(const sparse_matrix& a, const std::vector<double>& b, index_t k,
                                const solve_options& opts = {}) {
    if (a.rows() != a.cols()) throw dimension_error("schur_solve: matrix not square");
    if (static_cast<index_t>(b.size()) != a.rows())
        throw dimension_error("schur_solve: rhs size mismatch");
    const index_t n = a.rows();
    if (k <= 0 || k >= n) throw invalid_input("schur_solve: split index must be in (0, n)");
    detail::stopwatch clock;
    const index_t m = n - k;
    const index_t maxit = opts.max_iter > 0 ? opts.max_iter : 10 * n;
    const index_t inner_budget = 10;  // fixed CG budget standing in for the A11 solve

    const sparse_matrix a11 = a.slice(0, k, 0, k);
    const sparse_matrix a12 = a.slice(0, k, k, n);
    const sparse_matrix a21 = a.slice(k, n, 0, k);
    const sparse_matrix a22 = a.slice(k, n, k, n);

    solve_result out;
    out.x.assign(b.size(), 0.0);
    const double bnorm = detail::norm2(b);
    if (opts.record_history) out.report.residual_history.push_back(bnorm == 0.0 ? 0.0 : 1.0);
    if (bnorm == 0.0) {
        out.report.converged = true;
        out.report.elapsed_seconds = clock.seconds();
        return out;
    }

    solve_options inner;
    inner.tol = 1e-14;
    inner.max_iter = inner_budget;
    auto apply_a11_inv = [&](const std::vector<double>& rhs) {
        solve_result r = cg(a11, rhs, inner);
        out.report.matvecs += r.report.matvecs;
        return r.x;
    };

    // Dense approximate Schur block, column by column, then symmetrized
    // (the approximate inverse breaks exact symmetry).
    std::vector<double> schur(static_cast<std::size_t>(m) * m, 0.0);
    {
        std::vector<double> ej(static_cast<std::size_t>(m), 0.0);
        for (index_t j = 0; j < m; ++j) {
            ej[j] = 1.0;
            std::vector<double> col12 = a12.matvec(ej);
            std::vector<double> col22 = a22.matvec(ej);
            out.report.matvecs += 2;
            std::vector<double> z = apply_a11_inv(col12);
            std::vector<double> corr = a21.matvec(z);
            ++out.report.matvecs;
            for (index_t i = 0; i < m; ++i) schur[i * m + j] = col22[i] - corr[i];
            ej[j] = 0.0;
        }
        for (index_t i = 0; i < m; ++i)
            for (index_t j = i + 1; j < m; ++j) {
                const double s = 0.5 * (schur[i * m + j] + schur[j * m + i]);
                schur[i * m + j] = schur[j * m + i] = s;
            }
    }

    std::vector<double> r = b;
    for (index_t it = 1; it <= maxit; ++it) {
        std::vector<double> r1(r.begin(), r.begin() + k);
        std::vector<double> r2(r.begin() + k, r.end());

        std::vector<double> z = apply_a11_inv(r1);
        std::vector<double> a21z = a21.matvec(z);
        ++out.report.matvecs;
        std::vector<double> rhs2(static_cast<std::size_t>(m));
        for (index_t i = 0; i < m; ++i) rhs2[i] = r2[i] - a21z[i];
        std::vector<double> e2 = detail::dense_cg(schur, m, rhs2, 1e-12, 10 * std::max<index_t>(m, 1));

        std::vector<double> a12e2 = a12.matvec(e2);
        ++out.report.matvecs;
        std::vector<double> rhs1(static_cast<std::size_t>(k));
        for (index_t i = 0; i < k; ++i) rhs1[i] = r1[i] - a12e2[i];
        std::vector<double> e1 = apply_a11_inv(rhs1);

        for (index_t i = 0; i < k; ++i) out.x[i] += e1[i];
        for (index_t i = 0; i < m; ++i) out.x[k + i] += e2[i];

        std::vector<double> ax = a.matvec(out.x);
        ++out.report.matvecs;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - ax[i];
        const double relres = detail::norm2(r) / bnorm;
        if (!std::isfinite(relres)) throw numerical_error("schur_solve: non-finite residual");
        out.report.iterations = it;
        out.report.final_relres = relres;
        if (opts.record_history) out.report.residual_history.push_back(relres);
        if (relres <= opts.tol) {
            out.report.converged = true;
            break;
        }
    }
    out.report.elapsed_seconds = clock.seconds();
    return out;
}

}  // namespace hodge
