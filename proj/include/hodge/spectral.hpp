#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "hodge/complex.hpp"
#include "hodge/rng.hpp"
#include "hodge/sparse.hpp"

namespace hodge {

struct spectral_summary {
    double lambda_max = 0.0;          // largest eigenvalue magnitude
    double lambda_min_nonzero = 0.0;  // smallest magnitude above the zero cutoff
    index_t kernel_dim = 0;           // eigenvalues classified as zero
    double kappa = std::numeric_limits<double>::quiet_NaN();  // condition modulo kernel
};

// Eigenvalues of a dense symmetric matrix (row-major, values only),
// ascending. Householder reduction to tridiagonal form followed by the
// implicit-shift QL iteration; both are the classical in-place algorithms.
inline std::vector<double> dense_symmetric_eigenvalues(std::vector<double> a, index_t n) {
    if (n == 0) return {};
    std::vector<double> d(static_cast<std::size_t>(n), 0.0);
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    auto at = [&](index_t i, index_t j) -> double& {
        return a[static_cast<std::size_t>(i) * n + j];
    };

    for (index_t i = n - 1; i >= 1; --i) {
        const index_t l = i - 1;
        double h = 0.0;
        if (l > 0) {
            double scale = 0.0;
            for (index_t k = 0; k <= l; ++k) scale += std::abs(at(i, k));
            if (scale == 0.0) {
                e[i] = at(i, l);
            } else {
                for (index_t k = 0; k <= l; ++k) {
                    at(i, k) /= scale;
                    h += at(i, k) * at(i, k);
                }
                double f = at(i, l);
                const double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                at(i, l) = f - g;
                f = 0.0;
                for (index_t j = 0; j <= l; ++j) {
                    double gj = 0.0;
                    for (index_t k = 0; k <= j; ++k) gj += at(j, k) * at(i, k);
                    for (index_t k = j + 1; k <= l; ++k) gj += at(k, j) * at(i, k);
                    e[j] = gj / h;
                    f += e[j] * at(i, j);
                }
                const double hh = f / (h + h);
                for (index_t j = 0; j <= l; ++j) {
                    f = at(i, j);
                    const double gj = e[j] - hh * f;
                    e[j] = gj;
                    for (index_t k = 0; k <= j; ++k) at(j, k) -= f * e[k] + gj * at(i, k);
                }
            }
        } else {
            e[i] = at(i, l);
        }
        d[i] = h;
    }
    e[0] = 0.0;
    for (index_t i = 0; i < n; ++i) d[i] = at(i, i);

    // QL with implicit shifts on the tridiagonal (d, e).
    for (index_t i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (index_t l = 0; l < n; ++l) {
        index_t iter = 0;
        index_t m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (iter++ == 100)
                    throw numerical_error("dense_symmetric_eigenvalues: QL failed to settle");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (index_t i = m - 1; i >= l; --i) {
                    const double f = s * e[i];
                    const double bb = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * bb;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - bb;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

namespace detail {

// Power iteration on op (a symmetric positive semidefinite action),
// deflated against the columns collected in basis. Returns the largest
// remaining eigenvalue through the Rayleigh quotient; vec receives the
// iterate. Stops once the eigenpair residual ||op(v) - rq v|| falls below
// resid_target (absolute; resid_target <= 0 means 1e-8 |rq|, enough for
// the dominant-eigenvalue call). Weyl's inequality then puts rq within
// the target of a true eigenvalue, which is what the kernel cutoff of the
// caller relies on; a Rayleigh-quotient change test cannot promise that.
inline double deflated_power_iteration(const std::function<std::vector<double>(
                                           const std::vector<double>&)>& op,
                                       index_t n, const std::vector<std::vector<double>>& basis,
                                       std::vector<double>& vec, rng& gen,
                                       double resid_target = 0.0) {
    const index_t max_rounds = 1000000;
    std::vector<double> v(static_cast<std::size_t>(n));
    for (auto& e : v) e = gen.next_symmetric();
    auto orthogonalize = [&](std::vector<double>& w) {
        for (const auto& q : basis) {
            double proj = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i) proj += q[i] * w[i];
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= proj * q[i];
        }
    };
    orthogonalize(v);
    double nv = 0.0;
    for (double e : v) nv += e * e;
    nv = std::sqrt(nv);
    if (nv == 0.0) throw numerical_error("extreme_eigs: deflation exhausted the space");
    for (auto& e : v) e /= nv;

    // Rounding can leave the residual a little above the target; accept the
    // best iterate seen if a long stretch brings no real improvement.
    double best_resid = std::numeric_limits<double>::infinity();
    double best_rq = 0.0;
    std::vector<double> best_vec;
    index_t best_round = 0;
    for (index_t it = 0; it < max_rounds; ++it) {
        std::vector<double> y = op(v);
        orthogonalize(y);
        double rq = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) rq += v[i] * y[i];
        double rn = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double r = y[i] - rq * v[i];
            rn += r * r;
        }
        rn = std::sqrt(rn);
        const double target =
            resid_target > 0.0 ? resid_target : 1e-8 * std::max(std::abs(rq), 1e-300);
        if (rn <= target) {
            vec = v;
            return rq;
        }
        if (rn < 0.999 * best_resid) {
            best_resid = rn;
            best_rq = rq;
            best_vec = v;
            best_round = it;
        } else if (it - best_round > 5000 && best_resid <= 10.0 * target) {
            vec = best_vec;
            return best_rq;
        }
        double ny = 0.0;
        for (double e : y) ny += e * e;
        ny = std::sqrt(ny);
        if (ny <= 1e-300) {
            vec = v;
            return 0.0;
        }
        for (std::size_t i = 0; i < y.size(); ++i) y[i] /= ny;
        v.swap(y);
    }
    throw numerical_error("extreme_eigs: power iteration did not settle");
}

}  // namespace detail

// Extreme eigenvalue summary of a symmetric positive semidefinite matrix.
// Below dense_threshold a full dense eigendecomposition is used; above it,
// power iteration finds lambda_max, then the spectrum of
// lambda_max * I - A is probed with deflation to count the kernel and find
// the smallest nonzero eigenvalue. The zero cutoff defaults to
// max(n, 10) * machine_eps * lambda_max; pass zero_tol > 0 to override.
inline spectral_summary extreme_eigs(const sparse_matrix& a, index_t dense_threshold = 400,
                                     double zero_tol = 0.0) {
    if (a.rows() != a.cols()) throw dimension_error("extreme_eigs: matrix not square");
    const index_t n = a.rows();
    spectral_summary s;
    if (n == 0) return s;

    const double eps = std::numeric_limits<double>::epsilon();
    auto cutoff = [&](double lambda_max) {
        return zero_tol > 0.0 ? zero_tol
                              : static_cast<double>(std::max<index_t>(n, 10)) * eps * lambda_max;
    };

    if (n <= dense_threshold) {
        std::vector<double> eig = dense_symmetric_eigenvalues(to_dense_rowmajor(a), n);
        for (double& l : eig) l = std::abs(l);
        std::sort(eig.begin(), eig.end());
        s.lambda_max = eig.back();
        const double zt = cutoff(s.lambda_max);
        for (double l : eig) {
            if (l <= zt) ++s.kernel_dim;
            else {
                if (s.lambda_min_nonzero == 0.0) s.lambda_min_nonzero = l;
            }
        }
        if (s.kernel_dim < n) s.kappa = s.lambda_max / s.lambda_min_nonzero;
        return s;
    }

    rng gen(0x5eedULL + static_cast<std::uint64_t>(n));
    auto apply_a = [&](const std::vector<double>& v) { return a.matvec(v); };
    std::vector<std::vector<double>> basis;
    std::vector<double> vec;
    s.lambda_max = detail::deflated_power_iteration(apply_a, n, basis, vec, gen);
    if (s.lambda_max <= 0.0) {
        s.kernel_dim = n;
        return s;
    }
    const double zt = cutoff(s.lambda_max);
    const double shift = s.lambda_max;
    auto apply_shifted = [&](const std::vector<double>& v) {
        std::vector<double> y = a.matvec(v);
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = shift * v[i] - y[i];
        return y;
    };
    while (s.kernel_dim < n) {
        const double mu =
            detail::deflated_power_iteration(apply_shifted, n, basis, vec, gen, 0.5 * zt);
        const double lambda = shift - mu;
        if (std::abs(lambda) <= zt) {
            basis.push_back(vec);
            ++s.kernel_dim;
        } else {
            s.lambda_min_nonzero = std::abs(lambda);
            break;
        }
    }
    if (s.kernel_dim < n) s.kappa = s.lambda_max / s.lambda_min_nonzero;
    return s;
}

// Smallest nonzero eigenvalue of the vertex Laplacian, closed forms.
inline double special_lambda_min(graph_kind kind, index_t n) {
    if (n < 2) throw invalid_input("special_lambda_min: need n >= 2");
    const double pi = 3.14159265358979323846;
    switch (kind) {
        case graph_kind::path:
            return 2.0 * (1.0 - std::cos(pi / static_cast<double>(n)));
        case graph_kind::cycle:
            if (n < 3) throw invalid_input("special_lambda_min: cycle needs n >= 3");
            return 2.0 * (1.0 - std::cos(2.0 * pi / static_cast<double>(n)));
        case graph_kind::star:
            if (n < 3) throw invalid_input("special_lambda_min: star needs n >= 3");
            return 1.0;
        case graph_kind::complete:
            return static_cast<double>(n);
        case graph_kind::wheel:
            throw invalid_input("special_lambda_min: no closed form for wheels");
    }
    throw invalid_input("special_lambda_min: unknown kind");
}

// Lower bound via edge connectivity eta: 2 eta (1 - cos(pi/n)).
inline double general_lambda_min_bound(index_t n, index_t eta) {
    if (n < 2 || eta < 1) throw invalid_input("general_lambda_min_bound: need n >= 2, eta >= 1");
    const double pi = 3.14159265358979323846;
    return 2.0 * static_cast<double>(eta) * (1.0 - std::cos(pi / static_cast<double>(n)));
}

// Gerschgorin bound for the vertex Laplacian: every disc is centered at
// deg(v) with radius deg(v).
inline double lambda_max_bound(const graph& g) { return 2.0 * static_cast<double>(g.max_degree()); }

// Worst-case error factor of CG after k steps at condition number kappa:
// 2 ((sqrt(kappa) - 1) / (sqrt(kappa) + 1))^k, in the energy norm.
inline double cg_error_bound(double kappa, index_t k) {
    if (!(kappa >= 1.0)) throw invalid_input("cg_error_bound: kappa must be >= 1");
    const double rk = std::sqrt(kappa);
    const double ratio = (rk - 1.0) / (rk + 1.0);
    return 2.0 * std::pow(ratio, static_cast<double>(k));
}

// Smallest k >= 1 whose bound is at or below target_relerr.
inline index_t cg_iteration_bound(double kappa, double target_relerr) {
    if (!(kappa >= 1.0)) throw invalid_input("cg_iteration_bound: kappa must be >= 1");
    if (!(target_relerr > 0.0 && target_relerr < 1.0))
        throw invalid_input("cg_iteration_bound: target must be in (0, 1)");
    if (kappa == 1.0) return 1;
    const double rk = std::sqrt(kappa);
    const double ratio = (rk - 1.0) / (rk + 1.0);
    index_t k = static_cast<index_t>(
        std::ceil(std::log(target_relerr / 2.0) / std::log(ratio)));
    if (k < 1) k = 1;
    while (cg_error_bound(kappa, k) > target_relerr) ++k;
    while (k > 1 && cg_error_bound(kappa, k - 1) <= target_relerr) --k;
    return k;
}

}  // namespace hodge
