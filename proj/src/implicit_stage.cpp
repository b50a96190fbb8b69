#include "edchrom/implicit_stage.hpp"

#include <algorithm>
#include <cmath>

#include "edchrom/errors.hpp"

#include "strfmt.hpp"
#include "edchrom/spatial.hpp"

namespace edchrom {

namespace {

// Dense row-major LU with partial pivoting, for the n x n diagonal blocks
// (n is the component count, single digits in practice).
void lu_factor(double* a, int n, int* piv, int cell) {
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(a[k * n + k]);
        for (int r = k + 1; r < n; ++r) {
            const double v = std::abs(a[r * n + k]);
            if (v > best) {
                best = v;
                p = r;
            }
        }
        if (!(best > 0.0) || !std::isfinite(best)) {
            if (cell >= 0)
                throw SolverError(detail::cat("singular stage Jacobian block at cell ", cell + 1));
            throw SolverError("singular matrix in dense per-cell solve");
        }
        piv[k] = p;
        if (p != k)
            for (int j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
        const double inv = 1.0 / a[k * n + k];
        for (int r = k + 1; r < n; ++r) {
            const double l = a[r * n + k] * inv;
            a[r * n + k] = l;
            for (int j = k + 1; j < n; ++j) a[r * n + j] -= l * a[k * n + j];
        }
    }
}

void lu_solve(const double* a, int n, const int* piv, double* b) {
    // The factorization swaps whole rows (L part included), so all
    // interchanges must hit b before the clean triangular solves.
    for (int k = 0; k < n; ++k)
        if (piv[k] != k) std::swap(b[k], b[piv[k]]);
    for (int k = 0; k < n; ++k)
        for (int r = k + 1; r < n; ++r) b[r] -= a[r * n + k] * b[k];
    for (int k = n - 1; k >= 0; --k) {
        for (int j = k + 1; j < n; ++j) b[k] -= a[k * n + j] * b[j];
        b[k] /= a[k * n + k];
    }
}

} // namespace

void BlockTridiagonal::solve(std::span<double> x) {
    // Forward block elimination; gamma_k = B_k^{-1} (off * I) propagates the
    // upper coupling, y overwrites x.
    std::vector<double> gamma(static_cast<std::size_t>(m) * n * n);
    std::vector<int> piv(n);
    std::vector<double> col(n);

    for (int k = 0; k < m; ++k) {
        double* bk = block_at(k);
        double* xk = x.data() + static_cast<std::size_t>(k) * n;
        if (k > 0) {
            const double* gprev = gamma.data() + static_cast<std::size_t>(k - 1) * n * n;
            const double* xprev = xk - n;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) bk[i * n + j] -= off * gprev[i * n + j];
                xk[i] -= off * xprev[i];
            }
        }
        lu_factor(bk, n, piv.data(), k);
        lu_solve(bk, n, piv.data(), xk);
        if (k + 1 < m) {
            double* gk = gamma.data() + static_cast<std::size_t>(k) * n * n;
            for (int j = 0; j < n; ++j) {
                std::fill(col.begin(), col.end(), 0.0);
                col[j] = off;
                lu_solve(bk, n, piv.data(), col.data());
                for (int i = 0; i < n; ++i) gk[i * n + j] = col[i];
            }
        }
    }
    for (int k = m - 2; k >= 0; --k) {
        const double* gk = gamma.data() + static_cast<std::size_t>(k) * n * n;
        double* xk = x.data() + static_cast<std::size_t>(k) * n;
        const double* xnext = xk + n;
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += gk[i * n + j] * xnext[j];
            xk[i] -= s;
        }
    }
}

void solve_small_dense(int n, double* a, double* b) {
    std::vector<int> piv(n);
    lu_factor(a, n, piv.data(), -1);
    lu_solve(a, n, piv.data(), b);
}

void build_stage_rhs(const Field& w, double dt, const Field& conv, Field& g) {
    for (std::size_t k = 0; k < w.v.size(); ++k) g.v[k] = w.v[k] + 0.5 * dt * conv.v[k];
}

void stage_residual(const Field& c, const Field& g, const LangmuirParams& p,
                    double theta, Field& f) {
    const int n = c.n, m = c.m;
    apply_diffusion(c, 1.0, f);  // pattern matrix A c
    std::vector<double> cc(n);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) cc[i] = c(i, j);
        const std::vector<double> w = to_conserved(cc, p);
        for (int i = 0; i < n; ++i) f(i, j) = w[i] - theta * f(i, j) - g(i, j);
    }
}

void stage_jacobian(const Field& c, const LangmuirParams& p, double theta,
                    BlockTridiagonal& jac) {
    const int n = c.n, m = c.m;
    std::vector<double> cc(n);
    for (int k = 0; k < m; ++k) {
        for (int i = 0; i < n; ++i) cc[i] = c(i, k);
        const std::vector<double> jw = conserved_jacobian(cc, p);
        double* bk = jac.block_at(k);
        std::copy(jw.begin(), jw.end(), bk);
        const double s = (k == 0 || k == m - 1) ? 1.0 : 2.0;
        for (int i = 0; i < n; ++i) bk[i * n + i] += theta * s;
    }
    jac.off = -theta;
}

StageResult newton_solve_stage(Field& c, const Field& g, const LangmuirParams& p,
                               double theta, double tol, int max_iter,
                               std::vector<double>* residual_history) {
    const int n = c.n, m = c.m;
    const double scale =
        1.0 + std::abs(*std::max_element(g.v.begin(), g.v.end(),
                                         [](double x, double y) { return std::abs(x) < std::abs(y); }));

    Field f(n, m);
    std::vector<double> delta(static_cast<std::size_t>(n) * m);

    auto newton_update = [&]() {
        BlockTridiagonal jac(n, m);
        stage_jacobian(c, p, theta, jac);
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < n; ++i) delta[static_cast<std::size_t>(k) * n + i] = f(i, k);
        jac.solve(delta);

        // Keep the iterate inside the domain of W: halve the step while any
        // cell's Langmuir denominator 1 + b'c would fall to 0.5 or below.
        double step = 1.0;
        for (int back = 0;; ++back) {
            bool ok = true;
            for (int k = 0; k < m && ok; ++k) {
                double denom = 1.0;
                for (int i = 0; i < n; ++i)
                    denom += p.b[i] * (c(i, k) - step * delta[static_cast<std::size_t>(k) * n + i]);
                ok = denom > 0.5 && std::isfinite(denom);
            }
            if (ok) break;
            if (back >= 60)
                throw SolverError("implicit stage update cannot stay inside the isotherm domain");
            step *= 0.5;
        }
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < n; ++i) c(i, k) -= step * delta[static_cast<std::size_t>(k) * n + i];
    };

    for (int it = 0;; ++it) {
        stage_residual(c, g, p, theta, f);
        double res = 0.0;
        for (double v : f.v) res = std::max(res, std::abs(v));
        if (residual_history) residual_history->push_back(res);
        if (!std::isfinite(res))
            throw SolverError("implicit stage residual is not finite");
        if (res <= tol * scale) {
            if (it > 0) newton_update();  // polish
            return {it};
        }
        if (it >= max_iter)
            throw SolverError(detail::cat("implicit stage Newton did not converge in ",
                                          max_iter, " iterations (residual ",
                                          detail::num(res / scale, "%.3e"), ")"));
        newton_update();
    }
}

} // namespace edchrom
