#include "edchrom/isotherm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "edchrom/errors.hpp"

#include "strfmt.hpp"

namespace edchrom {

LangmuirParams::LangmuirParams(std::vector<double> a_, std::vector<double> b_, double eps)
    : a(std::move(a_)), b(std::move(b_)), epsilon(eps) {
    if (a.empty() || a.size() != b.size())
        throw std::invalid_argument("isotherm: a and b must be nonempty and the same length");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("isotherm: porosity must lie in (0,1)");
    if (a.front() <= 0.0)
        throw std::invalid_argument("isotherm: coefficients a must be positive");
    for (std::size_t i = 1; i < a.size(); ++i)
        if (a[i] <= a[i - 1])
            throw std::invalid_argument("isotherm: coefficients a must be strictly increasing");
    for (double bi : b)
        if (bi <= 0.0) throw std::invalid_argument("isotherm: coefficients b must be positive");
    const double phase_ratio = (1.0 - epsilon) / epsilon;
    eta.resize(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) eta[i] = phase_ratio * a[i];
}

namespace {

void check_size(std::span<const double> v, const LangmuirParams& p, const char* who) {
    if (static_cast<int>(v.size()) != p.components())
        throw std::invalid_argument(std::string(who) + ": vector length does not match component count");
}

double langmuir_denominator(std::span<const double> c, const LangmuirParams& p) {
    double s = 1.0;
    for (std::size_t i = 0; i < c.size(); ++i) s += p.b[i] * c[i];
    return s;
}

} // namespace

std::vector<double> adsorbed(std::span<const double> c, const LangmuirParams& p) {
    check_size(c, p, "adsorbed");
    const double denom = langmuir_denominator(c, p);
    if (denom <= 0.0) throw std::invalid_argument("adsorbed: 1 + b'c must be positive");
    std::vector<double> q(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) q[i] = p.a[i] * c[i] / denom;
    return q;
}

std::vector<double> to_conserved(std::span<const double> c, const LangmuirParams& p) {
    check_size(c, p, "to_conserved");
    const double denom = langmuir_denominator(c, p);
    if (denom <= 0.0) throw std::invalid_argument("to_conserved: 1 + b'c must be positive");
    std::vector<double> w(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) w[i] = c[i] * (1.0 + p.eta[i] / denom);
    return w;
}

std::vector<double> to_conserved_guarded(std::span<const double> c, const LangmuirParams& p,
                                         double p_floor) {
    check_size(c, p, "to_conserved_guarded");
    const double denom = std::max(langmuir_denominator(c, p), p_floor);
    std::vector<double> w(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) w[i] = c[i] * (1.0 + p.eta[i] / denom);
    return w;
}

double denominator_residual(double y, std::span<const double> w, const LangmuirParams& p) {
    double s = 1.0 - y;
    for (std::size_t i = 0; i < w.size(); ++i) s += y * p.b[i] * w[i] / (y + p.eta[i]);
    return s;
}

double denominator_residual_deriv(double y, std::span<const double> w, const LangmuirParams& p) {
    // d/dy [ y/(y+eta) ] = eta/(y+eta)^2
    double s = -1.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double t = y + p.eta[i];
        s += p.b[i] * w[i] * p.eta[i] / (t * t);
    }
    return s;
}

double denominator_root(std::span<const double> w, const LangmuirParams& p,
                        const RootOptions& opts) {
    check_size(w, p, "denominator_root");
    double bw_pos = 0.0, bw_neg = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double t = p.b[i] * w[i];
        (t >= 0.0 ? bw_pos : bw_neg) += t;
    }
    if (bw_pos == 0.0 && bw_neg == 0.0) return 1.0;

    // Sign structure: R(lo) >= 0 >= R(hi). For w >= 0 this is the bracket
    // [1, 1 + b'w]; negative components widen it downward.
    double lo = 1.0 + bw_neg;
    double hi = 1.0 + bw_pos;
    if (lo <= 0.0)
        throw SolverError(detail::cat(
            "denominator_root: bracket collapsed (1 + sum b_i min(w_i,0) = ",
            detail::num(lo, "%.3e"), "); state left the model domain"));
    const double scale = 1.0 + bw_pos;

    double y = 0.5 * (lo + hi);
    if (opts.warm_start) y = std::clamp(*opts.warm_start, lo, hi);

    for (int it = 0; it < opts.max_iter; ++it) {
        const double R = denominator_residual(y, w, p);
        if (std::abs(R) <= opts.tol * scale) return y;
        if (R >= 0.0) lo = y; else hi = y;
        if (hi - lo <= 4.0 * 1e-16 * hi) return 0.5 * (lo + hi);
        const double dR = denominator_residual_deriv(y, w, p);
        double next = y - R / dR;
        if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
        y = next;
    }
    throw SolverError("denominator_root: no convergence within iteration cap");
}

std::vector<double> from_conserved(std::span<const double> w, const LangmuirParams& p,
                                   const RootOptions& opts, double neg_tol) {
    check_size(w, p, "from_conserved");
    std::vector<double> wc(w.begin(), w.end());
    for (double& wi : wc) {
        if (wi < 0.0) {
            if (wi < -neg_tol)
                throw std::invalid_argument(detail::cat(
                    "from_conserved: component ", detail::num(wi, "%.3e"),
                    " below -neg_tol (", detail::num(neg_tol, "%.1e"), ")"));
            wi = 0.0;
        }
    }
    const double rho = denominator_root(wc, p, opts);
    std::vector<double> c(wc.size());
    for (std::size_t i = 0; i < wc.size(); ++i) c[i] = wc[i] / (1.0 + p.eta[i] / rho);
    return c;
}

double from_conserved_scalar(double w, double eta, double b) {
    const double s = 1.0 + eta - b * w;
    return (std::sqrt(s * s + 4.0 * b * w) - s) / (2.0 * b);
}

std::vector<double> conserved_jacobian(std::span<const double> c, const LangmuirParams& p) {
    check_size(c, p, "conserved_jacobian");
    const int n = p.components();
    const double denom = langmuir_denominator(c, p);
    if (denom <= 0.0) throw std::invalid_argument("conserved_jacobian: 1 + b'c must be positive");
    const double denom2 = denom * denom;
    std::vector<double> jac(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            jac[i * n + j] = -p.eta[i] * p.b[j] * c[i] / denom2;
        jac[i * n + i] += 1.0 + p.eta[i] / denom;
    }
    return jac;
}

double jacobian_secular(double lambda, std::span<const double> c, const LangmuirParams& p) {
    check_size(c, p, "jacobian_secular");
    const double denom = langmuir_denominator(c, p);
    const double denom2 = denom * denom;
    double s = 1.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double pole = 1.0 + p.eta[i] / denom;
        s += p.eta[i] * p.b[i] * c[i] / denom2 / (lambda - pole);
    }
    return s;
}

std::vector<double> jacobian_eigenvalues(std::span<const double> c, const LangmuirParams& p,
                                         double tol) {
    check_size(c, p, "jacobian_eigenvalues");
    const int n = p.components();
    for (double ci : c)
        if (!(ci > 0.0))
            throw std::invalid_argument(
                "jacobian_eigenvalues: requires all c_i > 0 (boundary-degenerate input)");
    const double denom = langmuir_denominator(c, p);
    std::vector<double> poles(n);
    for (int i = 0; i < n; ++i) poles[i] = 1.0 + p.eta[i] / denom;  // ascending with eta

    std::vector<double> lam(n);
    for (int k = 0; k < n; ++k) {
        // One root per interval; S -> +inf at the left end, -inf at the right,
        // and S' < 0 in between, so endpoint signs are known without evaluating
        // at the poles themselves.
        double lo = (k == 0) ? 1.0 : poles[k - 1];
        double hi = poles[k];
        while (hi - lo > 1e-13 * std::max(1.0, hi)) {
            const double mid = 0.5 * (lo + hi);
            if (jacobian_secular(mid, c, p) > 0.0) lo = mid; else hi = mid;
        }
        double x = 0.5 * (lo + hi);
        double s = jacobian_secular(x, c, p);
        // Newton polish toward |S| <= tol; best effort, since near-coincident
        // poles pinch the root so hard that no double reaches tol. The
        // bisection bracket above already bounds the error by its width.
        for (int polish = 0; polish < 30 && std::abs(s) > tol; ++polish) {
            double sp = 0.0;  // S'(x) from the same pole sums
            const double denom2 = denom * denom;
            for (int i = 0; i < n; ++i) {
                const double d = x - poles[i];
                sp -= p.eta[i] * p.b[i] * c[i] / denom2 / (d * d);
            }
            double next = x - s / sp;
            if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
            if (next == x) break;
            x = next;
            s = jacobian_secular(x, c, p);
        }
        lam[k] = x;
    }
    return lam;
}

} // namespace edchrom
