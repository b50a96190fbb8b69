#include "edchrom/model.hpp"

#include <stdexcept>

#include "edchrom/errors.hpp"

namespace edchrom {

Grid::Grid(int m_) : m(m_), dz(1.0 / m_) {
    if (m_ < 5) throw std::invalid_argument("grid: need at least 5 cells for the stencils");
}

std::vector<double> InjectionProfile::at(double t, int n) const {
    for (const auto& s : segments)
        if (t >= s.t_start && t < s.t_end) return s.c;
    return std::vector<double>(static_cast<std::size_t>(n), 0.0);
}

std::vector<double> InjectionProfile::feed_bounds(int n) const {
    std::vector<double> bounds(static_cast<std::size_t>(n), 0.0);
    for (const auto& s : segments)
        for (int i = 0; i < n && i < static_cast<int>(s.c.size()); ++i)
            bounds[i] = std::max(bounds[i], s.c[i]);
    return bounds;
}

void StateField::sync_from_conserved(const LangmuirParams& p, double tol) {
    const int n = w.n, m = w.m;
    std::vector<double> wj(static_cast<std::size_t>(n));
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) wj[i] = w(i, j);
        RootOptions opts;
        opts.tol = tol;
        opts.warm_start = rho[j];
        const double r = denominator_root(wj, p, opts);
        rho[j] = r;
        for (int i = 0; i < n; ++i) c(i, j) = wj[i] / (1.0 + p.eta[i] / r);
    }
}

void StateField::sync_from_concentration(const LangmuirParams& p) {
    const int n = c.n, m = c.m;
    std::vector<double> cj(static_cast<std::size_t>(n));
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) cj[i] = c(i, j);
        const auto wj = to_conserved(cj, p);
        for (int i = 0; i < n; ++i) w(i, j) = wj[i];
    }
}

} // namespace edchrom
