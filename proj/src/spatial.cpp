#include "edchrom/spatial.hpp"

#include <cmath>
#include <limits>

namespace edchrom {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double inlet_ghost(double c_cell, double c_inj, int j, double da_over_u, double dz) {
    // Ghost cell 1-j mirrors interior cell j across the inlet face along the
    // line satisfying u c - Da dc/dz = u c_inj at z = 0.
    const double zj = (j - 0.5) * dz;
    return ((da_over_u - zj) * c_cell + 2.0 * zj * c_inj) / (da_over_u + zj);
}

double outlet_ghost(std::span<const double> profile, int j) {
    // c_{m+j} = c_{m+1-j}; with 0-based storage that is profile[m-j].
    return profile[profile.size() - static_cast<std::size_t>(j)];
}

double weno5_face(double vm2, double vm1, double v0, double vp1, double vp2) {
    constexpr double eps = 1e-6;

    const double s0a = vm2 - 2.0 * vm1 + v0;
    const double s0b = vm2 - 4.0 * vm1 + 3.0 * v0;
    const double s1a = vm1 - 2.0 * v0 + vp1;
    const double s1b = vm1 - vp1;
    const double s2a = v0 - 2.0 * vp1 + vp2;
    const double s2b = 3.0 * v0 - 4.0 * vp1 + vp2;

    const double beta0 = (13.0 / 12.0) * s0a * s0a + 0.25 * s0b * s0b;
    const double beta1 = (13.0 / 12.0) * s1a * s1a + 0.25 * s1b * s1b;
    const double beta2 = (13.0 / 12.0) * s2a * s2a + 0.25 * s2b * s2b;

    const double a0 = 0.1 / ((eps + beta0) * (eps + beta0));
    const double a1 = 0.6 / ((eps + beta1) * (eps + beta1));
    const double a2 = 0.3 / ((eps + beta2) * (eps + beta2));

    const double p0 = (2.0 * vm2 - 7.0 * vm1 + 11.0 * v0) / 6.0;
    const double p1 = (-vm1 + 5.0 * v0 + 2.0 * vp1) / 6.0;
    const double p2 = (2.0 * v0 + 5.0 * vp1 - vp2) / 6.0;

    return (a0 * p0 + a1 * p1 + a2 * p2) / (a0 + a1 + a2);
}

void convective_fluxes(const Field& c, const Field& w, std::span<const double> c_inj,
                       const LangmuirParams& p, const PhysicalParams& phys, const Grid& g,
                       Reconstruction mode, Field& fhat) {
    const int n = c.n;
    const int m = g.m;
    const double u = phys.u;

    for (int i = 0; i < n; ++i) fhat(i, 0) = kNaN;

    if (mode == Reconstruction::Upwind1) {
        // Positive speed: the upwind cell of face k+1/2 is cell k.
        for (int i = 0; i < n; ++i)
            for (int k = 1; k <= m; ++k) fhat(i, k) = u * c(i, k - 1);
        return;
    }

    // Extended cell range -1..m+3 (1-based labels), stored at e = label + 1.
    const int ext = m + 5;
    const double da_over_u = phys.Da / u;

    // Ghost concentrations per component, then conserved values per ghost
    // column through the guarded forward map (the extrapolation can make
    // 1 + b'c arbitrarily small right after an injection switch).
    std::vector<std::vector<double>> cext(n), wext(n);
    for (int i = 0; i < n; ++i) {
        auto& ce = cext[i];
        auto& we = wext[i];
        ce.assign(ext, 0.0);
        we.assign(ext, 0.0);
        const auto ci = c.comp(i);
        const auto wi = w.comp(i);
        for (int j = 1; j <= m; ++j) {
            ce[j + 1] = ci[j - 1];
            we[j + 1] = wi[j - 1];
        }
        for (int j = 1; j <= 2; ++j)  // labels 0 and -1
            ce[1 - j + 1] = inlet_ghost(ci[j - 1], c_inj[i], j, da_over_u, g.dz);
        for (int j = 1; j <= 3; ++j)  // labels m+1..m+3
            ce[m + j + 1] = outlet_ghost(ci, j);
    }
    std::vector<double> cg(n);
    for (int e : {0, 1, m + 2, m + 3, m + 4}) {
        for (int i = 0; i < n; ++i) cg[i] = cext[i][e];
        const std::vector<double> wg = to_conserved_guarded(cg, p);
        for (int i = 0; i < n; ++i) wext[i][e] = wg[i];
    }

    // Global Lax-Friedrichs splitting with alpha = u (the convective speed of
    // f(w) = u C(w); dC/dw has spectral radius <= 1 on the physical domain).
    std::vector<double> fp(ext), fm(ext);
    for (int i = 0; i < n; ++i) {
        const auto& ce = cext[i];
        const auto& we = wext[i];
        for (int e = 0; e < ext; ++e) {
            const double f = u * ce[e];
            const double aw = u * we[e];
            fp[e] = 0.5 * (f + aw);
            fm[e] = 0.5 * (f - aw);
        }
        for (int k = 1; k <= m; ++k) {
            const int e = k + 1;  // storage index of cell k
            const double plus = weno5_face(fp[e - 2], fp[e - 1], fp[e], fp[e + 1], fp[e + 2]);
            const double minus = weno5_face(fm[e + 3], fm[e + 2], fm[e + 1], fm[e], fm[e - 1]);
            fhat(i, k) = plus + minus;
        }
    }
}

void diffusive_fluxes(const Field& c, const PhysicalParams& phys, const Grid& g, Field& ghat) {
    const int n = c.n;
    const int m = g.m;
    const double scale = phys.Da / g.dz;
    for (int i = 0; i < n; ++i) {
        ghat(i, 0) = kNaN;
        for (int k = 1; k < m; ++k) ghat(i, k) = scale * (c(i, k) - c(i, k - 1));
        ghat(i, m) = 0.0;  // zero-gradient outlet
    }
}

DiffusionDiagonals diffusion_diagonals(const Grid& g, double Da) {
    const double mu = Da / (g.dz * g.dz);
    DiffusionDiagonals d;
    d.diag.assign(g.m, -2.0 * mu);
    d.diag.front() = -mu;
    d.diag.back() = -mu;
    d.off = mu;
    return d;
}

void apply_diffusion(const Field& c, double mu, Field& out) {
    const int n = c.n;
    const int m = c.m;
    for (int i = 0; i < n; ++i) {
        out(i, 0) = mu * (c(i, 1) - c(i, 0));
        for (int j = 1; j < m - 1; ++j)
            out(i, j) = mu * (c(i, j - 1) - 2.0 * c(i, j) + c(i, j + 1));
        out(i, m - 1) = mu * (c(i, m - 2) - c(i, m - 1));
    }
}

void assemble_rhs(const Field& c, const Field& w, std::span<const double> c_inj,
                  const LangmuirParams& p, const PhysicalParams& phys, const Grid& g,
                  Reconstruction mode, Field& conv, Field& diff,
                  std::vector<double>* outlet_flux) {
    const int n = c.n;
    const int m = g.m;
    Field fhat(n, m + 1);
    convective_fluxes(c, w, c_inj, p, phys, g, mode, fhat);

    const double inv_dz = 1.0 / g.dz;
    for (int i = 0; i < n; ++i) {
        // Inlet face carries the prescribed Danckwerts total flux u*c_inj;
        // the diffusion matrix already omits that face, so the whole inlet
        // flux enters through the convective part.
        conv(i, 0) = (phys.u * c_inj[i] - fhat(i, 1)) * inv_dz;
        for (int j = 1; j < m; ++j) conv(i, j) = (fhat(i, j) - fhat(i, j + 1)) * inv_dz;
    }
    apply_diffusion(c, phys.Da / (g.dz * g.dz), diff);

    if (outlet_flux) {
        outlet_flux->resize(n);
        for (int i = 0; i < n; ++i) (*outlet_flux)[i] = fhat(i, m);
    }
}

std::vector<double> periodic_linear_divergence(std::span<const double> w, double u, double dz) {
    const int m = static_cast<int>(w.size());
    const double alpha = std::abs(u);
    auto wrap = [m](int j) { return ((j % m) + m) % m; };

    std::vector<double> fhat(m);  // slot j = face j+1/2
    for (int j = 0; j < m; ++j) {
        double sp[5], sm[5];
        for (int s = -2; s <= 2; ++s) {
            const double x = w[wrap(j + s)];
            sp[s + 2] = 0.5 * (u * x + alpha * x);
        }
        for (int s = -1; s <= 3; ++s) {
            const double x = w[wrap(j + s)];
            sm[s + 1] = 0.5 * (u * x - alpha * x);
        }
        fhat[j] = weno5_face(sp[0], sp[1], sp[2], sp[3], sp[4]) +
                  weno5_face(sm[4], sm[3], sm[2], sm[1], sm[0]);
    }
    std::vector<double> div(m);
    for (int j = 0; j < m; ++j) div[j] = (fhat[j] - fhat[wrap(j - 1)]) / dz;
    return div;
}

} // namespace edchrom
