#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "edchrom/isotherm.hpp"
#include "edchrom/model.hpp"
#include "edchrom/spatial.hpp"

using namespace edchrom;

namespace {

// Smooth positive state on the column together with its conserved image.
void smooth_state(const LangmuirParams& p, const Grid& g, Field& c, Field& w) {
    const int n = p.components();
    c = Field(n, g.m);
    w = Field(n, g.m);
    std::vector<double> col(n);
    for (int j = 0; j < g.m; ++j) {
        const double z = g.center(j);
        for (int i = 0; i < n; ++i) {
            col[i] = 0.4 + 0.3 * std::sin(3.0 * z + i) + 0.05 * i;
            c(i, j) = col[i];
        }
        const auto wc = to_conserved(col, p);
        for (int i = 0; i < n; ++i) w(i, j) = wc[i];
    }
}

} // namespace

TEST_CASE("inlet ghost closes the Danckwerts condition") {
    // Da = 0: pure Dirichlet-like reflection 2 c_inj - c_j.
    CHECK(inlet_ghost(1.0, 0.0, 1, 0.0, 0.01) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(inlet_ghost(0.3, 0.7, 1, 0.0, 0.02) == doctest::Approx(1.1).epsilon(1e-14));

    // Constant state at the feed value is preserved for every Da.
    for (double da_over_u : {0.0, 0.005, 0.3}) {
        CHECK(inlet_ghost(0.7, 0.7, 1, da_over_u, 0.01) == doctest::Approx(0.7).epsilon(1e-14));
        CHECK(inlet_ghost(0.7, 0.7, 2, da_over_u, 0.01) == doctest::Approx(0.7).epsilon(1e-14));
    }

    // The extrapolant satisfies u c(0) - Da c'(0) = u c_inj: the line through
    // ghost (at -z_j) and cell (at z_j) has value and slope at z = 0
    //   c(0) = (ghost + c)/2,  c'(0) = (c - ghost)/(2 z_j).
    const double dz = 0.01, da_over_u = 0.004, c_cell = 0.9, c_inj = 0.25;
    for (int j : {1, 2}) {
        const double zj = (j - 0.5) * dz;
        const double ghost = inlet_ghost(c_cell, c_inj, j, da_over_u, dz);
        const double mid = 0.5 * (ghost + c_cell);
        const double slope = (c_cell - ghost) / (2.0 * zj);
        CHECK(mid - da_over_u * slope == doctest::Approx(c_inj).epsilon(1e-13));
    }
}

TEST_CASE("outlet ghost mirrors the last cells") {
    const std::vector<double> prof{1.0, 2.0, 3.0, 4.0, 5.0};
    CHECK(outlet_ghost(prof, 1) == 5.0);
    CHECK(outlet_ghost(prof, 2) == 4.0);
    CHECK(outlet_ghost(prof, 3) == 3.0);
}

TEST_CASE("weno5 face value is exact on constants and lines") {
    CHECK(weno5_face(1.0, 1.0, 1.0, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    // Linear data: every candidate stencil yields k + s/2, so any convex
    // weight combination is exact.
    const double k = 0.3, s = 0.8;
    CHECK(weno5_face(k - 2 * s, k - s, k, k + s, k + 2 * s) ==
          doctest::Approx(k + 0.5 * s).epsilon(1e-13));
}

TEST_CASE("weno5 periodic divergence converges at fifth order") {
    const double u = 1.0;
    std::vector<double> errors;
    std::vector<int> ms{20, 40, 80, 160, 320};
    for (int m : ms) {
        const double dz = 1.0 / m;
        std::vector<double> w(m);
        for (int j = 0; j < m; ++j) {
            const double z = (j + 0.5) * dz;
            w[j] = 2.0 + std::sin(2.0 * std::numbers::pi * z);
        }
        const auto div = periodic_linear_divergence(w, u, dz);
        double err = 0.0;
        for (int j = 0; j < m; ++j) {
            const double z = (j + 0.5) * dz;
            const double exact = u * 2.0 * std::numbers::pi * std::cos(2.0 * std::numbers::pi * z);
            err += std::abs(div[j] - exact);
        }
        errors.push_back(err / m);
    }
    for (std::size_t k = 1; k < errors.size(); ++k) {
        const double order = std::log2(errors[k - 1] / errors[k]);
        INFO("refinement ", k, " order ", order);
        CHECK(order > 4.5);
    }
}

TEST_CASE("constant state at the feed value is an equilibrium of the rhs") {
    LangmuirParams p({1.0, 2.0}, {1.0, 0.5}, 0.5);
    const std::vector<double> c_inj{0.6, 0.4};
    for (double Da : {0.0, 5e-4, 0.01}) {
        const PhysicalParams phys{1.0, Da};
        const Grid g(40);
        Field c(2, g.m), w(2, g.m);
        const auto w_inj = to_conserved(c_inj, p);
        for (int j = 0; j < g.m; ++j)
            for (int i = 0; i < 2; ++i) {
                c(i, j) = c_inj[i];
                w(i, j) = w_inj[i];
            }
        Field conv(2, g.m), diff(2, g.m);
        assemble_rhs(c, w, c_inj, p, phys, g, Reconstruction::Weno5, conv, diff);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < g.m; ++j)
                CHECK(std::abs(conv(i, j) + diff(i, j)) <= 1e-13);
    }
}

TEST_CASE("rhs telescopes to the boundary flux balance") {
    LangmuirParams p({1.0, 2.0, 3.0}, {1.0, 0.5, 0.8}, 0.5);
    const PhysicalParams phys{1.0, 2e-3};
    const Grid g(37);
    Field c, w;
    smooth_state(p, g, c, w);
    const std::vector<double> c_inj{0.7, 0.1, 0.0};

    Field conv(3, g.m), diff(3, g.m);
    std::vector<double> outlet;
    assemble_rhs(c, w, c_inj, p, phys, g, Reconstruction::Weno5, conv, diff, &outlet);
    REQUIRE(outlet.size() == 3);

    for (int i = 0; i < 3; ++i) {
        double conv_sum = 0.0, diff_sum = 0.0;
        for (int j = 0; j < g.m; ++j) {
            conv_sum += conv(i, j);
            diff_sum += diff(i, j);
        }
        // Convective rows telescope to (inlet - outlet flux)/dz; diffusion
        // rows sum to zero (no net diffusive mass transfer through either
        // boundary face).
        CHECK(conv_sum * g.dz ==
              doctest::Approx(phys.u * c_inj[i] - outlet[i]).epsilon(1e-13));
        CHECK(std::abs(diff_sum) * g.dz <= 1e-13);
    }
}

TEST_CASE("interface flux slot 0 is the NaN tripwire") {
    LangmuirParams p({1.0}, {1.0}, 0.5);
    const PhysicalParams phys{1.0, 0.0};
    const Grid g(10);
    Field c, w;
    smooth_state(p, g, c, w);
    const std::vector<double> c_inj{0.5};
    Field fhat(1, g.m + 1);
    for (auto mode : {Reconstruction::Weno5, Reconstruction::Upwind1}) {
        convective_fluxes(c, w, c_inj, p, phys, g, mode, fhat);
        CHECK(std::isnan(fhat(0, 0)));
        for (int k = 1; k <= g.m; ++k) CHECK(std::isfinite(fhat(0, k)));
    }
}

TEST_CASE("first-order upwind flux takes the left cell value") {
    LangmuirParams p({1.0}, {1.0}, 0.5);
    const PhysicalParams phys{2.0, 0.0};
    const Grid g(6);
    Field c(1, 6), w(1, 6);
    for (int j = 0; j < 6; ++j) {
        c(0, j) = 0.1 * (j + 1);
        w(0, j) = to_conserved(std::vector<double>{c(0, j)}, p)[0];
    }
    Field fhat(1, 7);
    convective_fluxes(c, w, std::vector<double>{0.0}, p, phys, g, Reconstruction::Upwind1, fhat);
    for (int k = 1; k <= 6; ++k)
        CHECK(fhat(0, k) == doctest::Approx(2.0 * c(0, k - 1)).epsilon(1e-15));
}

TEST_CASE("diffusive interface fluxes") {
    const PhysicalParams phys{1.0, 0.1};
    const Grid g(5);
    Field c(1, 5);
    const double vals[] = {1.0, 2.0, 4.0, 4.5, 3.0};
    for (int j = 0; j < 5; ++j) c(0, j) = vals[j];
    Field ghat(1, 6);
    diffusive_fluxes(c, phys, g, ghat);
    CHECK(std::isnan(ghat(0, 0)));
    const double scale = 0.1 / g.dz;
    CHECK(ghat(0, 1) == doctest::Approx(scale * 1.0).epsilon(1e-14));
    CHECK(ghat(0, 2) == doctest::Approx(scale * 2.0).epsilon(1e-14));
    CHECK(ghat(0, 3) == doctest::Approx(scale * 0.5).epsilon(1e-14));
    CHECK(ghat(0, 4) == doctest::Approx(scale * -1.5).epsilon(1e-14));
    CHECK(ghat(0, 5) == 0.0);  // zero-gradient outlet, exactly
}

TEST_CASE("diffusion diagonals match the operator and the flux differences") {
    const Grid g(12);
    const double Da = 3e-3;
    const double mu = Da / (g.dz * g.dz);
    const auto d = diffusion_diagonals(g, Da);
    REQUIRE(static_cast<int>(d.diag.size()) == g.m);
    CHECK(d.off == doctest::Approx(mu).epsilon(1e-15));
    CHECK(d.diag.front() == doctest::Approx(-mu).epsilon(1e-15));
    CHECK(d.diag.back() == doctest::Approx(-mu).epsilon(1e-15));
    for (int j = 1; j < g.m - 1; ++j)
        CHECK(d.diag[j] == doctest::Approx(-2.0 * mu).epsilon(1e-15));

    // apply_diffusion = tridiagonal multiply = diffusive flux differences.
    Field c(1, g.m);
    for (int j = 0; j < g.m; ++j) c(0, j) = std::cos(5.0 * g.center(j)) + 0.1 * j;
    Field out(1, g.m);
    apply_diffusion(c, mu, out);

    Field ghat(1, g.m + 1);
    diffusive_fluxes(c, {1.0, Da}, g, ghat);
    for (int j = 0; j < g.m; ++j) {
        double tri = d.diag[j] * c(0, j);
        if (j > 0) tri += d.off * c(0, j - 1);
        if (j + 1 < g.m) tri += d.off * c(0, j + 1);
        CHECK(out(0, j) == doctest::Approx(tri).epsilon(1e-13));
        const double left = (j == 0) ? 0.0 : ghat(0, j);
        const double flux_diff = (ghat(0, j + 1) - left) / g.dz;
        CHECK(out(0, j) == doctest::Approx(flux_diff).epsilon(1e-12));
    }
}

TEST_CASE("grid rejects unusably coarse meshes") {
    CHECK_THROWS_AS(Grid(4), std::invalid_argument);
    CHECK_NOTHROW(Grid(5));
    const Grid g(10);
    CHECK(g.dz == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(g.center(0) == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(g.center(9) == doctest::Approx(0.95).epsilon(1e-15));
}
