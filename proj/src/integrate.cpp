#include "edchrom/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "edchrom/diagnostics.hpp"
#include "edchrom/errors.hpp"

#include "strfmt.hpp"
#include "edchrom/implicit_stage.hpp"
#include "edchrom/spatial.hpp"

namespace edchrom {

std::string_view scheme_name(SchemeKind s) {
    switch (s) {
        case SchemeKind::UpwindFE: return "upwind-fe";
        case SchemeKind::ExplicitRK2: return "explicit-rk2";
        case SchemeKind::ImexRK2: return "imex-rk2";
        case SchemeKind::NCS1: return "ncs1";
        case SchemeKind::NCS2: return "ncs2";
    }
    return "unknown";
}

std::optional<SchemeKind> scheme_from_name(std::string_view name) {
    for (SchemeKind s : {SchemeKind::UpwindFE, SchemeKind::ExplicitRK2, SchemeKind::ImexRK2,
                         SchemeKind::NCS1, SchemeKind::NCS2})
        if (name == scheme_name(s)) return s;
    return std::nullopt;
}

double explicit_stability_bound(const PhysicalParams& phys, const Grid& g, double c0) {
    return c0 / (phys.u + 2.0 * phys.Da / g.dz);
}

double imex_stability_bound(const PhysicalParams& phys, double c1) {
    return c1 / phys.u;
}

namespace {

std::vector<double> boundary_net(std::span<const double> c_inj, const std::vector<double>& outflux,
                                 double u) {
    std::vector<double> net(outflux.size());
    for (std::size_t i = 0; i < net.size(); ++i) net[i] = u * c_inj[i] - outflux[i];
    return net;
}

void axpy_state(Field& w, const Field& base, double dt, const Field& conv, const Field& diff) {
    for (std::size_t k = 0; k < w.v.size(); ++k)
        w.v[k] = base.v[k] + dt * (conv.v[k] + diff.v[k]);
}

} // namespace

StepInfo step_upwind_fe(StateField& s, std::span<const double> c_inj, double dt,
                        const LangmuirParams& p, const PhysicalParams& phys, const Grid& g) {
    const int n = s.w.n, m = s.w.m;
    Field conv(n, m), diff(n, m);
    std::vector<double> outflux;
    assemble_rhs(s.c, s.w, c_inj, p, phys, g, Reconstruction::Upwind1, conv, diff, &outflux);
    axpy_state(s.w, s.w, dt, conv, diff);
    s.sync_from_conserved(p);
    return {boundary_net(c_inj, outflux, phys.u), 0};
}

StepInfo step_explicit_rk2(StateField& s, std::span<const double> c_inj, double dt,
                           const LangmuirParams& p, const PhysicalParams& phys, const Grid& g) {
    const int n = s.w.n, m = s.w.m;
    Field conv(n, m), diff(n, m);
    assemble_rhs(s.c, s.w, c_inj, p, phys, g, Reconstruction::Weno5, conv, diff, nullptr);

    StateField half(n, m);
    half.rho = s.rho;  // warm-start the inversion from the current roots
    axpy_state(half.w, s.w, 0.5 * dt, conv, diff);
    half.sync_from_conserved(p);

    std::vector<double> outflux;
    assemble_rhs(half.c, half.w, c_inj, p, phys, g, Reconstruction::Weno5, conv, diff, &outflux);
    axpy_state(s.w, s.w, dt, conv, diff);
    s.sync_from_conserved(p);
    return {boundary_net(c_inj, outflux, phys.u), 0};
}

StepInfo step_imex_rk2(StateField& s, std::span<const double> c_inj, double dt,
                       const LangmuirParams& p, const PhysicalParams& phys, const Grid& g,
                       const NewtonConfig& newton) {
    const int n = s.w.n, m = s.w.m;
    Field conv(n, m), diff(n, m);
    assemble_rhs(s.c, s.w, c_inj, p, phys, g, Reconstruction::Weno5, conv, diff, nullptr);

    // Stage 1: w* - (dt/2) D(w*) = w + (dt/2) L(w), solved in c.
    Field stage_data(n, m);
    build_stage_rhs(s.w, dt, conv, stage_data);
    const double theta = phys.Da * dt / (2.0 * g.dz * g.dz);
    StateField half(n, m);
    half.c = s.c;  // Newton warm start at the previous state
    const StageResult stage =
        newton_solve_stage(half.c, stage_data, p, theta, newton.tol, newton.max_iter);
    half.sync_from_concentration(p);

    // Stage 2: explicit full step from the midpoint state.
    std::vector<double> outflux;
    assemble_rhs(half.c, half.w, c_inj, p, phys, g, Reconstruction::Weno5, conv, diff, &outflux);
    axpy_state(s.w, s.w, dt, conv, diff);
    s.sync_from_conserved(p);
    return {boundary_net(c_inj, outflux, phys.u), stage.iterations};
}

namespace {

double minmod(double x, double y) {
    if (x * y <= 0.0) return 0.0;
    return std::abs(x) < std::abs(y) ? x : y;
}

// dc/dt = M(c)^{-1} (conv + diff) with M = dW/dc per cell; convective term
// first-order upwind or minmod-MUSCL. The non-conservative linearization the
// comparison schemes are built on.
void ncs_rhs(const Field& c, std::span<const double> c_inj, const LangmuirParams& p,
             const PhysicalParams& phys, const Grid& g, int order, Field& rhs) {
    const int n = c.n, m = c.m;
    const double u = phys.u;
    Field fhat(n, m + 1);
    if (order == 1) {
        for (int i = 0; i < n; ++i)
            for (int k = 1; k <= m; ++k) fhat(i, k) = u * c(i, k - 1);
    } else {
        const double da_over_u = phys.Da / u;
        std::vector<double> ce(m + 2);  // one ghost per side
        for (int i = 0; i < n; ++i) {
            const auto ci = c.comp(i);
            for (int j = 0; j < m; ++j) ce[j + 1] = ci[j];
            ce[0] = inlet_ghost(ci[0], c_inj[i], 1, da_over_u, g.dz);
            ce[m + 1] = ci[m - 1];  // mirror outlet ghost
            for (int k = 1; k <= m; ++k) {
                const double dl = ce[k] - ce[k - 1];
                const double dr = ce[k + 1] - ce[k];
                fhat(i, k) = u * (ce[k] + 0.5 * minmod(dl, dr));
            }
        }
    }
    const double inv_dz = 1.0 / g.dz;
    for (int i = 0; i < n; ++i) {
        rhs(i, 0) = (u * c_inj[i] - fhat(i, 1)) * inv_dz;
        for (int j = 1; j < m; ++j) rhs(i, j) = (fhat(i, j) - fhat(i, j + 1)) * inv_dz;
    }
    Field diff(n, m);
    apply_diffusion(c, phys.Da / (g.dz * g.dz), diff);
    for (std::size_t k = 0; k < rhs.v.size(); ++k) rhs.v[k] += diff.v[k];

    std::vector<double> cc(n), rc(n), jac(n * n);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < n; ++i) {
            cc[i] = c(i, j);
            rc[i] = rhs(i, j);
        }
        const std::vector<double> jw = conserved_jacobian(cc, p);
        std::copy(jw.begin(), jw.end(), jac.begin());
        solve_small_dense(n, jac.data(), rc.data());
        for (int i = 0; i < n; ++i) rhs(i, j) = rc[i];
    }
}

} // namespace

StepInfo step_ncs(StateField& s, std::span<const double> c_inj, double dt,
                  const LangmuirParams& p, const PhysicalParams& phys, const Grid& g, int order) {
    const int n = s.c.n, m = s.c.m;
    Field rhs(n, m);
    if (order == 1) {
        ncs_rhs(s.c, c_inj, p, phys, g, 1, rhs);
        for (std::size_t k = 0; k < s.c.v.size(); ++k) s.c.v[k] += dt * rhs.v[k];
    } else {
        ncs_rhs(s.c, c_inj, p, phys, g, 2, rhs);
        Field half(n, m);
        for (std::size_t k = 0; k < s.c.v.size(); ++k)
            half.v[k] = s.c.v[k] + 0.5 * dt * rhs.v[k];
        ncs_rhs(half, c_inj, p, phys, g, 2, rhs);
        for (std::size_t k = 0; k < s.c.v.size(); ++k) s.c.v[k] += dt * rhs.v[k];
    }
    s.sync_from_concentration(p);
    return {{}, 0};
}

namespace {

StepInfo advance(SchemeKind scheme, StateField& s, std::span<const double> c_inj, double dt,
                 const LangmuirParams& p, const PhysicalParams& phys, const Grid& g,
                 const NewtonConfig& newton) {
    switch (scheme) {
        case SchemeKind::UpwindFE: return step_upwind_fe(s, c_inj, dt, p, phys, g);
        case SchemeKind::ExplicitRK2: return step_explicit_rk2(s, c_inj, dt, p, phys, g);
        case SchemeKind::ImexRK2: return step_imex_rk2(s, c_inj, dt, p, phys, g, newton);
        case SchemeKind::NCS1: return step_ncs(s, c_inj, dt, p, phys, g, 1);
        case SchemeKind::NCS2: return step_ncs(s, c_inj, dt, p, phys, g, 2);
    }
    throw SolverError("unknown scheme");
}

DiagnosticsRecord make_record(double t, const StateField& s, const Grid& g,
                              std::span<const double> bounds) {
    DiagnosticsRecord rec;
    rec.time = t;
    rec.total_mass = total_mass(s.w, g);
    rec.oscillation_index = oscillation_index(s.c, bounds);
    rec.front_position = front_position(s.c.comp(0), g);
    rec.c_min.resize(s.c.n);
    rec.c_max.resize(s.c.n);
    for (int i = 0; i < s.c.n; ++i) {
        const auto prof = s.c.comp(i);
        const auto [mn, mx] = std::minmax_element(prof.begin(), prof.end());
        rec.c_min[i] = *mn;
        rec.c_max[i] = *mx;
    }
    return rec;
}

constexpr double kEventTol = 1e-12;

} // namespace

RunResult run(const RunConfig& cfg) {
    const int n = cfg.isotherm.components();
    const Grid g(cfg.m);
    const double dt0 = cfg.dt_over_dz * g.dz;
    const std::vector<double> bounds = cfg.injection.feed_bounds(n);

    // Event times: snapshots plus t_final, deduplicated; steps are clipped to
    // land on them exactly, nowhere else.
    std::vector<double> events = cfg.snapshots;
    events.push_back(cfg.t_final);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end(),
                             [](double a, double b) { return std::abs(a - b) <= kEventTol; }),
                 events.end());
    auto is_snapshot = [&](double t) {
        for (double sn : cfg.snapshots)
            if (std::abs(sn - t) <= kEventTol) return true;
        return false;
    };

    RunResult out;
    StateField state(n, g.m);
    if (cfg.initial_c) {
        if (cfg.initial_c->n != n || cfg.initial_c->m != g.m)
            throw std::invalid_argument("run: initial_c shape does not match components x m");
        state.c = *cfg.initial_c;
        state.sync_from_concentration(cfg.isotherm);
    }

    auto record = [&](double t) {
        out.diagnostics.push_back(make_record(t, state, g, bounds));
        out.snapshots.push_back({t, state.c, state.w});
    };
    if (is_snapshot(0.0)) record(0.0);
    else if (cfg.t_final <= kEventTol) record(0.0);  // degenerate run: initial state only

    // Flux-corrected conservation audit: the accumulated dt*(u c_inj - f_out)
    // must match the mass change exactly (up to rounding) for the
    // conservative schemes.
    const bool conservative = cfg.scheme == SchemeKind::UpwindFE ||
                              cfg.scheme == SchemeKind::ExplicitRK2 ||
                              cfg.scheme == SchemeKind::ImexRK2;
    std::vector<double> flux_integral(n, 0.0), flux_comp(n, 0.0);
    const std::vector<double> mass0 = total_mass(state.w, g);
    out.conservation_defect =
        conservative ? 0.0 : std::numeric_limits<double>::quiet_NaN();

    double t = 0.0;
    std::size_t next_event = 0;
    while (next_event < events.size() && events[next_event] <= kEventTol) ++next_event;

    while (t < cfg.t_final - kEventTol && next_event < events.size()) {
        const double target = events[next_event];
        const double dt = std::min(dt0, target - t);
        const std::vector<double> c_inj = cfg.injection.at(t, n);
        StepInfo info;
        try {
            info = advance(cfg.scheme, state, c_inj, dt, cfg.isotherm, cfg.phys, g, cfg.newton);
        } catch (const SolverError& e) {
            throw SolverError(detail::cat("t = ", detail::num(t), ": ", e.what()));
        }
        out.max_newton_iterations = std::max(out.max_newton_iterations, info.newton_iterations);
        if (conservative) {
            for (int i = 0; i < n; ++i) {  // Kahan-accumulated flux budget
                const double y = dt * info.boundary_net[i] - flux_comp[i];
                const double sum = flux_integral[i] + y;
                flux_comp[i] = (sum - flux_integral[i]) - y;
                flux_integral[i] = sum;
            }
        }
        t += dt;
        ++out.steps;
        if (std::abs(t - target) <= kEventTol) {
            t = target;
            if (conservative) {
                const std::vector<double> mass = total_mass(state.w, g);
                for (int i = 0; i < n; ++i)
                    out.conservation_defect = std::max(
                        out.conservation_defect,
                        std::abs(mass[i] - mass0[i] - flux_integral[i]));
            }
            if (is_snapshot(target)) record(target);
            ++next_event;
        }
    }

    out.final_state = std::move(state);
    out.final_time = cfg.t_final;
    return out;
}

} // namespace edchrom
