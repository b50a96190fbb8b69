// Column geometry, transport parameters, injection program, and the paired
// conserved/physical state advanced by the time integrators.

#ifndef EDCHROM_MODEL_HPP
#define EDCHROM_MODEL_HPP

#include <optional>
#include <span>
#include <vector>

#include "edchrom/field.hpp"
#include "edchrom/isotherm.hpp"

namespace edchrom {

// Uniform grid on the unit column: cells j = 1..m centered at z_j = (j-1/2)dz.
struct Grid {
    int m;
    double dz;
    explicit Grid(int m_);
    double center(int j) const { return (j + 0.5) * dz; }  // j is 0-based here
};

struct PhysicalParams {
    double u;    // interstitial velocity, > 0
    double Da;   // apparent axial dispersion coefficient, >= 0
};

// Piecewise-constant inlet concentration program. Segments are half-open
// [t_start, t_end); outside every segment the feed is clean (zeros).
struct InjectionSegment {
    double t_start, t_end;
    std::vector<double> c;
};

struct InjectionProfile {
    std::vector<InjectionSegment> segments;

    std::vector<double> at(double t, int n) const;
    // Per-component max over all segments; the physical bound used by the
    // oscillation diagnostics.
    std::vector<double> feed_bounds(int n) const;
};

// Conserved field w with its synced concentrations c = C(w) and the per-cell
// warm-start cache for the inversion root.
struct StateField {
    Field w, c;
    std::vector<double> rho;  // last denominator root per cell

    StateField() = default;
    StateField(int n, int m) : w(n, m), c(n, m), rho(static_cast<std::size_t>(m), 1.0) {}

    // Recompute c from w cell by cell. Tolerates transient undershoots
    // (negative components at scheme-error scale); throws SolverError if a
    // cell's state has left the domain of the inverse map.
    void sync_from_conserved(const LangmuirParams& p, double tol = 1e-14);
    // Recompute w from c exactly (used when a scheme advances c).
    void sync_from_concentration(const LangmuirParams& p);
};

} // namespace edchrom

#endif
