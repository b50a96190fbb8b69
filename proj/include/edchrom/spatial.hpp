// Spatial discretization: WENO5 convective interface fluxes with global
// Lax-Friedrichs splitting, centered diffusive fluxes, Danckwerts boundary
// closure via ghost-cell extrapolation, and the boundary-aware tridiagonal
// diffusion operator.
//
// Interface flux arrays have m+1 slots; slot k holds the flux through the
// face between cells k and k+1 (1-based cells), i.e. slot 0 is the inlet
// face and slot m the outlet face. The inlet face is never reconstructed:
// the Danckwerts condition prescribes the total flux u*c_inj there, applied
// in assemble_rhs. Slot 0 is left NaN as a tripwire.

#ifndef EDCHROM_SPATIAL_HPP
#define EDCHROM_SPATIAL_HPP

#include <span>
#include <vector>

#include "edchrom/field.hpp"
#include "edchrom/isotherm.hpp"
#include "edchrom/model.hpp"

namespace edchrom {

enum class Reconstruction {
    Weno5,    // fifth-order, split fluxes, needs ghost cells
    Upwind1,  // first-order upwind f_{j+1/2} = u c_j (all speeds positive)
};

// Linear extrapolation through the Danckwerts inlet condition
// u c - Da dc/dz = u c_inj at z=0: the extrapolant satisfies the condition
// and interpolates cell j; the ghost cell 1-j sits at the mirrored center.
// Reduces to 2 c_inj - c_j for Da = 0 and preserves constant states c = c_inj
// for every Da.
double inlet_ghost(double c_cell, double c_inj, int j, double da_over_u, double dz);

// Mirror extrapolation encoding the zero-gradient outlet: c_{m+j} = c_{m+1-j}.
double outlet_ghost(std::span<const double> profile, int j);

// WENO5 reconstruction of the face value on the downwind side of the center
// cell, from the 5-cell upwind-biased stencil (v_{j-2}..v_{j+2} for face
// j+1/2). Jiang-Shu smoothness weights, eps = 1e-6, power 2.
double weno5_face(double vm2, double vm1, double v0, double vp1, double vp2);

// Convective interface fluxes of f(w) = u C(w), filled into slots 1..m.
// Weno5 splits f+- = (f +- u w)/2 and needs consistent (c,w) pairs at ghost
// cells: concentrations from the boundary extrapolations, conserved values
// from the guarded forward map (extrapolated states can leave the physical
// orthant at injection discontinuities).
void convective_fluxes(const Field& c, const Field& w, std::span<const double> c_inj,
                       const LangmuirParams& p, const PhysicalParams& phys, const Grid& g,
                       Reconstruction mode, Field& fhat);

// Centered diffusive interface fluxes Da (c_{j+1} - c_j)/dz into slots
// 1..m-1; outlet slot m is exactly 0 (zero-gradient); inlet slot 0 is NaN
// (subsumed by the prescribed total inlet flux).
void diffusive_fluxes(const Field& c, const PhysicalParams& phys, const Grid& g, Field& ghat);

// Row pattern of the diffusion matrix scaled by mu = Da/dz^2: second
// difference with diagonal -mu at both boundary rows (inlet face flux
// excluded, outlet face flux zero). apply_diffusion(c) equals the diffusive
// flux differences at every cell.
struct DiffusionDiagonals {
    std::vector<double> diag;  // length m: -mu at ends, -2mu interior
    double off;                // mu on both off-diagonals
};
DiffusionDiagonals diffusion_diagonals(const Grid& g, double Da);
void apply_diffusion(const Field& c, double mu, Field& out);

// Full semi-discrete right-hand side, split into the convective part (which
// carries the prescribed inlet total flux u*c_inj in row 1) and the diffusive
// part (the diffusion-matrix rows). dw/dt = conv + diff. If outlet_flux is
// given it receives the outlet convective flux per component (slot m), the
// quantity needed for discrete mass accounting.
void assemble_rhs(const Field& c, const Field& w, std::span<const double> c_inj,
                  const LangmuirParams& p, const PhysicalParams& phys, const Grid& g,
                  Reconstruction mode, Field& conv, Field& diff,
                  std::vector<double>* outlet_flux = nullptr);

// Test harness: divergence of the WENO5 flux of the linear problem f = u*w
// on a periodic domain. Exercises the reconstruction kernel at a known
// smooth solution; not reachable from any scenario.
std::vector<double> periodic_linear_divergence(std::span<const double> w, double u, double dz);

} // namespace edchrom

#endif
