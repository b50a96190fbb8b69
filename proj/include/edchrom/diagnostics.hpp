// Run observables: conserved cell totals, oscillation quantification, front
// tracking, the operating-line plateau predictor, and convergence-order
// estimation. All pure functions.

#ifndef EDCHROM_DIAGNOSTICS_HPP
#define EDCHROM_DIAGNOSTICS_HPP

#include <span>
#include <vector>

#include "edchrom/field.hpp"
#include "edchrom/isotherm.hpp"
#include "edchrom/model.hpp"

namespace edchrom {

// Per-component dz * sum_j w_ij with compensated (Kahan) summation, so the
// totals are fit for conservation audits at 1e-9 and below.
std::vector<double> total_mass(const Field& w, const Grid& g);

// Scale-free oscillation measure of a profile set against per-component feed
// bounds B_i > 0 (components with B_i <= 0 carry no scale and are skipped):
// the larger of
//   - overshoot: (max(0, max_j c - B) + max(0, -min_j c)) / B,
//   - total-variation excess over the monotone envelope
//     (max - c_first) + (max - c_last), relative to max(envelope, B);
// maximized over components. A single-pulse or monotone profile inside
// [0, B] scores exactly 0; any non-finite value scores +infinity.
double oscillation_index(const Field& c, std::span<const double> bounds);

// Location of the steepest inter-cell jump, z_{k+1/2} for the largest
// |c_{k+1} - c_k|, ties resolved toward larger z. A flat profile (max jump
// <= 1e-14) has no front: returns NaN.
double front_position(std::span<const double> profile, const Grid& g);

// Displacement prediction from the displacer's single-component isotherm
// chord through the origin, slope s = a_d / (1 + b_d c_d): component i != d
// can form an isotachic plateau iff a_i > s (strict; equality means the
// operating line only touches the isotherm at the origin). The displacer's
// own entry is false.
std::vector<bool> operating_line_check(const LangmuirParams& p, int displacer, double c_d);

// Observed order log2(|u1-u2| / |u2-u3|) in the grid-averaged L1 norm for
// three nested refinements of the same run. NaN when the differences are at
// or below rounding and the ratio is meaningless.
double self_convergence_order(std::span<const double> u1, std::span<const double> u2,
                              std::span<const double> u3);

} // namespace edchrom

#endif
