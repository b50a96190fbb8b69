// Multi-component Langmuir isotherm algebra for the equilibrium-dispersive
// column model.
//
// Mobile-phase concentrations c pair with the conserved variables
//   w_i = c_i + F q_i(c),   q_i(c) = a_i c_i / (1 + sum_j b_j c_j),
// where F = (1-eps)/eps is the phase ratio. The map c -> w is a bijection
// on the nonnegative orthant; its inverse reduces to one scalar root of a
// rational function (the Langmuir denominator p = 1 + b'c of the pre-image),
// after which each component follows componentwise.

#ifndef EDCHROM_ISOTHERM_HPP
#define EDCHROM_ISOTHERM_HPP

#include <optional>
#include <span>
#include <vector>

namespace edchrom {

struct LangmuirParams {
    std::vector<double> a;    // Henry coefficients, strictly increasing, a[0] > 0
    std::vector<double> b;    // Langmuir saturation coefficients, all > 0
    double epsilon;           // bed porosity, in (0,1)
    std::vector<double> eta;  // phase-ratio-scaled coefficients (1-eps)/eps * a_i

    LangmuirParams(std::vector<double> a_, std::vector<double> b_, double eps);
    int components() const { return static_cast<int>(a.size()); }
};

// q_i(c): adsorbed (stationary-phase) concentrations.
std::vector<double> adsorbed(std::span<const double> c, const LangmuirParams& p);

// w = c + F q(c). Requires 1 + b'c > 0.
std::vector<double> to_conserved(std::span<const double> c, const LangmuirParams& p);

// Same map with the Langmuir denominator floored at p_floor. Only meaningful
// for extrapolated (ghost) data that may be far outside the physical orthant;
// identical to to_conserved whenever 1 + b'c >= p_floor.
std::vector<double> to_conserved_guarded(std::span<const double> c, const LangmuirParams& p,
                                         double p_floor = 0.5);

// Residual of the scalar root problem defining the inverse map,
//   R_w(y) = 1 - y + sum_i y b_i w_i / (y + eta_i),
// together with dR/dy. The inverse map's denominator is the root of R_w.
double denominator_residual(double y, std::span<const double> w, const LangmuirParams& p);
double denominator_residual_deriv(double y, std::span<const double> w, const LangmuirParams& p);

struct RootOptions {
    double tol = 1e-14;                // |R| <= tol * (1 + sum_i b_i max(w_i,0))
    int max_iter = 100;
    std::optional<double> warm_start;  // projected into the bracket before use
};

// The unique root of R_w in [1, 1 + b'w] for w >= 0 (safeguarded Newton with
// bisection fallback). For w with small negative components (transient
// scheme undershoots) the bracket generalizes to
//   [1 + sum_i b_i min(w_i,0), 1 + sum_i b_i max(w_i,0)],
// which carries the same sign structure; a nonpositive lower end means the
// state has left the model's domain and raises SolverError.
// Returns exactly 1 when w = 0.
double denominator_root(std::span<const double> w, const LangmuirParams& p,
                        const RootOptions& opts = {});

// Inverse of to_conserved on the physical domain:
//   c_i = w_i / (1 + eta_i / denominator_root(w)).
// Components with w_i in [-neg_tol, 0) are clamped to 0 before inversion;
// more negative components raise std::invalid_argument. (Scheme-internal
// state sync calls denominator_root directly and tolerates undershoots.)
std::vector<double> from_conserved(std::span<const double> w, const LangmuirParams& p,
                                   const RootOptions& opts = {}, double neg_tol = 1e-11);

// Closed-form single-component inverse, used as an independent oracle:
//   c = (sqrt((1 + eta - b w)^2 + 4 b w) - (1 + eta - b w)) / (2 b).
double from_conserved_scalar(double w, double eta, double b);

// Jacobian dw/dc as a dense N x N row-major matrix:
//   J_ij = delta_ij (1 + eta_i/p) - eta_i b_j c_i / p^2,  p = 1 + b'c.
std::vector<double> conserved_jacobian(std::span<const double> c, const LangmuirParams& p);

// Secular function of the Jacobian,
//   S(lambda) = 1 + (1/p^2) sum_i eta_i b_i c_i / (lambda - d_i),
// d_i = 1 + eta_i/p. Its roots are the eigenvalues of conserved_jacobian.
double jacobian_secular(double lambda, std::span<const double> c, const LangmuirParams& p);

// All N eigenvalues of dw/dc, ascending. They strictly interlace the poles:
// 1 < lambda_1 < d_1 < lambda_2 < ... < d_{N-1} < lambda_N < d_N.
// Requires every c_i > 0: with c_i = 0 an eigenvalue collides with its pole
// and the secular bracketing degenerates, so such inputs are rejected.
std::vector<double> jacobian_eigenvalues(std::span<const double> c, const LangmuirParams& p,
                                         double tol = 1e-14);

} // namespace edchrom

#endif
