// The implicit half of the IMEX step: given stage data G, solve
//
//   W(c) - theta * (A c) = G,   theta = Da dt / (2 dz^2),
//
// cell-coupled through the diffusion pattern A (componentwise second
// difference with the boundary-aware diagonal) and component-coupled through
// the isotherm map W. Newton's method on c with the exact block-tridiagonal
// Jacobian: diagonal blocks dW/dc(c_k) + theta s_k I (s_k = 1 at the boundary
// cells, 2 inside), off-diagonal blocks -theta I.

#ifndef EDCHROM_IMPLICIT_STAGE_HPP
#define EDCHROM_IMPLICIT_STAGE_HPP

#include <span>
#include <vector>

#include "edchrom/field.hpp"
#include "edchrom/isotherm.hpp"

namespace edchrom {

// Block-tridiagonal matrix whose off-diagonal blocks are all the same scalar
// multiple of the identity (the structure of the stage Jacobian). Solved by
// block Thomas elimination with a partial-pivot dense LU per diagonal block.
struct BlockTridiagonal {
    int n = 0;                 // block size (components)
    int m = 0;                 // block rows (cells)
    std::vector<double> diag;  // m row-major n x n diagonal blocks
    double off = 0.0;          // every off-diagonal block is off * I

    BlockTridiagonal(int block_size, int rows)
        : n(block_size), m(rows), diag(static_cast<std::size_t>(block_size) * block_size * rows) {}

    double* block_at(int k) { return diag.data() + static_cast<std::size_t>(k) * n * n; }
    const double* block_at(int k) const { return diag.data() + static_cast<std::size_t>(k) * n * n; }

    // In-place solve: x holds the cell-major right-hand side (x[k*n+i] is
    // component i of cell k) and returns the solution. Consumes the matrix
    // (blocks are overwritten by the elimination factors). Throws SolverError
    // if a pivot vanishes.
    void solve(std::span<double> x);
};

// Solve one dense row-major n x n system a x = b in place with the same
// partial-pivot LU used for the stage blocks; a is destroyed, b receives x.
// Also serves the per-cell dW/dc solves of the non-conservative schemes.
void solve_small_dense(int n, double* a, double* b);

// Explicit data entering the implicit stage: G = w + (dt/2) * conv.
void build_stage_rhs(const Field& w, double dt, const Field& conv, Field& g);

// F(c) = W(c) - theta * (A c) - G, componentwise diffusion pattern A.
void stage_residual(const Field& c, const Field& g, const LangmuirParams& p,
                    double theta, Field& f);

// Exact Jacobian dF/dc at c, in the block-tridiagonal structure above.
void stage_jacobian(const Field& c, const LangmuirParams& p, double theta,
                    BlockTridiagonal& jac);

struct StageResult {
    int iterations;  // Newton updates until the residual test passed
};

// Damped Newton from the initial guess in c (overwritten by the solution).
// Convergence test: max|F| <= tol * (1 + max|G|). After the test first
// passes, one more Newton update is applied (free second-order polish, so
// the stage error is far below the residual tolerance); a guess that already
// satisfies the test is returned untouched. Iterates are kept inside the
// domain of W by step halving whenever a cell's Langmuir denominator would
// drop to 0.5 or below. Throws SolverError on iteration or backtracking
// exhaustion.
// If residual_history is non-null it receives max|F| at every iterate visited
// (including the converged one), for convergence diagnostics.
StageResult newton_solve_stage(Field& c, const Field& g, const LangmuirParams& p,
                               double theta, double tol = 1e-12, int max_iter = 25,
                               std::vector<double>* residual_history = nullptr);

} // namespace edchrom

#endif
