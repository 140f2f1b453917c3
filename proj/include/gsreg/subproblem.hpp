#pragma once

#include <functional>
#include <vector>

#include "gsreg/problem.hpp"
#include "gsreg/prox.hpp"

namespace gsreg {

// One proximal subproblem
//   min_{x,z} f1(z) + (mu/2)||x||^2 + sum_i v_i ||x_{J_i}||
//             + (gamma1/2)||x - x_anchor||^2 + (gamma2/2)||z - z_anchor||^2
//   s.t. Ax - z - b = 0,
// with f1(z) = ||z||_q / sqrt(n). Solved through its smooth dual in xi.
struct SubproblemSpec {
  const Mat* A = nullptr;
  const Vec* b = nullptr;
  const GroupStructure* groups = nullptr;
  int q = 1;
  Vec v;         // per-group weights v_i = lambda (1 - w_i), all >= 0
  Vec x_anchor;  // x^k
  Vec z_anchor;  // z^k
  double gamma1 = 1.0;
  double gamma2 = 1.0;
  double mu = 0.0;
  double r_k = 1.0;  // mu + gamma1, cached

  SubproblemSpec() = default;
  SubproblemSpec(const ProblemData& data, Vec v_in, Vec x_anchor_in, Vec z_anchor_in,
                 double gamma1_in, double gamma2_in, double mu_in);

  int n() const { return static_cast<int>(A->rows()); }
  int p() const { return static_cast<int>(A->cols()); }

  // Group-norm part of the nonsmooth term, h(x) = sum_i v_i ||x_{J_i}||.
  double h_value(const Vec& x) const;
};

// Primal pair recovered from a multiplier:
//   z(xi) = prox of f1 at z_anchor + xi/gamma2 with step 1/gamma2,
//   x(xi) = prox of h at (gamma1 x_anchor - A^T xi)/r_k with step 1/r_k.
std::pair<Vec, Vec> recover_primal(const SubproblemSpec& spec, const Vec& xi);

// Dual objective Psi_k(xi) (to be minimized); smooth and convex.
double dual_objective(const SubproblemSpec& spec, const Vec& xi);

// grad Psi_k(xi) = b + z(xi) - A x(xi); vanishes exactly at the dual root.
Vec dual_gradient(const SubproblemSpec& spec, const Vec& xi);

// Subproblem objective at a primal pair (feasibility not required).
double primal_objective(const SubproblemSpec& spec, const Vec& x, const Vec& z);

// primal + dual - (gamma1||x_anchor||^2 + gamma2||z_anchor||^2)/2; -> 0 at the
// optimum by strong duality.
double duality_gap(const SubproblemSpec& spec, const Vec& xi);

// Scaled KKT residual of the anchored subproblem at (x, z, xi): stationarity
// of both blocks plus primal feasibility, divided by 1 + ||b||.
double subproblem_kkt_residual(const SubproblemSpec& spec, const Vec& x, const Vec& z,
                               const Vec& xi);

// Action of W = varrho I + gamma2^{-1} U + r_k^{-1} A V A^T on d, where U and
// V are Clarke Jacobian elements of the two proximal maps at xi's recovery
// points. Symmetric positive definite for varrho > 0.
Vec newton_matrix_apply(const SubproblemSpec& spec, const Vec& xi, double varrho,
                        const Vec& d);

struct NewtonSolveResult {
  Vec d;
  double residual = 0.0;   // ||W d + grad||
  bool used_cg = false;
  bool fallback = false;   // steepest descent fallback engaged
};

// Solves W d = -grad to residual <= tol. Direct path (Sherman-Morrison-
// Woodbury over the active groups, or a dense Cholesky) for small and medium
// n; conjugate gradients otherwise, with a steepest-descent fallback.
NewtonSolveResult solve_newton_system(const SubproblemSpec& spec, const Vec& xi,
                                      const Vec& grad, double varrho, double tol);

struct SncgOptions {
  double beta = 0.5;        // line-search backtracking ratio
  double varsigma = 0.5;    // Newton residual exponent
  double c1 = 1e-4;         // Armijo constant
  double c2 = 0.9;          // curvature constant
  double eta_bar = 1e-2;    // Newton residual cap
  int max_iter = 100;
  int max_halvings = 50;
  int cg_max_iter = 200;
  int direct_n_cap = 2000;  // dense/SMW direct solve up to this n
};

struct SncgResult {
  Vec xi;
  int iters = 0;
  std::vector<double> grad_norms;  // ||grad Upsilon|| at each visited iterate
  bool converged = false;
  bool line_search_failures = false;
};

// Semismooth Newton with strong Wolfe backtracking on
// Upsilon(xi) = Psi_k(xi) + (varrho/2)||xi - xi0||^2. Stops when
// ||grad Upsilon|| <= tol_grad, when extra_stop(xi, grad Upsilon) fires, or at
// the iteration cap (best iterate returned).
SncgResult sncg_solve(const SubproblemSpec& spec, const Vec& xi0, double varrho,
                      double tol_grad, const SncgOptions& opts = {},
                      const std::function<bool(const Vec&, const Vec&)>& extra_stop = {});

struct PpaOptions {
  double varrho0 = 1e-4;
  double varrho_floor = 1e-12;
  double alpha0 = 1.0;      // summable alpha_j = alpha0 * 0.5^j
  int max_outer = 100;
  SncgOptions sncg;
};

struct PpaResult {
  Vec xi, x, z;
  int outer_iters = 0;
  int sncg_iters_total = 0;
  bool converged = false;
  double gap_scaled = 0.0;   // |duality gap| / (1 + ||b||)
  double grad_scaled = 0.0;  // ||grad Psi_k|| / (1 + ||b||)
};

// Inexact proximal point outer loop on the dual; each regularized subproblem
// is solved by sncg_solve under the relative criterion
// ||grad Upsilon_{k,j}(xi)|| <= alpha_j varrho_j ||xi - xi^j||. Terminates when
// both the scaled duality gap and the scaled gradient fall below eps.
PpaResult ppa_solve(const SubproblemSpec& spec, const Vec& xi0, double eps,
                    const PpaOptions& opts = {});

}  // namespace gsreg
