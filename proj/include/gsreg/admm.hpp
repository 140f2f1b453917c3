#pragma once

#include <optional>
#include <vector>

#include "gsreg/problem.hpp"
#include "gsreg/subproblem.hpp"

namespace gsreg {

struct AdmmConfig {
  double sigma = 1.0;
  double tau = 1.618;    // dual step length, in (1, (1+sqrt(5))/2)
  double gamma = 0.0;    // proximal metric weight; 0 selects 1.01*sigma*lambda_max(A^T A)
  double eps = 1e-5;     // KKT tolerance
  int max_iter = 10000;
};

// Largest eigenvalue of A^T A by power iteration (50 steps, tolerance 1e-8).
double lambda_max_ata(const Mat& A);

// z-update of the augmented Lagrangian: prox of the loss at u = Ax - b + xi/sigma.
Vec admm_z_step(const Vec& u, double sigma, int q, int n);

// x-update with proximal metric gamma I - sigma A^T A; reduces to the weighted
// group prox at x_tilde = x - A^T(sigma(Ax - z - b) + xi)/gamma.
Vec admm_x_step(const Vec& x, const Vec& z_next, const Vec& xi, const Vec& v,
                const GroupStructure& groups, double mu, double sigma, double gamma,
                const Mat& A, const Vec& b);

// Optional proximal anchors turning the target into the PMM subproblem
//   ... + (gamma1/2)||x - x_anchor||^2 + (gamma2/2)||z - z_anchor||^2.
struct AdmmAnchors {
  Vec x_anchor;
  Vec z_anchor;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

struct AdmmResult {
  Vec x, z, xi;
  int iters = 0;
  bool converged = false;
  double kkt = 0.0;
  std::vector<double> primal_residuals;  // ||Ax - z - b|| per iteration
};

// pADMM on the weighted problem
//   min ||Ax-b||_q/sqrt(n) + (mu/2)||x||^2 + sum_i v_i ||x_{J_i}||
// (plus anchor terms when provided), warm-started at (x0, z0, xi0) and stopped
// on the shared KKT residual.
AdmmResult admm_run(const ProblemData& data, const Vec& v, double mu,
                    const AdmmConfig& config, const Vec& x0, const Vec& z0,
                    const Vec& xi0,
                    const std::optional<AdmmAnchors>& anchors = std::nullopt);

}  // namespace gsreg
