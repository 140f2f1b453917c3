#pragma once

#include <limits>
#include <string>
#include <vector>

#include "gsreg/admm.hpp"
#include "gsreg/problem.hpp"
#include "gsreg/subproblem.hpp"

namespace gsreg {

enum class InnerEngine { DualSsn, Padmm };

struct PmmConfig {
  PhiFamily phi = PhiFamily::scad_like(4.0);
  double rho = 2.0;
  bool rho_auto = false;     // rho = max(1, 6/||x0||_inf) after the init solve
  double lambda = 0.0;       // lambda = rho * nu; 0 selects 0.4 * lambda_base
  double lambda_tilde = 0.0;  // init-problem penalty; 0 selects 0.2 * lambda_base

  double varrho = 1.0 / 1.4;                      // gamma decay
  double gamma1_0 = 10.0, gamma2_0 = 10.0;        // initial proximal weights
  double gamma1_floor = 1e-6, gamma2_floor = 1e-6;
  double init_gamma1 = 10.0, init_gamma2 = 10.0;  // weights of the init solve

  double eps_pmm = 1e-5;
  double eps_sncg = 1e-8;
  double eps_padmm = 1e-5;
  int max_outer = 500;
  int delta_retries = 3;  // inner-tolerance tightenings when the delta bound fails
  double max_time_s = std::numeric_limits<double>::infinity();

  InnerEngine engine = InnerEngine::DualSsn;
  AdmmConfig admm;  // inner engine settings for InnerEngine::Padmm
  PpaOptions ppa;

  // Parameter sets of the synthetic and LIBSVM experiments; q picks the loss.
  static PmmConfig synthetic_defaults(int q);
  static PmmConfig libsvm_defaults(int q);
};

struct PmmIterRecord {
  double potential = 0.0;     // Psi(x^{k+1}, x^k)
  double step_q_norm = 0.0;   // ||x^{k+1} - x^k||_Q, floors metric
  double kkt = 0.0;
  Vec weights;                // w^k snapshot
  int inner_outer_iters = 0;  // PPA rounds (or 1 for pADMM)
  int inner_total_iters = 0;  // SNCG steps or pADMM sweeps
  double delta_norm = 0.0;
  double delta_bound = 0.0;   // +inf on the first outer step
};

struct PmmTrace {
  std::vector<PmmIterRecord> iters;
};

struct PmmResult {
  Vec x, z, xi, x0;
  PmmTrace trace;
  int outer_iters = 0;
  bool converged = false;
  std::string status;  // ok | maxiter | timeout | init_failure
  double kkt = 0.0;
  double pobj = 0.0;
  double solve_seconds = 0.0;  // outer loop only, init excluded
  double init_seconds = 0.0;
  double lambda_used = 0.0, rho_used = 0.0, nu_used = 0.0;
};

// max(1e-6, 0.05 * ||A^T b||_inf): base level for the lambda selection rule.
double lambda_base(const ProblemData& data);

// Approximate solution of the l21-regularized init problem
//   min ||Ax-b||_q/sqrt(n) + lambda_tilde <e, G(x)>
//       + (init_gamma1/2)||x||^2 + (init_gamma2/2)||Ax||^2,
// reusing the dual solver with anchors x = 0, z = -b.
Vec init_point(const ProblemData& data, const PmmConfig& config,
               PpaResult* detail = nullptr);

// KKT residual sqrt(r1+r2+r3)/(1+||b||) of the weighted problem at
// (x, z, xi), with inexactness vector delta:
//   r1 = ||z - P_{f1}(z + xi)||^2,
//   r2 = ||x - P_{h}(delta + (1-mu)x - A^T xi)||^2,
//   r3 = ||Ax - z - b||^2.
double kkt_residual(const ProblemData& data, const Vec& v, const Vec& x, const Vec& z,
                    const Vec& xi, const Vec& delta, double mu);

// Smallest eigenvalue of Q = gamma1_floor I + gamma2_floor A^T A.
double q_lambda_min(const Mat& A, double gamma1_floor, double gamma2_floor);

// ||Q^{1/2}(x_k - x_km1)|| / (sqrt(2) ||Q^{-1/2}||), the bound on ||delta^k||.
double compute_q_half_bound(const Vec& x_k, const Vec& x_km1, double gamma1_floor,
                            double gamma2_floor, const Mat& A, double lambda_min_q);

PmmResult pmm_run(const ProblemData& data, const PmmConfig& config);

}  // namespace gsreg
