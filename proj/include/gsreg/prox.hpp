#pragma once

#include <vector>

#include "gsreg/groups.hpp"

namespace gsreg {

// Proximal mapping of theta(z) = ||z||_q / sqrt(n) with step 1/gamma:
// argmin_z theta(z) + (gamma/2)||z - u||^2. For q = 2 this is a block
// shrink with threshold 1/(gamma sqrt(n)); for q = 1 an elementwise soft
// threshold at the same level.
Vec prox_loss(int q, int n, double gamma, const Vec& u);

// Proximal mapping of h(x) = sum_i v_i ||x_{J_i}|| + (mu/2)||x||^2 with step
// 1/gamma: group i maps to (gamma/(gamma+mu)) max(1 - v_i/(gamma||z_{J_i}||), 0) z_{J_i}.
Vec prox_weighted_group(const Vec& v, const GroupStructure& groups, double mu,
                        double gamma, const Vec& z);

// Euclidean projection onto {y : ||y|| <= radius}.
Vec project_ball(double radius, const Vec& y);

// One element of the Clarke Jacobian of project_ball at y, as a dense block.
// Inside the ball (and on the sphere, continuing the interior branch) this is
// the identity; outside it is radius*(I/||y|| - y y^T/||y||^3).
Mat jac_project_ball(double radius, const Vec& y);

// Structured PSD block s*(alpha I + beta u u^T) with u a unit vector; used to
// represent per-group and loss-prox Jacobian blocks without densifying.
struct SpectralBlock {
  double scale = 0.0;   // 0 encodes the zero block
  double alpha = 0.0;   // transverse coefficient
  double beta = 0.0;    // radial rank-one coefficient
  Vec dir;              // unit direction; empty when beta == 0

  bool is_zero() const { return scale == 0.0; }
  bool is_scaled_identity() const { return beta == 0.0; }
  Vec apply(const Vec& d) const;
  Mat dense(int dim) const;
};

// Clarke Jacobian of prox_weighted_group at z, one block per group. Blocks on
// the kink surface ||z_{J_i}|| = v_i/gamma take the zero branch (continuous
// from the interior of the threshold region).
struct GroupProxJacobian {
  std::vector<SpectralBlock> blocks;
  Vec apply(const GroupStructure& groups, const Vec& d) const;
  Mat dense(const GroupStructure& groups) const;
};

GroupProxJacobian jac_prox_weighted_group(const Vec& v, const GroupStructure& groups,
                                          double mu, double gamma, const Vec& z);

// Clarke Jacobian of prox_loss at u. For q = 2 a single SpectralBlock over
// R^n; for q = 1 a diagonal 0/1 mask (1 where |u_i| > 1/(gamma sqrt(n))).
struct LossProxJacobian {
  int q = 2;
  SpectralBlock block;  // q == 2
  Vec diag;             // q == 1
  Vec apply(const Vec& d) const;
  Mat dense(int n) const;
};

LossProxJacobian jac_prox_loss(int q, int n, double gamma, const Vec& u);

}  // namespace gsreg
