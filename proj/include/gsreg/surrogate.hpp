#pragma once

#include "gsreg/groups.hpp"

namespace gsreg {

enum class PhiKind { Linear, ScadLike, McpLike };

// One member of the generating family: phi is convex on [0,1] with
// min value 0 and phi(1) = 1. ScadLike is phi(t) = ((a-1)t^2 + 2t)/(a+1)
// with a > 1; McpLike is phi(t) = (a^2/4)t^2 - (a(a-2)/2)t + (a-2)^2/4
// with a > 2; Linear is phi(t) = t.
class PhiFamily {
 public:
  static PhiFamily linear() { return PhiFamily(PhiKind::Linear, 0.0); }
  static PhiFamily scad_like(double a);
  static PhiFamily mcp_like(double a);

  PhiKind kind() const { return kind_; }
  double a() const { return a_; }

  // phi itself, used by the brute-force conjugate oracle in tests.
  double phi(double t) const;

 private:
  PhiFamily(PhiKind kind, double a) : kind_(kind), a_(a) {}
  PhiKind kind_;
  double a_;
};

// Conjugate of psi (the restriction of phi to [0,1]); finite, nondecreasing
// and convex on all of R, with a closed form per family.
double psi_star(const PhiFamily& phi, double omega);

// Derivative of psi_star; takes values in [0,1]. At the Linear family's kink
// omega = 1 the right derivative 1 is returned.
double psi_star_prime(const PhiFamily& phi, double omega);

// Capped penalty varphi_rho(t) = t - psi_star(rho t)/rho.
double varphi_rho(const PhiFamily& phi, double rho, double t);

// MM weights w_i = psi_star_prime(rho ||x_{J_i}||), one per group.
Vec mm_weights(const PhiFamily& phi, double rho, const Vec& x,
               const GroupStructure& groups);

}  // namespace gsreg
