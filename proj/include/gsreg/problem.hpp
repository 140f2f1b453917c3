#pragma once

#include <optional>
#include <vector>

#include "gsreg/groups.hpp"
#include "gsreg/surrogate.hpp"

namespace gsreg {

// Ground truth attached to synthetic instances: coefficients, their group
// support, and the realized noise vector.
struct Truth {
  Vec x_star;
  std::vector<int> support;
  Vec noise;
};

// Dense regression instance with loss ||Ax-b||_q / sqrt(n), q in {1,2},
// ridge weight mu >= 0 and a group partition of the features.
struct ProblemData {
  Mat A;
  Vec b;
  int q = 1;
  GroupStructure groups;
  double mu = 0.0;
  std::optional<Truth> truth;

  int n() const { return static_cast<int>(A.rows()); }
  int p() const { return static_cast<int>(A.cols()); }
  void validate() const;
};

// nu > 0, rho >= 1, lambda = rho * nu by construction.
struct RegularizerSpec {
  double nu;
  double rho;
  double lambda;
  PhiFamily phi;

  static RegularizerSpec from_nu(const PhiFamily& phi, double rho, double nu);
  static RegularizerSpec from_lambda(const PhiFamily& phi, double rho, double lambda);
};

// ||z||_q / sqrt(n).
double eval_loss(const Vec& z, int q);

// Theta_{rho,nu,mu}(x) = loss + (mu/2)||x||^2 + rho nu sum_i varphi_rho(||x_{J_i}||).
double eval_surrogate_objective(const Vec& x, const ProblemData& data,
                                const RegularizerSpec& reg);

// loss + (mu/2)||x||^2 + nu * #{i : ||x_{J_i}|| > 0}.
double eval_true_objective(const Vec& x, const ProblemData& data, double nu);

// Psi(x, y) = Theta_{rho,nu,mu}(x) + (1/4)||x-y||^2_Q with
// Q = gamma1_floor*I + gamma2_floor*A^T A.
double eval_potential(const Vec& x, const Vec& y, const ProblemData& data,
                      const RegularizerSpec& reg, double gamma1_floor,
                      double gamma2_floor);

}  // namespace gsreg
