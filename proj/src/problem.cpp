#include "gsreg/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace gsreg {

void ProblemData::validate() const {
  if (A.rows() != b.size())
    throw std::invalid_argument("ProblemData: A has " + std::to_string(A.rows()) +
                                " rows but b has length " + std::to_string(b.size()));
  if (A.cols() != groups.p())
    throw std::invalid_argument("ProblemData: A has " + std::to_string(A.cols()) +
                                " columns but groups cover " + std::to_string(groups.p()));
  if (q != 1 && q != 2) throw std::invalid_argument("ProblemData: q must be 1 or 2");
  if (!(mu >= 0.0)) throw std::invalid_argument("ProblemData: mu must be >= 0");
  if (truth && truth->x_star.size() != A.cols())
    throw std::invalid_argument("ProblemData: truth.x_star has wrong length");
}

RegularizerSpec RegularizerSpec::from_nu(const PhiFamily& phi, double rho, double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("RegularizerSpec: nu must be > 0");
  if (!(rho >= 1.0)) throw std::invalid_argument("RegularizerSpec: rho must be >= 1");
  return RegularizerSpec{nu, rho, rho * nu, phi};
}

RegularizerSpec RegularizerSpec::from_lambda(const PhiFamily& phi, double rho,
                                             double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("RegularizerSpec: lambda must be > 0");
  if (!(rho >= 1.0)) throw std::invalid_argument("RegularizerSpec: rho must be >= 1");
  return RegularizerSpec{lambda / rho, rho, lambda, phi};
}

double eval_loss(const Vec& z, int q) {
  if (z.size() < 1) throw std::invalid_argument("eval_loss: empty vector");
  const double root_n = std::sqrt(static_cast<double>(z.size()));
  if (q == 1) return z.lpNorm<1>() / root_n;
  if (q == 2) return z.norm() / root_n;
  throw std::invalid_argument("eval_loss: q must be 1 or 2");
}

double eval_surrogate_objective(const Vec& x, const ProblemData& data,
                                const RegularizerSpec& reg) {
  double penalty = 0.0;
  for (int i = 0; i < data.groups.m(); ++i)
    penalty += varphi_rho(reg.phi, reg.rho, data.groups.group_norm(x, i));
  return eval_loss(data.A * x - data.b, data.q) + 0.5 * data.mu * x.squaredNorm() +
         reg.rho * reg.nu * penalty;
}

double eval_true_objective(const Vec& x, const ProblemData& data, double nu) {
  int active = 0;
  for (int i = 0; i < data.groups.m(); ++i)
    if (data.groups.group_norm(x, i) > 0.0) ++active;
  return eval_loss(data.A * x - data.b, data.q) + 0.5 * data.mu * x.squaredNorm() +
         nu * active;
}

double eval_potential(const Vec& x, const Vec& y, const ProblemData& data,
                      const RegularizerSpec& reg, double gamma1_floor,
                      double gamma2_floor) {
  if (!(gamma1_floor > 0.0) || !(gamma2_floor > 0.0))
    throw std::invalid_argument("eval_potential: floors must be > 0");
  const Vec d = x - y;
  return eval_surrogate_objective(x, data, reg) +
         0.25 * (gamma1_floor * d.squaredNorm() + gamma2_floor * (data.A * d).squaredNorm());
}

}  // namespace gsreg
