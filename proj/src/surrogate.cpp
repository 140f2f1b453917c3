#include "gsreg/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gsreg {

PhiFamily PhiFamily::scad_like(double a) {
  if (!(a > 1.0)) throw std::invalid_argument("PhiFamily::scad_like requires a > 1");
  return PhiFamily(PhiKind::ScadLike, a);
}

PhiFamily PhiFamily::mcp_like(double a) {
  if (!(a > 2.0)) throw std::invalid_argument("PhiFamily::mcp_like requires a > 2");
  return PhiFamily(PhiKind::McpLike, a);
}

double PhiFamily::phi(double t) const {
  switch (kind_) {
    case PhiKind::Linear:
      return t;
    case PhiKind::ScadLike:
      return ((a_ - 1.0) * t * t + 2.0 * t) / (a_ + 1.0);
    case PhiKind::McpLike:
      return 0.25 * a_ * a_ * t * t - 0.5 * a_ * (a_ - 2.0) * t +
             0.25 * (a_ - 2.0) * (a_ - 2.0);
  }
  return 0.0;
}

double psi_star(const PhiFamily& phi, double omega) {
  const double a = phi.a();
  switch (phi.kind()) {
    case PhiKind::Linear:
      return omega <= 1.0 ? 0.0 : omega - 1.0;
    case PhiKind::ScadLike: {
      const double lo = 2.0 / (a + 1.0);
      const double hi = 2.0 * a / (a + 1.0);
      if (omega <= lo) return 0.0;
      if (omega <= hi) {
        const double s = (a + 1.0) * omega - 2.0;
        return s * s / (4.0 * (a * a - 1.0));
      }
      return omega - 1.0;
    }
    case PhiKind::McpLike: {
      const double lo = a - 0.5 * a * a;
      const double c = 0.25 * (a - 2.0) * (a - 2.0);
      if (omega <= lo) return -c;
      if (omega <= a) {
        const double s = 0.5 * a * (a - 2.0) + omega;
        return s * s / (a * a) - c;
      }
      return omega - 1.0;
    }
  }
  return 0.0;
}

double psi_star_prime(const PhiFamily& phi, double omega) {
  const double a = phi.a();
  switch (phi.kind()) {
    case PhiKind::Linear:
      return omega < 1.0 ? 0.0 : 1.0;
    case PhiKind::ScadLike: {
      const double t = ((a + 1.0) * omega - 2.0) / (2.0 * (a - 1.0));
      return std::clamp(t, 0.0, 1.0);
    }
    case PhiKind::McpLike: {
      const double t = (a - 2.0) / a + 2.0 * omega / (a * a);
      return std::clamp(t, 0.0, 1.0);
    }
  }
  return 0.0;
}

double varphi_rho(const PhiFamily& phi, double rho, double t) {
  if (!(rho > 0.0)) throw std::invalid_argument("varphi_rho requires rho > 0");
  return t - psi_star(phi, rho * t) / rho;
}

Vec mm_weights(const PhiFamily& phi, double rho, const Vec& x,
               const GroupStructure& groups) {
  if (!(rho > 0.0)) throw std::invalid_argument("mm_weights requires rho > 0");
  Vec w(groups.m());
  for (int i = 0; i < groups.m(); ++i)
    w[i] = psi_star_prime(phi, rho * groups.group_norm(x, i));
  return w;
}

}  // namespace gsreg
