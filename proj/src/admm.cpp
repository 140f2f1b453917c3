#include "gsreg/admm.hpp"

#include <cmath>
#include <stdexcept>

#include "gsreg/pmm.hpp"

namespace gsreg {

double lambda_max_ata(const Mat& A) {
  const int p = static_cast<int>(A.cols());
  Vec x = Vec::Ones(p) / std::sqrt(static_cast<double>(p));
  double lambda = 0.0;
  for (int it = 0; it < 50; ++it) {
    Vec y = A.transpose() * (A * x);
    const double norm = y.norm();
    if (norm == 0.0) return 0.0;
    y /= norm;
    const double lambda_new = (A * y).squaredNorm();
    const bool settled = std::abs(lambda_new - lambda) <= 1e-8 * std::max(1.0, lambda_new);
    lambda = lambda_new;
    x = std::move(y);
    if (settled && it >= 5) break;
  }
  return lambda;
}

Vec admm_z_step(const Vec& u, double sigma, int q, int n) {
  return prox_loss(q, n, sigma, u);
}

Vec admm_x_step(const Vec& x, const Vec& z_next, const Vec& xi, const Vec& v,
                const GroupStructure& groups, double mu, double sigma, double gamma,
                const Mat& A, const Vec& b) {
  const Vec x_tilde = x - A.transpose() * (sigma * (A * x - z_next - b) + xi) / gamma;
  return prox_weighted_group(v, groups, mu, gamma, x_tilde);
}

AdmmResult admm_run(const ProblemData& data, const Vec& v, double mu,
                    const AdmmConfig& config, const Vec& x0, const Vec& z0,
                    const Vec& xi0, const std::optional<AdmmAnchors>& anchors) {
  if (!(config.sigma > 0.0)) throw std::invalid_argument("admm_run: sigma must be > 0");
  if (!(config.tau > 1.0 && config.tau < 0.5 * (1.0 + std::sqrt(5.0))))
    throw std::invalid_argument("admm_run: tau must lie in (1, (1+sqrt(5))/2)");
  const double lam_max = lambda_max_ata(data.A);
  const double gamma =
      config.gamma > 0.0 ? config.gamma : 1.01 * config.sigma * lam_max;
  if (gamma < config.sigma * lam_max - 1e-9)
    throw std::invalid_argument("admm_run: gamma breaks the metric gamma I - sigma A^T A");

  const int n = data.n();
  const double sigma = config.sigma;
  AdmmResult out;
  out.x = x0;
  out.z = z0;
  out.xi = xi0;
  out.primal_residuals.reserve(256);

  Vec ax = data.A * out.x;
  const Vec zero_delta = Vec::Zero(data.p());
  for (int j = 0; j < config.max_iter; ++j) {
    // z-step at x^j
    const Vec u = ax - data.b + out.xi / sigma;
    if (anchors) {
      const double g2 = anchors->gamma2;
      out.z = prox_loss(data.q, n, g2 + sigma,
                        (g2 * anchors->z_anchor + sigma * u) / (g2 + sigma));
    } else {
      out.z = admm_z_step(u, sigma, data.q, n);
    }
    // x-step with metric gamma I - sigma A^T A
    const Vec x_tilde =
        out.x - data.A.transpose() * (sigma * (ax - out.z - data.b) + out.xi) / gamma;
    if (anchors) {
      const double g1 = anchors->gamma1;
      out.x = prox_weighted_group(
          v, data.groups, mu, g1 + gamma,
          (g1 * anchors->x_anchor + gamma * x_tilde) / (g1 + gamma));
    } else {
      out.x = prox_weighted_group(v, data.groups, mu, gamma, x_tilde);
    }
    ax = data.A * out.x;
    const Vec residual = ax - out.z - data.b;
    out.xi += config.tau * sigma * residual;
    out.primal_residuals.push_back(residual.norm());
    out.iters = j + 1;

    if (anchors) {
      SubproblemSpec spec(data, v, anchors->x_anchor, anchors->z_anchor,
                          anchors->gamma1, anchors->gamma2, mu);
      out.kkt = subproblem_kkt_residual(spec, out.x, out.z, out.xi);
    } else {
      out.kkt = kkt_residual(data, v, out.x, out.z, out.xi, zero_delta, mu);
    }
    if (out.kkt <= config.eps) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace gsreg
