#include "gsreg/pmm.hpp"

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>

namespace gsreg {

namespace {

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

PmmConfig PmmConfig::synthetic_defaults(int q) {
  PmmConfig cfg;
  cfg.rho = 2.0;
  if (q == 1) {
    cfg.init_gamma1 = 10.0;
    cfg.init_gamma2 = 10.0;
    cfg.eps_pmm = 1e-5;
  } else {
    cfg.init_gamma1 = 0.01;
    cfg.init_gamma2 = 0.1 * cfg.init_gamma1;
    cfg.eps_pmm = 1e-7;
  }
  cfg.gamma1_0 = std::min(std::max(1e-4, cfg.init_gamma1), cfg.init_gamma1);
  cfg.gamma2_0 = std::min(std::max(1e-4, cfg.init_gamma1), cfg.init_gamma2);
  cfg.admm.sigma = 1.0;
  return cfg;
}

PmmConfig PmmConfig::libsvm_defaults(int q) {
  PmmConfig cfg;
  cfg.rho_auto = true;
  cfg.phi = PhiFamily::scad_like(6.0);
  cfg.init_gamma1 = 0.01;
  cfg.init_gamma2 = 0.01 * cfg.init_gamma1;
  cfg.gamma1_0 = std::min(std::max(1e-4, cfg.init_gamma1), cfg.init_gamma1);
  cfg.gamma2_0 = std::min(std::max(1e-4, cfg.init_gamma1), cfg.init_gamma2);
  cfg.eps_pmm = q == 1 ? 1e-5 : 1e-7;
  cfg.admm.sigma = 1.168;
  return cfg;
}

double lambda_base(const ProblemData& data) {
  return std::max(1e-6, 0.05 * (data.A.transpose() * data.b).lpNorm<Eigen::Infinity>());
}

Vec init_point(const ProblemData& data, const PmmConfig& config, PpaResult* detail) {
  const Vec v = Vec::Constant(data.groups.m(), config.lambda_tilde);
  SubproblemSpec spec(data, v, Vec::Zero(data.p()), -data.b, config.init_gamma1,
                      config.init_gamma2, 0.0);
  PpaResult res = ppa_solve(spec, Vec::Zero(data.n()), config.eps_sncg, config.ppa);
  if (detail) *detail = res;
  return res.x;
}

double kkt_residual(const ProblemData& data, const Vec& v, const Vec& x, const Vec& z,
                    const Vec& xi, const Vec& delta, double mu) {
  const double r1 =
      (z - prox_loss(data.q, data.n(), 1.0, z + xi)).squaredNorm();
  const Vec x_arg = delta + (1.0 - mu) * x - data.A.transpose() * xi;
  const double r2 =
      (x - prox_weighted_group(v, data.groups, 0.0, 1.0, x_arg)).squaredNorm();
  const double r3 = (data.A * x - z - data.b).squaredNorm();
  return std::sqrt(r1 + r2 + r3) / (1.0 + data.b.norm());
}

double q_lambda_min(const Mat& A, double gamma1_floor, double gamma2_floor) {
  // rank(A^T A) <= n, so the smallest eigenvalue is exactly 0 when p > n.
  if (A.cols() > A.rows()) return gamma1_floor;
  const Mat ata = A.transpose() * A;
  const Eigen::SelfAdjointEigenSolver<Mat> eig(ata, Eigen::EigenvaluesOnly);
  const double lam_min_ata = std::max(0.0, eig.eigenvalues().minCoeff());
  return gamma1_floor + gamma2_floor * lam_min_ata;
}

double compute_q_half_bound(const Vec& x_k, const Vec& x_km1, double gamma1_floor,
                            double gamma2_floor, const Mat& A, double lambda_min_q) {
  const Vec d = x_k - x_km1;
  const double q_half = std::sqrt(gamma1_floor * d.squaredNorm() +
                                  gamma2_floor * (A * d).squaredNorm());
  return q_half * std::sqrt(lambda_min_q) / std::sqrt(2.0);
}

PmmResult pmm_run(const ProblemData& data, const PmmConfig& config_in) {
  data.validate();
  if (!(config_in.varrho > 0.0 && config_in.varrho <= 1.0))
    throw std::invalid_argument("pmm_run: varrho must lie in (0, 1]");
  if (!(config_in.gamma1_floor > 0.0 && config_in.gamma2_floor > 0.0))
    throw std::invalid_argument("pmm_run: gamma floors must be > 0");
  if (config_in.gamma1_0 < config_in.gamma1_floor ||
      config_in.gamma1_0 > config_in.init_gamma1 ||
      config_in.gamma2_0 < config_in.gamma2_floor ||
      config_in.gamma2_0 > config_in.init_gamma2)
    throw std::invalid_argument(
        "pmm_run: need gamma_floor <= gamma_0 <= init_gamma for both proximal weights");
  PmmConfig config = config_in;
  const double base = lambda_base(data);
  if (config.lambda <= 0.0) config.lambda = (data.q == 1 ? 0.05 : 0.005) * base;
  if (config.lambda_tilde <= 0.0) config.lambda_tilde = 0.5 * config.lambda;

  PmmResult result;
  const auto t_init = std::chrono::steady_clock::now();
  PpaResult init_detail;
  result.x0 = init_point(data, config, &init_detail);
  result.init_seconds = seconds_since(t_init);
  if (!init_detail.converged) {
    result.status = "init_failure";
    result.x = result.x0;
    return result;
  }

  double rho = config.rho;
  if (config.rho_auto) {
    const double x0_inf = result.x0.lpNorm<Eigen::Infinity>();
    rho = x0_inf > 1e-12 ? std::max(1.0, 6.0 / x0_inf) : 1.0;
  }
  const RegularizerSpec reg =
      RegularizerSpec::from_lambda(config.phi, rho, config.lambda);
  result.lambda_used = reg.lambda;
  result.rho_used = reg.rho;
  result.nu_used = reg.nu;

  const double lam_min_q =
      q_lambda_min(data.A, config.gamma1_floor, config.gamma2_floor);

  const auto t0 = std::chrono::steady_clock::now();
  Vec x = result.x0;
  Vec x_prev = x;
  Vec xi = init_detail.xi;
  Vec z = data.A * x - data.b;
  double gamma1 = config.gamma1_0;
  double gamma2 = config.gamma2_0;
  result.status = "maxiter";

  // The pADMM engine shares one global sweep budget across the MM rounds and
  // reuses the proximal metric weight.
  AdmmConfig admm_cfg = config.admm;
  int admm_budget = config.admm.max_iter;
  if (config.engine == InnerEngine::Padmm && admm_cfg.gamma <= 0.0)
    admm_cfg.gamma = 1.01 * admm_cfg.sigma * lambda_max_ata(data.A);

  for (int k = 0; k < config.max_outer; ++k) {
    if (seconds_since(t0) > config.max_time_s) {
      result.status = "timeout";
      break;
    }
    const Vec w = mm_weights(reg.phi, reg.rho, x, data.groups);
    const Vec v = reg.lambda * (Vec::Ones(data.groups.m()) - w);
    const double bound =
        k == 0 ? std::numeric_limits<double>::infinity()
               : compute_q_half_bound(x, x_prev, config.gamma1_floor,
                                      config.gamma2_floor, data.A, lam_min_q);

    PmmIterRecord rec;
    rec.weights = w;
    rec.delta_bound = bound;
    Vec delta;
    bool inner_ok = false;

    if (config.engine == InnerEngine::DualSsn) {
      const Vec z_anchor = data.A * x - data.b;
      double tol = config.eps_sncg;
      for (int attempt = 0; attempt <= config.delta_retries; ++attempt) {
        SubproblemSpec spec(data, v, x, z_anchor, gamma1, gamma2, data.mu);
        PpaResult sol = ppa_solve(spec, xi, tol, config.ppa);
        delta = gamma2 * (data.A.transpose() * (data.A * sol.x - sol.z - data.b));
        rec.inner_outer_iters += sol.outer_iters;
        rec.inner_total_iters += sol.sncg_iters_total;
        inner_ok = sol.converged;
        z = sol.z;
        xi = sol.xi;
        x_prev = x;
        x = sol.x;
        if (delta.norm() <= bound || attempt == config.delta_retries) break;
        x = x_prev;  // retry the same subproblem with a tighter tolerance
        tol *= 0.1;
      }
      rec.delta_norm = delta.norm();
      rec.kkt = kkt_residual(data, v, x, z, xi, delta, data.mu);
    } else {
      admm_cfg.max_iter = admm_budget;
      AdmmResult sol = admm_run(data, v, data.mu, admm_cfg, x, z, xi);
      admm_budget -= sol.iters;
      rec.inner_outer_iters = 1;
      rec.inner_total_iters = sol.iters;
      inner_ok = sol.converged;
      x_prev = x;
      x = sol.x;
      z = sol.z;
      xi = sol.xi;
      delta = Vec::Zero(data.p());
      rec.delta_norm = 0.0;
      // Fresh weights so the MM loop only stops once they have stabilized.
      const Vec w_next = mm_weights(reg.phi, reg.rho, x, data.groups);
      const Vec v_next = reg.lambda * (Vec::Ones(data.groups.m()) - w_next);
      rec.kkt = kkt_residual(data, v_next, x, z, xi, delta, data.mu);
    }

    rec.potential = eval_potential(x, x_prev, data, reg, config.gamma1_floor,
                                   config.gamma2_floor);
    {
      const Vec d = x - x_prev;
      rec.step_q_norm = std::sqrt(config.gamma1_floor * d.squaredNorm() +
                                  config.gamma2_floor * (data.A * d).squaredNorm());
    }
    result.trace.iters.push_back(std::move(rec));
    result.outer_iters = k + 1;

    const double eps_stop =
        config.engine == InnerEngine::DualSsn ? config.eps_pmm : config.eps_padmm;
    if (result.trace.iters.back().kkt <= eps_stop) {
      result.converged = true;
      result.status = "ok";
      break;
    }
    if (!inner_ok && config.engine == InnerEngine::DualSsn) {
      result.status = "inner_failure";
      break;
    }
    if (config.engine == InnerEngine::Padmm && admm_budget <= 0) break;
    gamma1 = std::max(config.gamma1_floor, config.varrho * gamma1);
    gamma2 = std::max(config.gamma2_floor, config.varrho * gamma2);
  }

  result.solve_seconds = seconds_since(t0);
  result.x = x;
  result.z = z;
  result.xi = xi;
  result.kkt = result.trace.iters.empty() ? 0.0 : result.trace.iters.back().kkt;
  result.pobj = eval_surrogate_objective(x, data, reg);
  return result;
}

}  // namespace gsreg
