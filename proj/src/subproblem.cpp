#include "gsreg/subproblem.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

namespace gsreg {

namespace {

// Everything the dual value, gradient and Jacobian need at one xi.
struct Recovery {
  Vec u;  // z_anchor + xi / gamma2
  Vec y;  // (gamma1 x_anchor - A^T xi) / r_k
  Vec z;  // prox of f1 at u
  Vec x;  // prox of h at y
};

Recovery recover(const SubproblemSpec& spec, const Vec& xi) {
  Recovery rec;
  rec.u = spec.z_anchor + xi / spec.gamma2;
  rec.y = (spec.gamma1 * spec.x_anchor - spec.A->transpose() * xi) / spec.r_k;
  rec.z = prox_loss(spec.q, spec.n(), spec.gamma2, rec.u);
  rec.x = prox_weighted_group(spec.v, *spec.groups, 0.0, spec.r_k, rec.y);
  return rec;
}

double dual_objective_at(const SubproblemSpec& spec, const Vec& xi, const Recovery& rec) {
  const double env_f1 =
      eval_loss(rec.z, spec.q) + 0.5 * spec.gamma2 * (rec.z - rec.u).squaredNorm();
  const double env_h =
      spec.h_value(rec.x) + 0.5 * spec.r_k * (rec.x - rec.y).squaredNorm();
  return spec.b->dot(xi) + 0.5 * spec.gamma2 * rec.u.squaredNorm() - env_f1 - env_h +
         0.5 * spec.r_k * rec.y.squaredNorm();
}

Vec dual_gradient_at(const SubproblemSpec& spec, const Recovery& rec) {
  return *spec.b + rec.z - (*spec.A) * rec.x;
}

}  // namespace

SubproblemSpec::SubproblemSpec(const ProblemData& data, Vec v_in, Vec x_anchor_in,
                               Vec z_anchor_in, double gamma1_in, double gamma2_in,
                               double mu_in)
    : A(&data.A),
      b(&data.b),
      groups(&data.groups),
      q(data.q),
      v(std::move(v_in)),
      x_anchor(std::move(x_anchor_in)),
      z_anchor(std::move(z_anchor_in)),
      gamma1(gamma1_in),
      gamma2(gamma2_in),
      mu(mu_in),
      r_k(mu_in + gamma1_in) {
  if (!(gamma1 > 0.0) || !(gamma2 > 0.0))
    throw std::invalid_argument("SubproblemSpec: gamma1, gamma2 must be > 0");
  if (!(mu >= 0.0)) throw std::invalid_argument("SubproblemSpec: mu must be >= 0");
  if (v.size() != groups->m() || x_anchor.size() != A->cols() ||
      z_anchor.size() != A->rows())
    throw std::invalid_argument("SubproblemSpec: dimension mismatch");
}

double SubproblemSpec::h_value(const Vec& x) const {
  double s = 0.0;
  for (int i = 0; i < groups->m(); ++i) s += v[i] * groups->group_norm(x, i);
  return s;
}

std::pair<Vec, Vec> recover_primal(const SubproblemSpec& spec, const Vec& xi) {
  Recovery rec = recover(spec, xi);
  return {std::move(rec.x), std::move(rec.z)};
}

double dual_objective(const SubproblemSpec& spec, const Vec& xi) {
  return dual_objective_at(spec, xi, recover(spec, xi));
}

Vec dual_gradient(const SubproblemSpec& spec, const Vec& xi) {
  return dual_gradient_at(spec, recover(spec, xi));
}

double primal_objective(const SubproblemSpec& spec, const Vec& x, const Vec& z) {
  return eval_loss(z, spec.q) + 0.5 * spec.mu * x.squaredNorm() + spec.h_value(x) +
         0.5 * spec.gamma1 * (x - spec.x_anchor).squaredNorm() +
         0.5 * spec.gamma2 * (z - spec.z_anchor).squaredNorm();
}

double duality_gap(const SubproblemSpec& spec, const Vec& xi) {
  const Recovery rec = recover(spec, xi);
  const double constant = 0.5 * (spec.gamma1 * spec.x_anchor.squaredNorm() +
                                 spec.gamma2 * spec.z_anchor.squaredNorm());
  return primal_objective(spec, rec.x, rec.z) + dual_objective_at(spec, xi, rec) -
         constant;
}

double subproblem_kkt_residual(const SubproblemSpec& spec, const Vec& x, const Vec& z,
                               const Vec& xi) {
  // xi in df1(z) + gamma2 (z - z_anchor), and
  // -A^T xi - mu x - gamma1 (x - x_anchor) in dh(x), via unit-step prox tests.
  const Vec z_arg = z + xi - spec.gamma2 * (z - spec.z_anchor);
  const double r1 = (z - prox_loss(spec.q, spec.n(), 1.0, z_arg)).squaredNorm();
  const Vec x_arg = x - spec.A->transpose() * xi - spec.mu * x -
                    spec.gamma1 * (x - spec.x_anchor);
  const double r2 =
      (x - prox_weighted_group(spec.v, *spec.groups, 0.0, 1.0, x_arg)).squaredNorm();
  const double r3 = ((*spec.A) * x - z - *spec.b).squaredNorm();
  return std::sqrt(r1 + r2 + r3) / (1.0 + spec.b->norm());
}

Vec newton_matrix_apply(const SubproblemSpec& spec, const Vec& xi, double varrho,
                        const Vec& d) {
  const Recovery rec = recover(spec, xi);
  const LossProxJacobian jf = jac_prox_loss(spec.q, spec.n(), spec.gamma2, rec.u);
  const GroupProxJacobian jh =
      jac_prox_weighted_group(spec.v, *spec.groups, 0.0, spec.r_k, rec.y);
  const Vec atd = spec.A->transpose() * d;
  return varrho * d + jf.apply(d) / spec.gamma2 +
         ((*spec.A) * jh.apply(*spec.groups, atd)) / spec.r_k;
}

namespace {

// Dense n x n assembly of W = varrho I + gamma2^{-1} U + r^{-1} A V A^T.
Mat assemble_newton_matrix(const SubproblemSpec& spec, const Recovery& rec,
                           double varrho, const LossProxJacobian& jf,
                           const GroupProxJacobian& jh) {
  const int n = spec.n();
  Mat W = Mat::Zero(n, n);
  if (spec.q == 2) {
    if (!jf.block.is_zero()) {
      W.diagonal().array() += jf.block.scale * jf.block.alpha / spec.gamma2;
      if (jf.block.beta != 0.0)
        W += (jf.block.scale * jf.block.beta / spec.gamma2) *
             (jf.block.dir * jf.block.dir.transpose());
    }
  } else {
    W.diagonal() += jf.diag / spec.gamma2;
  }
  W.diagonal().array() += varrho;
  for (int i = 0; i < spec.groups->m(); ++i) {
    const SpectralBlock& blk = jh.blocks[static_cast<size_t>(i)];
    if (blk.is_zero()) continue;
    const auto& idx = spec.groups->group(i);
    Mat Ai(n, idx.size());
    for (size_t t = 0; t < idx.size(); ++t) Ai.col(static_cast<int>(t)) = spec.A->col(idx[t]);
    const double c = blk.scale / spec.r_k;
    W += (c * blk.alpha) * (Ai * Ai.transpose());
    if (blk.beta != 0.0) {
      const Vec w = Ai * blk.dir;
      W += (c * blk.beta) * (w * w.transpose());
    }
  }
  return W;
}

// W d = -g by conjugate gradients on the operator form.
bool cg_solve(const SubproblemSpec& spec, const Vec& xi, double varrho, const Vec& g,
              double tol, int max_iter, Vec* out) {
  const int n = static_cast<int>(g.size());
  Vec d = Vec::Zero(n);
  Vec res = -g;  // residual of W d + g at d = 0
  Vec dir = res;
  double rs = res.squaredNorm();
  const double tol2 = tol * tol;
  for (int it = 0; it < max_iter && rs > tol2; ++it) {
    const Vec Wdir = newton_matrix_apply(spec, xi, varrho, dir);
    const double alpha = rs / dir.dot(Wdir);
    d += alpha * dir;
    res -= alpha * Wdir;
    const double rs_new = res.squaredNorm();
    dir = res + (rs_new / rs) * dir;
    rs = rs_new;
  }
  *out = std::move(d);
  return rs <= tol2;
}

}  // namespace

NewtonSolveResult solve_newton_system(const SubproblemSpec& spec, const Vec& xi,
                                      const Vec& grad, double varrho, double tol) {
  NewtonSolveResult result;
  const int n = spec.n();
  if (grad.norm() == 0.0) {
    result.d = Vec::Zero(n);
    return result;
  }
  const Recovery rec = recover(spec, xi);
  const LossProxJacobian jf = jac_prox_loss(spec.q, spec.n(), spec.gamma2, rec.u);
  const GroupProxJacobian jh =
      jac_prox_weighted_group(spec.v, *spec.groups, 0.0, spec.r_k, rec.y);

  SncgOptions defaults;
  if (n <= defaults.direct_n_cap) {
    // D = varrho I + gamma2^{-1} U is diagonal (q=1) or diagonal-plus-rank-one
    // (q=2); its inverse is closed form.
    Vec diag;
    double rank1_coef = 0.0;
    Vec rank1_dir;
    if (spec.q == 2) {
      const double base = varrho + (jf.block.is_zero()
                                        ? 0.0
                                        : jf.block.scale * jf.block.alpha / spec.gamma2);
      diag = Vec::Constant(n, base);
      if (!jf.block.is_zero() && jf.block.beta != 0.0) {
        rank1_coef = jf.block.scale * jf.block.beta / spec.gamma2;
        rank1_dir = jf.block.dir;
      }
    } else {
      diag = (jf.diag / spec.gamma2).array() + varrho;
    }
    const auto apply_d_inv = [&](const Vec& g) -> Vec {
      Vec out = g.cwiseQuotient(diag);
      if (rank1_coef != 0.0) {
        // Sherman-Morrison; diag is constant on the q=2 path.
        const double d0 = diag[0];
        out -= (rank1_coef / (d0 * (d0 + rank1_coef))) * rank1_dir.dot(g) * rank1_dir;
      }
      return out;
    };

    int p_act = 0;
    for (int i = 0; i < spec.groups->m(); ++i)
      if (!jh.blocks[static_cast<size_t>(i)].is_zero())
        p_act += static_cast<int>(spec.groups->group(i).size());

    if (p_act == 0) {
      result.d = -apply_d_inv(grad);
    } else if (p_act <= n) {
      // W = D + B B^T with one column slab per active group:
      // B_i = A_{J_i} V_i^{1/2} / sqrt(r_k). Woodbury on the p_act capacitance.
      Mat B(n, p_act);
      int col = 0;
      const double inv_sqrt_r = 1.0 / std::sqrt(spec.r_k);
      for (int i = 0; i < spec.groups->m(); ++i) {
        const SpectralBlock& blk = jh.blocks[static_cast<size_t>(i)];
        if (blk.is_zero()) continue;
        const auto& idx = spec.groups->group(i);
        const int d = static_cast<int>(idx.size());
        Mat Ai(n, d);
        for (int t = 0; t < d; ++t) Ai.col(t) = spec.A->col(idx[static_cast<size_t>(t)]);
        const double sa = std::sqrt(blk.scale * blk.alpha);
        Mat slab = sa * Ai;
        if (blk.beta != 0.0) {
          const double sab = std::sqrt(blk.scale * (blk.alpha + blk.beta));
          slab += ((sab - sa) * (Ai * blk.dir)) * blk.dir.transpose();
        }
        B.middleCols(col, d) = inv_sqrt_r * slab;
        col += d;
      }
      Mat Dinv_B(n, p_act);
      for (int c = 0; c < p_act; ++c) Dinv_B.col(c) = apply_d_inv(B.col(c));
      Mat cap = B.transpose() * Dinv_B;
      cap.diagonal().array() += 1.0;
      const Eigen::LLT<Mat> llt(cap);
      if (llt.info() == Eigen::Success) {
        const Vec dinv_g = apply_d_inv(grad);
        result.d = -(dinv_g - Dinv_B * llt.solve(B.transpose() * dinv_g));
      }
    }
    if (result.d.size() == 0) {
      const Mat W = assemble_newton_matrix(spec, rec, varrho, jf, jh);
      result.d = -Eigen::LDLT<Mat>(W).solve(grad);
    }
    result.residual = (newton_matrix_apply(spec, xi, varrho, result.d) + grad).norm();
    if (result.residual <= tol) return result;
    // fall through to CG on the rare direct-solve miss
  }

  result.used_cg = true;
  Vec d_cg;
  const bool ok = cg_solve(spec, xi, varrho, grad, tol, defaults.cg_max_iter, &d_cg);
  if (ok || (result.d.size() == 0 && d_cg.dot(grad) < 0.0)) {
    result.d = std::move(d_cg);
    result.residual = (newton_matrix_apply(spec, xi, varrho, result.d) + grad).norm();
    if (result.residual <= tol || ok) return result;
  }
  if (result.d.size() != 0 && result.d.dot(grad) < 0.0) return result;
  std::cerr << "gsreg: newton system solve failed, using steepest descent\n";
  result.fallback = true;
  result.d = -grad;
  result.residual = (newton_matrix_apply(spec, xi, varrho, result.d) + grad).norm();
  return result;
}

SncgResult sncg_solve(const SubproblemSpec& spec, const Vec& xi0, double varrho,
                      double tol_grad, const SncgOptions& opts,
                      const std::function<bool(const Vec&, const Vec&)>& extra_stop) {
  SncgResult result;
  result.xi = xi0;
  const Vec anchor = xi0;

  const auto upsilon = [&](const Vec& xi) {
    return dual_objective(spec, xi) + 0.5 * varrho * (xi - anchor).squaredNorm();
  };
  const auto upsilon_grad = [&](const Vec& xi) -> Vec {
    return dual_gradient(spec, xi) + varrho * (xi - anchor);
  };

  Vec xi = xi0;
  Vec g = upsilon_grad(xi);
  double f = upsilon(xi);
  result.grad_norms.push_back(g.norm());

  for (int l = 0; l < opts.max_iter; ++l) {
    const double gnorm = g.norm();
    if (gnorm <= tol_grad) {
      result.converged = true;
      break;
    }
    if (extra_stop && extra_stop(xi, g)) {
      result.converged = true;
      break;
    }
    const double newton_tol =
        std::min(opts.eta_bar, std::pow(gnorm, 1.0 + opts.varsigma));
    const NewtonSolveResult ns = solve_newton_system(spec, xi, g, varrho, newton_tol);
    Vec d = ns.d;
    double gd = g.dot(d);
    if (!(gd < 0.0)) {
      d = -g;
      gd = -gnorm * gnorm;
    }

    // Strong Wolfe by backtracking: smallest m with both conditions.
    double step = 1.0;
    double f_accept = f;
    Vec xi_accept;
    Vec g_accept;
    bool accepted = false;
    double armijo_step = -1.0;
    double armijo_f = 0.0;
    Vec armijo_xi;
    for (int mtrial = 0; mtrial <= opts.max_halvings; ++mtrial) {
      const Vec xi_try = xi + step * d;
      const double f_try = upsilon(xi_try);
      if (f_try <= f + opts.c1 * step * gd) {
        if (armijo_step < 0.0) {
          armijo_step = step;
          armijo_f = f_try;
          armijo_xi = xi_try;
        }
        const Vec g_try = upsilon_grad(xi_try);
        if (std::abs(g_try.dot(d)) <= opts.c2 * std::abs(gd)) {
          xi_accept = xi_try;
          g_accept = g_try;
          f_accept = f_try;
          accepted = true;
          break;
        }
      }
      step *= opts.beta;
    }
    if (!accepted) {
      // Objective differences saturate in double precision near the root;
      // accept the full Newton step whenever it still shrinks the gradient.
      const Vec xi_full = xi + d;
      const Vec g_full = upsilon_grad(xi_full);
      if (g_full.norm() <= 0.9 * gnorm) {
        xi_accept = xi_full;
        f_accept = upsilon(xi_full);
        g_accept = g_full;
      } else if (armijo_step >= 0.0) {
        result.line_search_failures = true;
        xi_accept = armijo_xi;
        f_accept = armijo_f;
        g_accept = upsilon_grad(xi_accept);
        if (g_accept.norm() >= gnorm &&
            (xi_accept - xi).norm() <= 1e-14 * (1.0 + xi.norm()))
          break;  // pure roundoff step, numerical floor reached
      } else {
        result.line_search_failures = true;
        std::cerr << "gsreg: sncg line search failed, taking smallest step\n";
        xi_accept = xi + step / opts.beta * d;
        f_accept = upsilon(xi_accept);
        g_accept = upsilon_grad(xi_accept);
        if (g_accept.norm() >= gnorm) break;  // numerical floor reached
      }
    }
    xi = std::move(xi_accept);
    f = f_accept;
    g = std::move(g_accept);
    result.iters = l + 1;
    result.grad_norms.push_back(g.norm());
  }
  result.xi = std::move(xi);
  return result;
}

PpaResult ppa_solve(const SubproblemSpec& spec, const Vec& xi0, double eps,
                    const PpaOptions& opts) {
  PpaResult result;
  const double scale = 1.0 + spec.b->norm();

  const auto outer_ok = [&](const Vec& xi) {
    const double grad_scaled = dual_gradient(spec, xi).norm() / scale;
    if (grad_scaled > eps) return false;
    return std::abs(duality_gap(spec, xi)) / scale <= eps;
  };

  Vec xi = xi0;
  double varrho = opts.varrho0;
  double alpha = opts.alpha0;
  for (int j = 0; j < opts.max_outer; ++j) {
    const Vec anchor = xi;
    const auto stop = [&](const Vec& xi_c, const Vec& g_upsilon) {
      const double step_norm = (xi_c - anchor).norm();
      if (step_norm > 0.0 && g_upsilon.norm() <= alpha * varrho * step_norm) return true;
      return outer_ok(xi_c);
    };
    const SncgResult inner = sncg_solve(spec, anchor, varrho, 0.0, opts.sncg, stop);
    xi = inner.xi;
    result.sncg_iters_total += inner.iters;
    result.outer_iters = j + 1;
    if (outer_ok(xi)) {
      result.converged = true;
      break;
    }
    varrho = std::max(opts.varrho_floor, 0.5 * varrho);
    alpha *= 0.5;
  }
  auto [x, z] = recover_primal(spec, xi);
  result.grad_scaled = dual_gradient(spec, xi).norm() / scale;
  result.gap_scaled = std::abs(duality_gap(spec, xi)) / scale;
  result.x = std::move(x);
  result.z = std::move(z);
  result.xi = std::move(xi);
  return result;
}

}  // namespace gsreg
