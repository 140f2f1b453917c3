#include "gsreg/prox.hpp"

#include <cmath>
#include <stdexcept>

namespace gsreg {

Vec prox_loss(int q, int n, double gamma, const Vec& u) {
  if (!(gamma > 0.0)) throw std::invalid_argument("prox_loss: gamma must be > 0");
  if (u.size() != n) throw std::invalid_argument("prox_loss: u has wrong length");
  const double thresh = 1.0 / (gamma * std::sqrt(static_cast<double>(n)));
  if (q == 2) {
    const double norm = u.norm();
    if (norm <= thresh) return Vec::Zero(n);
    return u * (1.0 - thresh / norm);
  }
  if (q == 1) {
    Vec out(n);
    for (int i = 0; i < n; ++i) {
      const double a = std::abs(u[i]) - thresh;
      out[i] = a > 0.0 ? (u[i] > 0.0 ? a : -a) : 0.0;
    }
    return out;
  }
  throw std::invalid_argument("prox_loss: q must be 1 or 2");
}

Vec prox_weighted_group(const Vec& v, const GroupStructure& groups, double mu,
                        double gamma, const Vec& z) {
  if (!(gamma > 0.0)) throw std::invalid_argument("prox_weighted_group: gamma must be > 0");
  if (!(mu >= 0.0)) throw std::invalid_argument("prox_weighted_group: mu must be >= 0");
  if (v.size() != groups.m() || z.size() != groups.p())
    throw std::invalid_argument("prox_weighted_group: dimension mismatch");
  const double ridge = gamma / (gamma + mu);
  Vec out = Vec::Zero(z.size());
  for (int i = 0; i < groups.m(); ++i) {
    const double norm = groups.group_norm(z, i);
    if (norm * gamma <= v[i]) continue;  // group dies; also covers norm == 0
    const double f = ridge * (1.0 - v[i] / (gamma * norm));
    for (int j : groups.group(i)) out[j] = f * z[j];
  }
  return out;
}

Vec project_ball(double radius, const Vec& y) {
  if (!(radius >= 0.0)) throw std::invalid_argument("project_ball: radius must be >= 0");
  const double norm = y.norm();
  if (norm <= radius) return y;
  if (radius == 0.0) return Vec::Zero(y.size());
  return y * (radius / norm);
}

Mat jac_project_ball(double radius, const Vec& y) {
  if (!(radius > 0.0)) throw std::invalid_argument("jac_project_ball: radius must be > 0");
  const auto d = y.size();
  const double norm = y.norm();
  if (norm <= radius) return Mat::Identity(d, d);
  return (radius / norm) * (Mat::Identity(d, d) - (y * y.transpose()) / (norm * norm));
}

Vec SpectralBlock::apply(const Vec& d) const {
  if (scale == 0.0) return Vec::Zero(d.size());
  Vec out = (scale * alpha) * d;
  if (beta != 0.0) out += (scale * beta * dir.dot(d)) * dir;
  return out;
}

Mat SpectralBlock::dense(int dim) const {
  if (scale == 0.0) return Mat::Zero(dim, dim);
  Mat out = (scale * alpha) * Mat::Identity(dim, dim);
  if (beta != 0.0) out += (scale * beta) * (dir * dir.transpose());
  return out;
}

Vec GroupProxJacobian::apply(const GroupStructure& groups, const Vec& d) const {
  Vec out = Vec::Zero(d.size());
  for (int i = 0; i < groups.m(); ++i) {
    const SpectralBlock& blk = blocks[static_cast<size_t>(i)];
    if (blk.is_zero()) continue;
    const auto& idx = groups.group(i);
    if (blk.is_scaled_identity()) {
      for (int j : idx) out[j] = blk.scale * blk.alpha * d[j];
      continue;
    }
    double dot = 0.0;
    for (size_t t = 0; t < idx.size(); ++t) dot += blk.dir[static_cast<int>(t)] * d[idx[t]];
    for (size_t t = 0; t < idx.size(); ++t)
      out[idx[t]] = blk.scale * (blk.alpha * d[idx[t]] + blk.beta * dot * blk.dir[static_cast<int>(t)]);
  }
  return out;
}

Mat GroupProxJacobian::dense(const GroupStructure& groups) const {
  Mat out = Mat::Zero(groups.p(), groups.p());
  for (int i = 0; i < groups.m(); ++i) {
    const auto& idx = groups.group(i);
    const Mat blk = blocks[static_cast<size_t>(i)].dense(static_cast<int>(idx.size()));
    for (size_t r = 0; r < idx.size(); ++r)
      for (size_t c = 0; c < idx.size(); ++c)
        out(idx[r], idx[c]) = blk(static_cast<int>(r), static_cast<int>(c));
  }
  return out;
}

GroupProxJacobian jac_prox_weighted_group(const Vec& v, const GroupStructure& groups,
                                          double mu, double gamma, const Vec& z) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("jac_prox_weighted_group: gamma must be > 0");
  GroupProxJacobian jac;
  jac.blocks.resize(static_cast<size_t>(groups.m()));
  const double ridge = gamma / (gamma + mu);
  for (int i = 0; i < groups.m(); ++i) {
    SpectralBlock& blk = jac.blocks[static_cast<size_t>(i)];
    const double norm = groups.group_norm(z, i);
    if (v[i] == 0.0) {  // prox is the linear map ridge*I on this group
      blk.scale = ridge;
      blk.alpha = 1.0;
      continue;
    }
    if (norm * gamma <= v[i]) continue;  // zero block at and below the kink
    blk.scale = ridge;
    const double shrink = v[i] / (gamma * norm);
    blk.alpha = 1.0 - shrink;
    blk.beta = shrink;
    const auto& idx = groups.group(i);
    blk.dir.resize(static_cast<int>(idx.size()));
    for (size_t t = 0; t < idx.size(); ++t) blk.dir[static_cast<int>(t)] = z[idx[t]] / norm;
  }
  return jac;
}

Vec LossProxJacobian::apply(const Vec& d) const {
  if (q == 2) return block.apply(d);
  return diag.cwiseProduct(d);
}

Mat LossProxJacobian::dense(int n) const {
  if (q == 2) return block.dense(n);
  return diag.asDiagonal();
}

LossProxJacobian jac_prox_loss(int q, int n, double gamma, const Vec& u) {
  if (!(gamma > 0.0)) throw std::invalid_argument("jac_prox_loss: gamma must be > 0");
  LossProxJacobian jac;
  jac.q = q;
  const double thresh = 1.0 / (gamma * std::sqrt(static_cast<double>(n)));
  if (q == 2) {
    const double norm = u.norm();
    if (norm <= thresh) return jac;  // zero block
    jac.block.scale = 1.0;
    jac.block.alpha = 1.0 - thresh / norm;
    jac.block.beta = thresh / norm;
    jac.block.dir = u / norm;
    return jac;
  }
  if (q == 1) {
    jac.diag = Vec::Zero(n);
    for (int i = 0; i < n; ++i) jac.diag[i] = std::abs(u[i]) > thresh ? 1.0 : 0.0;
    return jac;
  }
  throw std::invalid_argument("jac_prox_loss: q must be 1 or 2");
}

}  // namespace gsreg
