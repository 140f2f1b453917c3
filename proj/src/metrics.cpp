#include "gsreg/metrics.hpp"

namespace gsreg {

int metric_nnz(const Vec& x) {
  if (x.size() == 0) return 0;
  // The zero vector yields thresh 0; strict comparison then counts nothing.
  const double thresh = 1e-8 * x.lpNorm<Eigen::Infinity>();
  int count = 0;
  for (int i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > thresh) ++count;
  return count;
}

int metric_ng(const Vec& x, const GroupStructure& groups) {
  const Vec norms = group_norms(x, groups);
  const double max_norm = norms.maxCoeff();
  if (max_norm == 0.0) return 0;
  const double thresh = 1e-8 * max_norm;
  int count = 0;
  for (int i = 0; i < norms.size(); ++i)
    if (norms[i] > thresh) ++count;
  return count;
}

double metric_l2err(const Vec& x_out, const Vec& x_star, bool* absolute_flagged) {
  const double denom = x_star.norm();
  if (absolute_flagged) *absolute_flagged = denom == 0.0;
  if (denom == 0.0) return x_out.norm();
  return (x_out - x_star).norm() / denom;
}

}  // namespace gsreg
