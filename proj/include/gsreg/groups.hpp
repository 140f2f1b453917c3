#pragma once

#include <Eigen/Core>
#include <vector>

namespace gsreg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Partition of the feature indices {0, ..., p-1} into m disjoint groups.
// Groups are ordered, nonempty, internally sorted ascending, and together
// cover every index exactly once; the constructor rejects anything else.
class GroupStructure {
 public:
  GroupStructure() = default;
  explicit GroupStructure(std::vector<std::vector<int>> groups);

  // Contiguous groups of size ceil(p/m), the last one possibly shorter.
  static GroupStructure contiguous(int p, int m);
  // Contiguous groups of size floor(p/m) or floor(p/m)+1; works for any m <= p.
  static GroupStructure balanced(int p, int m);
  static GroupStructure from_sizes(const std::vector<int>& sizes);

  int p() const { return p_; }
  int m() const { return static_cast<int>(groups_.size()); }
  const std::vector<int>& group(int i) const { return groups_[i]; }
  const std::vector<std::vector<int>>& groups() const { return groups_; }

  double group_norm(const Vec& x, int i) const;

 private:
  std::vector<std::vector<int>> groups_;
  int p_ = 0;
};

// G(x) = (||x_{J_1}||, ..., ||x_{J_m}||).
Vec group_norms(const Vec& x, const GroupStructure& groups);

}  // namespace gsreg
