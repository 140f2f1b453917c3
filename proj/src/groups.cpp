#include "gsreg/groups.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gsreg {

GroupStructure::GroupStructure(std::vector<std::vector<int>> groups)
    : groups_(std::move(groups)) {
  int count = 0;
  int max_index = -1;
  for (const auto& g : groups_) {
    if (g.empty()) throw std::invalid_argument("GroupStructure: empty group");
    if (!std::is_sorted(g.begin(), g.end()))
      throw std::invalid_argument("GroupStructure: group indices not ascending");
    count += static_cast<int>(g.size());
    max_index = std::max(max_index, g.back());
    if (g.front() < 0) throw std::invalid_argument("GroupStructure: negative index");
  }
  p_ = count;
  if (max_index != p_ - 1)
    throw std::invalid_argument("GroupStructure: groups do not cover {0..p-1}");
  std::vector<char> seen(static_cast<size_t>(p_), 0);
  for (const auto& g : groups_)
    for (int j : g) {
      if (seen[static_cast<size_t>(j)])
        throw std::invalid_argument("GroupStructure: index " + std::to_string(j) +
                                    " appears in two groups");
      seen[static_cast<size_t>(j)] = 1;
    }
}

GroupStructure GroupStructure::contiguous(int p, int m) {
  if (p < 1 || m < 1 || m > p)
    throw std::invalid_argument("GroupStructure::contiguous: need 1 <= m <= p");
  const int size = (p + m - 1) / m;
  std::vector<std::vector<int>> groups;
  groups.reserve(static_cast<size_t>(m));
  int idx = 0;
  for (int i = 0; i < m; ++i) {
    std::vector<int> g;
    for (int j = 0; j < size && idx < p; ++j) g.push_back(idx++);
    groups.push_back(std::move(g));
  }
  if (idx != p || groups.back().empty())
    throw std::invalid_argument("GroupStructure::contiguous: m too large for ceil(p/m) sizing");
  return GroupStructure(std::move(groups));
}

GroupStructure GroupStructure::balanced(int p, int m) {
  if (p < 1 || m < 1 || m > p)
    throw std::invalid_argument("GroupStructure::balanced: need 1 <= m <= p");
  std::vector<int> sizes(static_cast<size_t>(m), p / m);
  for (int i = 0; i < p % m; ++i) ++sizes[static_cast<size_t>(i)];
  return from_sizes(sizes);
}

GroupStructure GroupStructure::from_sizes(const std::vector<int>& sizes) {
  std::vector<std::vector<int>> groups;
  groups.reserve(sizes.size());
  int idx = 0;
  for (int s : sizes) {
    if (s < 1) throw std::invalid_argument("GroupStructure::from_sizes: nonpositive size");
    std::vector<int> g(static_cast<size_t>(s));
    for (int j = 0; j < s; ++j) g[static_cast<size_t>(j)] = idx++;
    groups.push_back(std::move(g));
  }
  return GroupStructure(std::move(groups));
}

double GroupStructure::group_norm(const Vec& x, int i) const {
  double ss = 0.0;
  for (int j : groups_[static_cast<size_t>(i)]) ss += x[j] * x[j];
  return std::sqrt(ss);
}

Vec group_norms(const Vec& x, const GroupStructure& groups) {
  if (x.size() != groups.p())
    throw std::invalid_argument("group_norms: x has length " + std::to_string(x.size()) +
                                ", expected " + std::to_string(groups.p()));
  Vec out(groups.m());
  for (int i = 0; i < groups.m(); ++i) out[i] = groups.group_norm(x, i);
  return out;
}

}  // namespace gsreg
