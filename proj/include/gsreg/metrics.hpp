#pragma once

#include "gsreg/groups.hpp"

namespace gsreg {

// Entries counted nonzero when |x_i| > 1e-8 ||x||_inf; 0 for the zero vector.
int metric_nnz(const Vec& x);

// Groups counted nonzero when ||x_{J_i}|| > 1e-8 max_j ||x_{J_j}||.
int metric_ng(const Vec& x, const GroupStructure& groups);

// ||x_out - x_star|| / ||x_star||. For x_star = 0 the absolute norm is
// reported instead and *absolute_flagged (when given) is set.
double metric_l2err(const Vec& x_out, const Vec& x_star, bool* absolute_flagged = nullptr);

}  // namespace gsreg
