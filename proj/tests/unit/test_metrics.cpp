#include <doctest.h>

#include "gsreg/metrics.hpp"

using namespace gsreg;

TEST_CASE("metric_nnz") {
  CHECK(metric_nnz(Vec::Zero(3)) == 0);
  Vec x(3);
  x << 1.0, 1e-9, 0.5;
  CHECK(metric_nnz(x) == 2);
  CHECK(metric_nnz(Vec::Ones(3)) == 3);
}

TEST_CASE("metric_ng") {
  const GroupStructure g = GroupStructure::contiguous(4, 2);
  CHECK(metric_ng(Vec::Zero(4), g) == 0);
  Vec x(4);
  x << 1, 2, 0, 0;
  CHECK(metric_ng(x, g) == 1);
  x << 1, 2, 1e-12, 0;
  CHECK(metric_ng(x, g) == 1);
  x << 1, 2, 3, 4;
  CHECK(metric_ng(x, g) == 2);
}

TEST_CASE("metric_l2err") {
  Vec x(2), xs(2);
  xs << 3, 4;
  x = xs;
  CHECK(metric_l2err(x, xs) == 0.0);
  CHECK(metric_l2err(Vec::Zero(2), xs) == doctest::Approx(1.0));
  CHECK(metric_l2err(Vec(1.1 * xs), xs) == doctest::Approx(0.1));

  bool flagged = false;
  CHECK(metric_l2err(x, Vec::Zero(2), &flagged) == doctest::Approx(5.0));
  CHECK(flagged);
  metric_l2err(x, xs, &flagged);
  CHECK_FALSE(flagged);
}
