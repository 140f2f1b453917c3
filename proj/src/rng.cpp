#include "gsreg/rng.hpp"

#include <cmath>

namespace gsreg {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

SplitMix64 SplitMix64::stream(std::uint64_t seed, std::uint64_t stream_id) {
  return SplitMix64(mix64(seed ^ mix64(stream_id * kGolden + 1)));
}

std::uint64_t SplitMix64::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double SplitMix64::next_uniform() {
  // 53-bit mantissa, shifted by half a ulp so 0 and 1 are excluded.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double SplitMix64::next_normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  cached_normal_ = r * std::sin(theta);
  has_cached_normal_ = true;
  return r * std::cos(theta);
}

double SplitMix64::next_cauchy() {
  return std::tan(M_PI * (next_uniform() - 0.5));
}

double SplitMix64::next_laplace() {
  const double u = next_uniform() - 0.5;
  return (u < 0 ? 1.0 : -1.0) * std::log(1.0 - 2.0 * std::abs(u));
}

double SplitMix64::next_student_t(int dof) {
  const double z = next_normal();
  double chi2 = 0.0;
  for (int i = 0; i < dof; ++i) {
    const double g = next_normal();
    chi2 += g * g;
  }
  return z / std::sqrt(chi2 / static_cast<double>(dof));
}

}  // namespace gsreg
