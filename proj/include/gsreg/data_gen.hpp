#pragma once

#include <cstdint>
#include <string>

#include "gsreg/problem.hpp"

namespace gsreg {

enum class CovKind { Identity, Ar, CompoundSymmetry };

// Covariance of the design rows: identity, AR with Sigma_ij = param^|i-j|, or
// compound symmetry with off-diagonal param and unit diagonal.
struct CovarianceSpec {
  CovKind kind = CovKind::Identity;
  double param = 0.0;

  // Accepts "identity", "ar05", "ar08", "cs06", "cs08", "ar:<rho>", "cs:<alpha>".
  static CovarianceSpec parse(const std::string& name);
  std::string name() const;
};

enum class NoiseLaw { Normal100, ScaledT4, Cauchy, MixedNormal, Laplace };

struct NoiseSpec {
  NoiseLaw law = NoiseLaw::Normal100;
  double group_sparsity = 0.9;  // fraction of noise groups zeroed, in [0,1]
  int noise_groups = 50;        // contiguous groups the noise vector splits into

  static NoiseLaw parse_law(const std::string& name);
  static std::string law_name(NoiseLaw law);
};

Mat gen_covariance(const CovarianceSpec& kind, int p);

// Rows i.i.d. N(0, Sigma) via the Cholesky factor; bitwise deterministic per seed.
Mat sample_design(int n, const Mat& sigma, std::uint64_t seed);

// Noise vector: entries outside the selected noise-group support are exactly 0;
// active entries are i.i.d. draws from the selected law.
Vec gen_noise(const NoiseSpec& spec, int n, std::uint64_t seed);

// r_bar groups chosen at random carry x*_{J_i} = 5*randn(|J_i|) - 0.5.
std::pair<Vec, std::vector<int>> gen_truth(const GroupStructure& groups, int r_bar,
                                           std::uint64_t seed);

struct SyntheticSpec {
  int n = 100;
  int p = 500;
  int m = 50;
  int r_bar = 5;
  CovarianceSpec cov;
  NoiseSpec noise;
};

// Full instance with b = A x* + noise and truth attached.
ProblemData gen_synthetic(const SyntheticSpec& spec, int q, double mu,
                          std::uint64_t seed);

}  // namespace gsreg
