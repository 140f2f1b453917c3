#include "gsreg/data_gen.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gsreg/rng.hpp"

namespace gsreg {

namespace {

// Stream ids for the per-purpose substreams of one instance seed.
constexpr std::uint64_t kDesignStream = 1;
constexpr std::uint64_t kNoiseStream = 2;
constexpr std::uint64_t kTruthStream = 3;

// Deterministic choice of `count` items out of {0..total-1} (partial
// Fisher-Yates), returned sorted.
std::vector<int> sample_without_replacement(int total, int count, SplitMix64& rng) {
  std::vector<int> pool(static_cast<size_t>(total));
  for (int i = 0; i < total; ++i) pool[static_cast<size_t>(i)] = i;
  for (int i = 0; i < count; ++i) {
    const int j = i + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(total - i));
    std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
  }
  std::vector<int> out(pool.begin(), pool.begin() + count);
  std::sort(out.begin(), out.end());
  return out;
}

double draw_noise(NoiseLaw law, SplitMix64& rng) {
  switch (law) {
    case NoiseLaw::Normal100:
      return 10.0 * rng.next_normal();
    case NoiseLaw::ScaledT4:
      return std::sqrt(2.0) * rng.next_student_t(4);
    case NoiseLaw::Cauchy:
      return rng.next_cauchy();
    case NoiseLaw::MixedNormal: {
      const double sigma = 1.0 + 4.0 * rng.next_uniform();
      return sigma * rng.next_normal();
    }
    case NoiseLaw::Laplace:
      return rng.next_laplace();
  }
  return 0.0;
}

}  // namespace

CovarianceSpec CovarianceSpec::parse(const std::string& name) {
  if (name == "identity" || name == "id") return {CovKind::Identity, 0.0};
  if (name == "ar05") return {CovKind::Ar, 0.5};
  if (name == "ar08") return {CovKind::Ar, 0.8};
  if (name == "cs06") return {CovKind::CompoundSymmetry, 0.6};
  if (name == "cs08") return {CovKind::CompoundSymmetry, 0.8};
  if (name.rfind("ar:", 0) == 0) return {CovKind::Ar, std::stod(name.substr(3))};
  if (name.rfind("cs:", 0) == 0)
    return {CovKind::CompoundSymmetry, std::stod(name.substr(3))};
  throw std::invalid_argument("unknown covariance kind: " + name);
}

std::string CovarianceSpec::name() const {
  switch (kind) {
    case CovKind::Identity:
      return "identity";
    case CovKind::Ar:
      return param == 0.5 ? "ar05" : (param == 0.8 ? "ar08" : "ar:" + std::to_string(param));
    case CovKind::CompoundSymmetry:
      return param == 0.6 ? "cs06" : (param == 0.8 ? "cs08" : "cs:" + std::to_string(param));
  }
  return "identity";
}

NoiseLaw NoiseSpec::parse_law(const std::string& name) {
  if (name == "normal100") return NoiseLaw::Normal100;
  if (name == "t4") return NoiseLaw::ScaledT4;
  if (name == "cauchy") return NoiseLaw::Cauchy;
  if (name == "mixed") return NoiseLaw::MixedNormal;
  if (name == "laplace") return NoiseLaw::Laplace;
  throw std::invalid_argument("unknown noise law: " + name);
}

std::string NoiseSpec::law_name(NoiseLaw law) {
  switch (law) {
    case NoiseLaw::Normal100:
      return "normal100";
    case NoiseLaw::ScaledT4:
      return "t4";
    case NoiseLaw::Cauchy:
      return "cauchy";
    case NoiseLaw::MixedNormal:
      return "mixed";
    case NoiseLaw::Laplace:
      return "laplace";
  }
  return "normal100";
}

Mat gen_covariance(const CovarianceSpec& spec, int p) {
  if (p < 1) throw std::invalid_argument("gen_covariance: p must be >= 1");
  switch (spec.kind) {
    case CovKind::Identity:
      return Mat::Identity(p, p);
    case CovKind::Ar: {
      if (!(spec.param > 0.0 && spec.param < 1.0))
        throw std::invalid_argument("gen_covariance: AR parameter must be in (0,1)");
      Mat sigma(p, p);
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) sigma(i, j) = std::pow(spec.param, std::abs(i - j));
      return sigma;
    }
    case CovKind::CompoundSymmetry: {
      if (!(spec.param > 0.0 && spec.param < 1.0))
        throw std::invalid_argument("gen_covariance: CS parameter must be in (0,1)");
      Mat sigma = Mat::Constant(p, p, spec.param);
      sigma.diagonal().setOnes();
      return sigma;
    }
  }
  return Mat::Identity(p, p);
}

Mat sample_design(int n, const Mat& sigma, std::uint64_t seed) {
  const int p = static_cast<int>(sigma.cols());
  const Eigen::LLT<Mat> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("sample_design: covariance is not positive definite");
  const Mat chol_t = llt.matrixL().transpose();
  SplitMix64 rng = SplitMix64::stream(seed, kDesignStream);
  Mat z(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) z(i, j) = rng.next_normal();
  return z * chol_t;
}

Vec gen_noise(const NoiseSpec& spec, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_noise: n must be >= 1");
  if (!(spec.group_sparsity >= 0.0 && spec.group_sparsity <= 1.0))
    throw std::invalid_argument("gen_noise: group_sparsity must be in [0,1]");
  const int m_noise = std::min(spec.noise_groups, n);
  const int zeroed =
      static_cast<int>(std::floor(spec.group_sparsity * m_noise + 1e-12));
  const int active_count = m_noise - zeroed;
  SplitMix64 rng = SplitMix64::stream(seed, kNoiseStream);
  const std::vector<int> support = sample_without_replacement(m_noise, active_count, rng);
  std::vector<char> is_active(static_cast<size_t>(m_noise), 0);
  for (int g : support) is_active[static_cast<size_t>(g)] = 1;

  const GroupStructure noise_groups = GroupStructure::balanced(n, m_noise);
  Vec noise = Vec::Zero(n);
  for (int g = 0; g < m_noise; ++g) {
    if (!is_active[static_cast<size_t>(g)]) continue;
    for (int j : noise_groups.group(g)) noise[j] = draw_noise(spec.law, rng);
  }
  return noise;
}

std::pair<Vec, std::vector<int>> gen_truth(const GroupStructure& groups, int r_bar,
                                           std::uint64_t seed) {
  if (r_bar < 0 || r_bar > groups.m())
    throw std::invalid_argument("gen_truth: need 0 <= r_bar <= m");
  SplitMix64 rng = SplitMix64::stream(seed, kTruthStream);
  const std::vector<int> support = sample_without_replacement(groups.m(), r_bar, rng);
  Vec x_star = Vec::Zero(groups.p());
  for (int g : support)
    for (int j : groups.group(g)) x_star[j] = 5.0 * rng.next_normal() - 0.5;
  return {std::move(x_star), support};
}

ProblemData gen_synthetic(const SyntheticSpec& spec, int q, double mu,
                          std::uint64_t seed) {
  ProblemData data;
  data.q = q;
  data.mu = mu;
  data.groups = GroupStructure::contiguous(spec.p, spec.m);
  const Mat sigma = gen_covariance(spec.cov, spec.p);
  data.A = sample_design(spec.n, sigma, seed);
  auto [x_star, support] = gen_truth(data.groups, spec.r_bar, seed);
  Vec noise = gen_noise(spec.noise, spec.n, seed);
  // b is assembled from the stored truth buffers so that replaying
  // A * truth->x_star + truth->noise reproduces it bit for bit.
  data.truth = Truth{std::move(x_star), std::move(support), std::move(noise)};
  data.b = data.A * data.truth->x_star + data.truth->noise;
  data.validate();
  return data;
}

}  // namespace gsreg
