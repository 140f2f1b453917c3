#pragma once

#include <cstdint>

namespace gsreg {

// Counter-based generator: output i is mix64(seed + (i+1)*GOLDEN), i.e.
// splitmix64 seeded with `seed`. Seeds are portable across platforms and
// languages; every stochastic routine in this library draws from it.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  // Independent substream for (seed, stream_id) pairs.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1).
  double next_uniform();

  // Standard normal via Box-Muller; draws are consumed in pairs and the
  // second value is cached, so the draw sequence is reproducible.
  double next_normal();

  double next_cauchy();          // standard Cauchy, inverse CDF
  double next_laplace();         // scale 1, density 0.5 exp(-|u|)
  double next_student_t(int dof);  // via dof+1 normals

 private:
  std::uint64_t state_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace gsreg
