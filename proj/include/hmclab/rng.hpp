#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace hmclab {

// Seeded pseudorandom stream. Independent streams are derived from a
// (master seed, stream id) pair through splitmix64, so chains and
// repetitions can each own a stream without sharing state. Normal
// variates are produced by Box-Muller on the generator's uniforms,
// keeping trajectories bit-reproducible across platforms (mt19937_64
// and the transform are both fully specified).
class RngStream {
 public:
  explicit RngStream(std::uint64_t master_seed, std::uint64_t stream_id = 0)
      : engine_(derive_seed(master_seed, stream_id)) {}

  static std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream_id) {
    // splitmix64 over the combined pair
    std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in (0, 1]
  double uniform() {
    const std::uint64_t bits = engine_() >> 11;  // 53 bits
    return (static_cast<double>(bits) + 1.0) * 0x1p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  Eigen::VectorXd normal_vector(Eigen::Index d) {
    Eigen::VectorXd out(d);
    for (Eigen::Index i = 0; i < d; ++i) out[i] = normal();
    return out;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace hmclab
