#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ortho/linalg.hpp"

namespace ortho {

inline constexpr int kMaxSampleAttempts = 10'000;

/// Derives an independent stream seed for trial `index` of a run seeded
/// with `master` (splitmix64 finalizer). Trials seeded this way can be
/// evaluated in any order, or concurrently, without changing results.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Seeded integer source. std::mt19937_64 has a standardized output
/// sequence; the bounded mapping is done here rather than through
/// std::uniform_int_distribution, whose algorithm is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// Uniform index in [0, n).
  std::size_t index(std::size_t n);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Integer vector with entries uniform in [-bound, bound].
Vector sample_integer_vector(Rng& rng, std::size_t dim, std::int64_t bound);

/// Rejection-samples an independent frame with integer entries in
/// [-bound, bound]. Throws Generation error after kMaxSampleAttempts.
Frame sample_frame(std::size_t dim, std::size_t m, std::int64_t bound, std::uint64_t seed);

struct SpanSample {
  Vector point;
  std::vector<Rational> coefficients;
};

/// x = Σ c_i a_i with integer c_i in [-bound, bound]; returns the drawn c too.
SpanSample sample_span_combination(const Frame& frame, std::int64_t bound, std::uint64_t seed);

inline Vector sample_span_point(const Frame& frame, std::int64_t bound, std::uint64_t seed) {
  return sample_span_combination(frame, bound, seed).point;
}

}  // namespace ortho
