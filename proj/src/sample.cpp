#include "ortho/sample.hpp"

#include <limits>

#include "ortho/errors.hpp"

namespace ortho {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());  // full 64-bit range
  // Reject the tail that would bias the modulo.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

std::size_t Rng::index(std::size_t n) {
  return static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(n) - 1));
}

Vector sample_integer_vector(Rng& rng, std::size_t dim, std::int64_t bound) {
  Vector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = Rational(static_cast<long>(rng.uniform(-bound, bound)));
  return v;
}

Frame sample_frame(std::size_t dim, std::size_t m, std::int64_t bound, std::uint64_t seed) {
  if (m < 2 || m > dim) {
    throw Error(ErrorKind::Shape, "sample_frame needs 2 <= m <= dim (m=" + std::to_string(m) +
                                      ", dim=" + std::to_string(dim) + ")");
  }
  if (bound < 0) throw Error(ErrorKind::Shape, "negative sampling bound");
  Rng rng(seed);
  std::vector<Vector> vectors(m);
  for (int attempt = 0; attempt < kMaxSampleAttempts; ++attempt) {
    for (auto& v : vectors) v = sample_integer_vector(rng, dim, bound);
    if (is_independent(vectors)) return Frame(vectors);
  }
  throw Error(ErrorKind::Generation, "no independent frame after " + std::to_string(kMaxSampleAttempts) +
                                         " attempts (dim=" + std::to_string(dim) + ", m=" + std::to_string(m) +
                                         ", bound=" + std::to_string(bound) + ")");
}

SpanSample sample_span_combination(const Frame& frame, std::int64_t bound, std::uint64_t seed) {
  Rng rng(seed);
  SpanSample s;
  s.coefficients.reserve(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) s.coefficients.emplace_back(static_cast<long>(rng.uniform(-bound, bound)));
  s.point = combine(frame, s.coefficients);
  return s;
}

}  // namespace ortho
