#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace ortho {

/// Exact rational scalar. Always held in lowest terms with a positive
/// denominator; every arithmetic result is canonicalized before it is
/// observable.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : q_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(long numerator, long denominator);
  explicit Rational(const mpz_class& integer) : q_(integer) {}
  explicit Rational(mpq_class value) : q_(std::move(value)) { q_.canonicalize(); }

  /// Accepts "p", "p/q" with an optional leading '-'; q must be nonzero.
  static Rational parse(std::string_view text);

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  const mpq_class& raw() const noexcept { return q_; }

  bool is_zero() const noexcept { return sgn(q_) == 0; }
  int sign() const noexcept { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }

  /// Canonical text form "p/q" (the denominator is always written).
  std::string str() const;

  std::size_t hash() const noexcept;

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

std::size_t hash_integer(const mpz_class& z) noexcept;

inline std::size_t hash_combine(std::size_t seed, std::size_t value) noexcept {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace ortho

template <>
struct std::hash<ortho::Rational> {
  std::size_t operator()(const ortho::Rational& r) const noexcept { return r.hash(); }
};
