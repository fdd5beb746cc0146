#include "ortho/rational.hpp"

#include <cctype>

#include "ortho/errors.hpp"

namespace ortho {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Shape: return "shape";
    case ErrorKind::Span: return "span";
    case ErrorKind::Independence: return "independence";
    case ErrorKind::Generation: return "generation";
    case ErrorKind::Symmetry: return "symmetry";
    case ErrorKind::Definiteness: return "definiteness";
    case ErrorKind::ZeroDenominator: return "zero-denominator";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Index: return "index";
    case ErrorKind::NoViolation: return "no-violation";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw Error(ErrorKind::ZeroDenominator, "rational with zero denominator");
  q_ = mpq_class(mpz_class(numerator), mpz_class(denominator));
  q_.canonicalize();
}

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);
  if (!is_integer_literal(num, true) || (slash != std::string_view::npos && !is_integer_literal(den, false))) {
    throw ParseError("", "malformed rational \"" + std::string(text) + "\"");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d = slash == std::string_view::npos ? mpz_class(1) : mpz_class(std::string(den), 10);
  if (d == 0) throw Error(ErrorKind::ZeroDenominator, "rational \"" + std::string(text) + "\" has zero denominator");
  return Rational(mpq_class(n, d));
}

std::string Rational::str() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::size_t hash_integer(const mpz_class& z) noexcept {
  const mpz_srcptr p = z.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(mpz_sgn(p) + 1);
  const std::size_t limbs = mpz_size(p);
  for (std::size_t i = 0; i < limbs; ++i) {
    h = hash_combine(h, static_cast<std::size_t>(mpz_getlimbn(p, static_cast<mp_size_t>(i))));
  }
  return h;
}

std::size_t Rational::hash() const noexcept {
  return hash_combine(hash_integer(q_.get_num()), hash_integer(q_.get_den()));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorKind::ZeroDenominator, "division by zero");
  q_ /= o.q_;
  return *this;
}

}  // namespace ortho
