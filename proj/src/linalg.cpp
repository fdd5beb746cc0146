#include "ortho/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "ortho/errors.hpp"

namespace ortho {

// ---- Vector ----------------------------------------------------------------

bool Vector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& r) { return r.is_zero(); });
}

std::size_t Vector::hash() const noexcept {
  std::size_t h = entries_.size();
  for (const auto& e : entries_) h = hash_combine(h, e.hash());
  return h;
}

static void require_same_dim(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::Shape, "dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
  }
}

Vector& Vector::operator+=(const Vector& o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& o) {
  require_same_dim(*this, o);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
  return *this;
}

Vector& Vector::operator*=(const Rational& s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Vector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.dim(); ++i) os << (i ? "," : "") << v[i];
  return os << ')';
}

Rational dot(const Vector& a, const Vector& b) {
  require_same_dim(a, b);
  Rational s;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

// ---- Matrix ----------------------------------------------------------------

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw Error(ErrorKind::Shape, "ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_columns(std::span<const Vector> columns) {
  const std::size_t n = columns.empty() ? 0 : columns.front().dim();
  Matrix m(n, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].dim() != n) throw Error(ErrorKind::Shape, "columns of unequal dimension");
    for (std::size_t r = 0; r < n; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::leading(std::size_t k) const {
  Matrix b(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) b(r, c) = (*this)(r, c);
  return b;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::Shape, "matrix product shape mismatch");
  Matrix p(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      Rational s;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(r, k) * b(k, c);
      p(r, c) = std::move(s);
    }
  return p;
}

Vector operator*(const Matrix& a, const Vector& x) {
  if (a.cols() != x.dim()) throw Error(ErrorKind::Shape, "matrix-vector shape mismatch");
  Vector y(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Rational s;
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(r, k) * x[k];
    y[r] = std::move(s);
  }
  return y;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? "," : "") << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? "," : "") << m(r, c);
    os << ']';
  }
  return os << ']';
}

// ---- fraction-free elimination ---------------------------------------------

namespace {

using IntRow = std::vector<mpz_class>;

struct IntSystem {
  std::vector<IntRow> rows;
  // Product of the factors each row was multiplied by to clear denominators.
  mpz_class scale = 1;
};

// Clears denominators row by row; row scaling preserves rank, solutions and
// (up to the recorded factor) the determinant.
IntSystem to_integer_rows(const Matrix& m) {
  IntSystem sys;
  sys.rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).raw().get_den_mpz_t());
    IntRow row(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const mpq_class& q = m(r, c).raw();
      row[c] = q.get_num() * (l / q.get_den());
    }
    sys.scale *= l;
    sys.rows.push_back(std::move(row));
  }
  return sys;
}

struct Echelon {
  std::vector<std::size_t> pivot_cols;
  int swap_sign = 1;
};

// Bareiss elimination to row echelon form, in place. Pivot: first row at or
// below the current one with a nonzero entry in the column (lowest index wins).
Echelon bareiss(std::vector<IntRow>& a, std::size_t col_limit) {
  Echelon e;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a.front().size() : 0;
  mpz_class prev = 1;
  std::size_t r = 0;
  mpz_class t;
  for (std::size_t c = 0; c < std::min(cols, col_limit) && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p][c]) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      e.swap_sign = -e.swap_sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        t = a[r][c] * a[i][k] - a[i][c] * a[r][k];
        mpz_divexact(a[i][k].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    e.pivot_cols.push_back(c);
    ++r;
  }
  return e;
}

Matrix rows_of(std::span<const Vector> vectors) {
  const std::size_t n = vectors.front().dim();
  Matrix m(vectors.size(), n);
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    if (vectors[r].dim() != n) {
      throw Error(ErrorKind::Shape, "vectors of unequal dimension: " + std::to_string(n) + " vs " +
                                        std::to_string(vectors[r].dim()));
    }
    for (std::size_t c = 0; c < n; ++c) m(r, c) = vectors[r][c];
  }
  return m;
}

}  // namespace

std::size_t rank(std::span<const Vector> vectors) {
  if (vectors.empty()) return 0;
  auto sys = to_integer_rows(rows_of(vectors));
  return bareiss(sys.rows, vectors.front().dim()).pivot_cols.size();
}

Rational determinant(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::Shape, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  auto sys = to_integer_rows(m);
  const auto e = bareiss(sys.rows, n);
  if (e.pivot_cols.size() < n) return 0;
  // The last Bareiss pivot equals the determinant of the integer matrix.
  mpq_class det(sys.rows[n - 1][n - 1] * e.swap_sign, sys.scale);
  return Rational(std::move(det));
}

Matrix inverse(const Matrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::Shape, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) throw Error(ErrorKind::Independence, "matrix is singular");
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a(p, k), a(c, k));
        std::swap(inv(p, k), inv(c, k));
      }
    }
    const Rational piv = a(c, c);
    for (std::size_t k = 0; k < n; ++k) {
      a(c, k) /= piv;
      inv(c, k) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      const Rational f = a(r, c);
      for (std::size_t k = 0; k < n; ++k) {
        a(r, k) -= f * a(c, k);
        inv(r, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

bool is_independent(std::span<const Vector> vectors) {
  if (vectors.empty()) throw Error(ErrorKind::Shape, "independence of an empty sequence");
  const std::size_t n = vectors.front().dim();
  for (const auto& v : vectors) {
    if (v.dim() != n) throw Error(ErrorKind::Shape, "vectors of unequal dimension");
  }
  if (vectors.size() > n) return false;
  return rank(vectors) == vectors.size();
}

// ---- Frame -----------------------------------------------------------------

Frame::Frame(std::vector<Vector> vectors) : vectors_(std::move(vectors)) {
  if (vectors_.size() < 2) throw Error(ErrorKind::Shape, "a frame needs at least two vectors");
  if (vectors_.size() > vectors_.front().dim()) {
    throw Error(ErrorKind::Shape, "a frame of " + std::to_string(vectors_.size()) + " vectors cannot live in dimension " +
                                      std::to_string(vectors_.front().dim()));
  }
  if (!is_independent(vectors_)) throw Error(ErrorKind::Independence, "frame vectors are linearly dependent");
}

Frame Frame::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != size()) throw Error(ErrorKind::Shape, "permutation length mismatch");
  std::vector<Vector> out;
  out.reserve(size());
  for (std::size_t k : perm) out.push_back(vectors_.at(k));
  return Frame(std::move(out));
}

Frame Frame::scaled(std::size_t i, const Rational& s) const {
  if (s.is_zero()) throw Error(ErrorKind::Independence, "scaling a frame vector by zero");
  std::vector<Vector> out = vectors_;
  out.at(i) *= s;
  return Frame(std::move(out));
}

std::size_t Frame::hash() const noexcept {
  std::size_t h = vectors_.size();
  for (const auto& v : vectors_) h = hash_combine(h, v.hash());
  return h;
}

std::ostream& operator<<(std::ostream& os, const Frame& f) {
  os << '(';
  for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
  return os << ')';
}

// ---- coordinates -----------------------------------------------------------

namespace {

void require_frame_dim(const Frame& frame, const Vector& x) {
  if (x.dim() != frame.dim()) {
    throw Error(ErrorKind::Shape, "point of dimension " + std::to_string(x.dim()) + " against a frame in dimension " +
                                      std::to_string(frame.dim()));
  }
}

// Augmented system [a_1 … a_m | x], one row per ambient coordinate.
Matrix augmented(const Frame& frame, const Vector& x) {
  const std::size_t n = frame.dim();
  const std::size_t m = frame.size();
  Matrix a(n, m + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < m; ++c) a(r, c) = frame[c][r];
    a(r, m) = x[r];
  }
  return a;
}

}  // namespace

bool span_contains(const Frame& frame, const Vector& x) {
  require_frame_dim(frame, x);
  auto sys = to_integer_rows(augmented(frame, x));
  return bareiss(sys.rows, frame.size() + 1).pivot_cols.size() == frame.size();
}

CoordinateVector solve_coordinates(const Frame& frame, const Vector& x) {
  require_frame_dim(frame, x);
  const std::size_t m = frame.size();
  auto sys = to_integer_rows(augmented(frame, x));
  const auto e = bareiss(sys.rows, m + 1);
  // The frame is independent, so columns 0..m-1 are all pivots; a pivot in
  // the augmented column means x is outside the span.
  if (e.pivot_cols.size() != m) throw Error(ErrorKind::Span, "point is not in the span of the frame");
  const auto& a = sys.rows;
  CoordinateVector lambda(m);
  for (std::size_t k = m; k-- > 0;) {
    mpq_class s(a[k][m]);
    for (std::size_t c = k + 1; c < m; ++c) s -= mpq_class(a[k][c]) * lambda[c].raw();
    s /= mpq_class(a[k][k]);
    lambda[k] = Rational(std::move(s));
  }
  return lambda;
}

Vector combine(const Frame& frame, std::span<const Rational> coefficients) {
  if (coefficients.size() != frame.size()) throw Error(ErrorKind::Shape, "coefficient count differs from frame size");
  Vector x(frame.dim());
  for (std::size_t i = 0; i < frame.size(); ++i) x += coefficients[i] * frame[i];
  return x;
}

}  // namespace ortho
