#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

#include "ortho/rational.hpp"

namespace ortho {

/// Dense vector of exact rationals with a fixed ambient dimension.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : entries_(dim) {}
  explicit Vector(std::vector<Rational> entries) : entries_(std::move(entries)) {}
  Vector(std::initializer_list<Rational> entries) : entries_(entries) {}

  std::size_t dim() const noexcept { return entries_.size(); }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }
  Rational& operator[](std::size_t i) { return entries_[i]; }
  std::span<const Rational> entries() const noexcept { return entries_; }

  bool is_zero() const;
  std::size_t hash() const noexcept;

  Vector& operator+=(const Vector& o);
  Vector& operator-=(const Vector& o);
  Vector& operator*=(const Rational& s);

  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(const Rational& s, Vector v) { return v *= s; }

  friend bool operator==(const Vector&, const Vector&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Vector& v);

 private:
  std::vector<Rational> entries_;
};

/// Row-major dense matrix of rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(std::span<const Vector> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  Matrix transpose() const;
  /// Top-left k×k block.
  Matrix leading(std::size_t k) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& x);
  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Matrix& m);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Rational dot(const Vector& a, const Vector& b);

/// Ordered tuple of m linearly independent vectors of a common dimension n,
/// with 2 <= m <= n. The invariant is checked on construction.
class Frame {
 public:
  explicit Frame(std::vector<Vector> vectors);
  Frame(std::initializer_list<Vector> vectors) : Frame(std::vector<Vector>(vectors)) {}

  std::size_t size() const noexcept { return vectors_.size(); }
  std::size_t dim() const noexcept { return vectors_.front().dim(); }
  const Vector& operator[](std::size_t i) const { return vectors_[i]; }
  std::span<const Vector> vectors() const noexcept { return vectors_; }

  /// Frame with slot order permuted: result[k] = (*this)[perm[k]].
  Frame permuted(std::span<const std::size_t> perm) const;
  /// Frame with vector `i` replaced by `s * a_i` (s != 0).
  Frame scaled(std::size_t i, const Rational& s) const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Frame&, const Frame&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Frame& f);

 private:
  std::vector<Vector> vectors_;
};

/// The coefficients (λ_1, …, λ_m) of a point over a frame.
using CoordinateVector = std::vector<Rational>;

/// Exact rank of the given vectors (fraction-free elimination).
std::size_t rank(std::span<const Vector> vectors);

/// Exact determinant of a square matrix.
Rational determinant(const Matrix& m);

/// Exact inverse; throws Independence error for singular input.
Matrix inverse(const Matrix& m);

bool is_independent(std::span<const Vector> vectors);
bool span_contains(const Frame& frame, const Vector& x);

/// The unique coordinates of `x` over `frame`; throws Span error when `x`
/// is outside the span.
CoordinateVector solve_coordinates(const Frame& frame, const Vector& x);

/// Σ c_i a_i.
Vector combine(const Frame& frame, std::span<const Rational> coefficients);

}  // namespace ortho

template <>
struct std::hash<ortho::Vector> {
  std::size_t operator()(const ortho::Vector& v) const noexcept { return v.hash(); }
};

template <>
struct std::hash<ortho::Frame> {
  std::size_t operator()(const ortho::Frame& f) const noexcept { return f.hash(); }
};
