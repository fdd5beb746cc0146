#pragma once

#include <vector>

#include "ortho/linalg.hpp"

namespace ortho {

/// Inner product ⟨x, y⟩ = xᵀ G y given by a symmetric positive-definite
/// Gram matrix. Only obtainable through validation, so every instance
/// satisfies symmetry and definiteness; bilinearity follows from the
/// evaluation rule.
class GramInnerProduct {
 public:
  /// Checks symmetry, then Sylvester's criterion with exact leading
  /// principal minors. Throws Symmetry error, or DefinitenessError naming
  /// the first minor that is not strictly positive.
  static GramInnerProduct validate(Matrix matrix);
  static GramInnerProduct identity(std::size_t n);

  std::size_t dim() const noexcept { return matrix_.rows(); }
  const Matrix& matrix() const noexcept { return matrix_; }

  Rational operator()(const Vector& x, const Vector& y) const;

  friend bool operator==(const GramInnerProduct&, const GramInnerProduct&) = default;

 private:
  explicit GramInnerProduct(Matrix m) : matrix_(std::move(m)) {}
  Matrix matrix_;
};

inline GramInnerProduct validate_inner_product(Matrix matrix) {
  return GramInnerProduct::validate(std::move(matrix));
}

inline Rational evaluate(const GramInnerProduct& g, const Vector& x, const Vector& y) { return g(x, y); }

/// True iff ⟨a_i, a_j⟩ = 0 for every i != j.
bool is_orthogonal_tuple(const GramInnerProduct& g, const Frame& frame);

/// ⟨a, x⟩ / ⟨a, a⟩. Throws ZeroDenominator when a = 0.
Rational coefficient_formula(const GramInnerProduct& g, const Vector& a, const Vector& x);

/// Formula coordinates (coefficient_formula(g, a_i, x))_i of x over a frame.
CoordinateVector formula_coordinates(const GramInnerProduct& g, const Frame& frame, const Vector& x);

/// Compares solver coordinates with formula coordinates for a G-orthogonal
/// frame. Throws Precondition error if the frame is not G-orthogonal.
bool verify_projection_equivalence(const GramInnerProduct& g, const Frame& frame, const Vector& x);

/// Gram–Schmidt under g, exact and unnormalized, processing slots in the
/// given order: c_k = b_k − Σ_{l before k} ⟨c_l, b_k⟩/⟨c_l, c_l⟩ c_l. The
/// result keeps the input's slot positions, so the first slot in `order`
/// is returned unchanged.
Frame gram_schmidt(const GramInnerProduct& g, const Frame& frame, std::span<const std::size_t> order);
Frame gram_schmidt(const GramInnerProduct& g, const Frame& frame);

/// The Gram matrix G = T⁻ᵀ T⁻¹ (T has the frame as columns), which makes a
/// full-dimensional frame orthonormal. Frames with m < n are rejected with a
/// Shape error.
GramInnerProduct frame_adapted_inner_product(const Frame& frame);

}  // namespace ortho
