#include "ortho/inner_product.hpp"

#include <numeric>

#include "ortho/errors.hpp"

namespace ortho {

GramInnerProduct GramInnerProduct::validate(Matrix matrix) {
  if (!matrix.is_square() || matrix.rows() == 0) {
    throw Error(ErrorKind::Shape, "Gram matrix must be square and nonempty");
  }
  const std::size_t n = matrix.rows();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c)
      if (matrix(r, c) != matrix(c, r)) {
        throw Error(ErrorKind::Symmetry, "Gram matrix is not symmetric at (" + std::to_string(r + 1) + "," +
                                             std::to_string(c + 1) + ")");
      }
  for (std::size_t k = 1; k <= n; ++k) {
    const Rational minor = determinant(matrix.leading(k));
    if (minor.sign() <= 0) {
      throw DefinitenessError(k, "Gram matrix is not positive definite: leading minor " + std::to_string(k) +
                                     " = " + minor.str());
    }
  }
  return GramInnerProduct(std::move(matrix));
}

GramInnerProduct GramInnerProduct::identity(std::size_t n) { return GramInnerProduct(Matrix::identity(n)); }

Rational GramInnerProduct::operator()(const Vector& x, const Vector& y) const {
  if (x.dim() != dim() || y.dim() != dim()) {
    throw Error(ErrorKind::Shape, "inner product in dimension " + std::to_string(dim()) + " applied to vectors of dimension " +
                                      std::to_string(x.dim()) + " and " + std::to_string(y.dim()));
  }
  return dot(x, matrix_ * y);
}

bool is_orthogonal_tuple(const GramInnerProduct& g, const Frame& frame) {
  for (std::size_t i = 0; i < frame.size(); ++i)
    for (std::size_t j = i + 1; j < frame.size(); ++j)
      if (!g(frame[i], frame[j]).is_zero()) return false;
  return true;
}

Rational coefficient_formula(const GramInnerProduct& g, const Vector& a, const Vector& x) {
  const Rational aa = g(a, a);
  if (aa.is_zero()) throw Error(ErrorKind::ZeroDenominator, "coefficient formula with a = 0");
  return g(a, x) / aa;
}

CoordinateVector formula_coordinates(const GramInnerProduct& g, const Frame& frame, const Vector& x) {
  CoordinateVector out;
  out.reserve(frame.size());
  for (const auto& a : frame.vectors()) out.push_back(coefficient_formula(g, a, x));
  return out;
}

bool verify_projection_equivalence(const GramInnerProduct& g, const Frame& frame, const Vector& x) {
  if (!is_orthogonal_tuple(g, frame)) {
    throw Error(ErrorKind::Precondition, "frame is not orthogonal under the given inner product");
  }
  return solve_coordinates(frame, x) == formula_coordinates(g, frame, x);
}

Frame gram_schmidt(const GramInnerProduct& g, const Frame& frame, std::span<const std::size_t> order) {
  const std::size_t m = frame.size();
  if (order.size() != m) throw Error(ErrorKind::Shape, "Gram–Schmidt order length differs from frame size");
  std::vector<Vector> out(m);
  std::vector<Rational> norms(m);
  std::vector<bool> seen(m, false);
  for (std::size_t step = 0; step < m; ++step) {
    const std::size_t k = order[step];
    if (k >= m || seen[k]) throw Error(ErrorKind::Index, "Gram–Schmidt order is not a permutation");
    seen[k] = true;
    Vector c = frame[k];
    for (std::size_t prev = 0; prev < step; ++prev) {
      const std::size_t l = order[prev];
      c -= (g(out[l], frame[k]) / norms[l]) * out[l];
    }
    norms[k] = g(c, c);
    out[k] = std::move(c);
  }
  return Frame(std::move(out));
}

Frame gram_schmidt(const GramInnerProduct& g, const Frame& frame) {
  std::vector<std::size_t> order(frame.size());
  std::iota(order.begin(), order.end(), 0);
  return gram_schmidt(g, frame, order);
}

GramInnerProduct frame_adapted_inner_product(const Frame& frame) {
  if (frame.size() != frame.dim()) {
    throw Error(ErrorKind::Shape, "adapted inner product needs a full-dimensional frame (m=" +
                                      std::to_string(frame.size()) + ", n=" + std::to_string(frame.dim()) + ")");
  }
  const Matrix t_inv = inverse(Matrix::from_columns(frame.vectors()));
  return GramInnerProduct::validate(t_inv.transpose() * t_inv);
}

}  // namespace ortho
