#pragma once

// Finite relations Γ ⊆ Δ of (frame, point, values) triples and the
// "does not depend on" check: each coordinate functional f_i must factor
// through the projection (a_1,…,a_m,x) ↦ (a_i, x).
//
// Indices are 0-based in this API. The JSON forms write them 1-based.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ortho/inner_product.hpp"
#include "ortho/linalg.hpp"

namespace ortho {

/// One element of Δ together with its functional values f_1..f_m.
class RelationPoint {
 public:
  /// Canonical point: values are the exact coordinates λ_i of x.
  static RelationPoint canonical(Frame frame, Vector point);
  /// Hand-built point with arbitrary values (oracle tests, loaded fixtures).
  /// The point must still lie in the span and `values` must have m entries.
  static RelationPoint with_values(Frame frame, Vector point, CoordinateVector values);

  const Frame& frame() const noexcept { return frame_; }
  const Vector& point() const noexcept { return point_; }
  const CoordinateVector& values() const noexcept { return values_; }
  std::size_t arity() const noexcept { return frame_.size(); }
  std::size_t dim() const noexcept { return frame_.dim(); }

  friend bool operator==(const RelationPoint&, const RelationPoint&) = default;

 private:
  RelationPoint(Frame f, Vector x, CoordinateVector v)
      : frame_(std::move(f)), point_(std::move(x)), values_(std::move(v)) {}

  Frame frame_;
  Vector point_;
  CoordinateVector values_;
};

/// Finite relation in insertion order. (frame, point) pairs are unique and
/// every point shares one (dim, arity).
class Relation {
 public:
  Relation() = default;

  /// Appends `p` unless its (frame, point) pair is already present.
  /// Returns false for a duplicate. Throws Shape error on a (dim, arity)
  /// mismatch.
  bool add(RelationPoint p);

  bool contains(const RelationPoint& p) const;
  bool contains_pair(const Frame& frame, const Vector& point) const;

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const RelationPoint& operator[](std::size_t i) const { return points_[i]; }
  auto begin() const noexcept { return points_.begin(); }
  auto end() const noexcept { return points_.end(); }

  /// Arity m of the points, 0 for an empty relation.
  std::size_t arity() const noexcept { return points_.empty() ? 0 : points_.front().arity(); }
  std::size_t dim() const noexcept { return points_.empty() ? 0 : points_.front().dim(); }

  /// Sub-relation of the given positions, kept in the given order.
  Relation subset(std::span<const std::size_t> positions) const;

  friend bool operator==(const Relation& a, const Relation& b) { return a.points_ == b.points_; }

 private:
  std::vector<RelationPoint> points_;
  // hash of (frame, point) -> position
  std::unordered_multimap<std::size_t, std::size_t> positions_;
};

/// pr_{X_i × Y}: the slot index, a_i and x.
struct ProjectionKey {
  std::size_t index = 0;
  Vector vector;
  Vector point;

  std::size_t hash() const noexcept;
  friend bool operator==(const ProjectionKey&, const ProjectionKey&) = default;
};

struct ProjectionKeyHash {
  std::size_t operator()(const ProjectionKey& k) const noexcept { return k.hash(); }
};

ProjectionKey project(const RelationPoint& p, std::size_t index);

/// The factor g_i as a finite table, entries in first-occurrence order.
struct FactorTable {
  std::size_t index = 0;
  std::vector<std::pair<ProjectionKey, Rational>> entries;

  const Rational* find(const ProjectionKey& key) const;
  friend bool operator==(const FactorTable&, const FactorTable&) = default;
};

/// Two points whose keys at `index` coincide but whose i-th values differ.
/// `first` is the earliest point carrying the key, `second` the first later
/// point that disagrees with it.
struct Counterexample {
  std::size_t index = 0;
  RelationPoint first;
  RelationPoint second;

  const Rational& first_value() const { return first.values()[index]; }
  const Rational& second_value() const { return second.values()[index]; }
  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct FactorTables {
  std::vector<FactorTable> tables;
  friend bool operator==(const FactorTables&, const FactorTables&) = default;
};

using FactorizationOutcome = std::variant<FactorTables, Counterexample>;

inline bool factorizes(const FactorizationOutcome& o) { return std::holds_alternative<FactorTables>(o); }

/// Scans indices ascending and, within an index, points in insertion order;
/// reports the first counterexample met, or the full tables. Kernels run
/// with OpenMP; the result is identical to factor_check_serial.
FactorizationOutcome factor_check(const Relation& rel);

/// Single-threaded reference scan.
FactorizationOutcome factor_check_serial(const Relation& rel);

/// Check of one functional f_index alone (the single-function case).
std::variant<FactorTable, Counterexample> factor_check_index(const Relation& rel, std::size_t index);

/// Finite witness pool for the inner-product-free orthogonality predicate.
struct WitnessRecipe {
  /// Inner product used to build Gram–Schmidt witnesses for each
  /// non-orthogonal slot pair. Defaults to the dot product of the frame's
  /// dimension.
  std::optional<GramInnerProduct> gram;
  std::size_t span_points = 4;
  std::int64_t bound = 5;
  std::uint64_t seed = 0;
  /// Extra points added to the pool as-is.
  Relation extra;
};

/// A frame is orthogonal iff its coordinate functionals factor through
/// (a_i, x) on the relation formed by the frame's own span samples, the
/// witness-closure points and `recipe.extra`.
bool is_orthogonal_def1(const Frame& frame, const WitnessRecipe& recipe);

/// The pool `is_orthogonal_def1` checks, exposed for inspection.
Relation witness_pool(const Frame& frame, const WitnessRecipe& recipe);

struct ClauseReport {
  bool passed = true;
  std::optional<Counterexample> counterexample;
};

/// Two-frame clauses: λ free of b (index 0, key (a, x)) and μ free of a
/// (index 1, key (b, x)).
struct Proposition2dReport {
  ClauseReport lambda_free_of_b;
  ClauseReport mu_free_of_a;
  bool passed() const { return lambda_free_of_b.passed && mu_free_of_a.passed; }
};

/// Throws Shape error unless the relation is empty or has arity 2.
Proposition2dReport check_proposition_2d(const Relation& rel);

struct SampleShape {
  std::size_t dim = 2;
  std::size_t arity = 2;
};

struct SampleCounts {
  std::size_t frames = 8;
  std::size_t points = 4;
  std::int64_t bound = 5;
  std::uint64_t seed = 0;
};

/// Γ_ort sample: frames are sampled, orthogonalized under g (arity defaults
/// to g.dim()), and paired with sampled span points; values are canonical.
Relation build_gamma_ort(const GramInnerProduct& g, const SampleCounts& counts);
Relation build_gamma_ort(const GramInnerProduct& g, std::size_t arity, const SampleCounts& counts);

/// Δ sample: like build_gamma_ort without orthogonalization.
Relation build_delta_sample(const SampleShape& shape, const SampleCounts& counts);

/// Distinct frames of a factorizable relation in first-occurrence order.
/// Throws Precondition error if the relation does not factorize.
std::vector<Frame> recover_orthogonal_tuples(const Relation& rel);

}  // namespace ortho
