#include "ortho/dependence.hpp"

#include <exception>
#include <optional>
#include <unordered_map>

#include "ortho/errors.hpp"
#include "ortho/maximality.hpp"
#include "ortho/sample.hpp"

namespace ortho {

// ---- RelationPoint / Relation ------------------------------------------------

RelationPoint RelationPoint::canonical(Frame frame, Vector point) {
  CoordinateVector values = solve_coordinates(frame, point);
  return RelationPoint(std::move(frame), std::move(point), std::move(values));
}

RelationPoint RelationPoint::with_values(Frame frame, Vector point, CoordinateVector values) {
  if (values.size() != frame.size()) {
    throw Error(ErrorKind::Shape, "relation point carries " + std::to_string(values.size()) + " values for a frame of " +
                                      std::to_string(frame.size()));
  }
  if (!span_contains(frame, point)) throw Error(ErrorKind::Span, "relation point is not in the span of its frame");
  return RelationPoint(std::move(frame), std::move(point), std::move(values));
}

namespace {

std::size_t pair_hash(const Frame& f, const Vector& x) noexcept { return hash_combine(f.hash(), x.hash()); }

}  // namespace

bool Relation::contains_pair(const Frame& frame, const Vector& point) const {
  auto [lo, hi] = positions_.equal_range(pair_hash(frame, point));
  for (auto it = lo; it != hi; ++it) {
    const auto& p = points_[it->second];
    if (p.frame() == frame && p.point() == point) return true;
  }
  return false;
}

bool Relation::contains(const RelationPoint& p) const {
  auto [lo, hi] = positions_.equal_range(pair_hash(p.frame(), p.point()));
  for (auto it = lo; it != hi; ++it) {
    if (points_[it->second] == p) return true;
  }
  return false;
}

bool Relation::add(RelationPoint p) {
  if (!points_.empty() && (p.dim() != dim() || p.arity() != arity())) {
    throw Error(ErrorKind::Shape, "relation point of shape (n=" + std::to_string(p.dim()) + ", m=" +
                                      std::to_string(p.arity()) + ") added to a relation of shape (n=" +
                                      std::to_string(dim()) + ", m=" + std::to_string(arity()) + ")");
  }
  if (contains_pair(p.frame(), p.point())) return false;
  positions_.emplace(pair_hash(p.frame(), p.point()), points_.size());
  points_.push_back(std::move(p));
  return true;
}

Relation Relation::subset(std::span<const std::size_t> positions) const {
  Relation out;
  for (std::size_t k : positions) out.add(points_.at(k));
  return out;
}

// ---- projection ------------------------------------------------------------

std::size_t ProjectionKey::hash() const noexcept {
  return hash_combine(hash_combine(index, vector.hash()), point.hash());
}

ProjectionKey project(const RelationPoint& p, std::size_t index) {
  if (index >= p.arity()) {
    throw Error(ErrorKind::Index, "projection index " + std::to_string(index + 1) + " outside 1.." +
                                      std::to_string(p.arity()));
  }
  return ProjectionKey{index, p.frame()[index], p.point()};
}

const Rational* FactorTable::find(const ProjectionKey& key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

// ---- factor_check ------------------------------------------------------------

namespace {

bool same_key(const RelationPoint& p, const RelationPoint& q, std::size_t i) {
  return p.frame()[i] == q.frame()[i] && p.point() == q.point();
}

struct IndexScan {
  // Position of the disagreeing point and of the first point with its key.
  std::optional<std::pair<std::size_t, std::size_t>> conflict;
  // First-occurrence positions, in order, when there is no conflict.
  std::vector<std::size_t> firsts;
};

// One index, points in insertion order, keys bucketed by a precomputed hash.
IndexScan scan_index(const Relation& rel, std::size_t i, std::span<const std::size_t> key_hash) {
  IndexScan out;
  std::unordered_multimap<std::size_t, std::size_t> first_of;
  first_of.reserve(rel.size());
  for (std::size_t q = 0; q < rel.size(); ++q) {
    std::optional<std::size_t> first;
    auto [lo, hi] = first_of.equal_range(key_hash[q]);
    for (auto it = lo; it != hi; ++it) {
      if (same_key(rel[it->second], rel[q], i)) {
        first = it->second;
        break;
      }
    }
    if (!first) {
      first_of.emplace(key_hash[q], q);
      out.firsts.push_back(q);
    } else if (rel[*first].values()[i] != rel[q].values()[i]) {
      out.conflict = {{*first, q}};
      return out;
    }
  }
  return out;
}

FactorTable table_from(const Relation& rel, std::size_t i, std::span<const std::size_t> firsts) {
  FactorTable t{i, {}};
  t.entries.reserve(firsts.size());
  for (std::size_t p : firsts) t.entries.emplace_back(project(rel[p], i), rel[p].values()[i]);
  return t;
}

}  // namespace

FactorizationOutcome factor_check(const Relation& rel) {
  const std::size_t n_points = rel.size();
  const std::size_t m = rel.arity();
  if (n_points == 0) return FactorTables{};

  // Key hashes are the GMP-heavy part: compute them all in parallel.
  std::vector<std::size_t> hashes(n_points * m);
  const auto count = static_cast<std::ptrdiff_t>(n_points);
#pragma omp parallel for schedule(static) if (n_points > 64)
  for (std::ptrdiff_t q = 0; q < count; ++q) {
    const auto& p = rel[static_cast<std::size_t>(q)];
    const std::size_t xh = p.point().hash();
    for (std::size_t i = 0; i < m; ++i) {
      hashes[i * n_points + static_cast<std::size_t>(q)] = hash_combine(p.frame()[i].hash(), xh);
    }
  }

  std::vector<IndexScan> scans(m);
  const auto arity = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(dynamic) if (n_points > 64)
  for (std::ptrdiff_t i = 0; i < arity; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    scans[ui] = scan_index(rel, ui, std::span(hashes).subspan(ui * n_points, n_points));
  }

  // Lowest index with a conflict wins, matching the sequential scan order.
  for (std::size_t i = 0; i < m; ++i) {
    if (scans[i].conflict) {
      const auto [first, second] = *scans[i].conflict;
      return Counterexample{i, rel[first], rel[second]};
    }
  }
  FactorTables out;
  out.tables.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.tables.push_back(table_from(rel, i, scans[i].firsts));
  return out;
}

std::variant<FactorTable, Counterexample> factor_check_index(const Relation& rel, std::size_t index) {
  if (rel.empty()) return FactorTable{index, {}};
  if (index >= rel.arity()) {
    throw Error(ErrorKind::Index, "functional index " + std::to_string(index + 1) + " outside 1.." +
                                      std::to_string(rel.arity()));
  }
  FactorTable table{index, {}};
  std::unordered_map<ProjectionKey, std::size_t, ProjectionKeyHash> first_of;
  for (std::size_t q = 0; q < rel.size(); ++q) {
    ProjectionKey key = project(rel[q], index);
    auto it = first_of.find(key);
    if (it == first_of.end()) {
      table.entries.emplace_back(key, rel[q].values()[index]);
      first_of.emplace(std::move(key), q);
    } else if (rel[it->second].values()[index] != rel[q].values()[index]) {
      return Counterexample{index, rel[it->second], rel[q]};
    }
  }
  return table;
}

FactorizationOutcome factor_check_serial(const Relation& rel) {
  FactorTables out;
  for (std::size_t i = 0; i < rel.arity(); ++i) {
    auto r = factor_check_index(rel, i);
    if (auto* c = std::get_if<Counterexample>(&r)) return std::move(*c);
    out.tables.push_back(std::get<FactorTable>(std::move(r)));
  }
  return out;
}

// ---- orthogonality without an inner product ------------------------------------

Relation witness_pool(const Frame& frame, const WitnessRecipe& recipe) {
  const GramInnerProduct g = recipe.gram.value_or(GramInnerProduct::identity(frame.dim()));
  if (g.dim() != frame.dim()) throw Error(ErrorKind::Shape, "witness inner product dimension differs from the frame");
  Relation pool;
  for (std::size_t k = 0; k < recipe.span_points; ++k) {
    pool.add(RelationPoint::canonical(frame, sample_span_point(frame, recipe.bound, derive_seed(recipe.seed, k))));
  }
  for (std::size_t i = 0; i < frame.size(); ++i) {
    for (std::size_t j = i + 1; j < frame.size(); ++j) {
      if (g(frame[i], frame[j]).is_zero()) continue;
      Witness w = orthogonality_witness_in_span(frame, i, j, g);
      pool.add(RelationPoint::canonical(frame, w.point));
      pool.add(RelationPoint::canonical(std::move(w.frame), std::move(w.point)));
    }
  }
  for (const auto& p : recipe.extra) pool.add(p);
  return pool;
}

bool is_orthogonal_def1(const Frame& frame, const WitnessRecipe& recipe) {
  return factorizes(factor_check(witness_pool(frame, recipe)));
}

Proposition2dReport check_proposition_2d(const Relation& rel) {
  if (!rel.empty() && rel.arity() != 2) {
    throw Error(ErrorKind::Shape, "two-frame clauses need arity 2, got " + std::to_string(rel.arity()));
  }
  auto clause = [&](std::size_t i) {
    ClauseReport c;
    if (rel.empty()) return c;
    auto r = factor_check_index(rel, i);
    if (auto* ce = std::get_if<Counterexample>(&r)) {
      c.passed = false;
      c.counterexample = std::move(*ce);
    }
    return c;
  };
  return Proposition2dReport{clause(0), clause(1)};
}

// ---- samplers -----------------------------------------------------------------

namespace {

template <typename MakeFrame>
Relation build_relation(std::size_t dim, std::size_t arity, const SampleCounts& counts, MakeFrame make_frame) {
  // Frame f draws from derive_seed(seed, 2f); its span points from
  // derive_seed(derive_seed(seed, 2f + 1), p). Frames are generated in
  // parallel and appended in frame order.
  std::vector<std::vector<RelationPoint>> per_frame(counts.frames);
  std::exception_ptr failure;
  const auto n_frames = static_cast<std::ptrdiff_t>(counts.frames);
#pragma omp parallel for schedule(dynamic) if (counts.frames > 8)
  for (std::ptrdiff_t f = 0; f < n_frames; ++f) {
    try {
      const auto uf = static_cast<std::uint64_t>(f);
      const Frame frame = make_frame(sample_frame(dim, arity, counts.bound, derive_seed(counts.seed, 2 * uf)));
      const std::uint64_t point_seed = derive_seed(counts.seed, 2 * uf + 1);
      auto& out = per_frame[static_cast<std::size_t>(f)];
      for (std::size_t p = 0; p < counts.points; ++p) {
        out.push_back(RelationPoint::canonical(frame, sample_span_point(frame, counts.bound, derive_seed(point_seed, p))));
      }
    } catch (...) {
#pragma omp critical(ortho_build_relation)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  Relation rel;
  for (auto& points : per_frame)
    for (auto& p : points) rel.add(std::move(p));
  return rel;
}

}  // namespace

Relation build_gamma_ort(const GramInnerProduct& g, std::size_t arity, const SampleCounts& counts) {
  return build_relation(g.dim(), arity, counts, [&g](Frame f) { return gram_schmidt(g, f); });
}

Relation build_gamma_ort(const GramInnerProduct& g, const SampleCounts& counts) {
  return build_gamma_ort(g, g.dim(), counts);
}

Relation build_delta_sample(const SampleShape& shape, const SampleCounts& counts) {
  return build_relation(shape.dim, shape.arity, counts, [](Frame f) { return f; });
}

std::vector<Frame> recover_orthogonal_tuples(const Relation& rel) {
  if (!factorizes(factor_check(rel))) {
    throw Error(ErrorKind::Precondition, "relation does not factorize; its frames are not an orthogonal family");
  }
  std::vector<Frame> frames;
  std::unordered_multimap<std::size_t, std::size_t> seen;
  for (const auto& p : rel) {
    const std::size_t h = p.frame().hash();
    bool dup = false;
    auto [lo, hi] = seen.equal_range(h);
    for (auto it = lo; it != hi && !dup; ++it) dup = frames[it->second] == p.frame();
    if (dup) continue;
    seen.emplace(h, frames.size());
    frames.push_back(p.frame());
  }
  return frames;
}

}  // namespace ortho
