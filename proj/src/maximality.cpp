#include "ortho/maximality.hpp"

#include <exception>
#include <unordered_map>

#include "ortho/errors.hpp"
#include "ortho/sample.hpp"

namespace ortho {

bool is_subset(const Relation& inner, const Relation& outer) {
  for (const auto& p : inner) {
    if (!outer.contains(p)) return false;
  }
  return true;
}

Chain::Chain(std::vector<Relation> relations) : relations_(std::move(relations)) {
  for (std::size_t k = 1; k < relations_.size(); ++k) {
    if (!is_subset(relations_[k - 1], relations_[k])) {
      throw Error(ErrorKind::Precondition, "chain member " + std::to_string(k) + " is not contained in member " +
                                               std::to_string(k + 1));
    }
  }
}

Relation Chain::union_of() const {
  Relation u;
  for (const auto& r : relations_)
    for (const auto& p : r) u.add(p);
  return u;
}

bool chain_union_check(const Chain& chain) {
  for (std::size_t k = 0; k < chain.size(); ++k) {
    if (!factorizes(factor_check(chain[k]))) {
      throw Error(ErrorKind::Precondition, "chain member " + std::to_string(k + 1) + " does not factorize");
    }
  }
  return factorizes(factor_check(chain.union_of()));
}

Relation greedy_maximal_extension(const Relation& base, const Relation& pool) {
  if (!factorizes(factor_check(base))) {
    throw Error(ErrorKind::Precondition, "base relation does not factorize");
  }
  Relation out = base;
  std::vector<std::unordered_map<ProjectionKey, Rational, ProjectionKeyHash>> tables;
  auto ensure_arity = [&](std::size_t m) {
    if (tables.empty()) tables.resize(m);
  };
  for (const auto& p : out) {
    ensure_arity(p.arity());
    for (std::size_t i = 0; i < p.arity(); ++i) tables[i].emplace(project(p, i), p.values()[i]);
  }
  for (const auto& p : pool) {
    if (out.contains_pair(p.frame(), p.point())) continue;
    if (!out.empty() && (p.arity() != out.arity() || p.dim() != out.dim())) {
      throw Error(ErrorKind::Shape, "pool point shape differs from the base relation");
    }
    ensure_arity(p.arity());
    bool compatible = true;
    for (std::size_t i = 0; i < p.arity() && compatible; ++i) {
      auto it = tables[i].find(project(p, i));
      compatible = it == tables[i].end() || it->second == p.values()[i];
    }
    if (!compatible) continue;
    for (std::size_t i = 0; i < p.arity(); ++i) tables[i].emplace(project(p, i), p.values()[i]);
    out.add(p);
  }
  return out;
}

Witness orthogonality_witness_in_span(const Frame& candidate, std::size_t i, std::size_t j, const GramInnerProduct& g) {
  const std::size_t m = candidate.size();
  if (i >= m || j >= m || i == j) {
    throw Error(ErrorKind::Index, "witness needs two distinct slots in 1.." + std::to_string(m));
  }
  if (g.dim() != candidate.dim()) throw Error(ErrorKind::Shape, "inner product dimension differs from the candidate");
  if (g(candidate[i], candidate[j]).is_zero()) {
    throw Error(ErrorKind::NoViolation, "slots " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                            " are already orthogonal");
  }
  // Orthogonalize with slot i first so the witness keeps b_i in place.
  std::vector<std::size_t> order{i};
  for (std::size_t k = 0; k < m; ++k)
    if (k != i) order.push_back(k);
  return Witness{gram_schmidt(g, candidate, order), candidate[i] + candidate[j]};
}

Witness orthogonality_witness(const Frame& candidate, std::size_t i, std::size_t j, const GramInnerProduct& g) {
  if (candidate.size() != candidate.dim()) {
    throw Error(ErrorKind::Shape, "witness construction is certified for full-dimensional frames only (m=" +
                                      std::to_string(candidate.size()) + ", n=" + std::to_string(candidate.dim()) + ")");
  }
  return orthogonality_witness_in_span(candidate, i, j, g);
}

const char* to_string(Verdict v) noexcept { return v == Verdict::Accepted ? "accepted" : "rejected"; }

namespace {

void require_candidates(const GramInnerProduct& g, std::span<const Frame> candidates) {
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const Frame& c = candidates[k];
    if (c.size() != c.dim()) {
      throw Error(ErrorKind::Shape, "candidate " + std::to_string(k + 1) + " is not full-dimensional (m=" +
                                        std::to_string(c.size()) + ", n=" + std::to_string(c.dim()) + ")");
    }
    if (c.dim() != g.dim()) {
      throw Error(ErrorKind::Shape, "candidate " + std::to_string(k + 1) + " has dimension " + std::to_string(c.dim()) +
                                        " but the inner product has dimension " + std::to_string(g.dim()));
    }
  }
}

MaximalityReport assess(const GramInnerProduct& g, const Frame& candidate, std::int64_t bound, std::uint64_t seed) {
  const std::size_t m = candidate.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (g(candidate[i], candidate[j]).is_zero()) continue;
      Witness w = orthogonality_witness(candidate, i, j, g);
      Rational vc = solve_coordinates(candidate, w.point)[i];
      Rational vw = solve_coordinates(w.frame, w.point)[i];
      return MaximalityReport{candidate, std::move(w.frame), std::move(w.point), i,
                              std::move(vc), std::move(vw), Verdict::Rejected};
    }
  }
  Vector x = sample_span_point(candidate, bound, seed);
  Rational vc = solve_coordinates(candidate, x)[0];
  Rational vw = coefficient_formula(g, candidate[0], x);
  return MaximalityReport{candidate, candidate, std::move(x), 0, std::move(vc), std::move(vw), Verdict::Accepted};
}

}  // namespace

std::vector<MaximalityReport> verify_gamma_ort_maximal_serial(const GramInnerProduct& g,
                                                              std::span<const Frame> candidates, std::int64_t bound,
                                                              std::uint64_t seed) {
  require_candidates(g, candidates);
  std::vector<MaximalityReport> out;
  out.reserve(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) out.push_back(assess(g, candidates[k], bound, derive_seed(seed, k)));
  return out;
}

std::vector<MaximalityReport> verify_gamma_ort_maximal(const GramInnerProduct& g, std::span<const Frame> candidates,
                                                       std::int64_t bound, std::uint64_t seed) {
  require_candidates(g, candidates);
  std::vector<std::optional<MaximalityReport>> slots(candidates.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(candidates.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    try {
      const auto uk = static_cast<std::size_t>(k);
      slots[uk] = assess(g, candidates[uk], bound, derive_seed(seed, uk));
    } catch (...) {
#pragma omp critical(ortho_maximality)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<MaximalityReport> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

bool report_verified(const GramInnerProduct& g, const MaximalityReport& r) {
  const std::size_t i = r.index;
  if (i >= r.candidate.size()) return false;
  if (r.verdict == Verdict::Accepted) {
    return is_orthogonal_tuple(g, r.candidate) && r.witness == r.candidate &&
           solve_coordinates(r.candidate, r.collision_point)[i] == r.value_candidate &&
           coefficient_formula(g, r.candidate[i], r.collision_point) == r.value_witness &&
           r.value_candidate == r.value_witness;
  }
  if (is_orthogonal_tuple(g, r.candidate) || !is_orthogonal_tuple(g, r.witness)) return false;
  if (r.witness[i] != r.candidate[i]) return false;
  if (!span_contains(r.candidate, r.collision_point) || !span_contains(r.witness, r.collision_point)) return false;
  Relation pair;
  pair.add(RelationPoint::canonical(r.candidate, r.collision_point));
  pair.add(RelationPoint::canonical(r.witness, r.collision_point));
  const auto outcome = factor_check(pair);
  const auto* c = std::get_if<Counterexample>(&outcome);
  return c != nullptr && c->index == i && c->first_value() == r.value_candidate &&
         c->second_value() == r.value_witness;
}

MaximalitySummary summarize(std::span<const MaximalityReport> reports) {
  MaximalitySummary s;
  s.total = reports.size();
  for (const auto& r : reports) {
    if (r.verdict == Verdict::Accepted) {
      ++s.orthogonal_accepted;
    } else {
      ++s.nonorthogonal_rejected;
    }
  }
  return s;
}

std::vector<Frame> enumerate_candidate_grid(std::size_t dim, std::int64_t bound) {
  if (dim < 2) throw Error(ErrorKind::Shape, "candidate grid needs dim >= 2");
  const std::size_t cells = dim * dim;
  std::vector<std::int64_t> digits(cells, -bound);
  std::vector<Frame> out;
  for (;;) {
    std::vector<Vector> vectors(dim, Vector(dim));
    for (std::size_t c = 0; c < cells; ++c) vectors[c / dim][c % dim] = Rational(static_cast<long>(digits[c]));
    if (is_independent(vectors)) out.emplace_back(std::move(vectors));
    // Odometer with the last entry varying fastest.
    std::size_t pos = cells;
    while (pos > 0 && digits[pos - 1] == bound) digits[--pos] = -bound;
    if (pos == 0) break;
    ++digits[pos - 1];
  }
  return out;
}

}  // namespace ortho
