#pragma once

// Finite-scale maximality: unions of nested factorizable relations, greedy
// maximal extension inside a pool, and the constructive witness showing that
// no non-orthogonal full-dimensional frame can join Γ_ort.

#include <cstdint>
#include <optional>
#include <vector>

#include "ortho/dependence.hpp"

namespace ortho {

/// Ascending family Γ_1 ⊆ Γ_2 ⊆ … ⊆ Γ_k; containment is checked on
/// construction (Precondition error otherwise).
class Chain {
 public:
  Chain() = default;
  explicit Chain(std::vector<Relation> relations);

  std::size_t size() const noexcept { return relations_.size(); }
  const Relation& operator[](std::size_t i) const { return relations_[i]; }
  const std::vector<Relation>& relations() const noexcept { return relations_; }

  Relation union_of() const;

 private:
  std::vector<Relation> relations_;
};

bool is_subset(const Relation& inner, const Relation& outer);

/// Throws Precondition error if some member does not factorize; otherwise
/// returns whether the union factorizes.
bool chain_union_check(const Chain& chain);

/// Γ̄ ⊇ base inside base ∪ pool: pool points are scanned in insertion order
/// and accepted eagerly when they keep every f_i factorizable. Throws
/// Precondition error if `base` itself does not factorize.
Relation greedy_maximal_extension(const Relation& base, const Relation& pool);

struct Witness {
  Frame frame;   // G-orthogonal, slot i equal to the candidate's slot i
  Vector point;  // b_i + b_j, in the span of both frames
};

/// Gram–Schmidt witness for a candidate that is non-orthogonal at (i, j).
/// Requires m = n (Shape error), i != j in range (Index error) and
/// ⟨b_i, b_j⟩_G != 0 (NoViolation error).
Witness orthogonality_witness(const Frame& candidate, std::size_t i, std::size_t j, const GramInnerProduct& g);

/// Same construction without the full-dimension requirement; the witness
/// spans the candidate's own subspace.
Witness orthogonality_witness_in_span(const Frame& candidate, std::size_t i, std::size_t j, const GramInnerProduct& g);

enum class Verdict { Accepted, Rejected };

const char* to_string(Verdict v) noexcept;

struct MaximalityReport {
  Frame candidate;
  /// The witness for a rejected candidate; the candidate itself when accepted.
  Frame witness;
  Vector collision_point;
  std::size_t index = 0;  // slot whose value is compared
  Rational value_candidate;
  Rational value_witness;
  Verdict verdict = Verdict::Accepted;

  friend bool operator==(const MaximalityReport&, const MaximalityReport&) = default;
};

/// For each full-dimensional candidate: accepted when G-orthogonal (with a
/// sampled span point whose solver and formula coordinates agree),
/// otherwise rejected with the witness built for the lexicographically
/// smallest non-orthogonal pair. Candidates are processed in parallel; the
/// output order and content match verify_gamma_ort_maximal_serial.
std::vector<MaximalityReport> verify_gamma_ort_maximal(const GramInnerProduct& g, std::span<const Frame> candidates,
                                                       std::int64_t bound, std::uint64_t seed);

std::vector<MaximalityReport> verify_gamma_ort_maximal_serial(const GramInnerProduct& g,
                                                              std::span<const Frame> candidates, std::int64_t bound,
                                                              std::uint64_t seed);

/// Re-derives a report from scratch: a rejected report must reproduce its
/// value disagreement as a factor_check counterexample on the two points
/// {(candidate, x), (witness, x)} at its index, with a G-orthogonal witness
/// sharing that slot; an accepted report needs a G-orthogonal candidate whose
/// solver and formula values agree.
bool report_verified(const GramInnerProduct& g, const MaximalityReport& report);

struct MaximalitySummary {
  std::size_t total = 0;
  std::size_t orthogonal_accepted = 0;
  std::size_t nonorthogonal_rejected = 0;
  friend bool operator==(const MaximalitySummary&, const MaximalitySummary&) = default;
};

MaximalitySummary summarize(std::span<const MaximalityReport> reports);

/// All independent full-dimensional frames with integer entries in
/// [-bound, bound], in lexicographic order of their entries.
std::vector<Frame> enumerate_candidate_grid(std::size_t dim, std::int64_t bound);

}  // namespace ortho
