#include <doctest.h>

#include "oracles.hpp"
#include "ortho/dependence.hpp"
#include "ortho/errors.hpp"
#include "ortho/maximality.hpp"
#include "ortho/sample.hpp"

using namespace ortho;

namespace {

Vector iv(std::initializer_list<long> xs) {
  std::vector<Rational> e;
  for (long x : xs) e.emplace_back(x);
  return Vector(std::move(e));
}

RelationPoint pt(Frame f, Vector x) { return RelationPoint::canonical(std::move(f), std::move(x)); }

Relation rel_of(std::initializer_list<RelationPoint> ps) {
  Relation r;
  for (const auto& p : ps) r.add(p);
  return r;
}

// Random relation whose frames reuse a handful of vectors, so key
// collisions are common. Values are occasionally perturbed away from the
// canonical coordinates.
Relation random_relation(Rng& rng, std::size_t dim, std::size_t max_points) {
  std::vector<Vector> pool;
  for (int k = 0; k < 4; ++k) pool.push_back(sample_integer_vector(rng, dim, 2));
  std::vector<Vector> xs;
  for (int k = 0; k < 2; ++k) xs.push_back(sample_integer_vector(rng, dim, 2));
  Relation rel;
  const std::size_t target = rng.index(max_points + 1);
  for (int attempt = 0; attempt < 50 && rel.size() < target; ++attempt) {
    std::vector<Vector> vs{pool[rng.index(pool.size())], pool[rng.index(pool.size())]};
    if (!is_independent(vs)) continue;
    Frame f(vs);
    // Points: one of the shared xs when in span, else a combination.
    Vector x = xs[rng.index(xs.size())];
    if (!span_contains(f, x)) x = sample_span_point(f, 2, rng.engine()());
    CoordinateVector values = solve_coordinates(f, x);
    if (rng.index(6) == 0) values[rng.index(values.size())] += Rational(1);
    rel.add(RelationPoint::with_values(std::move(f), std::move(x), std::move(values)));
  }
  return rel;
}

}  // namespace

TEST_CASE("relation points") {
  const auto p = pt(Frame{iv({1, 0}), iv({1, 1})}, iv({3, 5}));
  CHECK(p.values() == CoordinateVector{-2, 5});
  CHECK_THROWS_AS(pt(Frame{iv({1, 0, 0}), iv({0, 1, 0})}, iv({0, 0, 1})), Error);
  CHECK_THROWS_AS(RelationPoint::with_values(Frame{iv({1, 0}), iv({0, 1})}, iv({1, 1}), {1}), Error);

  Relation r;
  CHECK(r.add(p));
  CHECK_FALSE(r.add(p));
  CHECK(r.size() == 1);
  CHECK_THROWS_AS(r.add(pt(Frame{iv({1, 0, 0}), iv({0, 1, 0})}, iv({1, 1, 0}))), Error);
}

TEST_CASE("project") {
  const auto p = pt(Frame{iv({1, 0}), iv({0, 1})}, iv({3, 5}));
  const auto key = project(p, 0);
  CHECK(key.index == 0);
  CHECK(key.vector == iv({1, 0}));
  CHECK(key.point == iv({3, 5}));
  const auto q = pt(Frame{iv({1, 0}), iv({0, 2})}, iv({3, 5}));
  CHECK(project(p, 0) == project(q, 0));
  CHECK_FALSE(project(p, 1) == project(q, 1));
  try {
    project(p, 2);
    FAIL("expected an index error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Index);
  }
}

TEST_CASE("factor_check examples") {
  SUBCASE("shared a_1 with equal coordinates gives tables") {
    const auto rel = rel_of({pt(Frame{iv({1, 0}), iv({0, 1})}, iv({3, 5})), pt(Frame{iv({1, 0}), iv({0, 2})}, iv({3, 5}))});
    const auto out = factor_check(rel);
    REQUIRE(factorizes(out));
    const auto& tables = std::get<FactorTables>(out).tables;
    REQUIRE(tables.size() == 2);
    const Rational* g1 = tables[0].find(ProjectionKey{0, iv({1, 0}), iv({3, 5})});
    REQUIRE(g1 != nullptr);
    CHECK(*g1 == Rational(3));
    CHECK(tables[0].entries.size() == 1);
    CHECK(tables[1].entries.size() == 2);
  }
  SUBCASE("shared a_1 with different coordinates gives a counterexample") {
    const auto rel = rel_of({pt(Frame{iv({1, 0}), iv({0, 1})}, iv({3, 5})), pt(Frame{iv({1, 0}), iv({1, 1})}, iv({3, 5}))});
    const auto out = factor_check(rel);
    REQUIRE_FALSE(factorizes(out));
    const auto& c = std::get<Counterexample>(out);
    CHECK(c.index == 0);
    CHECK(c.first_value() == Rational(3));
    CHECK(c.second_value() == Rational(-2));
    CHECK(c.first == rel[0]);
    CHECK(c.second == rel[1]);
  }
  SUBCASE("empty and singleton relations factorize") {
    CHECK(factorizes(factor_check(Relation{})));
    CHECK(factorizes(factor_check(rel_of({pt(Frame{iv({1, 0}), iv({1, 1})}, iv({3, 5}))}))));
  }
}

TEST_CASE("factor_check reports the first counterexample in scan order") {
  // Index 2 conflicts at positions (0,1); index 1 conflicts at (2,3). The
  // lower index wins even though its conflict appears later.
  const auto rel = rel_of({
      pt(Frame{iv({1, 0}), iv({0, 1})}, iv({1, 1})),
      pt(Frame{iv({1, 1}), iv({0, 1})}, iv({1, 1})),
      pt(Frame{iv({2, 0}), iv({0, 1})}, iv({2, 3})),
      pt(Frame{iv({2, 0}), iv({1, 1})}, iv({2, 3})),
  });
  const auto out = factor_check(rel);
  REQUIRE_FALSE(factorizes(out));
  const auto& c = std::get<Counterexample>(out);
  CHECK(c.index == 0);
  CHECK(c.first == rel[2]);
  CHECK(c.second == rel[3]);
  CHECK(factor_check_serial(rel) == out);

  // The disagreeing point is compared to the first point with the key.
  const Frame f{iv({1, 0}), iv({0, 1})};
  Relation r;
  r.add(RelationPoint::with_values(f, iv({1, 2}), {1, 2}));
  r.add(RelationPoint::with_values(Frame{iv({1, 0}), iv({0, 2})}, iv({1, 2}), {1, 1}));
  r.add(RelationPoint::with_values(Frame{iv({1, 0}), iv({0, 3})}, iv({1, 2}), {7, 1}));
  const auto out2 = factor_check(r);
  const auto& c2 = std::get<Counterexample>(out2);
  CHECK(c2.index == 0);
  CHECK(c2.first == r[0]);
  CHECK(c2.second == r[2]);
}

TEST_CASE("factor_check agrees with the brute-force oracle") {
  Rng rng(2024);
  std::size_t failing = 0;
  for (int t = 0; t < 3000; ++t) {
    const Relation rel = random_relation(rng, 2 + rng.index(2), 6);
    const auto out = factor_check(rel);
    const int oracle_index = oracle::first_dependent_index(rel);
    REQUIRE(factorizes(out) == (oracle_index < 0));
    if (!factorizes(out)) {
      ++failing;
      CHECK(static_cast<int>(std::get<Counterexample>(out).index) == oracle_index);
    }
    CHECK(factor_check_serial(rel) == out);
  }
  // Both verdicts must be well represented for the comparison to mean much.
  CHECK(failing > 300);
  CHECK(failing < 2700);
}

TEST_CASE("counterexamples re-verify from scratch") {
  Rng rng(5);
  for (int t = 0; t < 400; ++t) {
    const Relation rel = build_delta_sample(SampleShape{2, 2}, SampleCounts{6, 3, 2, rng.engine()()});
    const auto out = factor_check(rel);
    if (factorizes(out)) continue;
    const auto& c = std::get<Counterexample>(out);
    CHECK(project(c.first, c.index) == project(c.second, c.index));
    const auto lp = solve_coordinates(c.first.frame(), c.first.point());
    const auto lq = solve_coordinates(c.second.frame(), c.second.point());
    CHECK(lp[c.index] == c.first_value());
    CHECK(lq[c.index] == c.second_value());
    CHECK(lp[c.index] != lq[c.index]);
  }
}

TEST_CASE("subset monotonicity") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const Relation rel = build_gamma_ort(GramInnerProduct::identity(2 + s % 2), SampleCounts{5, 3, 3, s});
    REQUIRE(factorizes(factor_check(rel)));
    Rng rng(s);
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < rel.size(); ++k)
      if (rng.index(2)) keep.push_back(k);
    CHECK(factorizes(factor_check(rel.subset(keep))));
  }
}

TEST_CASE("check_proposition_2d") {
  SUBCASE("dot-orthogonal frames pass both clauses") {
    const auto rel = build_gamma_ort(GramInnerProduct::identity(2), SampleCounts{10, 4, 3, 1});
    const auto rep = check_proposition_2d(rel);
    CHECK(rep.lambda_free_of_b.passed);
    CHECK(rep.mu_free_of_a.passed);
  }
  SUBCASE("lambda clause fails, mu clause holds") {
    const auto rel = rel_of({pt(Frame{iv({1, 0}), iv({1, 1})}, iv({3, 5})), pt(Frame{iv({1, 0}), iv({0, 1})}, iv({3, 5}))});
    const auto rep = check_proposition_2d(rel);
    REQUIRE_FALSE(rep.lambda_free_of_b.passed);
    CHECK(rep.lambda_free_of_b.counterexample->first_value() == Rational(-2));
    CHECK(rep.lambda_free_of_b.counterexample->second_value() == Rational(3));
    CHECK(rep.mu_free_of_a.passed);
  }
  SUBCASE("empty relation") { CHECK(check_proposition_2d(Relation{}).passed()); }
  SUBCASE("arity 3 is rejected") {
    const auto rel = rel_of({pt(Frame{iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})}, iv({1, 2, 3}))});
    CHECK_THROWS_AS(check_proposition_2d(rel), Error);
  }
  SUBCASE("agrees with factor_check") {
    Rng rng(88);
    for (int t = 0; t < 500; ++t) {
      const Relation rel = random_relation(rng, 2, 6);
      CHECK(check_proposition_2d(rel).passed() == factorizes(factor_check(rel)));
    }
  }
}

TEST_CASE("single-function factorization") {
  const auto rel = rel_of({pt(Frame{iv({1, 0}), iv({1, 1})}, iv({3, 5})), pt(Frame{iv({1, 0}), iv({0, 1})}, iv({3, 5}))});
  CHECK(std::holds_alternative<Counterexample>(factor_check_index(rel, 0)));
  CHECK(std::holds_alternative<FactorTable>(factor_check_index(rel, 1)));
  CHECK_THROWS_AS(factor_check_index(rel, 2), Error);
}

TEST_CASE("build_gamma_ort") {
  const auto id = GramInnerProduct::identity(2);
  CHECK(build_gamma_ort(id, SampleCounts{0, 4, 5, 3}).empty());
  CHECK(build_gamma_ort(id, SampleCounts{6, 4, 5, 3}) == build_gamma_ort(id, SampleCounts{6, 4, 5, 3}));
  for (std::uint64_t s = 0; s < 50; ++s) {
    const std::size_t n = 2 + s % 3;
    const auto rel = build_gamma_ort(GramInnerProduct::identity(n), 2 + s % (n - 1), SampleCounts{6, 3, 4, s});
    CHECK(factorizes(factor_check(rel)));
    for (const auto& p : rel) CHECK(is_orthogonal_tuple(GramInnerProduct::identity(n), p.frame()));
  }
  // Under a non-standard inner product too.
  const auto g = validate_inner_product(Matrix{{2, 1}, {1, 3}});
  const auto rel = build_gamma_ort(g, SampleCounts{20, 3, 4, 9});
  CHECK(factorizes(factor_check(rel)));
  for (const auto& p : rel) CHECK(is_orthogonal_tuple(g, p.frame()));
  CHECK_THROWS_AS(build_gamma_ort(id, SampleCounts{2, 2, 0, 1}), Error);
}

TEST_CASE("build_delta_sample") {
  const SampleShape shape{3, 2};
  CHECK(build_delta_sample(shape, SampleCounts{5, 3, 4, 11}) == build_delta_sample(shape, SampleCounts{5, 3, 4, 11}));
  for (const auto& p : build_delta_sample(shape, SampleCounts{5, 3, 4, 11})) {
    CHECK(span_contains(p.frame(), p.point()));
    CHECK(p.values() == solve_coordinates(p.frame(), p.point()));
  }
  // Plant the two frames of the standard counterexample.
  Relation planted = build_delta_sample(SampleShape{2, 2}, SampleCounts{4, 2, 5, 12});
  planted.add(pt(Frame{iv({1, 0}), iv({0, 1})}, iv({3, 5})));
  planted.add(pt(Frame{iv({1, 0}), iv({1, 1})}, iv({3, 5})));
  CHECK_FALSE(factorizes(factor_check(planted)));
}

TEST_CASE("recover_orthogonal_tuples") {
  const auto id = GramInnerProduct::identity(2);
  const auto rel = build_gamma_ort(id, SampleCounts{5, 3, 5, 21});
  const auto frames = recover_orthogonal_tuples(rel);
  CHECK(frames.size() == 5);
  for (const auto& f : frames) CHECK(is_orthogonal_tuple(id, f));
  CHECK(recover_orthogonal_tuples(Relation{}).empty());
  const Frame e{iv({1, 0}), iv({0, 1})};
  CHECK(recover_orthogonal_tuples(rel_of({pt(e, iv({1, 2})), pt(e, iv({3, 4}))})).size() == 1);
  const auto bad = rel_of({pt(Frame{iv({1, 0}), iv({0, 1})}, iv({3, 5})), pt(Frame{iv({1, 0}), iv({1, 1})}, iv({3, 5}))});
  CHECK_THROWS_AS(recover_orthogonal_tuples(bad), Error);
}

TEST_CASE("is_orthogonal_def1") {
  WitnessRecipe recipe;
  CHECK(is_orthogonal_def1(Frame{iv({1, 0}), iv({0, 1})}, recipe));
  CHECK(is_orthogonal_def1(Frame{iv({2, 0}), iv({0, 3})}, recipe));

  const Frame skew{iv({1, 0}), iv({1, 1})};
  CHECK_FALSE(is_orthogonal_def1(skew, recipe));
  const auto out = factor_check(witness_pool(skew, recipe));
  const auto& c = std::get<Counterexample>(out);
  CHECK(c.index == 0);
  CHECK(c.first.point() == iv({2, 1}));
  CHECK(c.first_value() == Rational(1));
  CHECK(c.second_value() == Rational(2));

  // Orthogonality is relative to the inner product used for the witnesses.
  WitnessRecipe skew_recipe;
  skew_recipe.gram = validate_inner_product(Matrix{{1, -1}, {-1, 2}});
  CHECK(is_orthogonal_def1(skew, skew_recipe));
  CHECK_FALSE(is_orthogonal_def1(Frame{iv({1, 0}), iv({0, 1})}, skew_recipe));

  // Sound and complete on sampled frames, also for m < n.
  for (std::uint64_t s = 0; s < 150; ++s) {
    const std::size_t n = 2 + s % 3;
    const std::size_t m = 2 + (s / 3) % (n - 1);
    const auto id = GramInnerProduct::identity(n);
    const Frame raw = sample_frame(n, m, 3, s);
    const Frame orth = gram_schmidt(id, raw);
    WitnessRecipe r;
    r.seed = s;
    CHECK(is_orthogonal_def1(raw, r) == is_orthogonal_tuple(id, raw));
    CHECK(is_orthogonal_def1(orth, r));
  }

  // A Γ_ort sample as extra witnesses never makes an orthogonal frame fail.
  WitnessRecipe with_extra;
  with_extra.extra = build_gamma_ort(GramInnerProduct::identity(2), SampleCounts{10, 4, 3, 5});
  CHECK(is_orthogonal_def1(Frame{iv({1, 0}), iv({0, 1})}, with_extra));
}
