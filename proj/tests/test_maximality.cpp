#include <doctest.h>

#include "oracles.hpp"
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

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an ortho::Error");
  return ErrorKind::Parse;
}

Chain random_chain(const Relation& gamma, Rng& rng, std::size_t length) {
  std::vector<std::size_t> order(gamma.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng.index(k)]);
  std::vector<std::size_t> cuts(length);
  for (auto& c : cuts) c = rng.index(gamma.size() + 1);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Relation> members;
  for (std::size_t c : cuts) members.push_back(gamma.subset(std::span(order).first(c)));
  return Chain(std::move(members));
}

}  // namespace

TEST_CASE("chain construction checks containment") {
  const auto gamma = build_gamma_ort(GramInnerProduct::identity(2), SampleCounts{4, 3, 3, 1});
  const std::vector<std::size_t> a{0, 1};
  const std::vector<std::size_t> b{2};
  CHECK(kind_of([&] { Chain({gamma.subset(a), gamma.subset(b)}); }) == ErrorKind::Precondition);
  CHECK_NOTHROW(Chain({gamma.subset(b), gamma}));
}

TEST_CASE("chain_union_check") {
  CHECK(chain_union_check(Chain{}));
  const auto gamma = build_gamma_ort(GramInnerProduct::identity(2), SampleCounts{8, 4, 5, 2});
  CHECK(chain_union_check(Chain({gamma})));

  Relation bad;
  bad.add(pt(Frame{iv({1, 0}), iv({0, 1})}, iv({3, 5})));
  bad.add(pt(Frame{iv({1, 0}), iv({1, 1})}, iv({3, 5})));
  CHECK(kind_of([&] { chain_union_check(Chain({bad})); }) == ErrorKind::Precondition);

  Rng rng(6);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t n = 2 + s % 2;
    const auto g = build_gamma_ort(GramInnerProduct::identity(n), SampleCounts{6, 3, 4, s});
    const Chain chain = random_chain(g, rng, 1 + rng.index(6));
    CHECK(chain_union_check(chain));
    CHECK(chain.union_of() == chain[chain.size() - 1]);
  }
}

TEST_CASE("greedy_maximal_extension") {
  const auto id = GramInnerProduct::identity(2);

  SUBCASE("pool equal to base") {
    const auto base = build_gamma_ort(id, SampleCounts{4, 2, 3, 3});
    CHECK(greedy_maximal_extension(base, base) == base);
  }
  SUBCASE("empty base, one point") {
    Relation pool;
    pool.add(pt(Frame{iv({1, 0}), iv({1, 1})}, iv({3, 5})));
    CHECK(greedy_maximal_extension(Relation{}, pool) == pool);
  }
  SUBCASE("base must factorize") {
    Relation bad;
    bad.add(pt(Frame{iv({1, 0}), iv({0, 1})}, iv({3, 5})));
    bad.add(pt(Frame{iv({1, 0}), iv({1, 1})}, iv({3, 5})));
    CHECK(kind_of([&] { greedy_maximal_extension(bad, Relation{}); }) == ErrorKind::Precondition);
  }
  SUBCASE("non-orthogonal points whose witnesses are present are never added") {
    // Base: Γ_ort sample plus every Gram–Schmidt witness point of the
    // candidates. Pool: the candidates' collision points plus a Δ sample.
    Relation base = build_gamma_ort(id, SampleCounts{6, 3, 3, 4});
    Relation pool;
    std::vector<RelationPoint> candidates;
    for (std::uint64_t s = 0; s < 40; ++s) {
      const Frame f = sample_frame(2, 2, 3, derive_seed(10, s));
      if (is_orthogonal_tuple(id, f)) continue;
      const Witness w = orthogonality_witness(f, 0, 1, id);
      base.add(pt(w.frame, w.point));
      candidates.push_back(pt(f, w.point));
      pool.add(candidates.back());
    }
    REQUIRE(factorizes(factor_check(base)));
    for (const auto& p : build_delta_sample(SampleShape{2, 2}, SampleCounts{10, 3, 3, 5})) pool.add(p);

    const Relation bar = greedy_maximal_extension(base, pool);
    CHECK(is_subset(base, bar));
    CHECK(factorizes(factor_check(bar)));
    for (const auto& c : candidates) {
      if (base.contains(c)) continue;
      CHECK_FALSE(bar.contains(c));
    }
    // Maximal within the pool: each excluded point breaks factorization.
    for (const auto& p : pool) {
      if (bar.contains(p)) continue;
      Relation grown = bar;
      grown.add(p);
      CHECK_FALSE(factorizes(factor_check(grown)));
    }
  }
  SUBCASE("random pools, any scan order") {
    for (std::uint64_t s = 0; s < 60; ++s) {
      const Relation pool = build_delta_sample(SampleShape{2, 2}, SampleCounts{8, 3, 2, s});
      std::vector<std::size_t> order(pool.size());
      std::iota(order.begin(), order.end(), 0);
      Rng rng(s);
      for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng.index(k)]);
      const Relation bar = greedy_maximal_extension(Relation{}, pool.subset(order));
      CHECK(factorizes(factor_check(bar)));
      for (const auto& p : pool) {
        if (bar.contains(p)) continue;
        Relation grown = bar;
        grown.add(p);
        CHECK_FALSE(factorizes(factor_check(grown)));
      }
    }
  }
}

TEST_CASE("orthogonality_witness") {
  const auto id = GramInnerProduct::identity(2);
  const Frame skew{iv({1, 0}), iv({1, 1})};
  const Witness w = orthogonality_witness(skew, 0, 1, id);
  CHECK(w.frame == Frame{iv({1, 0}), iv({0, 1})});
  CHECK(w.point == iv({2, 1}));
  CHECK(solve_coordinates(skew, w.point)[0] == Rational(1));
  CHECK(solve_coordinates(w.frame, w.point)[0] == Rational(2));

  CHECK(kind_of([&] { orthogonality_witness(Frame{iv({2, 0}), iv({0, 3})}, 0, 1, id); }) == ErrorKind::NoViolation);
  CHECK(kind_of([&] { orthogonality_witness(skew, 0, 0, id); }) == ErrorKind::Index);
  CHECK(kind_of([&] { orthogonality_witness(skew, 0, 2, id); }) == ErrorKind::Index);
  CHECK(kind_of([&] {
          orthogonality_witness(Frame{iv({1, 0, 0}), iv({1, 1, 0})}, 0, 1, GramInnerProduct::identity(3));
        }) == ErrorKind::Shape);

  // Witness correctness on sampled non-orthogonal full-dimensional frames,
  // under random SPD inner products, for every violating pair.
  Rng rng(19);
  for (std::uint64_t s = 0; s < 150; ++s) {
    const std::size_t n = 2 + s % 3;
    Matrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) a(r, c) = Rational(static_cast<long>(rng.uniform(-2, 2)));
    Matrix gm = a.transpose() * a;
    for (std::size_t i = 0; i < n; ++i) gm(i, i) += 1;
    const auto g = validate_inner_product(gm);
    const Frame f = sample_frame(n, n, 3, s);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j || g(f[i], f[j]).is_zero()) continue;
        const Witness wit = orthogonality_witness(f, i, j, g);
        CHECK(is_orthogonal_tuple(g, wit.frame));
        CHECK(wit.frame[i] == f[i]);
        CHECK(span_contains(wit.frame, wit.point));
        const Rational lc = solve_coordinates(f, wit.point)[i];
        const Rational lw = solve_coordinates(wit.frame, wit.point)[i];
        CHECK(lc == Rational(1));
        CHECK(lw - lc == g(f[i], f[j]) / g(f[i], f[i]));

        Relation pair;
        pair.add(pt(f, wit.point));
        pair.add(pt(wit.frame, wit.point));
        CHECK(factor_check_index(pair, i).index() == 1);
      }
    }
  }
}

TEST_CASE("verify_gamma_ort_maximal") {
  const auto id = GramInnerProduct::identity(2);
  const std::vector<Frame> fixtures{Frame{iv({1, 0}), iv({0, 1})}, Frame{iv({1, 0}), iv({1, 1})}};
  const auto reports = verify_gamma_ort_maximal(id, fixtures, 5, 0);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].verdict == Verdict::Accepted);
  CHECK(reports[1].verdict == Verdict::Rejected);
  CHECK(reports[1].collision_point == iv({2, 1}));
  CHECK(reports[1].value_candidate == Rational(1));
  CHECK(reports[1].value_witness == Rational(2));
  for (const auto& r : reports) CHECK(report_verified(id, r));

  const std::vector<Frame> partial{Frame{iv({1, 0, 0}), iv({0, 1, 0})}};
  CHECK(kind_of([&] { verify_gamma_ort_maximal(GramInnerProduct::identity(3), partial, 5, 0); }) == ErrorKind::Shape);

  SUBCASE("exhaustive dim-2 grid, entries in [-2,2]") {
    const auto grid = enumerate_candidate_grid(2, 2);
    // Independent pairs counted directly: ad - bc != 0, and orthogonal ones
    // by the integer dot product.
    std::size_t independent = 0;
    std::size_t orthogonal = 0;
    for (long a = -2; a <= 2; ++a)
      for (long b = -2; b <= 2; ++b)
        for (long c = -2; c <= 2; ++c)
          for (long d = -2; d <= 2; ++d) {
            if (a * d - b * c == 0) continue;
            ++independent;
            if (a * c + b * d == 0) ++orthogonal;
          }
    REQUIRE(grid.size() == independent);
    const auto all = verify_gamma_ort_maximal(id, grid, 2, 7);
    const auto summary = summarize(all);
    CHECK(summary.total == independent);
    CHECK(summary.orthogonal_accepted == orthogonal);
    CHECK(summary.nonorthogonal_rejected == independent - orthogonal);
    for (const auto& r : all) {
      CHECK(report_verified(id, r));
      CHECK((r.verdict == Verdict::Accepted) == (oracle::int_dot(r.candidate[0], r.candidate[1]) == 0));
    }
  }
}

TEST_CASE("enumerate_candidate_grid") {
  const auto grid = enumerate_candidate_grid(2, 1);
  // 3^4 = 81 ordered pairs, 48 with nonzero determinant.
  CHECK(grid.size() == 48);
  CHECK(grid.front() == Frame{iv({-1, -1}), iv({-1, 0})});
}

TEST_CASE("parallel kernels match their serial references") {
  const auto id = GramInnerProduct::identity(2);
  const auto grid = enumerate_candidate_grid(2, 2);
  CHECK(verify_gamma_ort_maximal(id, grid, 2, 3) == verify_gamma_ort_maximal_serial(id, grid, 2, 3));

  std::vector<Frame> sampled;
  for (std::uint64_t s = 0; s < 40; ++s) sampled.push_back(sample_frame(3, 3, 3, s));
  const auto g3 = validate_inner_product(Matrix{{2, 1, 0}, {1, 2, 1}, {0, 1, 2}});
  CHECK(verify_gamma_ort_maximal(g3, sampled, 3, 9) == verify_gamma_ort_maximal_serial(g3, sampled, 3, 9));

  const Relation big = build_gamma_ort(GramInnerProduct::identity(3), 3, SampleCounts{64, 8, 5, 1});
  CHECK(factor_check(big) == factor_check_serial(big));
  Relation planted = big;
  // Same slot-0 vector and point as an existing entry, different value.
  const auto& v = big[5].values();
  REQUIRE(planted.add(RelationPoint::with_values(big[5].frame().scaled(1, Rational(2)), big[5].point(),
                                                 {v[0] + 1, v[1], v[2]})));
  const auto out = factor_check(planted);
  REQUIRE_FALSE(factorizes(out));
  CHECK(std::get<Counterexample>(out).index == 0);
  CHECK(out == factor_check_serial(planted));
}
