#include "ortho/cli.hpp"

#include <chrono>
#include <exception>
#include <algorithm>
#include <numeric>

#include "ortho/errors.hpp"
#include "ortho/sample.hpp"

namespace ortho::cli {

namespace io = ortho::json;
using nlohmann::json;

void RunConfig::validate() const {
  if (m < 2 || m > dim || dim > 16) {
    throw Error(ErrorKind::Shape, "configuration needs 2 <= m <= dim <= 16 (m=" + std::to_string(m) +
                                      ", dim=" + std::to_string(dim) + ")");
  }
  if (bound < 0) throw Error(ErrorKind::Shape, "bound must be non-negative");
}

json RunConfig::to_json() const {
  return json{{"dim", dim},     {"m", m},           {"frames", frames},
              {"points", points}, {"bound", bound}, {"seed", seed},
              {"gram", gram ? json(*gram) : json(nullptr)},
              {"input", input ? json(*input) : json(nullptr)}};
}

json Report::to_json() const {
  return json{{"command", command},
              {"config", config.to_json()},
              {"payload", payload},
              {"verdict", passed ? "pass" : "fail"},
              {"duration_us", duration_us}};
}

std::string Report::canonical_payload() const {
  json j = to_json();
  j.erase("duration_us");
  return j.dump();
}

GramInnerProduct load_gram(const RunConfig& config) {
  if (!config.gram) return GramInnerProduct::identity(config.dim);
  GramInnerProduct g = io::gram_from(io::read_file(*config.gram));
  if (g.dim() != config.dim) {
    throw Error(ErrorKind::Shape, "Gram matrix has dimension " + std::to_string(g.dim()) + " but --dim is " +
                                      std::to_string(config.dim));
  }
  return g;
}

namespace {

template <typename Body>
Report timed(std::string name, const RunConfig& config, Body body) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Report r{std::move(name), config, json::object(), true, 0};
  body(r);
  r.duration_us = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
  return r;
}

SampleCounts counts_of(const RunConfig& c) { return SampleCounts{c.frames, c.points, c.bound, c.seed}; }

}  // namespace

Report cmd_equivalence(const RunConfig& config) {
  return timed("equivalence", config, [&](Report& r) {
    const GramInnerProduct g = load_gram(config);
    // Same seeding scheme as build_gamma_ort, so trial (f, p) here is point
    // (f, p) of the Γ_ort sample with the same configuration.
    std::vector<std::size_t> failures(config.frames, 0);
    std::exception_ptr error;
    const auto n = static_cast<std::ptrdiff_t>(config.frames);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t f = 0; f < n; ++f) {
      try {
        const auto uf = static_cast<std::uint64_t>(f);
        const Frame frame =
            gram_schmidt(g, sample_frame(config.dim, config.m, config.bound, derive_seed(config.seed, 2 * uf)));
        const std::uint64_t point_seed = derive_seed(config.seed, 2 * uf + 1);
        for (std::size_t p = 0; p < config.points; ++p) {
          const Vector x = sample_span_point(frame, config.bound, derive_seed(point_seed, p));
          if (!verify_projection_equivalence(g, frame, x)) ++failures[static_cast<std::size_t>(f)];
        }
      } catch (...) {
#pragma omp critical(ortho_cli_equivalence)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    const std::size_t total_failures = std::accumulate(failures.begin(), failures.end(), std::size_t{0});
    r.payload = json{{"trials", config.frames * config.points}, {"failures", total_failures}};
    r.passed = total_failures == 0;
  });
}

Report cmd_factor(const RunConfig& config) {
  return timed("factor", config, [&](Report& r) {
    const Relation rel = config.input ? io::relation_from(io::read_file(*config.input))
                                      : build_gamma_ort(load_gram(config), config.m, counts_of(config));
    const FactorizationOutcome outcome = factor_check(rel);
    r.payload = io::to_json(outcome);
    r.passed = factorizes(outcome);
  });
}

Report cmd_maximality(const RunConfig& config) {
  return timed("maximality", config, [&](Report& r) {
    if (config.m != config.dim) {
      throw Error(ErrorKind::Shape, "maximality needs m = dim (m=" + std::to_string(config.m) +
                                        ", dim=" + std::to_string(config.dim) + ")");
    }
    const GramInnerProduct g = load_gram(config);
    std::vector<Frame> candidates;
    std::string mode;
    if (config.input) {
      candidates = io::frames_from(io::read_file(*config.input));
      mode = "input";
    } else if (config.dim == 2) {
      candidates = enumerate_candidate_grid(2, config.bound);
      mode = "exhaustive";
    } else {
      for (std::size_t k = 0; k < config.frames; ++k) {
        candidates.push_back(sample_frame(config.dim, config.dim, config.bound, derive_seed(config.seed, k)));
      }
      mode = "sampled";
    }
    const auto reports = verify_gamma_ort_maximal(g, candidates, config.bound, config.seed);
    json rejected = json::array();
    bool all_verified = true;
    for (const auto& rep : reports) {
      all_verified = all_verified && report_verified(g, rep);
      if (rep.verdict == Verdict::Rejected) rejected.push_back(io::to_json(rep));
    }
    r.payload = json{{"mode", mode},
                     {"summary", io::to_json(summarize(reports))},
                     {"rejected", std::move(rejected)},
                     {"all_verified", all_verified}};
    r.passed = all_verified;
  });
}

Report cmd_chain(const RunConfig& config) {
  return timed("chain", config, [&](Report& r) {
    const Relation gamma = build_gamma_ort(load_gram(config), config.m, counts_of(config));
    // Chain of `frames` nested prefixes of a shuffled Γ_ort sample.
    Rng rng(derive_seed(config.seed, 0x636861696eULL));
    std::vector<std::size_t> order(gamma.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t k = order.size(); k > 1; --k) std::swap(order[k - 1], order[rng.index(k)]);
    std::vector<std::size_t> cuts(config.frames);
    for (auto& c : cuts) c = rng.index(gamma.size() + 1);
    std::sort(cuts.begin(), cuts.end());

    std::vector<Relation> members;
    json lengths = json::array();
    for (std::size_t c : cuts) {
      members.push_back(gamma.subset(std::span(order).first(c)));
      lengths.push_back(c);
    }
    const Chain chain(std::move(members));
    const bool ok = chain_union_check(chain);
    r.payload = json{{"lengths", std::move(lengths)}, {"union_size", chain.union_of().size()}, {"verdict", ok}};
    r.passed = ok;
  });
}

Report cmd_pair_ip(const RunConfig& config, const Vector& a, const Vector& b) {
  return timed("pair-ip", config, [&](Report& r) {
    if (a.dim() != 2 || b.dim() != 2) throw Error(ErrorKind::Shape, "pair-ip takes two vectors of dimension 2");
    if (!is_independent(std::vector<Vector>{a, b})) {
      throw Error(ErrorKind::Independence, "pair-ip needs an independent pair");
    }
    const Frame frame{a, b};
    const GramInnerProduct g = frame_adapted_inner_product(frame);
    const Vector x = sample_span_point(frame, config.bound, config.seed);
    const CoordinateVector solver = solve_coordinates(frame, x);
    const CoordinateVector formula = formula_coordinates(g, frame, x);
    json js = json::array();
    json jf = json::array();
    for (const auto& v : solver) js.push_back(io::to_json(v));
    for (const auto& v : formula) jf.push_back(io::to_json(v));
    const Rational ab = g(a, b);
    r.payload = json{{"gram", io::to_json(g)},
                     {"ab", io::to_json(ab)},
                     {"aa", io::to_json(g(a, a))},
                     {"bb", io::to_json(g(b, b))},
                     {"x", io::to_json(x)},
                     {"solver", std::move(js)},
                     {"formula", std::move(jf)},
                     {"match", solver == formula}};
    r.passed = ab.is_zero() && solver == formula;
  });
}

Vector parse_vector_literal(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') return io::vector_from(io::parse_text(text));
  std::vector<Rational> entries;
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    item = b == std::string::npos ? std::string{} : item.substr(b, e - b + 1);
    entries.push_back(Rational::parse(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return Vector(std::move(entries));
}

}  // namespace ortho::cli
