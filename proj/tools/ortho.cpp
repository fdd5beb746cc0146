// ortho: seeded experiments over inner-product-free orthogonality.
//
// Exit codes: 0 verdict pass, 1 verdict fail, 2 usage / parse / validation error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ortho/cli.hpp"
#include "ortho/errors.hpp"

namespace {

struct Options {
  ortho::cli::RunConfig config;
  std::string output;
  std::string a;
  std::string b;
};

void add_shared_flags(CLI::App* sub, Options& opt) {
  auto& c = opt.config;
  sub->add_option("--dim", c.dim, "ambient dimension n (2..16)")->capture_default_str();
  sub->add_option("--m", c.m, "frame size m (2..dim)")->capture_default_str();
  sub->add_option("--frames", c.frames, "number of sampled frames")->capture_default_str();
  sub->add_option("--points", c.points, "span points per frame")->capture_default_str();
  sub->add_option("--bound", c.bound, "integer entry bound for sampling")->capture_default_str();
  sub->add_option("--seed", c.seed, "master seed (ORTHO_SEED overrides)")->capture_default_str();
  sub->add_option("--gram", c.gram, "Gram matrix JSON file (default: dot product)");
  sub->add_option("--input", c.input, "relation JSON (factor) or candidate frames JSON (maximality)");
  sub->add_option("--output", opt.output, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of orthogonality defined without an inner product"};
  app.require_subcommand(1);
  Options opt;

  auto* equivalence = app.add_subcommand("equivalence", "solver coordinates vs the explicit coefficient formula");
  auto* factor = app.add_subcommand("factor", "factorization of the coordinate functionals through (a_i, x)");
  auto* maximality = app.add_subcommand("maximality", "witness sweep showing no non-orthogonal frame joins Γ_ort");
  auto* chain = app.add_subcommand("chain", "union of a nested chain of Γ_ort subsets");
  auto* pair_ip = app.add_subcommand("pair-ip", "inner product adapted to an independent pair");
  for (auto* sub : {equivalence, factor, maximality, chain, pair_ip}) add_shared_flags(sub, opt);
  pair_ip->add_option("--a", opt.a, "first vector, e.g. 1,0 or [\"1/1\",\"0/1\"]")->required();
  pair_ip->add_option("--b", opt.b, "second vector")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (const char* env = std::getenv("ORTHO_SEED"); env != nullptr && *env != '\0') {
      opt.config.seed = std::stoull(env);
    }

    ortho::cli::Report report;
    if (*equivalence) {
      report = ortho::cli::cmd_equivalence(opt.config);
    } else if (*factor) {
      report = ortho::cli::cmd_factor(opt.config);
    } else if (*maximality) {
      report = ortho::cli::cmd_maximality(opt.config);
    } else if (*chain) {
      report = ortho::cli::cmd_chain(opt.config);
    } else {
      report = ortho::cli::cmd_pair_ip(opt.config, ortho::cli::parse_vector_literal(opt.a),
                                       ortho::cli::parse_vector_literal(opt.b));
    }

    const std::string text = report.to_json().dump() + "\n";
    if (opt.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(opt.output, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << opt.output << "\n";
        return 2;
      }
      out << text;
    }
    return report.passed ? 0 : 1;
  } catch (const ortho::DefinitenessError& e) {
    std::cerr << "error: " << e.what() << " (failing minor " << e.minor() << ")\n";
  } catch (const ortho::Error& e) {
    std::cerr << "error (" << ortho::to_string(e.kind()) << "): " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
