#pragma once

// Experiment commands behind the `ortho` executable. Each command is a pure
// function of its configuration, apart from the recorded duration.

#include <cstdint>
#include <optional>
#include <string>

#include "ortho/json_io.hpp"

namespace ortho::cli {

struct RunConfig {
  std::size_t dim = 2;
  std::size_t m = 2;
  std::size_t frames = 8;
  std::size_t points = 4;
  std::int64_t bound = 5;
  std::uint64_t seed = 0;
  std::optional<std::string> gram;   // path to a Gram-matrix JSON file
  std::optional<std::string> input;  // relation (factor) or candidate frames (maximality)

  /// Throws Shape error unless 2 <= m <= dim <= 16 and bound >= 0.
  void validate() const;
  nlohmann::json to_json() const;
};

struct Report {
  std::string command;
  RunConfig config;
  nlohmann::json payload;
  bool passed = true;
  std::int64_t duration_us = 0;

  /// Full report: {command, config, duration_us, payload, verdict}.
  nlohmann::json to_json() const;
  /// Everything except the duration; byte-identical for identical configs.
  std::string canonical_payload() const;
};

/// The inner product named by config.gram, or the dot product of config.dim.
GramInnerProduct load_gram(const RunConfig& config);

Report cmd_equivalence(const RunConfig& config);
Report cmd_factor(const RunConfig& config);
Report cmd_maximality(const RunConfig& config);
Report cmd_chain(const RunConfig& config);
Report cmd_pair_ip(const RunConfig& config, const Vector& a, const Vector& b);

/// Vector literal: a JSON array ("[1,\"1/2\"]") or comma-separated
/// rationals ("1,1/2").
Vector parse_vector_literal(const std::string& text);

}  // namespace ortho::cli
