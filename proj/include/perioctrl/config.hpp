#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "perioctrl/polymatrix.hpp"
#include "perioctrl/rational.hpp"
#include "perioctrl/witness.hpp"

namespace perioctrl {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A full run description loaded from a JSON config file:
///   { "d": uint, "A": [[rational strings]], "matrix": [[entry strings]],
///     "box_radius": uint, "time_horizon": rational string }
/// plus optional keys "seed", "residual_tol", "match_tol", "rank_tol",
/// "out_dir".
struct RunConfig {
  std::size_t d = 1;
  FrequencyLattice lattice{{{Rational(1)}}};
  MultiPolyMatrix matrix;
  long box_radius = 0;
  Rational time_horizon = Rational(1);
  std::uint64_t seed = 1;
  double residual_tol = kResidualTol;
  double match_tol = kMatchTol;
  double rank_tol = 1e-8;
  std::string out_dir = ".";
};

/// Parses and validates a config from JSON text. Throws ConfigError with a
/// message naming the offending field.
RunConfig parse_config(const std::string& json_text);

/// Reads the file and delegates to parse_config.
RunConfig load_config(const std::string& path);

}  // namespace perioctrl
