#include "perioctrl/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "perioctrl/parser.hpp"

namespace perioctrl {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw ConfigError("config field '" + field + "': " + why);
}

const json& require(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) throw ConfigError("config: missing field '" + std::string(field) + "'");
  return *it;
}

double positive_number(const json& j, const char* field, double fallback) {
  auto it = j.find(field);
  if (it == j.end()) return fallback;
  if (!it->is_number()) bad_field(field, "must be a number");
  double v = it->get<double>();
  if (!(v > 0.0)) bad_field(field, "must be positive");
  return v;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config: not valid JSON");
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");

  RunConfig cfg;

  const json& jd = require(j, "d");
  if (!jd.is_number_unsigned() || jd.get<std::uint64_t>() == 0)
    bad_field("d", "must be a positive integer");
  cfg.d = jd.get<std::size_t>();

  const json& jA = require(j, "A");
  if (!jA.is_array() || jA.size() != cfg.d) bad_field("A", "must be a d x d array of rows");
  std::vector<std::vector<Rational>> A(cfg.d, std::vector<Rational>(cfg.d, Rational(0)));
  for (std::size_t i = 0; i < cfg.d; ++i) {
    if (!jA[i].is_array() || jA[i].size() != cfg.d)
      bad_field("A", "row " + std::to_string(i) + " must have d entries");
    for (std::size_t k = 0; k < cfg.d; ++k) {
      const json& e = jA[i][k];
      std::string s;
      if (e.is_string())
        s = e.get<std::string>();
      else if (e.is_number_integer())
        s = std::to_string(e.get<long long>());
      else
        bad_field("A", "entries must be rational strings");
      try {
        A[i][k] = Rational::from_string(s);
      } catch (const std::exception& ex) {
        bad_field("A", "entry (" + std::to_string(i) + "," + std::to_string(k) + "): " + ex.what());
      }
    }
  }
  try {
    cfg.lattice = FrequencyLattice(std::move(A));
  } catch (const std::exception& ex) {
    bad_field("A", ex.what());
  }

  const json& jm = require(j, "matrix");
  try {
    cfg.matrix = parse_matrix(jm.dump(), cfg.d);
  } catch (const std::exception& ex) {
    bad_field("matrix", ex.what());
  }

  const json& jb = require(j, "box_radius");
  if (!jb.is_number_unsigned()) bad_field("box_radius", "must be a nonnegative integer");
  cfg.box_radius = static_cast<long>(jb.get<std::uint64_t>());

  const json& jt = require(j, "time_horizon");
  if (!jt.is_string()) bad_field("time_horizon", "must be a rational string");
  try {
    cfg.time_horizon = Rational::from_string(jt.get<std::string>());
  } catch (const std::exception& ex) {
    bad_field("time_horizon", ex.what());
  }
  if (cfg.time_horizon.sign() <= 0) bad_field("time_horizon", "must be positive");

  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned()) bad_field("seed", "must be a nonnegative integer");
    cfg.seed = it->get<std::uint64_t>();
  }
  cfg.residual_tol = positive_number(j, "residual_tol", cfg.residual_tol);
  cfg.match_tol = positive_number(j, "match_tol", cfg.match_tol);
  cfg.rank_tol = positive_number(j, "rank_tol", cfg.rank_tol);
  if (auto it = j.find("out_dir"); it != j.end()) {
    if (!it->is_string()) bad_field("out_dir", "must be a string");
    cfg.out_dir = it->get<std::string>();
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace perioctrl
