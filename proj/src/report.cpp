#include "perioctrl/report.hpp"

#include <bit>
#include <cstdint>
#include <iomanip>
#include <sstream>

#include "perioctrl/crosscheck.hpp"
#include "perioctrl/parser.hpp"
#include "perioctrl/printer.hpp"

namespace perioctrl {

namespace {

using nlohmann::json;

json rational_vector(const std::vector<Rational>& v) {
  json out = json::array();
  for (const Rational& r : v) out.push_back(r.str());
  return out;
}

json unipoly_matrix_json(const UniPolyMatrix& M) {
  json rows = json::array();
  for (std::size_t i = 0; i < M.rows; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < M.cols; ++j) row.push_back(print_unipoly(M.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string pi_bits_hex() {
  std::ostringstream os;
  os << std::hex << std::setfill('0') << std::setw(16)
     << std::bit_cast<std::uint64_t>(default_pi());
  return os.str();
}

constexpr const char* kBoxCaveat =
    "Only the frequencies inside the tested box were decided; this report does "
    "not certify behaviour at frequencies outside the box.";

}  // namespace

json verdict_to_json(const ControllabilityVerdict& v) {
  json j;
  j["mode"] = v.frequency.n;
  j["frequency"] = rational_vector(v.frequency.v);
  j["generic_rank"] = v.generic_rank;
  json facs = json::array();
  for (const UniPoly& f : v.invariant_factors) facs.push_back(print_unipoly(f));
  j["invariant_factors"] = std::move(facs);
  j["constant_rank"] = v.constant_rank;
  j["torsion_free"] = v.torsion_free;
  j["controllable"] = v.controllable;
  if (v.failure_factor) j["failure_factor"] = print_unipoly(*v.failure_factor);
  if (v.torsion_witness) {
    json w;
    json row = json::array();
    for (const UniPoly& p : v.torsion_witness->row) row.push_back(print_unipoly(p));
    w["row"] = std::move(row);
    w["annihilator"] = print_unipoly(v.torsion_witness->annihilator);
    j["torsion_witness"] = std::move(w);
  }
  return j;
}

json box_report_to_json(const BoxReport& box, const GenericReport& generic) {
  json j;
  j["box_radius"] = box.box_radius;
  json A = json::array();
  for (const auto& row : box.lattice.A()) A.push_back(rational_vector(row));
  j["A"] = std::move(A);
  j["overall_controllable_on_box"] = box.overall_controllable_on_box;
  json verdicts = json::array();
  for (const auto& v : box.verdicts) verdicts.push_back(verdict_to_json(v));
  j["verdicts"] = std::move(verdicts);
  j["generic"] = {{"generic_rank", generic.generic_rank},
                  {"minor_gcd", generic.minor_gcd},
                  {"gcd_constant_in_tau", generic.gcd_constant_in_tau},
                  {"exceptional_candidates", generic.exceptional_candidates}};
  j["pi_double_bits"] = pi_bits_hex();
  j["caveat"] = kBoxCaveat;
  return j;
}

std::string box_report_text(const BoxReport& box, const GenericReport& generic) {
  std::ostringstream os;
  os << "Controllability analysis, box radius " << box.box_radius << "\n";
  os << "mode | frequency | rank | invariant factors | verdict\n";
  for (const auto& v : box.verdicts) {
    os << "(";
    for (std::size_t k = 0; k < v.frequency.n.size(); ++k)
      os << (k ? "," : "") << v.frequency.n[k];
    os << ") | (";
    for (std::size_t k = 0; k < v.frequency.v.size(); ++k)
      os << (k ? "," : "") << v.frequency.v[k].str();
    os << ") | " << v.generic_rank << " | [";
    for (std::size_t k = 0; k < v.invariant_factors.size(); ++k)
      os << (k ? ", " : "") << print_unipoly(v.invariant_factors[k]);
    os << "] | " << (v.controllable ? "controllable" : "NOT controllable");
    if (v.failure_factor) os << " (failure factor: " << print_unipoly(*v.failure_factor) << ")";
    os << "\n";
  }
  os << "\nGeneric-frequency screening (v symbolic):\n";
  os << "  generic rank: " << generic.generic_rank << "\n";
  os << "  minor gcd: " << generic.minor_gcd << "\n";
  os << "  gcd constant in t: " << (generic.gcd_constant_in_tau ? "yes" : "no") << "\n";
  os << "  exceptional candidates: " << generic.exceptional_candidates << "\n";
  os << "\nOverall on the box: "
     << (box.overall_controllable_on_box ? "controllable" : "NOT controllable") << "\n";
  os << kBoxCaveat << "\n";
  return os.str();
}

std::vector<ControllabilityVerdict> verdicts_from_json(const json& j) {
  if (!j.is_object() || !j.contains("verdicts") || !j["verdicts"].is_array())
    throw std::runtime_error("verdict report: missing 'verdicts' array");
  std::vector<ControllabilityVerdict> out;
  for (const json& row : j["verdicts"]) {
    ControllabilityVerdict v;
    if (!row.contains("mode") || !row.contains("frequency") || !row.contains("generic_rank") ||
        !row.contains("invariant_factors") || !row.contains("controllable"))
      throw std::runtime_error("verdict report: row missing required keys");
    v.frequency.n = row["mode"].get<std::vector<long>>();
    for (const json& s : row["frequency"])
      v.frequency.v.push_back(Rational::from_string(s.get<std::string>()));
    v.generic_rank = row["generic_rank"].get<std::size_t>();
    for (const json& s : row["invariant_factors"])
      v.invariant_factors.push_back(parse_unipoly_pi(s.get<std::string>()));
    v.constant_rank = row.value("constant_rank", false);
    v.torsion_free = row.value("torsion_free", false);
    v.controllable = row["controllable"].get<bool>();
    if (row.contains("failure_factor"))
      v.failure_factor = parse_unipoly_pi(row["failure_factor"].get<std::string>());
    if (row.contains("torsion_witness")) {
      TorsionWitness w;
      for (const json& s : row["torsion_witness"]["row"])
        w.row.push_back(parse_unipoly_pi(s.get<std::string>()));
      w.annihilator = parse_unipoly_pi(row["torsion_witness"]["annihilator"].get<std::string>());
      v.torsion_witness = std::move(w);
    }
    out.push_back(std::move(v));
  }
  return out;
}

json smith_report_to_json(const SmithDecomposition& s, bool reconstruction_ok) {
  json j;
  j["U"] = unipoly_matrix_json(s.U);
  j["Sigma"] = unipoly_matrix_json(s.Sigma);
  j["V"] = unipoly_matrix_json(s.V);
  json facs = json::array();
  for (const UniPoly& f : s.invariant_factors) facs.push_back(print_unipoly(f));
  j["invariant_factors"] = std::move(facs);
  j["rank"] = s.rank;
  j["reconstruction_ok"] = reconstruction_ok;
  return j;
}

std::string smith_report_text(const SmithDecomposition& s, bool reconstruction_ok) {
  std::ostringstream os;
  os << "U =\n" << print_unipoly_matrix(s.U) << "\n";
  os << "Sigma =\n" << print_unipoly_matrix(s.Sigma) << "\n";
  os << "V =\n" << print_unipoly_matrix(s.V) << "\n";
  os << "rank = " << s.rank << "\n";
  os << "invariant factors: [";
  for (std::size_t k = 0; k < s.invariant_factors.size(); ++k)
    os << (k ? ", " : "") << print_unipoly(s.invariant_factors[k]);
  os << "]\n";
  os << "exact reconstruction U*Sigma*V = M: " << (reconstruction_ok ? "verified" : "FAILED")
     << "\n";
  return os.str();
}

json witness_report_to_json(const WitnessReport& r) {
  json j;
  j["max_residual"] = r.max_residual;
  j["left_match_error"] = r.left_match_error;
  j["right_match_error"] = r.right_match_error;
  j["grid"] = r.grid;
  j["residual_tol"] = r.residual_tol;
  j["match_tol"] = r.match_tol;
  j["pass"] = r.pass;
  j["pi_double_bits"] = pi_bits_hex();
  return j;
}

json rank_reports_to_json(const std::vector<RankSampleReport>& reports) {
  json rows = json::array();
  for (const RankSampleReport& r : reports) {
    json j;
    j["mode"] = r.frequency.n;
    j["frequency"] = rational_vector(r.frequency.v);
    j["symbolic_rank"] = r.symbolic_rank;
    json samples = json::array();
    for (const auto& [t, rk] : r.sampled_points)
      samples.push_back({{"re", t.real()}, {"im", t.imag()}, {"rank", rk}});
    j["sampled_points"] = std::move(samples);
    json roots = json::array();
    for (const auto& [t, rk] : r.root_points)
      roots.push_back({{"re", t.real()}, {"im", t.imag()}, {"rank", rk}});
    j["root_points"] = std::move(roots);
    j["roots_converged"] = r.roots_converged;
    j["consistent"] = r.consistent;
    rows.push_back(std::move(j));
  }
  json out;
  out["reports"] = std::move(rows);
  bool all = true;
  for (const RankSampleReport& r : reports) all = all && r.consistent;
  out["all_consistent"] = all;
  out["pi_double_bits"] = pi_bits_hex();
  return out;
}

}  // namespace perioctrl
