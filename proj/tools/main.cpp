#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI/CLI.hpp>
#include <nlohmann/json.hpp>

#include "perioctrl/analyzer.hpp"
#include "perioctrl/config.hpp"
#include "perioctrl/crosscheck.hpp"
#include "perioctrl/parser.hpp"
#include "perioctrl/printer.hpp"
#include "perioctrl/report.hpp"
#include "perioctrl/smith.hpp"
#include "perioctrl/witness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using perioctrl::RunConfig;

void apply_thread_cap() {
#ifdef _OPENMP
  if (const char* env = std::getenv("PERIOCTRL_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
#endif
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

std::filesystem::path ensure_out_dir(const RunConfig& cfg, const std::string& out_override) {
  std::filesystem::path dir = out_override.empty() ? cfg.out_dir : out_override;
  std::filesystem::create_directories(dir);
  return dir;
}

std::vector<long> parse_mode(const std::string& text, std::size_t d) {
  std::vector<long> n;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    n.push_back(std::stol(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  if (n.size() != d)
    throw std::runtime_error("--mode must list exactly " + std::to_string(d) + " integers");
  return n;
}

int cmd_analyze(const RunConfig& cfg, long box, const std::string& out_override) {
  perioctrl::BoxReport box_report = perioctrl::analyze_box(cfg.matrix, cfg.lattice, box);
  perioctrl::GenericReport generic = perioctrl::generic_frequency_analysis(cfg.matrix);

  std::filesystem::path dir = ensure_out_dir(cfg, out_override);
  nlohmann::json j = perioctrl::box_report_to_json(box_report, generic);
  write_file(dir / "verdicts.json", j.dump(2) + "\n");
  std::string text = perioctrl::box_report_text(box_report, generic);
  write_file(dir / "summary.txt", text);
  std::cout << text;
  return box_report.overall_controllable_on_box ? 0 : 2;
}

int cmd_smith(const RunConfig& cfg, const std::vector<long>& mode,
              const std::string& out_override) {
  perioctrl::Frequency f = perioctrl::frequency_from_mode(cfg.lattice, mode);
  perioctrl::UniPolyMatrix Mv = perioctrl::substitute_frequency(cfg.matrix, f);
  perioctrl::SmithDecomposition s = perioctrl::smith_form(Mv);
  bool ok = perioctrl::matmul(perioctrl::matmul(s.U, s.Sigma), s.V) == Mv;

  std::filesystem::path dir = ensure_out_dir(cfg, out_override);
  write_file(dir / "smith.json", perioctrl::smith_report_to_json(s, ok).dump(2) + "\n");
  std::cout << perioctrl::smith_report_text(s, ok);
  return ok ? 0 : 3;
}

int cmd_witness(const RunConfig& cfg, const std::vector<long>& mode, const std::string& latent1,
                const std::string& latent2, const std::string& out_override) {
  perioctrl::Frequency f = perioctrl::frequency_from_mode(cfg.lattice, mode);
  double pi_a = perioctrl::default_pi();

  perioctrl::UniPolyMatrix Mv = perioctrl::substitute_frequency(cfg.matrix, f);
  std::size_t latent_dim =
      Mv.cols - perioctrl::constant_rank_test(Mv).rank;  // n - r latent components
  perioctrl::ExprFunction l1 = perioctrl::parse_latent(latent1);
  perioctrl::ExprFunction l2 = perioctrl::parse_latent(latent2);
  std::vector<perioctrl::ExprFunction> L1(latent_dim, l1), L2(latent_dim, l2);

  perioctrl::ConnectResult cr;
  try {
    cr = perioctrl::connect(cfg.matrix, f, L1, L2, cfg.time_horizon, pi_a);
  } catch (const perioctrl::NotControllableError& e) {
    std::cerr << "error: mode not controllable: " << e.what() << "\n";
    return 2;
  }

  perioctrl::GridSpec grid = perioctrl::default_grid(cfg.time_horizon);
  perioctrl::WitnessReport rep = perioctrl::verify_witness(
      cfg.matrix, f, cr.w, cr.w1, cr.w2, cfg.time_horizon, grid, pi_a, perioctrl::kFdStep);
  rep.residual_tol = cfg.residual_tol;
  rep.match_tol = cfg.match_tol;
  rep.pass = rep.max_residual <= rep.residual_tol && rep.left_match_error <= rep.match_tol &&
             rep.right_match_error <= rep.match_tol;

  // Spatial export on a small periodic grid: 8 points per axis, default t grid.
  std::vector<std::vector<double>> x_grid;
  std::size_t per_axis = 8;
  std::size_t total = 1;
  for (std::size_t k = 0; k < cfg.d; ++k) total *= per_axis;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<double> x(cfg.d);
    std::size_t rem = idx;
    for (std::size_t k = 0; k < cfg.d; ++k) {
      x[k] = static_cast<double>(rem % per_axis) / static_cast<double>(per_axis);
      rem /= per_axis;
    }
    x_grid.push_back(std::move(x));
  }
  std::vector<double> t_grid(grid.points);
  for (std::size_t g = 0; g < grid.points; ++g)
    t_grid[g] = grid.lo + (grid.hi - grid.lo) * static_cast<double>(g) /
                    static_cast<double>(grid.points - 1);
  perioctrl::SpatialField field = perioctrl::synthesize_spatial({cr.w}, x_grid, t_grid, pi_a);

  std::filesystem::path dir = ensure_out_dir(cfg, out_override);
  write_file(dir / "witness.csv", perioctrl::to_csv(field));
  write_file(dir / "witness.json", perioctrl::witness_report_to_json(rep).dump(2) + "\n");
  std::cout << (rep.pass ? "witness verified" : "witness verification FAILED")
            << " (max residual " << rep.max_residual << ", left match " << rep.left_match_error
            << ", right match " << rep.right_match_error << ")\n";
  return rep.pass ? 0 : 3;
}

int cmd_crosscheck(const RunConfig& cfg, long box, std::size_t samples, std::uint64_t seed,
                   const std::string& out_override) {
  double pi_a = perioctrl::default_pi();
  std::filesystem::path dir = ensure_out_dir(cfg, out_override);

  // Reuse cached verdicts when the analyze step already ran into this
  // directory; otherwise analyze now.
  std::vector<perioctrl::ControllabilityVerdict> verdicts;
  std::filesystem::path cached = dir / "verdicts.json";
  if (std::filesystem::exists(cached)) {
    std::ifstream in(cached);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw std::runtime_error("cached verdict file is not valid JSON");
    verdicts = perioctrl::verdicts_from_json(j);
    std::cout << "using cached verdicts from " << cached.string() << "\n";
  } else {
    verdicts = perioctrl::analyze_box(cfg.matrix, cfg.lattice, box).verdicts;
  }

  std::vector<perioctrl::RankSampleReport> reports(verdicts.size());
  for (std::size_t i = 0; i < verdicts.size(); ++i)
    reports[i] = perioctrl::crosscheck_mode(cfg.matrix, verdicts[i].frequency, verdicts[i],
                                            samples, perioctrl::derive_mode_seed(seed, i),
                                            cfg.rank_tol, pi_a);

  nlohmann::json j = perioctrl::rank_reports_to_json(reports);
  write_file(dir / "crosscheck.json", j.dump(2) + "\n");
  bool all = j["all_consistent"].get<bool>();
  for (const auto& r : reports) {
    std::cout << "mode (";
    for (std::size_t k = 0; k < r.frequency.n.size(); ++k)
      std::cout << (k ? "," : "") << r.frequency.n[k];
    std::cout << "): symbolic rank " << r.symbolic_rank << ", " << r.sampled_points.size()
              << " samples, " << r.root_points.size() << " root points, "
              << (r.consistent ? "consistent" : "INCONSISTENT") << "\n";
  }
  std::cout << (all ? "crosscheck consistent" : "crosscheck INCONSISTENT") << "\n";
  return all ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_cap();

  CLI::App app{"perioctrl: exact controllability analysis of spatially periodic systems"};
  app.require_subcommand(1);

  std::string config_path, mode_text, out_dir, latent1 = "0", latent2 = "exp(t)";
  std::optional<long> box_override;
  std::optional<std::uint64_t> seed_override;
  std::size_t samples = 50;

  auto add_common = [&](CLI::App* sub, bool need_mode) {
    sub->add_option("--config", config_path, "JSON config file")->required();
    auto* m = sub->add_option("--mode", mode_text, "mode as comma-separated integers n1,..,nd");
    if (need_mode) m->required();
    sub->add_option("--box", box_override, "override box radius");
    sub->add_option("--seed", seed_override, "override RNG seed");
    sub->add_option("--out", out_dir, "output directory");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "decide controllability on a mode box");
  add_common(analyze, false);
  CLI::App* smith = app.add_subcommand("smith", "print the diagonalization at one mode");
  add_common(smith, true);
  CLI::App* witness =
      app.add_subcommand("witness", "build and verify a connecting trajectory at one mode");
  add_common(witness, true);
  witness->add_option("--latent1", latent1, "latent function for t <= 0");
  witness->add_option("--latent2", latent2, "latent function for t >= T");
  CLI::App* crosscheck =
      app.add_subcommand("crosscheck", "numeric rank sampling against the symbolic verdicts");
  add_common(crosscheck, false);
  crosscheck->add_option("--samples", samples, "samples per mode");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    RunConfig cfg = perioctrl::load_config(config_path);
    long box = box_override.value_or(cfg.box_radius);
    std::uint64_t seed = seed_override.value_or(cfg.seed);
    if (analyze->parsed()) return cmd_analyze(cfg, box, out_dir);
    if (smith->parsed()) return cmd_smith(cfg, parse_mode(mode_text, cfg.d), out_dir);
    if (witness->parsed())
      return cmd_witness(cfg, parse_mode(mode_text, cfg.d), latent1, latent2, out_dir);
    if (crosscheck->parsed()) return cmd_crosscheck(cfg, box, samples, seed, out_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
