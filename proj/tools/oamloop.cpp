// Command-line driver: spectrum, heatmap, charge-sweep, planes, check.

#include "oamloop/app/check.hpp"
#include "oamloop/app/output.hpp"
#include "oamloop/constants.hpp"
#include "oamloop/error.hpp"
#include "oamloop/version.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

enum Exit { ok = 0, config_error = 1, check_failure = 2, convergence = 3 };

using namespace oamloop;

int report_scan(const app::ScanResult &s, const app::RunConfig &cfg,
                const std::string &out) {
  for (const auto &p : app::write_scan_files(out, s, cfg))
    std::cout << "wrote " << p.string() << '\n';
  for (const auto &l : s.summary)
    std::cout << l << '\n';
  std::size_t beyond = 0;
  bool unconverged = false;
  for (const auto &r : s.records) {
    beyond += r.result.perturbative ? 0 : 1;
    for (const auto &w : r.result.warnings)
      unconverged |= w.find("not converged") != std::string::npos;
  }
  if (beyond)
    std::cout << "warning: " << beyond << " of " << s.records.size()
              << " points exceed the perturbative validity threshold\n";
  if (unconverged) {
    std::cerr << "error: matrix elements not converged under grid "
                 "refinement\n";
    return convergence;
  }
  return ok;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App cli{"Optical-vortex driven current loops in a model fullerene"};
  cli.set_version_flag("--version", std::string(version_tag));
  cli.require_subcommand(1);
  cli.fallthrough();

  std::string config_path, out_dir = "out";
  int threads = 1;
  std::vector<std::string> overrides;
  cli.add_option("--config", config_path, "YAML run configuration");
  cli.add_option("--out", out_dir, "output directory");
  cli.add_option("--threads", threads, "worker threads")
      ->check(CLI::Range(1, 1024));
  cli.add_option("--override", overrides,
                 "block.key=value, repeatable (e.g. pulse.charge=2)")
      ->take_last()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  auto *spectrum = cli.add_subcommand("spectrum", "m_z versus photon energy");
  auto *heatmap =
      cli.add_subcommand("heatmap", "photon energy x rho0/rho_max map");
  auto *sweep =
      cli.add_subcommand("charge-sweep", "response versus topological charge");
  auto *planes = cli.add_subcommand("planes", "xy/xz current-density maps");
  auto *check = cli.add_subcommand("check", "run the self-check suite");

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = cli.exit(e);
    return code == 0 ? ok : config_error;
  }

  try {
    const app::RunConfig cfg = app::load_config(config_path, overrides);
    std::cout << version_tag << " config_hash=" << cfg.hash_hex() << '\n';
    const app::Model model = app::build_model(cfg);
    std::filesystem::create_directories(out_dir);
    std::ofstream(out_dir + "/resolved_config.yaml") << cfg.canonical;

    if (spectrum->parsed())
      return report_scan(app::run_spectrum(model, threads), cfg, out_dir);
    if (heatmap->parsed())
      return report_scan(app::run_heatmap(model, threads), cfg, out_dir);
    if (sweep->parsed())
      return report_scan(app::run_charge_sweep(model, threads), cfg, out_dir);
    if (planes->parsed()) {
      const app::PlanesResult p = app::run_planes(model, threads);
      for (const auto &path : app::write_planes_files(out_dir, p, cfg))
        std::cout << "wrote " << path.string() << '\n';
      if (cfg.dump_transitions || cfg.dump_populations) {
        const auto pulse =
            app::make_pulse(cfg, cfg.charge, p.offset_bohr,
                            units::ev_to_hartree(p.omega_eV));
        const auto st = app::solve_point(model, pulse);
        if (cfg.dump_transitions) {
          std::ofstream f(out_dir + "/transitions.txt");
          coupling::write_transition_table(f, st.transitions, model.basis);
        }
        if (cfg.dump_populations) {
          std::ofstream f(out_dir + "/populations.txt");
          dynamics::write_population_table(f, st.excitation, st.transitions);
        }
      }
      for (const auto &l : p.summary)
        std::cout << l << '\n';
      return ok;
    }
    if (check->parsed()) {
      const app::CheckReport rep = app::run_checks(model, threads);
      app::print_report(std::cout, rep);
      std::ofstream f(out_dir + "/check_report.txt");
      app::print_report(f, rep);
      return rep.passed() ? ok : check_failure;
    }
  } catch (const ConfigError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const ParseError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const DomainError &e) {
    std::cerr << "config error: " << e.what() << '\n';
    return config_error;
  } catch (const NumericalError &e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return convergence;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return config_error;
  }
  return ok;
}
