#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "rabsim/result_table.hpp"
#include "rabsim/runners.hpp"
#include "rabsim/scenario.hpp"
#include "rabsim/selfcheck.hpp"
#include "rabsim/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void print_summary(const rabsim::ResultTable& table) {
  for (const auto& [key, value] : table.summary) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    std::cout << key << " = " << buf << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-atom Rydberg gate simulator (amplitude-modulated drive)"};
  app.set_version_flag("--version", rabsim::kVersion);
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads for sweeps (default: all cores)");

  std::string scenario_path, out_override;
  CLI::App* run = app.add_subcommand("run", "run a scenario file and write CSV");
  run->fallthrough();  // accept global flags like --threads after the subcommand
  run->add_option("scenario", scenario_path, "scenario JSON file")->required();
  run->add_option("--out", out_override, "override the scenario output path");

  CLI::App* list = app.add_subcommand("list-scenarios", "list bundled scenarios");

  std::string preset_name = "rabi_compare";
  std::string emit_path;
  CLI::App* emit = app.add_subcommand(
      "emit-defaults", "print a scenario file with the default parameters");
  emit->add_option("name", preset_name, "bundled scenario name");
  emit->add_option("-o,--out", emit_path, "write to a file instead of stdout");

  CLI::App* check = app.add_subcommand("check", "run the invariant suite");

  CLI::App* manifest = app.add_subcommand(
      "manifest", "print the column-mapping manifest for the bundled scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) {
      const rabsim::Scenario s = rabsim::load_scenario_file(scenario_path);
      if (s.experiment != rabsim::Experiment::LifetimeSweep) {
        for (const auto& warning : rabsim::validate(s.params).warnings)
          std::cerr << "warning: " << warning << "\n";
      }
      const rabsim::ResultTable table = rabsim::run_scenario(s, threads);
      const std::string path = out_override.empty() ? s.output_path : out_override;
      rabsim::write_csv_file(table, path);
      std::cout << "scenario " << s.name << " -> " << path << " ("
                << table.rows.size() << " rows)\n";
      print_summary(table);
      return kExitOk;
    }
    if (list->parsed()) {
      for (const auto& name : rabsim::builtin_scenario_names())
        std::cout << name << "  --  "
                  << rabsim::builtin_scenario_description(name) << "\n";
      return kExitOk;
    }
    if (emit->parsed()) {
      const std::string text = rabsim::builtin_scenario_json(preset_name);
      if (emit_path.empty()) {
        std::cout << text << "\n";
      } else {
        std::FILE* f = std::fopen(emit_path.c_str(), "wb");
        if (!f) {
          std::cerr << "error: cannot write '" << emit_path << "'\n";
          return kExitConfig;
        }
        std::fwrite(text.data(), 1, text.size(), f);
        std::fputc('\n', f);
        std::fclose(f);
      }
      return kExitOk;
    }
    if (check->parsed()) {
      const bool ok = rabsim::run_self_check(std::cout);
      std::cout << (ok ? "all checks passed\n" : "CHECK FAILURES\n");
      return ok ? kExitOk : kExitNumerical;
    }
    if (manifest->parsed()) {
      // Plot recipe per bundled scenario: x column, curves, and the
      // stdout scalars worth quoting.
      std::cout << R"({
  "rabi_compare":         {"x": "t[us]", "curves": ["P11_full[1]", "Prr_full[1]", "P11_eff[1]", "Prr_eff[1]"],
                           "scalars": ["Prr_peak_full", "max_abs_dev_Prr"]},
  "cz_fidelity_rab":      {"x": "t[us]", "curves": ["F_avg[1]", "F_psi_prime[1]"],
                           "scalars": ["final_F_avg", "final_F_psi_prime"]},
  "phase_broken":         {"x": "t[us]", "curves": ["phase_full[rad]", "phase_pred[rad]"],
                           "mask": "phase_defined[1]", "scalars": ["final_phase_full"]},
  "cz_fidelity_broken":   {"x": "t[us]", "curves": ["F_avg[1]", "F_psi_prime[1]"],
                           "scalars": ["final_F_avg", "final_F_psi_prime"]},
  "distance_sweep_rab":   {"x": "d[um]", "curves": ["F_final[1]"],
                           "scalars": ["window_0p99_width_nm", "window_0p99_span_nm"]},
  "distance_sweep_broken":{"x": "d[um]", "curves": ["F_final[1]"],
                           "scalars": ["window_0p99_width_nm", "window_0p999_width_nm"]},
  "lifetime_sweep":       {"x": "tau[us]", "curves": ["F_final_rab[1]", "F_final_broken[1]"],
                           "scalars": ["F_broken_tau40", "F_broken_tau100", "F_rab_tau100"]}
}
)";
      return kExitOk;
    }
  } catch (const rabsim::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const rabsim::IntegratorError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
