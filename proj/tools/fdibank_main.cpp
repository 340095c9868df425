#include <CLI11.hpp>

#include "fdibank/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"multi-observer sensor-attack detection and isolation"};
  app.require_subcommand(1);

  fdi::cli::CommandConfig config;
  std::string sweep_list;

  auto add_common = [&](CLI::App* sub, bool needs_certs) {
    sub->add_option("--scenario", config.scenario_path, "scenario file (JSON)")
        ->required();
    sub->add_option("--gains", config.gains_path, "gain-table file (JSON)")->required();
    if (needs_certs) {
      sub->add_option("--certs", config.certs_path, "certificate file (JSON)")->required();
    } else {
      sub->add_option("--certs", config.certs_path,
                      "certificate file (reused if present, else written)");
    }
    sub->add_option("--out", config.output_dir,
                    "output directory (default: $FDIBANK_OUTPUT_DIR, then ./out)");
    sub->add_option("--horizon", config.horizon, "override simulation horizon");
    sub->add_option("--seed", config.seed, "override master seed");
    sub->add_option("--tau", config.tau, "override the actual noise scale, in (0, 1]");
    sub->add_option("--safety-factor", config.safety_factor,
                    "override the certification gamma safety factor");
    sub->add_flag_function(
        "-v,--verbose", [&](std::int64_t n) { config.verbosity = static_cast<int>(n); },
        "print progress and threshold reports");
  };

  auto* certify = app.add_subcommand("certify", "estimate ISS certificates for the bank");
  add_common(certify, false);

  auto* detect = app.add_subcommand("detect", "windowed attack detection");
  add_common(detect, true);
  detect->add_option("--N", config.window_size, "override window size N");

  auto* isolate = app.add_subcommand("isolate", "windowed attack isolation");
  add_common(isolate, true);
  isolate->add_option("--N", config.window_size, "override window size N");

  auto* run_all = app.add_subcommand(
      "run-all", "certify (or reuse certificates), then detect + isolate + summarize");
  add_common(run_all, false);
  run_all->add_option("--N", config.window_size, "override window size N");

  auto* sweep =
      app.add_subcommand("sweep", "run-all across a list of window sizes, one row each");
  add_common(sweep, false);
  sweep->add_option("--N", sweep_list, "comma-separated window sizes, e.g. 50,100,200")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (certify->parsed()) config.cmd = fdi::cli::CommandConfig::Cmd::Certify;
  if (detect->parsed()) config.cmd = fdi::cli::CommandConfig::Cmd::Detect;
  if (isolate->parsed()) config.cmd = fdi::cli::CommandConfig::Cmd::Isolate;
  if (run_all->parsed()) config.cmd = fdi::cli::CommandConfig::Cmd::RunAll;
  if (sweep->parsed()) {
    config.cmd = fdi::cli::CommandConfig::Cmd::Sweep;
    std::stringstream ss(sweep_list);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        config.sweep_window_sizes.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        std::cerr << R"({"error":{"kind":"validation","message":"sweep: bad N value ')"
                  << tok << R"('"}})" << "\n";
        return fdi::cli::kExitValidation;
      }
    }
  }

  return fdi::cli::execute(config);
}
