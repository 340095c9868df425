// Randomized observer-gain search: samples (K, L) per required subset,
// filters on contraction + geometric error decay, keeps the candidate with
// the smallest empirical noise gain, and writes a gain-table file.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fdibank/errors.hpp"
#include "fdibank/gains.hpp"
#include "fdibank/scenario.hpp"
#include "fdibank/search.hpp"

int main(int argc, char** argv) {
  CLI::App app{"randomized observer-gain search"};

  std::string scenario_path, out_path;
  fdi::search::SearchConfig cfg;

  app.add_option("--scenario", scenario_path, "scenario file providing plant, noise, q")
      ->required();
  app.add_option("--out", out_path, "gain-table file to write")->required();
  app.add_option("--seed", cfg.seed, "search seed");
  app.add_option("--candidates", cfg.candidates, "raw samples per subset");
  app.add_option("--survivors", cfg.max_survivors, "rollout-checked candidates per subset");
  app.add_option("--lambda-cap", cfg.lambda_cap, "maximum fitted decay rate");
  app.add_option("--spectral-cap", cfg.spectral_radius_cap,
                 "maximum spectral radius of A + L C_J");
  app.add_flag("-v,--verbose", cfg.verbose, "print per-subset winner details");
  std::string specialize;
  app.add_option("--specialize", specialize,
                 "specialist channels per subset, e.g. '1,2,3=2;1,3,4=3'");

  CLI11_PARSE(app, argc, argv);

  if (!specialize.empty()) {
    std::stringstream ss(specialize);
    std::string item;
    while (std::getline(ss, item, ';')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        std::cerr << "error: bad --specialize entry '" << item << "'\n";
        return 2;
      }
      try {
        cfg.specialist_channels[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
      } catch (const std::exception&) {
        std::cerr << "error: bad --specialize entry '" << item << "'\n";
        return 2;
      }
    }
  }

  try {
    const fdi::Scenario sc = fdi::load_scenario(scenario_path);
    const fdi::observer::GainTable table = fdi::search::search_gains(
        sc.plant, sc.q, sc.noise, sc.init_state, sc.input, cfg);
    fdi::observer::save_gain_table(out_path, table, sc.plant.n, sc.plant.r, sc.plant.p);
    std::cout << "wrote " << table.entries().size() << " gain entries to " << out_path
              << "\n";
    return 0;
  } catch (const fdi::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& d : e.details()) std::cerr << "  " << d << "\n";
    return 2;
  } catch (const fdi::CertificationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
