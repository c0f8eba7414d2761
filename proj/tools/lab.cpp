#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "berglab/config.hpp"
#include "berglab/experiments.hpp"

namespace fs = std::filesystem;

int main(int argc, char** argv) {
  CLI::App app{"bergman/tent-space experiment driver"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment config");
  std::string config_path;
  std::string out_dir;
  int depth = -1;
  long seed = -1;
  run->add_option("config", config_path, "TOML experiment config")->required();
  run->add_option("--out", out_dir, "output directory (default: [output] dir or '.')");
  run->add_option("--depth", depth, "grid depth override");
  run->add_option("--seed", seed, "seed override");

  auto* presets = app.add_subcommand("presets", "list weight and measure presets");

  CLI11_PARSE(app, argc, argv);

  if (presets->parsed()) {
    std::cout << berglab::presets_text();
    return 0;
  }

  berglab::Config cfg;
  try {
    cfg = berglab::Config::parse_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    berglab::RunResult res = berglab::run_experiment(cfg, depth, seed);
    fs::path dir = out_dir.empty() ? cfg.get_string("output", "dir", ".") : out_dir;
    fs::create_directories(dir);
    {
      std::ofstream js(dir / "report.json");
      js << res.report.dump(2) << "\n";
    }
    {
      std::ofstream csv(dir / "levels.csv");
      for (const auto& line : res.csv) csv << line << "\n";
    }
    std::cout << res.report.dump(2) << "\n";
    if (res.exit_code != 0) {
      std::cerr << "invariant flags raised; see report\n";
    }
    return res.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
