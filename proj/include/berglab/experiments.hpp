#ifndef BERGLAB_EXPERIMENTS_HPP
#define BERGLAB_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "berglab/config.hpp"

namespace berglab {

struct RunResult {
  int exit_code = 0;
  nlohmann::json report;
  std::vector<std::string> csv;  // lines, header first
};

/// Dispatch on [experiment].name. Depth/seed overrides of -1 keep the config
/// values. Throws on malformed configs; invariant violations set exit_code 1.
RunResult run_experiment(const Config& cfg, int depth_override = -1,
                         long seed_override = -1);

/// Human-readable list of weight and measure presets.
std::string presets_text();

}  // namespace berglab

#endif
