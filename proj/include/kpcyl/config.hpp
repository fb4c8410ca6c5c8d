#pragma once

#include <string>

#include <json.hpp>

#include "kpcyl/experiments.hpp"

namespace kpcyl {

using json = nlohmann::json;

// parse + validate; throws ConfigError on missing file / malformed JSON
json loadConfig(const std::string& path);

// KPCYL_GRID_NX=1024 overrides key path grid.nx, and so on for every leaf
void applyEnvOverrides(json& config, const std::string& prefix = "KPCYL_");

// FNV-1a over the canonicalized (sorted-key, compact) dump
std::string configHash(const json& config);

struct SimulateConfig {
  Grid grid{512, 32, 32.0};
  FlowSpec flow;
  double delta = 0.05;
  std::uint64_t seed = 1;
  int ky_modes = 3;  // transverse modes in the drawn perturbation
  double weight_eps = 0.1;
  double c1 = 1.0;
  int checkpoint_every = 0;  // steps between checkpoint files; 0 disables
};

SimulateConfig simulateConfigFromJson(const json& j);
StabilityConfig stabilityConfigFromJson(const json& j);

}  // namespace kpcyl
