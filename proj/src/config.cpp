#include "kpcyl/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>

namespace kpcyl {

namespace {

void overrideLeaves(json& node, const std::string& prefix, const std::string& path) {
  if (node.is_object()) {
    for (auto& [key, value] : node.items()) {
      std::string sub = path.empty() ? key : path + "_" + key;
      overrideLeaves(value, prefix, sub);
    }
    return;
  }
  std::string name = prefix;
  for (char ch : path) name += char(std::toupper(static_cast<unsigned char>(ch)));
  const char* env = std::getenv(name.c_str());
  if (!env) return;
  json parsed = json::parse(env, nullptr, false);
  node = parsed.is_discarded() ? json(std::string(env)) : parsed;
}

template <class T>
T require(const json& j, const std::string& key, T fallback, bool optional = true) {
  if (!j.contains(key)) {
    if (optional) return fallback;
    throw ConfigError("config: missing key '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("config: bad value for '" + key + "': " + e.what());
  }
}

Grid gridFromJson(const json& j) {
  json g = j.value("grid", json::object());
  try {
    return Grid(require<int>(g, "nx", 512), require<int>(g, "ny", 32),
                require<double>(g, "lx", 32.0));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

Scheme schemeFromString(const std::string& s) {
  if (s == "etdrk4") return Scheme::ETDRK4;
  if (s == "ifrk4") return Scheme::IFRK4;
  throw ConfigError("config: unknown scheme '" + s + "' (etdrk4|ifrk4)");
}

}  // namespace

json loadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config: malformed JSON in '" + path + "'");
  if (!j.is_object()) throw ConfigError("config: top level must be an object in '" + path + "'");
  return j;
}

void applyEnvOverrides(json& config, const std::string& prefix) {
  overrideLeaves(config, prefix, "");
}

std::string configHash(const json& config) {
  std::string canon = config.dump();  // object keys are already sorted
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SimulateConfig simulateConfigFromJson(const json& j) {
  SimulateConfig cfg;
  cfg.grid = gridFromJson(j);

  json f = j.value("flow", json::object());
  std::string eq = require<std::string>(f, "equation", "kp2");
  if (eq == "kp2")
    cfg.flow.equation = Equation::KP2;
  else if (eq == "mkp2")
    cfg.flow.equation = Equation::MKP2_PERTURBATION;
  else
    throw ConfigError("config: unknown equation '" + eq + "' (kp2|mkp2)");
  cfg.flow.c = require<double>(f, "c", 2.0);
  cfg.flow.dt = require<double>(f, "dt", 5e-4);
  cfg.flow.t_end = require<double>(f, "t_end", 1.0);
  cfg.flow.scheme = schemeFromString(require<std::string>(f, "scheme", "etdrk4"));
  cfg.flow.nonlinear = require<bool>(f, "nonlinear", true);
  cfg.flow.observe_every = require<int>(f, "observe_every", 100);
  cfg.checkpoint_every = require<int>(f, "checkpoint_every", 0);
  if (cfg.flow.dt <= 0.0 || cfg.flow.t_end <= 0.0 || cfg.flow.observe_every < 1)
    throw ConfigError("config: flow.dt, flow.t_end, flow.observe_every must be positive");
  if (cfg.checkpoint_every < 0)
    throw ConfigError("config: flow.checkpoint_every must be nonnegative");

  json p = j.value("perturbation", json::object());
  cfg.delta = require<double>(p, "delta", 0.05);
  cfg.seed = require<std::uint64_t>(p, "seed", 1);
  cfg.ky_modes = require<int>(p, "ky_modes", 3);
  if (cfg.delta < 0.0) throw ConfigError("config: perturbation.delta must be >= 0");
  if (cfg.ky_modes < 0) throw ConfigError("config: perturbation.ky_modes must be >= 0");

  json d = j.value("diagnostics", json::object());
  cfg.weight_eps = require<double>(d, "weight_eps", 0.1);
  cfg.c1 = require<double>(d, "c1", 1.0);
  return cfg;
}

StabilityConfig stabilityConfigFromJson(const json& j) {
  StabilityConfig cfg;
  cfg.grid = gridFromJson(j);

  json f = j.value("flow", json::object());
  cfg.c = require<double>(f, "c", 2.0);
  cfg.dt = require<double>(f, "dt", 1e-3);
  cfg.t_end = require<double>(f, "t_end", 50.0);
  cfg.scheme = schemeFromString(require<std::string>(f, "scheme", "etdrk4"));
  cfg.observe_every = require<int>(f, "observe_every", 250);
  if (cfg.dt <= 0.0 || cfg.t_end <= 0.0 || cfg.observe_every < 1)
    throw ConfigError("config: flow.dt, flow.t_end, flow.observe_every must be positive");
  if (cfg.c <= 0.0) throw ConfigError("config: flow.c must be positive");

  json p = j.value("perturbation", json::object());
  cfg.delta = require<double>(p, "delta", 0.01);
  cfg.seed = require<std::uint64_t>(p, "seed", 1);
  cfg.ky_modes = require<int>(p, "ky_modes", 0);
  if (cfg.delta < 0.0) throw ConfigError("config: perturbation.delta must be >= 0");
  if (cfg.ky_modes < 0) throw ConfigError("config: perturbation.ky_modes must be >= 0");

  json d = j.value("diagnostics", json::object());
  cfg.weight_eps = require<double>(d, "weight_eps", 0.1);
  return cfg;
}

}  // namespace kpcyl
