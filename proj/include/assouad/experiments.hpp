#pragma once

#include "assouad/assouad.hpp"
#include "assouad/process.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace assouad {

/// Everything one CLI run needs. Unset optionals take command defaults in
/// resolve(); the resolved config is what gets persisted.
struct ExperimentConfig {
  std::string command;

  // process
  std::string process; // empty: bm_d for trail, wiener otherwise
  std::optional<double> beta;
  std::optional<double> hurst;
  std::optional<std::size_t> dim;
  std::vector<double> integrand{1.0, 0.0, 1.0};

  std::optional<std::size_t> steps;
  std::uint64_t seed = 1;
  std::optional<std::int64_t> replicas;

  // geometry source: a path CSV, a named fixture, or the process
  std::string input;
  std::string fixture; // line | constant | zigzag | nested

  std::optional<int> j0;
  std::optional<int> j1;

  int n = 2;
  int bins = 400;
  double threshold = 1.0;
  std::optional<double> min_length;
  std::string windows; // JSON window list for fullwindow

  AssouadPlan plan;
  double t = 1.0;

  std::string out = "out";
  bool emit_plots = false;
};

inline const std::vector<std::string> kCommands{"simulate", "boxdim", "assouad", "fullwindow", "pn", "qv", "trail"};

nlohmann::json to_json(const ExperimentConfig& config);

/// Overwrites the fields present in `j`; unknown keys are rejected.
void apply_json(ExperimentConfig& config, const nlohmann::json& j);

/// Fills command-dependent defaults and checks the combination.
ExperimentConfig resolve(ExperimentConfig config);

ProcessSpec make_spec(const ExperimentConfig& config);

/// Runs the command, writes its artifacts (and config.json) into config.out
/// and returns the paths written.
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& config);

} // namespace assouad
