// assouad: command-line front end for the simulation and counting library.

#include "assouad/experiments.hpp"
#include "assouad/parallel.hpp"
#include "assouad/path_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

enum class Kind { text, integer, unsigned_integer, real, list };

struct Flag {
  std::string name;
  std::string key; // config key; "plan.x" for nested plan fields
  Kind kind;
  std::string help;
};

const std::vector<Flag> kFlags{
    {"--process", "process", Kind::text, "wiener | bm_d | stable | fbm | ito_integral"},
    {"--beta", "beta", Kind::real, "stability index in (0, 2]"},
    {"--hurst", "hurst", Kind::real, "Hurst index in (0, 1)"},
    {"--dim", "dim", Kind::unsigned_integer, "coordinates of bm_d"},
    {"--integrand", "integrand", Kind::list, "polynomial coefficients c0,c1,..."},
    {"--steps", "steps", Kind::unsigned_integer, "grid steps on [0, 1]"},
    {"--seed", "seed", Kind::unsigned_integer, "master seed (u64)"},
    {"--replicas", "replicas", Kind::integer, "Monte-Carlo replicas"},
    {"--input", "input", Kind::text, "path CSV to analyse"},
    {"--fixture", "fixture", Kind::text, "line | constant | zigzag | nested"},
    {"--j0", "j0", Kind::integer, "coarsest scale 2^-j0"},
    {"--j1", "j1", Kind::integer, "finest scale 2^-j1"},
    {"--n", "n", Kind::integer, "window subdivisions"},
    {"--bins", "bins", Kind::integer, "quadrature sub-intervals per box"},
    {"--threshold", "threshold", Kind::real, "occupancy threshold A in (0, 1]"},
    {"--min-length", "min_length", Kind::real, "shortest interval of the window scheme"},
    {"--windows", "windows", Kind::text, "JSON window list"},
    {"--t", "t", Kind::real, "covariation horizon"},
    {"--anchor-spacing", "plan.anchor_spacing", Kind::real, "time spacing of anchors"},
    {"--first-outer", "plan.first_outer", Kind::integer, "largest outer scale 2^-k"},
    {"--depth", "plan.depth", Kind::integer, "number of outer scales"},
    {"--min-ratio", "plan.min_ratio", Kind::integer, "smallest R/r"},
    {"--max-ratio", "plan.max_ratio", Kind::integer, "largest R/r"},
    {"--out", "out", Kind::text, "output directory"},
};

json convert(const Flag& flag, const std::string& raw) {
  switch (flag.kind) {
  case Kind::text: return raw;
  case Kind::integer: return std::stoll(raw);
  case Kind::unsigned_integer:
    if (!raw.empty() && raw[0] == '-') {
      throw std::invalid_argument(flag.name + " must be nonnegative");
    }
    return std::stoull(raw);
  case Kind::real: return std::stod(raw);
  case Kind::list: {
    json out = json::array();
    std::stringstream in(raw);
    std::string item;
    while (std::getline(in, item, ',')) {
      out.push_back(std::stod(item));
    }
    return out;
  }
  }
  return nullptr;
}

void set_key(json& j, const std::string& key, json value) {
  const auto dot = key.find('.');
  if (dot == std::string::npos) {
    j[key] = std::move(value);
  } else {
    j[key.substr(0, dot)][key.substr(dot + 1)] = std::move(value);
  }
}

int fail(const std::string& type, const std::string& message, int code) {
  std::cerr << json{{"error", {{"type", type}, {"message", message}}}}.dump() << "\n";
  return code;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate Levy-type paths and estimate covering dimensions of their graphs"};
  app.require_subcommand(1);

  std::map<std::string, std::string> raw;
  std::string config_file;
  int threads = 0;
  bool emit_plots = false;
  bool exhaustive = false;
  for (const auto& name : assouad::kCommands) {
    CLI::App* sub = app.add_subcommand(name);
    for (const auto& flag : kFlags) {
      sub->add_option(flag.name, raw[flag.key], flag.help);
    }
    sub->add_option("--config", config_file, "JSON config; flags take precedence");
    sub->add_option("--threads", threads, "worker threads (0: runtime default)");
    sub->add_flag("--emit-plots", emit_plots, "write SVG log-log plots");
    sub->add_flag("--exhaustive", exhaustive, "anchor at every vertex");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    assouad::ExperimentConfig config;
    json overrides = json::object();
    if (!config_file.empty()) {
      json file = json::parse(assouad::read_file(config_file));
      if (file.contains("threads")) {
        threads = sub->count("--threads") > 0 ? threads : file["threads"].get<int>();
        file.erase("threads");
      }
      assouad::apply_json(config, file);
    }
    for (const auto& flag : kFlags) {
      if (sub->count(flag.name) > 0) {
        set_key(overrides, flag.key, convert(flag, raw[flag.key]));
      }
    }
    if (sub->count("--emit-plots") > 0) {
      overrides["emit_plots"] = true;
    }
    if (sub->count("--exhaustive") > 0) {
      overrides["plan"]["exhaustive"] = true;
    }
    overrides["command"] = sub->get_name();
    assouad::apply_json(config, overrides);
    assouad::set_worker_threads(threads);

    const auto written = assouad::run_experiment(config);
    json report = json::array();
    for (const auto& p : written) {
      report.push_back(p.string());
    }
    std::cout << json{{"written", report}}.dump() << "\n";
    return 0;
  } catch (const assouad::IoError& e) {
    return fail("io", e.what(), 4);
  } catch (const assouad::UnsupportedError& e) {
    return fail("unsupported", e.what(), 3);
  } catch (const assouad::EmbeddingError& e) {
    return fail("embedding", e.what(), 5);
  } catch (const std::invalid_argument& e) {
    return fail("invalid_argument", e.what(), 2);
  } catch (const json::exception& e) {
    return fail("invalid_argument", e.what(), 2);
  } catch (const std::exception& e) {
    return fail("error", e.what(), 1);
  }
}
