#include "assouad/experiments.hpp"

#include "assouad/counting.hpp"
#include "assouad/integral.hpp"
#include "assouad/parallel.hpp"
#include "assouad/path_io.hpp"
#include "assouad/reports.hpp"
#include "assouad/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace assouad {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
void read_optional(const json& j, std::optional<T>& target) {
  if (j.is_null()) {
    target.reset();
  } else {
    target = j.get<T>();
  }
}

json plan_json(const AssouadPlan& plan) {
  return {{"anchor_spacing", plan.anchor_spacing}, {"exhaustive", plan.exhaustive}, {"first_outer", plan.first_outer},
          {"depth", plan.depth},                   {"min_ratio", plan.min_ratio},   {"max_ratio", plan.max_ratio}};
}

} // namespace

json to_json(const ExperimentConfig& c) {
  return {{"command", c.command},
          {"process", c.process},
          {"beta", optional_json(c.beta)},
          {"hurst", optional_json(c.hurst)},
          {"dim", optional_json(c.dim)},
          {"integrand", c.integrand},
          {"steps", optional_json(c.steps)},
          {"seed", c.seed},
          {"replicas", optional_json(c.replicas)},
          {"input", c.input},
          {"fixture", c.fixture},
          {"j0", optional_json(c.j0)},
          {"j1", optional_json(c.j1)},
          {"n", c.n},
          {"bins", c.bins},
          {"threshold", c.threshold},
          {"min_length", optional_json(c.min_length)},
          {"windows", c.windows},
          {"plan", plan_json(c.plan)},
          {"t", c.t},
          {"out", c.out},
          {"emit_plots", c.emit_plots}};
}

void apply_json(ExperimentConfig& c, const json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("config must be a JSON object");
  }
  for (const auto& [key, v] : j.items()) {
    if (key == "command") c.command = v.get<std::string>();
    else if (key == "process") c.process = v.get<std::string>();
    else if (key == "beta") read_optional(v, c.beta);
    else if (key == "hurst") read_optional(v, c.hurst);
    else if (key == "dim") read_optional(v, c.dim);
    else if (key == "integrand") c.integrand = v.get<std::vector<double>>();
    else if (key == "steps") read_optional(v, c.steps);
    else if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "replicas") read_optional(v, c.replicas);
    else if (key == "input") c.input = v.get<std::string>();
    else if (key == "fixture") c.fixture = v.get<std::string>();
    else if (key == "j0") read_optional(v, c.j0);
    else if (key == "j1") read_optional(v, c.j1);
    else if (key == "n") c.n = v.get<int>();
    else if (key == "bins") c.bins = v.get<int>();
    else if (key == "threshold") c.threshold = v.get<double>();
    else if (key == "min_length") read_optional(v, c.min_length);
    else if (key == "windows") c.windows = v.get<std::string>();
    else if (key == "t") c.t = v.get<double>();
    else if (key == "out") c.out = v.get<std::string>();
    else if (key == "emit_plots") c.emit_plots = v.get<bool>();
    else if (key == "plan") {
      for (const auto& [pk, pv] : v.items()) {
        if (pk == "anchor_spacing") c.plan.anchor_spacing = pv.get<double>();
        else if (pk == "exhaustive") c.plan.exhaustive = pv.get<bool>();
        else if (pk == "first_outer") c.plan.first_outer = pv.get<int>();
        else if (pk == "depth") c.plan.depth = pv.get<int>();
        else if (pk == "min_ratio") c.plan.min_ratio = pv.get<int>();
        else if (pk == "max_ratio") c.plan.max_ratio = pv.get<int>();
        else throw std::invalid_argument("unknown plan key '" + pk + "'");
      }
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
}

ExperimentConfig resolve(ExperimentConfig c) {
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
    throw std::invalid_argument("unknown command '" + c.command + "'");
  }
  if (c.process.empty()) {
    c.process = c.command == "trail" ? "bm_d" : "wiener";
  }
  if (c.process == "bm_d" && !c.dim) {
    c.dim = 2;
  }
  if (!c.input.empty() && !c.fixture.empty()) {
    throw std::invalid_argument("--input and --fixture are mutually exclusive");
  }
  if (!c.steps) {
    if (c.command == "pn") {
      c.steps = default_threading_steps(c.n);
    } else if (c.command == "fullwindow") {
      c.steps = std::size_t{1} << 12;
    } else {
      c.steps = std::size_t{1} << 20;
    }
  }
  if (!c.replicas) {
    if (c.command == "pn") {
      c.replicas = 10000;
    } else if (c.command == "qv") {
      c.replicas = 100;
    } else if (c.command == "fullwindow" && c.input.empty() && c.fixture.empty()) {
      c.replicas = 1000;
    } else {
      c.replicas = 1;
    }
  }
  if (*c.replicas < 1) {
    throw std::invalid_argument("replicas must be positive");
  }
  c.plan.validate();
  make_spec(c).validate();
  return c;
}

ProcessSpec make_spec(const ExperimentConfig& c) {
  const Family family = family_from_string(c.process);
  switch (family) {
  case Family::wiener: return ProcessSpec::wiener();
  case Family::bm_d: return ProcessSpec::bm_d(c.dim.value_or(2));
  case Family::stable:
    if (!c.beta) {
      throw std::invalid_argument("process 'stable' needs --beta");
    }
    return ProcessSpec::stable(*c.beta);
  case Family::fbm:
    if (!c.hurst) {
      throw std::invalid_argument("process 'fbm' needs --hurst");
    }
    return ProcessSpec::fbm(*c.hurst);
  case Family::ito_integral: return ProcessSpec::ito(Integrand(c.integrand));
  case Family::deterministic: break;
  }
  throw std::invalid_argument("process 'deterministic' is only available through --input or --fixture");
}

namespace {

class Artifacts {
public:
  explicit Artifacts(const fs::path& dir) : dir_(dir) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) {
      throw IoError("cannot create output directory '" + dir_.string() + "'");
    }
  }

  void write(const std::string& name, const std::string& contents) {
    write_atomic(dir_ / name, contents);
    written_.push_back(dir_ / name);
  }
  void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }

  std::vector<fs::path> finish(const ExperimentConfig& config) {
    write_json("config.json", to_json(config));
    return written_;
  }

private:
  fs::path dir_;
  std::vector<fs::path> written_;
};

double height_exponent_beta(const ProcessSpec& spec) {
  if (spec.family == Family::stable) {
    return *spec.beta;
  }
  if (spec.family == Family::fbm) {
    return 1.0 / *spec.hurst;
  }
  return 2.0;
}

std::optional<Graph2D> fixture_graph(const ExperimentConfig& c) {
  if (c.fixture.empty()) {
    return std::nullopt;
  }
  if (c.fixture == "line") return fixtures::line(1.0, 1);
  if (c.fixture == "constant") return fixtures::constant(1);
  if (c.fixture == "zigzag") return fixtures::zigzag(Window::square({0.0, 0.0}, 1.0, c.n));
  if (c.fixture == "nested") return fixtures::nested_zigzags(6, 512);
  throw std::invalid_argument("unknown fixture '" + c.fixture + "' (line, constant, zigzag, nested)");
}

SamplePath input_path(const ExperimentConfig& c) {
  fs::path meta = fs::path(c.input).replace_extension(".json");
  if (!fs::exists(meta)) {
    meta.clear();
  }
  return read_path(c.input, meta);
}

/// The path behind a run, for sources that have one.
SamplePath source_path(const ExperimentConfig& c, std::uint64_t seed) {
  if (!c.input.empty()) {
    return input_path(c);
  }
  return simulate(make_spec(c), *c.steps, seed);
}

Graph2D source_graph(const ExperimentConfig& c, std::uint64_t seed) {
  if (auto g = fixture_graph(c)) {
    return std::move(*g);
  }
  return build_graph(source_path(c, seed));
}

ScaleRange scale_range(ExperimentConfig& c, ScaleRange fallback) {
  ScaleRange range{c.j0.value_or(fallback.j0), c.j1.value_or(fallback.j1)};
  c.j0 = range.j0;
  c.j1 = range.j1;
  return range;
}

std::size_t source_steps(const ExperimentConfig& c) {
  return c.input.empty() ? *c.steps : input_path(c).n_steps();
}

std::vector<fs::path> cmd_simulate(ExperimentConfig& c, Artifacts& out) {
  const SamplePath path = simulate(make_spec(c), *c.steps, c.seed);
  out.write("path.csv", path_csv(path));
  out.write("path.json", path_metadata(path));
  return out.finish(c);
}

std::vector<fs::path> cmd_boxdim(ExperimentConfig& c, Artifacts& out) {
  const Graph2D g = source_graph(c, c.seed);
  const ScaleRange range = scale_range(c, c.fixture.empty() ? default_scale_range(source_steps(c)) : ScaleRange{4, 10});
  const DimensionFit fit = box_dimension(g, range);
  out.write_json("boxdim.json", to_json(fit));
  if (c.emit_plots) {
    out.write("boxdim.svg", loglog_svg(fit, "box counting"));
  }
  return out.finish(c);
}

std::vector<fs::path> cmd_trail(ExperimentConfig& c, Artifacts& out) {
  if (!c.fixture.empty()) {
    throw std::invalid_argument("trail: fixtures are graphs; use --process bm_d or --input");
  }
  const SamplePath path = source_path(c, c.seed);
  const int octaves = static_cast<int>(std::floor(std::log2(static_cast<double>(path.n_steps()))));
  const DimensionFit fit = trail_box_dimension(path, scale_range(c, {octaves / 2 - 5, octaves / 2 + 2}));
  out.write_json("trail.json", to_json(fit));
  if (c.emit_plots) {
    out.write("trail.svg", loglog_svg(fit, "trail box counting"));
  }
  return out.finish(c);
}

std::vector<fs::path> cmd_assouad(ExperimentConfig& c, Artifacts& out) {
  const Graph2D g = source_graph(c, c.seed);
  const auto anchors = plan_anchors(g, c.plan);
  const AssouadProfile profile = assouad_profile(g, anchors, c.plan);
  out.write("assouad.csv", assouad_csv(profile));
  json witness = to_json(profile.witness);
  witness["occupancy"] = static_cast<double>(profile.witness.N) / static_cast<double>(profile.witness.capacity);
  out.write_json("assouad.json", {{"max_exponent", profile.max_exponent},
                                  {"witness", witness},
                                  {"anchors", anchors.size()},
                                  {"records", profile.records.size()}});
  return out.finish(c);
}

std::vector<fs::path> cmd_fullwindow(ExperimentConfig& c, Artifacts& out) {
  const bool simulated = c.input.empty() && c.fixture.empty();
  const std::int64_t paths = simulated ? *c.replicas : 1;
  std::optional<std::vector<Window>> given;
  if (!c.windows.empty()) {
    given = windows_from_json(json::parse(read_file(c.windows)));
  }
  std::vector<std::vector<WindowHit>> hits(static_cast<std::size_t>(paths));
  std::vector<std::size_t> searched(static_cast<std::size_t>(paths));
  parallel_for(paths, [&](std::int64_t i) {
    const std::uint64_t seed = simulated ? derive_seed(c.seed, static_cast<std::uint64_t>(i), 0) : c.seed;
    const Graph2D g = source_graph(c, seed);
    std::vector<Window> windows;
    if (given) {
      windows = *given;
    } else if (c.fixture == "zigzag") {
      windows = {Window::square({0.0, 0.0}, 1.0, c.n)};
    } else if (!c.fixture.empty()) {
      windows = proof_scheme_windows(g, 1.0, c.n, c.min_length.value_or(0x1p-6));
    } else {
      const double delta = (g.bbox().hi.x - g.bbox().lo.x) / static_cast<double>(g.segment_count());
      const double beta = c.input.empty() ? height_exponent_beta(make_spec(c)) : 2.0;
      windows = proof_scheme_windows(g, beta, c.n, c.min_length.value_or(8.0 * c.n * c.n * delta));
    }
    searched[static_cast<std::size_t>(i)] = windows.size();
    hits[static_cast<std::size_t>(i)] = full_window_search(g, windows, c.threshold);
  });

  json witnesses = json::array();
  std::int64_t nonempty = 0;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    nonempty += hits[i].empty() ? 0 : 1;
    for (const auto& hit : hits[i]) {
      json w = to_json(hit.window);
      w["replica"] = i;
      w["count"] = hit.result.count;
      w["fraction"] = hit.fraction;
      witnesses.push_back(std::move(w));
    }
  }
  out.write_json("fullwindow.json", {{"threshold", c.threshold},
                                     {"n", c.n},
                                     {"paths", paths},
                                     {"windows_per_path", searched.front()},
                                     {"nonempty_frequency", static_cast<double>(nonempty) / static_cast<double>(paths)},
                                     {"witnesses", witnesses}});
  return out.finish(c);
}

std::vector<fs::path> cmd_pn(ExperimentConfig& c, Artifacts& out) {
  const ThreadingReport report = empirical_pn(make_spec(c), c.n, *c.replicas, c.seed, *c.steps, c.bins);
  out.write_json("pn.json", to_json(report));
  return out.finish(c);
}

std::vector<fs::path> cmd_qv(ExperimentConfig& c, Artifacts& out) {
  const Integrand f(c.integrand);
  const std::size_t steps = *c.steps;
  const SamplePath fpath = sample_function(f, steps);
  const double ff = quadratic_covariation(fpath, fpath, c.t);
  const std::int64_t replicas = *c.replicas;
  std::vector<double> ww(static_cast<std::size_t>(replicas));
  std::vector<double> fw(static_cast<std::size_t>(replicas));
  parallel_for(replicas, [&](std::int64_t i) {
    const SamplePath w = gen_wiener(steps, derive_seed(c.seed, static_cast<std::uint64_t>(i), 0));
    ww[static_cast<std::size_t>(i)] = quadratic_covariation(w, w, c.t);
    fw[static_cast<std::size_t>(i)] = quadratic_covariation(fpath, w, c.t);
  });
  double ww_sum = 0.0;
  double fw_sum = 0.0;
  double fw_abs = 0.0;
  bool bounded = true;
  for (std::size_t i = 0; i < ww.size(); ++i) {
    ww_sum += ww[i];
    fw_sum += fw[i];
    fw_abs += std::abs(fw[i]);
    bounded = bounded && std::abs(fw[i]) <= std::sqrt(ff * ww[i]) * (1.0 + 1e-12);
  }
  const double slope = f.derivative().max_abs_on_unit();
  const auto count = static_cast<double>(replicas);
  out.write_json("qv.json", {{"t", c.t},
                             {"n_steps", steps},
                             {"delta", fpath.delta()},
                             {"replicas", replicas},
                             {"integrand", c.integrand},
                             {"ww_mean", ww_sum / count},
                             {"ff", ff},
                             {"ff_bound", slope * slope * fpath.delta() * c.t},
                             {"fw_mean", fw_sum / count},
                             {"fw_abs_mean", fw_abs / count},
                             {"cauchy_schwarz_holds", bounded}});
  return out.finish(c);
}

} // namespace

std::vector<fs::path> run_experiment(const ExperimentConfig& config) {
  ExperimentConfig c = resolve(config);
  Artifacts out(c.out);
  if (c.command == "simulate") return cmd_simulate(c, out);
  if (c.command == "boxdim") return cmd_boxdim(c, out);
  if (c.command == "trail") return cmd_trail(c, out);
  if (c.command == "assouad") return cmd_assouad(c, out);
  if (c.command == "fullwindow") return cmd_fullwindow(c, out);
  if (c.command == "pn") return cmd_pn(c, out);
  return cmd_qv(c, out);
}

} // namespace assouad
