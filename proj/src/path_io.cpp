#include "assouad/path_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

namespace assouad {

namespace fs = std::filesystem;
using nlohmann::json;

void write_atomic(const fs::path& target, const std::string& contents) {
  fs::path temp = target;
  temp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot write '" + temp.string() + "'");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.close();
    if (!out) {
      std::error_code ignored;
      fs::remove(temp, ignored);
      throw IoError("write failed for '" + temp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp, ec);
    throw IoError("cannot rename into '" + target.string() + "'");
  }
}

std::string read_file(const fs::path& source) {
  std::ifstream in(source, std::ios::binary);
  if (!in) {
    throw IoError("cannot read '" + source.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string path_csv(const SamplePath& path) {
  std::string out = "t";
  for (std::size_t j = 0; j < path.dim(); ++j) {
    out += ",x" + std::to_string(j + 1);
  }
  out += '\n';
  out.reserve(out.size() + path.points() * (path.dim() + 1) * 24);
  char buf[32];
  for (std::size_t k = 0; k < path.points(); ++k) {
    auto res = std::to_chars(buf, buf + sizeof buf, path.time(k), std::chars_format::general, 17);
    out.append(buf, res.ptr);
    for (std::size_t j = 0; j < path.dim(); ++j) {
      out += ',';
      res = std::to_chars(buf, buf + sizeof buf, path.value(k, j), std::chars_format::general, 17);
      out.append(buf, res.ptr);
    }
    out += '\n';
  }
  return out;
}

namespace {

json spec_parameters(const ProcessSpec& spec) {
  json p = json::object();
  if (spec.beta) {
    p["beta"] = *spec.beta;
  }
  if (spec.hurst) {
    p["hurst"] = *spec.hurst;
  }
  if (spec.dim) {
    p["dim"] = *spec.dim;
  }
  if (spec.integrand) {
    p["integrand"] = spec.integrand->coeffs();
  }
  return p;
}

ProcessSpec spec_from_metadata(const json& meta) {
  ProcessSpec spec;
  spec.family = family_from_string(meta.at("family").get<std::string>());
  const json& p = meta.value("parameters", json::object());
  if (p.contains("beta")) {
    spec.beta = p["beta"].get<double>();
  }
  if (p.contains("hurst")) {
    spec.hurst = p["hurst"].get<double>();
  }
  if (p.contains("dim")) {
    spec.dim = p["dim"].get<std::size_t>();
  }
  if (p.contains("integrand")) {
    spec.integrand = Integrand(p["integrand"].get<std::vector<double>>());
  }
  spec.validate();
  return spec;
}

double parse_double(std::string_view field, const fs::path& source, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw std::invalid_argument("'" + source.string() + "' line " + std::to_string(line) + ": bad number '" +
                                std::string(field) + "'");
  }
  return v;
}

} // namespace

std::string path_metadata(const SamplePath& path) {
  json meta = {{"family", std::string(to_string(path.spec().family))},
               {"parameters", spec_parameters(path.spec())},
               {"n_steps", path.n_steps()},
               {"delta", path.delta()},
               {"seed", path.seed()}};
  return meta.dump(2) + "\n";
}

void write_path(const SamplePath& path, const fs::path& csv, const fs::path& meta) {
  write_atomic(csv, path_csv(path));
  write_atomic(meta, path_metadata(path));
}

SamplePath read_path(const fs::path& csv, const fs::path& meta) {
  const std::string text = read_file(csv);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,x1", 0) != 0) {
    throw std::invalid_argument("'" + csv.string() + "': expected header 't,x1[,x2,...]'");
  }
  const auto dim = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
  std::vector<double> times;
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::string_view rest(line);
    for (std::size_t col = 0; col <= dim; ++col) {
      const auto comma = rest.find(',');
      if ((comma == std::string_view::npos) != (col == dim)) {
        throw std::invalid_argument("'" + csv.string() + "' line " + std::to_string(line_no) +
                                    ": wrong number of fields");
      }
      const double v = parse_double(rest.substr(0, comma), csv, line_no);
      (col == 0 ? times : values).push_back(v);
      rest = col == dim ? std::string_view{} : rest.substr(comma + 1);
    }
  }
  if (times.size() < 2) {
    throw std::invalid_argument("'" + csv.string() + "': need at least two rows");
  }
  if (times[0] != 0.0) {
    throw std::invalid_argument("'" + csv.string() + "': the grid must start at t = 0");
  }
  const double delta = times[1];
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double expected = static_cast<double>(k) * delta;
    if (std::abs(times[k] - expected) > 1e-12 * std::max(std::abs(expected), delta)) {
      throw std::invalid_argument("'" + csv.string() + "': times are not a uniform grid");
    }
  }
  ProcessSpec spec = ProcessSpec::deterministic();
  std::uint64_t seed = 0;
  if (!meta.empty()) {
    const json m = json::parse(read_file(meta));
    spec = spec_from_metadata(m);
    seed = m.value("seed", std::uint64_t{0});
  }
  return SamplePath(spec, delta, dim, std::move(values), seed);
}

} // namespace assouad
