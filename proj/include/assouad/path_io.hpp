#pragma once

#include "assouad/process.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace assouad {

/// File could not be read or written; the message names the path.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Writes `contents` to a temporary file next to `target` and renames it
/// into place.
void write_atomic(const std::filesystem::path& target, const std::string& contents);

std::string read_file(const std::filesystem::path& source);

/// Shortest decimal with 17 significant digits, e.g. 0.10000000000000001.
std::string format_double(double v);

/// CSV with header `t,x1[,x2,...]`, one row per grid point, LF endings.
std::string path_csv(const SamplePath& path);

/// {family, parameters, n_steps, delta, seed} as JSON text.
std::string path_metadata(const SamplePath& path);

void write_path(const SamplePath& path, const std::filesystem::path& csv, const std::filesystem::path& meta);

/// Reads a path CSV. The process spec and seed come from the metadata
/// sidecar when given; otherwise the path is tagged deterministic.
SamplePath read_path(const std::filesystem::path& csv, const std::filesystem::path& meta = {});

} // namespace assouad
