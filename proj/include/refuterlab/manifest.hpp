#pragma once

#include <string>

#include "refuterlab/oracle.hpp"
#include "refuterlab/rwphp.hpp"

namespace rfl {

// Materialized rwPHP instance on disk: a manifest JSON referencing the
// component tables. f and every label table are little-endian u64 files; each
// inner instance is a pointer table file.
struct RwPhpManifest {
  uint64_t M = 0, N = 0;
  bool small_stretch = false;
  std::string orientation = "forward";  // of the inner instances
  std::string f_file;
  std::vector<std::string> inner_files;
  std::vector<std::string> label_files;

  static RwPhpManifest load(const std::string& path);
  void save(const std::string& path) const;
  RwPhpInstance<IterInstance, uint64_t> to_instance() const;
};

// Write a closure-backed instance out as tables next to the manifest path.
RwPhpManifest materialize_rwphp(const RwPhpInstance<IterInstance, uint64_t>& inst,
                                uint64_t inner_len, const std::string& stem);

void write_u64_file(const std::vector<uint64_t>& values, const std::string& path);
std::vector<uint64_t> read_u64_file(const std::string& path);

// Metering report for the CLI.
struct MeterReport {
  uint64_t block_depth_max = 0;
  uint64_t total_fetches = 0;
  int declared_budget = 0;
  bool within_budget = false;
  std::string json() const;
};

}  // namespace rfl
