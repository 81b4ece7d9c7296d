#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qlocal/types.hpp"

namespace qlocal::experiments {

inline constexpr const char* kVersion = "qlocal 0.1.0";

// Flat "key = value" configuration; the experiment kind lives under the
// key "experiment". No nesting, so configs diff cleanly in reports.
struct ExperimentConfig {
  std::string kind;
  std::map<std::string, std::string> values;
  std::filesystem::path out_dir;
  int threads = 1;
  bool exact_floats = false;

  bool has(const std::string& key) const { return values.count(key) > 0; }
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  long get_int(const std::string& key) const;
  long get_int_or(const std::string& key, long fallback) const;
  double get_real(const std::string& key) const;
  double get_real_or(const std::string& key, double fallback) const;
  std::uint64_t get_seed(const std::string& key = "seed") const;  // required
  std::vector<long> get_int_list(const std::string& key) const;
};

ExperimentConfig parse_config(const std::string& text);
std::string config_text(const ExperimentConfig& config);

struct RunResult {
  std::filesystem::path manifest;
  std::vector<std::filesystem::path> files;
  int check_failures = 0;
};

// Runs one experiment: writes the manifest (config echo, version, wall
// time, per-file hashes), the data files, and a checks.csv with one row per
// asserted inequality. All outputs go through write-then-rename.
RunResult run(const ExperimentConfig& config);

struct ReportRow {
  std::string formula_id;
  double measured = 0.0;
  double bound = 0.0;
  std::string status;  // pass | fail | vacuous | flagged
};

struct Summary {
  std::vector<ReportRow> rows;
  int failures = 0;
  int vacuous = 0;
};

// Re-hashes every manifest-listed file (mismatch is an error), then
// consolidates the checks table.
Summary report(const std::filesystem::path& dir);
std::string summary_text(const Summary& summary);

}  // namespace qlocal::experiments
