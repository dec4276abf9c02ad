#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cfdyn {

inline constexpr std::string_view kVersion = "1.0.0";

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ReproduceOptions {
  std::filesystem::path out_dir = ".";
  /// Also run the slow optional jobs (N=36 matching scan).
  bool long_jobs = false;
  /// Written into every CSV as the command metadata line.
  std::string command;
};

struct ReproduceReport {
  std::string id;
  std::vector<CheckLine> checks;
  std::vector<std::filesystem::path> files;

  bool pass() const;
};

/// fig5 fig6 fig7 fig8 fig9 fig10 fig12 fig13 table1 thm1 thm2 corollary
std::vector<std::string> reproduce_ids();

/// Runs the canned jobs for one figure or table, writes their data files and
/// <id>_check.txt (one PASS/FAIL line per check) into out_dir. Throws
/// std::invalid_argument for an unknown id and std::runtime_error on I/O failure.
ReproduceReport reproduce(std::string_view id, const ReproduceOptions& options = {});

}  // namespace cfdyn
