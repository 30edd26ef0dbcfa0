#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace ddts {

struct OutfileEntry {
  std::filesystem::path root;
  std::string relpath;
};
using OutfileList = std::vector<OutfileEntry>;

struct FileVerdict {
  std::string relpath;
  bool equivalent;
};

struct ComparisonReport {
  enum class Scope { Group, Baseline };
  Scope scope = Scope::Group;
  std::string left;   // master run (group) or run name (baseline)
  std::string right;  // compared run or baseline name
  std::vector<FileVerdict> file_verdicts;
  // Relpaths absent on one side but present on the other.
  std::vector<std::string> missing_left;
  std::vector<std::string> missing_right;
  bool equivalent = false;
  std::string note;
};

std::string describe(const ComparisonReport& report);

// True iff byte-for-byte identical; metadata is ignored. Throws ConfigError
// if either file is unreadable.
bool bitwise_equal(const std::filesystem::path& a,
                   const std::filesystem::path& b);

// Judges one file pair equivalent. The default is bitwise_equal; the engine
// substitutes a comp-hook dispatcher when an application overrides lib_comp.
using Comparator = std::function<bool(const std::filesystem::path&,
                                      const std::filesystem::path&)>;

// Run-vs-run within one group: the first-listed run is the master and every
// other run is compared against it. Mismatched file sets are inequivalence,
// not errors.
std::vector<ComparisonReport> compare_runs(
    const std::vector<std::pair<std::string, OutfileList>>& runs,
    const Comparator& comparator);

// Run-vs-baseline: the run's output against baseline_root/<baseline_name>,
// both directions of the file-set check. A missing baseline directory yields
// an inequivalent report, not an exception.
ComparisonReport compare_to_baseline(const std::string& run_name,
                                     const OutfileList& outfiles,
                                     const std::string& baseline_name,
                                     const std::filesystem::path& baseline_root,
                                     const Comparator& comparator);

// Copies one run's output to dest/<relpath...>, bytes preserved exactly.
// Refuses to overwrite an existing directory unless force is set.
void generate_baseline(const OutfileList& outfiles,
                       const std::filesystem::path& dest, bool force);

}  // namespace ddts
