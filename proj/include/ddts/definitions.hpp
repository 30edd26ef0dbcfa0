#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "ddts/value.hpp"

namespace ddts {

enum class Kind { Build, Run, Suite };

std::string_view kind_name(Kind k);    // "build" / "run" / "suite"
std::string_view kind_dir(Kind k);     // "builds" / "runs" / "suites"

struct RawDefinition {
  std::string name;
  Kind kind;
  Value body;  // ordered map (possibly empty for a pure fragment)
  std::filesystem::path source_path;
};

struct ResolvedDefinition {
  std::string name;
  Kind kind;
  Value body;  // composed, no extends key
  std::vector<std::string> ancestry;  // most-derived first; ancestry[0] == name
};

// Definition files live under app_root/{builds,runs,suites}/<name>, flat,
// no extension, referenced by pathless filename.
class Store {
 public:
  explicit Store(std::filesystem::path app_root);

  RawDefinition load(Kind kind, const std::string& name) const;

  // Depth-first composition over the extends chain: the ancestor is fully
  // resolved first, then overlaid with the child's keys (maps merge
  // recursively, lists and scalars replace). Throws CycleError on extends
  // cycles and NotFoundError for dangling ancestors.
  ResolvedDefinition resolve(Kind kind, const std::string& name) const;

  std::vector<std::string> list(Kind kind) const;

  const std::filesystem::path& app_root() const { return app_root_; }

 private:
  std::filesystem::path app_root_;
  mutable std::mutex mu_;
  mutable std::map<std::string, ResolvedDefinition> cache_;
};

// Ancestry comment line followed by the composed body, keys sorted
// lexicographically at every level.
std::string show(const ResolvedDefinition& def);

struct SuiteOptions {
  bool build_only = false;
  bool continue_on_error = false;
  bool retain_builds = false;
};

struct SuiteModel {
  std::string name;
  // Group name -> member run names, in declared order.
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
  SuiteOptions options;
};

// List-valued non-reserved keys become groups; reserved scalar keys become
// options. Scalar keys matching canonical hook names are aliases and stay in
// the body. Every referenced run must resolve.
SuiteModel build_suite_model(const ResolvedDefinition& suite,
                             const Store& store);

}  // namespace ddts
