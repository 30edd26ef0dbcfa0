#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddts/compare.hpp"
#include "ddts/definitions.hpp"
#include "ddts/hooks.hpp"

namespace ddts {

class Logger;

struct EngineOptions {
  std::optional<std::filesystem::path> use_baseline;
  std::optional<std::filesystem::path> gen_baseline;
  bool force_baseline = false;
  // Cap on simultaneously active run workers; unlimited by default.
  std::optional<int> worker_cap;
  std::optional<std::chrono::milliseconds> hook_timeout;
};

enum class RunStatus {
  Pending,
  Blocked,
  Building,
  Running,
  Checking,
  Passed,
  Failed,
  Skipped,
};

enum class BuildStatus { Pending, InProgress, Done, Failed };

std::string_view run_status_name(RunStatus s);

struct RunOutcome {
  RunStatus status = RunStatus::Pending;
  std::string failure_reason;
  OutfileList outfiles;
  std::optional<ComparisonReport> baseline_report;
};

struct BuildOutcome {
  BuildStatus status = BuildStatus::Pending;
  std::filesystem::path product_dir;
  std::string owner_run;  // run that performed the build, if any
  std::string failure_reason;
};

struct GroupOutcome {
  bool passed = false;
  std::vector<ComparisonReport> reports;
  std::string failure_reason;
};

struct SuiteVerdict {
  bool passed = false;
  std::string name;
  std::map<std::string, RunOutcome> runs;
  std::map<std::string, BuildOutcome> builds;
  std::vector<std::pair<std::string, GroupOutcome>> groups;
  std::vector<std::string> baselines_written;
};

// Dependency graph derived from a suite: runs depend on builds (build key)
// and on other runs (require key); groups depend on member runs; the suite
// depends on its groups. Shared runs and builds are deduplicated.
struct PlannedRun {
  ResolvedDefinition def;
  std::string build;
  std::optional<std::string> baseline;
  std::optional<std::string> require;
};

struct ExecutionGraph {
  std::string suite;
  Value suite_body;
  SuiteOptions options;
  std::vector<std::pair<std::string, std::vector<std::string>>> groups;
  std::map<std::string, PlannedRun> runs;
  std::map<std::string, ResolvedDefinition> builds;
};

ExecutionGraph plan(const SuiteModel& suite, const Store& store);

// Executes the graph with one logical worker per group and per run.
// Execute-once contracts (build, data provisioning, baseline contribution,
// shared runs) are enforced with check-inside-critical-region latches.
// Failures are captured in the verdict, never thrown.
class Engine {
 public:
  Engine(const Store& store, const Registry& registry, Logger& log,
         std::filesystem::path out_root, EngineOptions options = {});

  SuiteVerdict run_suite(const std::string& name);

  // Single-run mode: exactly the closure {run, its build, data}, no group
  // comparisons and no suite_prep/suite_post.
  SuiteVerdict run_single(const std::string& run_name);

 private:
  struct Exec;

  SuiteVerdict execute(ExecutionGraph graph, bool single_run);
  void run_worker(Exec& x, const std::string& run_name);
  void group_worker(Exec& x, const std::string& group_name,
                    const std::vector<std::string>& members);
  void perform_build(Exec& x, const std::string& build_name,
                     const std::string& owner_run);
  HookContext make_context(Exec& x, const PlannedRun* run,
                           const ResolvedDefinition* build,
                           std::string scope) const;
  Comparator hook_comparator(const Registry& registry, HookContext& ctx) const;

  const Store& store_;
  const Registry& registry_;
  Logger& log_;
  std::filesystem::path out_root_;
  EngineOptions options_;
  std::string invocation_id_;
};

}  // namespace ddts
