#include "ddts/engine.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <ctime>
#include <memory>
#include <mutex>
#include <semaphore>
#include <set>
#include <thread>

#include "ddts/errors.hpp"
#include "ddts/report.hpp"

namespace ddts {

std::string_view run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Pending: return "pending";
    case RunStatus::Blocked: return "blocked";
    case RunStatus::Building: return "building";
    case RunStatus::Running: return "running";
    case RunStatus::Checking: return "checking";
    case RunStatus::Passed: return "passed";
    case RunStatus::Failed: return "failed";
    case RunStatus::Skipped: return "skipped";
  }
  return "?";
}

namespace {

bool terminal(RunStatus s) {
  return s == RunStatus::Passed || s == RunStatus::Failed ||
         s == RunStatus::Skipped;
}

// Cooperative cancellation signal, observed between hook dispatches.
struct Cancelled {};

// Execute-once latch: the first arriving worker runs the action inside the
// critical region; everyone else waits and shares the outcome.
class Gate {
 public:
  struct Outcome {
    bool success = false;
    bool executed = false;  // true for the worker that ran the action
    std::string error;
    std::string owner;
  };

  template <class F>
  Outcome arrive(const std::string& who, F&& action) {
    std::unique_lock lock(mu_);
    if (state_ == State::Empty) {
      state_ = State::Busy;
      owner_ = who;
      lock.unlock();
      std::string error;
      try {
        action();
      } catch (const Cancelled&) {
        error = "cancelled";
      } catch (const std::exception& e) {
        error = e.what();
      }
      lock.lock();
      state_ = error.empty() ? State::Done : State::Failed;
      error_ = error;
      cv_.notify_all();
      return {error.empty(), true, error_, owner_};
    }
    cv_.wait(lock, [&] { return state_ != State::Busy; });
    return {state_ == State::Done, false, error_, owner_};
  }

 private:
  enum class State { Empty, Busy, Done, Failed };
  std::mutex mu_;
  std::condition_variable cv_;
  State state_ = State::Empty;
  std::string error_;
  std::string owner_;
};

std::string next_invocation_id() {
  static std::atomic<int> counter{0};
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return std::string(buf) + "." + std::to_string(counter.fetch_add(1));
}

OutfileList parse_outfiles(const Value& payload) {
  if (payload.is_null()) return {};
  if (!payload.is_list())
    throw HookFailure("lib_outfiles", "payload must be a list of entries");
  OutfileList files;
  std::set<std::string> seen;
  for (const Value& item : payload.as_list()) {
    auto root = item.get_string("root");
    auto relpath = item.get_string("relpath");
    if (!root || !relpath)
      throw HookFailure("lib_outfiles",
                        "each entry needs 'root' and 'relpath' strings");
    if (!seen.insert(*relpath).second)
      throw HookFailure("lib_outfiles", "duplicate relpath: " + *relpath);
    std::filesystem::path full = std::filesystem::path(*root) / *relpath;
    if (!std::filesystem::is_regular_file(full))
      throw HookFailure("lib_outfiles",
                        "listed output file missing: " + full.string());
    files.push_back({*root, *relpath});
  }
  return files;
}

}  // namespace

struct Engine::Exec {
  ExecutionGraph graph;
  bool single_run = false;

  std::map<std::string, Gate> build_gates;
  Gate data_gate;
  std::map<std::string, Gate> baseline_gates;
  std::map<std::string, std::atomic_flag> run_claims;

  std::mutex mu;
  std::condition_variable cv;
  std::map<std::string, RunOutcome> runs;
  std::map<std::string, BuildOutcome> builds;
  std::vector<std::pair<std::string, GroupOutcome>> groups;
  std::vector<std::string> baselines_written;

  std::atomic<bool> cancel{false};
  std::unique_ptr<std::counting_semaphore<>> cap;
  Value suite_scratch;
  bool suite_prep_ok = true;
  std::string suite_prep_error;

  void set_status(const std::string& run, RunStatus status,
                  std::string reason = {}) {
    std::lock_guard lock(mu);
    auto& out = runs.at(run);
    out.status = status;
    if (!reason.empty()) out.failure_reason = std::move(reason);
    if (terminal(status)) cv.notify_all();
  }

  void trigger_cancel() {
    std::lock_guard lock(mu);
    cancel.store(true);
    cv.notify_all();
  }

  void check_cancel() {
    if (cancel.load()) throw Cancelled{};
  }

  // Throws Cancelled if cancellation fires while the run is still live.
  RunOutcome wait_terminal_or_cancel(const std::string& run) {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] {
      return terminal(runs.at(run).status) || cancel.load();
    });
    if (!terminal(runs.at(run).status)) throw Cancelled{};
    return runs.at(run);
  }

  RunOutcome wait_terminal(const std::string& run) {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return terminal(runs.at(run).status); });
    return runs.at(run);
  }
};

namespace {

struct CapGuard {
  std::counting_semaphore<>* sem = nullptr;
  explicit CapGuard(std::counting_semaphore<>* s) : sem(s) {
    if (sem) sem->acquire();
  }
  ~CapGuard() {
    if (sem) sem->release();
  }
};

}  // namespace

ExecutionGraph plan(const SuiteModel& suite, const Store& store) {
  ExecutionGraph g;
  g.suite = suite.name;
  g.options = suite.options;
  if (!suite.name.empty())
    g.suite_body = store.resolve(Kind::Suite, suite.name).body;
  for (const auto& [group, members] : suite.groups) {
    g.groups.emplace_back(group, members);
    for (const auto& rn : members) {
      if (g.runs.count(rn)) continue;  // shared run: one node
      ResolvedDefinition def = store.resolve(Kind::Run, rn);
      const Value* build = def.body.find("build");
      if (!build || !build->is_string())
        throw ConfigError("run " + rn + " does not name a build");
      std::string build_name = build->as_string();
      if (!g.builds.count(build_name))
        g.builds.emplace(build_name, store.resolve(Kind::Build, build_name));
      PlannedRun pr;
      pr.build = build_name;
      pr.baseline = def.body.get_string("baseline");
      pr.require = def.body.get_string("require");
      pr.def = std::move(def);
      g.runs.emplace(rn, std::move(pr));
    }
  }
  // require edges stay inside the planned suite and must be acyclic.
  // Single-run mode (anonymous suite) ignores require edges instead.
  for (const auto& [rn, pr] : g.runs) {
    if (pr.require && !g.runs.count(*pr.require) && !suite.name.empty())
      throw ConfigError("run " + rn + " requires run " + *pr.require +
                        ", which is not part of suite " + suite.name);
  }
  for (const auto& [start, pr] : g.runs) {
    std::vector<std::string> path;
    std::string current = start;
    while (g.runs.count(current)) {
      const auto& node = g.runs.at(current);
      if (!node.require) break;
      if (std::find(path.begin(), path.end(), current) != path.end()) break;
      path.push_back(current);
      current = *node.require;
      if (current == start) throw CycleError(path);
    }
  }
  return g;
}

Engine::Engine(const Store& store, const Registry& registry, Logger& log,
               std::filesystem::path out_root, EngineOptions options)
    : store_(store),
      registry_(registry),
      log_(log),
      out_root_(std::move(out_root)),
      options_(std::move(options)),
      invocation_id_(next_invocation_id()) {}

HookContext Engine::make_context(Exec& x, const PlannedRun* run,
                                 const ResolvedDefinition* build,
                                 std::string scope) const {
  HookContext ctx;
  ctx.suite = x.graph.suite_body;
  if (run) ctx.run = run->def.body;
  if (build) ctx.build = build->body;
  ctx.scratch = x.suite_scratch.is_null() ? Value::map() : x.suite_scratch;
  ctx.paths.app_root = store_.app_root();
  ctx.paths.out_root = out_root_;
  ctx.paths.log_path = log_.path();
  ctx.paths.builds_root = out_root_ / "builds";
  ctx.paths.runs_root = out_root_ / "runs";
  if (options_.use_baseline)
    ctx.paths.baseline_dir = options_.use_baseline;
  else if (options_.gen_baseline)
    ctx.paths.baseline_dir = options_.gen_baseline;
  if (run) ctx.paths.build_dir = ctx.paths.builds_root / run->build;
  ctx.scope = std::move(scope);
  ctx.log = &log_;
  ctx.cancel = &x.cancel;
  ctx.timeout = options_.hook_timeout;
  return ctx;
}

Comparator Engine::hook_comparator(const Registry& registry,
                                   HookContext& ctx) const {
  return [&registry, &ctx](const std::filesystem::path& a,
                           const std::filesystem::path& b) {
    Value payload = Value::map();
    payload.set("left", a.string());
    payload.set("right", b.string());
    HookResult r = registry.dispatch(Hook::Comp, ctx, payload);
    return r.ok;
  };
}

void Engine::perform_build(Exec& x, const std::string& build_name,
                           const std::string& owner_run) {
  std::filesystem::path product = out_root_ / "builds" / build_name;
  {
    std::lock_guard lock(x.mu);
    auto& bo = x.builds.at(build_name);
    bo.status = BuildStatus::InProgress;
    bo.owner_run = owner_run;
  }
  if (x.graph.options.retain_builds && std::filesystem::is_directory(product)) {
    log_.info(build_name, "build " + build_name + ": reusing retained product");
    std::lock_guard lock(x.mu);
    auto& bo = x.builds.at(build_name);
    bo.status = BuildStatus::Done;
    bo.product_dir = product;
    return;
  }
  const PlannedRun* owner =
      owner_run.empty() ? nullptr : &x.graph.runs.at(owner_run);
  const ResolvedDefinition& bdef = x.graph.builds.at(build_name);
  HookContext ctx = make_context(x, owner, &bdef, build_name);
  ctx.paths.build_dir = product;
  ctx.paths.run_dir.reset();
  try {
    log_.info(build_name, "build " + build_name + " started");
    Value payload;
    for (Hook h : {Hook::BuildPrep, Hook::Build, Hook::BuildPost}) {
      x.check_cancel();
      payload = registry_.dispatch(h, ctx, payload).payload;
    }
    {
      std::lock_guard lock(x.mu);
      auto& bo = x.builds.at(build_name);
      bo.status = BuildStatus::Done;
      bo.product_dir = product;
    }
    log_.info(build_name, "build " + build_name + " finished");
  } catch (const std::exception& e) {
    {
      std::lock_guard lock(x.mu);
      auto& bo = x.builds.at(build_name);
      bo.status = BuildStatus::Failed;
      bo.failure_reason = e.what();
    }
    log_.error(build_name, "build " + build_name + " failed: " + e.what());
    throw;
  }
}

void Engine::run_worker(Exec& x, const std::string& run_name) {
  const PlannedRun& pr = x.graph.runs.at(run_name);
  const ResolvedDefinition& bdef = x.graph.builds.at(pr.build);

  HookContext ctx = make_context(x, &pr, &bdef, run_name);
  ctx.paths.run_dir = out_root_ / "runs" / (run_name + "." + invocation_id_);
  Value job_handle;
  bool handle_live = false;

  auto dispatch_queue_del = [&] {
    try {
      HookContext qctx = ctx;
      qctx.cancel = nullptr;  // must run even while cancellation is in force
      registry_.dispatch(Hook::QueueDelCmd, qctx, job_handle);
      log_.info(run_name, "run " + run_name + ": batch job removed");
    } catch (const std::exception& e) {
      log_.warn(run_name,
                "run " + run_name + ": queue_del_cmd failed: " + e.what());
    }
  };

  try {
    if (pr.require && !x.single_run) {
      x.set_status(run_name, RunStatus::Blocked);
      RunOutcome req = x.wait_terminal_or_cancel(*pr.require);
      if (req.status != RunStatus::Passed) {
        std::string why = "required run " + *pr.require + " did not pass";
        if (x.graph.options.continue_on_error) {
          x.set_status(run_name, RunStatus::Skipped, why);
          log_.warn(run_name, "run " + run_name + " skipped: " + why);
        } else {
          x.set_status(run_name, RunStatus::Failed, why);
          log_.error(run_name, "run " + run_name + " failed: " + why);
          x.trigger_cancel();
        }
        return;
      }
    }
    x.check_cancel();
    CapGuard cap(x.cap.get());
    x.check_cancel();

    x.set_status(run_name, RunStatus::Building);
    auto build_outcome = x.build_gates.at(pr.build).arrive(run_name, [&] {
      perform_build(x, pr.build, run_name);
    });
    if (!build_outcome.success) {
      x.check_cancel();
      throw Error("build " + pr.build + " failed: " + build_outcome.error);
    }

    x.check_cancel();
    auto data_outcome = x.data_gate.arrive(run_name, [&] {
      HookContext dctx = make_context(x, &pr, &bdef, run_name);
      dctx.paths.run_dir = ctx.paths.run_dir;
      log_.info(run_name, "provisioning input data");
      registry_.dispatch(Hook::Data, dctx);
    });
    if (!data_outcome.success) {
      x.check_cancel();
      throw Error("data provisioning failed: " + data_outcome.error);
    }

    x.set_status(run_name, RunStatus::Running);
    log_.info(run_name, "run " + run_name + " started");
    Value payload;
    auto step = [&](Hook h) {
      x.check_cancel();
      HookResult r = registry_.dispatch(h, ctx, payload);
      payload = r.payload;
      return r;
    };
    step(Hook::RunPrep);
    step(Hook::Run);
    job_handle = payload;
    handle_live = !job_handle.is_null();
    step(Hook::RunPost);
    handle_live = false;

    x.set_status(run_name, RunStatus::Checking);
    HookResult check = step(Hook::RunCheck);
    if (!check.ok) throw Error("run_check reported failure");

    HookResult of = step(Hook::Outfiles);
    OutfileList files = parse_outfiles(of.payload);
    {
      std::lock_guard lock(x.mu);
      x.runs.at(run_name).outfiles = files;
    }

    if (options_.use_baseline && pr.baseline) {
      log_.info(run_name, "comparing run " + run_name + " against baseline " +
                              *pr.baseline);
      Comparator comparator = hook_comparator(registry_, ctx);
      ComparisonReport report = compare_to_baseline(
          run_name, files, *pr.baseline, *options_.use_baseline, comparator);
      {
        std::lock_guard lock(x.mu);
        x.runs.at(run_name).baseline_report = report;
      }
      if (!report.equivalent)
        log_.error(run_name, "baseline comparison failed: " + describe(report));
      else
        log_.debug(run_name, "baseline comparison: " + describe(report));
    }

    if (options_.gen_baseline && pr.baseline) {
      auto outcome = x.baseline_gates.at(*pr.baseline).arrive(run_name, [&] {
        generate_baseline(files, *options_.gen_baseline / *pr.baseline,
                          options_.force_baseline);
        log_.info(run_name, "baseline " + *pr.baseline +
                                " created (contributed by run " + run_name +
                                ")");
        std::lock_guard lock(x.mu);
        x.baselines_written.push_back(*pr.baseline);
      });
      if (!outcome.success)
        throw Error("baseline generation failed: " + outcome.error);
    }

    x.set_status(run_name, RunStatus::Passed);
    log_.info(run_name, "run " + run_name + " finished: passed");
  } catch (const Cancelled&) {
    if (handle_live) dispatch_queue_del();
    x.set_status(run_name, RunStatus::Skipped, "cancelled");
    log_.warn(run_name, "run " + run_name + " skipped: cancelled");
  } catch (const std::exception& e) {
    if (x.cancel.load()) {
      // A hook interrupted by cancellation is a skip, not a genuine failure.
      if (handle_live) dispatch_queue_del();
      x.set_status(run_name, RunStatus::Skipped, "cancelled");
      log_.warn(run_name, "run " + run_name + " skipped: cancelled");
      return;
    }
    x.set_status(run_name, RunStatus::Failed, e.what());
    log_.error(run_name, "run " + run_name + " failed: " + e.what());
    if (!x.graph.options.continue_on_error) {
      x.trigger_cancel();
      if (handle_live) dispatch_queue_del();
    }
  }
}

void Engine::group_worker(Exec& x, const std::string& group_name,
                          const std::vector<std::string>& members) {
  // First group to claim a shared run executes it; the rest wait on its
  // terminal state.
  std::vector<std::thread> mine;
  for (const auto& rn : members)
    if (!x.run_claims.at(rn).test_and_set())
      mine.emplace_back([this, &x, rn] { run_worker(x, rn); });
  for (auto& t : mine) t.join();

  GroupOutcome outcome;
  std::vector<std::pair<std::string, OutfileList>> run_files;
  bool all_passed = true;
  for (const auto& rn : members) {
    RunOutcome ro = x.wait_terminal(rn);
    if (ro.status != RunStatus::Passed) {
      all_passed = false;
      if (outcome.failure_reason.empty())
        outcome.failure_reason = "run " + rn + " " +
                                 std::string(run_status_name(ro.status));
    } else {
      run_files.emplace_back(rn, ro.outfiles);
    }
  }
  if (all_passed) {
    if (members.size() > 1) {
      log_.info(group_name, "comparing output of " +
                                std::to_string(members.size()) +
                                " runs in group " + group_name);
      HookContext ctx = make_context(x, nullptr, nullptr, group_name);
      Comparator comparator = hook_comparator(registry_, ctx);
      outcome.reports = compare_runs(run_files, comparator);
      outcome.passed = std::all_of(
          outcome.reports.begin(), outcome.reports.end(),
          [](const ComparisonReport& r) { return r.equivalent; });
      for (const auto& report : outcome.reports)
        log_.debug(group_name, describe(report));
      if (!outcome.passed) {
        outcome.failure_reason = "output inequivalent within group";
        log_.error(group_name, "group " + group_name + ": output inequivalent");
      }
    } else {
      outcome.passed = true;  // smoke test: completion alone suffices
    }
  }
  if (outcome.passed)
    log_.info(group_name, "group " + group_name + " passed");
  std::lock_guard lock(x.mu);
  for (auto& [name, slot] : x.groups)
    if (name == group_name) slot = std::move(outcome);
}

SuiteVerdict Engine::execute(ExecutionGraph graph, bool single_run) {
  Exec x;
  x.graph = std::move(graph);
  x.single_run = single_run;

  std::filesystem::path builds_root = out_root_ / "builds";
  std::filesystem::path runs_root = out_root_ / "runs";
  std::filesystem::create_directories(builds_root);
  std::filesystem::create_directories(runs_root);

  // Refuse up front to clobber golden data.
  if (options_.gen_baseline && !options_.force_baseline) {
    for (const auto& [rn, pr] : x.graph.runs) {
      if (pr.baseline &&
          std::filesystem::exists(*options_.gen_baseline / *pr.baseline))
        throw ConfigError(
            "baseline directory already exists (use --force-baseline to "
            "overwrite): " +
            (*options_.gen_baseline / *pr.baseline).string());
    }
  }

  // Stale executables from earlier invocations cause false positives.
  if (!x.graph.options.retain_builds) {
    bool removed = false;
    for (const auto& entry :
         std::filesystem::directory_iterator(builds_root)) {
      std::filesystem::remove_all(entry.path());
      removed = true;
    }
    if (removed)
      log_.info(x.graph.suite, "removed build products from previous invocations");
  }

  for (const auto& [rn, pr] : x.graph.runs) {
    x.runs.emplace(rn, RunOutcome{});
    x.run_claims[rn].clear();
    if (pr.baseline) x.baseline_gates[*pr.baseline];
  }
  for (const auto& [bn, def] : x.graph.builds) {
    x.builds.emplace(bn, BuildOutcome{});
    x.build_gates[bn];
  }
  for (const auto& [gn, members] : x.graph.groups)
    x.groups.emplace_back(gn, GroupOutcome{});
  if (options_.worker_cap && *options_.worker_cap > 0)
    x.cap = std::make_unique<std::counting_semaphore<>>(*options_.worker_cap);

  if (!single_run) {
    log_.info(x.graph.suite, "suite " + x.graph.suite + " started");
    try {
      HookContext ctx = make_context(x, nullptr, nullptr, x.graph.suite);
      registry_.dispatch(Hook::SuitePrep, ctx);
      x.suite_scratch = ctx.scratch;
    } catch (const std::exception& e) {
      x.suite_prep_ok = false;
      x.suite_prep_error = e.what();
      log_.error(x.graph.suite,
                 std::string("suite_prep failed: ") + e.what());
    }
  }

  if (x.suite_prep_ok) {
    if (x.graph.options.build_only) {
      std::vector<std::thread> workers;
      for (const auto& [bn, def] : x.graph.builds)
        workers.emplace_back([this, &x, bn = bn] {
          x.build_gates.at(bn).arrive("", [&] { perform_build(x, bn, ""); });
        });
      for (auto& t : workers) t.join();
      for (auto& [rn, out] : x.runs)
        out = RunOutcome{RunStatus::Skipped, "build_only suite", {}, {}};
    } else if (single_run) {
      std::vector<std::thread> workers;
      for (const auto& [rn, pr] : x.graph.runs)
        if (!x.run_claims.at(rn).test_and_set())
          workers.emplace_back([this, &x, rn = rn] { run_worker(x, rn); });
      for (auto& t : workers) t.join();
    } else {
      std::vector<std::thread> workers;
      for (const auto& [gn, members] : x.graph.groups)
        workers.emplace_back([this, &x, gn = gn, members = members] {
          group_worker(x, gn, members);
        });
      for (auto& t : workers) t.join();
    }
  } else {
    for (auto& [rn, out] : x.runs)
      out = RunOutcome{RunStatus::Skipped, "suite_prep failed", {}, {}};
  }

  bool suite_post_ok = true;
  if (!single_run) {
    try {
      HookContext ctx = make_context(x, nullptr, nullptr, x.graph.suite);
      // suite_post sees the final state of every build and run.
      Value state = Value::map();
      Value runs = Value::map();
      for (const auto& [rn, out] : x.runs) {
        Value entry = Value::map();
        entry.set("status", std::string(run_status_name(out.status)));
        if (!out.failure_reason.empty())
          entry.set("reason", out.failure_reason);
        runs.set(rn, std::move(entry));
      }
      Value builds = Value::map();
      for (const auto& [bn, out] : x.builds) {
        Value entry = Value::map();
        entry.set("status", out.status == BuildStatus::Done     ? "done"
                            : out.status == BuildStatus::Failed ? "failed"
                                                                : "pending");
        if (!out.product_dir.empty())
          entry.set("product_dir", out.product_dir.string());
        builds.set(bn, std::move(entry));
      }
      state.set("runs", std::move(runs));
      state.set("builds", std::move(builds));
      ctx.scratch.set("suite_state", std::move(state));
      registry_.dispatch(Hook::SuitePost, ctx);
    } catch (const std::exception& e) {
      suite_post_ok = false;
      log_.error(x.graph.suite,
                 std::string("suite_post failed: ") + e.what());
    }
  }

  SuiteVerdict verdict;
  verdict.name = x.graph.suite;
  verdict.runs = std::move(x.runs);
  verdict.builds = std::move(x.builds);
  verdict.groups = std::move(x.groups);
  verdict.baselines_written = std::move(x.baselines_written);

  if (!x.suite_prep_ok || !suite_post_ok) {
    verdict.passed = false;
  } else if (x.graph.options.build_only) {
    verdict.passed = std::all_of(
        verdict.builds.begin(), verdict.builds.end(),
        [](const auto& b) { return b.second.status == BuildStatus::Done; });
  } else {
    bool runs_ok = std::all_of(
        verdict.runs.begin(), verdict.runs.end(),
        [](const auto& r) { return r.second.status == RunStatus::Passed; });
    bool baselines_ok = std::all_of(
        verdict.runs.begin(), verdict.runs.end(), [](const auto& r) {
          return !r.second.baseline_report ||
                 r.second.baseline_report->equivalent;
        });
    bool groups_ok =
        single_run ||
        std::all_of(verdict.groups.begin(), verdict.groups.end(),
                    [](const auto& g) { return g.second.passed; });
    verdict.passed = runs_ok && baselines_ok && groups_ok;
  }
  return verdict;
}

SuiteVerdict Engine::run_suite(const std::string& name) {
  ResolvedDefinition def = store_.resolve(Kind::Suite, name);
  SuiteModel model = build_suite_model(def, store_);
  return execute(plan(model, store_), /*single_run=*/false);
}

SuiteVerdict Engine::run_single(const std::string& run_name) {
  SuiteModel model;
  model.groups.emplace_back("", std::vector<std::string>{run_name});
  ExecutionGraph graph = plan(model, store_);
  if (graph.runs.at(run_name).require)
    log_.warn(run_name,
              "single-run mode ignores the 'require' key of " + run_name);
  graph.groups.clear();  // no group comparisons in single-run mode
  return execute(std::move(graph), /*single_run=*/true);
}

}  // namespace ddts
