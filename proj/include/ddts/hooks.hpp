#pragma once

#include <array>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "ddts/value.hpp"

namespace ddts {

class Logger;

// The thirteen lifecycle routines interfacing the framework to the
// program-under-test and platform.
enum class Hook {
  SuitePrep,
  BuildPrep,
  Build,
  BuildPost,
  Data,
  RunPrep,
  Run,
  RunPost,
  RunCheck,
  Outfiles,
  Comp,
  SuitePost,
  QueueDelCmd,
};

inline constexpr std::array<Hook, 13> kAllHooks = {
    Hook::SuitePrep, Hook::BuildPrep, Hook::Build,     Hook::BuildPost,
    Hook::Data,      Hook::RunPrep,   Hook::Run,       Hook::RunPost,
    Hook::RunCheck,  Hook::Outfiles,  Hook::Comp,      Hook::SuitePost,
    Hook::QueueDelCmd};

std::string_view hook_name(Hook h);  // canonical "lib_*" identifier
bool is_canonical_hook_name(std::string_view name);

struct HookPaths {
  std::filesystem::path app_root;
  std::filesystem::path out_root;
  std::filesystem::path log_path;
  std::filesystem::path builds_root;
  std::filesystem::path runs_root;
  std::optional<std::filesystem::path> baseline_dir;
  std::optional<std::filesystem::path> build_dir;  // product dir, build/run scope
  std::optional<std::filesystem::path> run_dir;    // run workspace, run scope
};

// The "env" handed to every hook: the composed definitions in scope, a
// run-local scratch map hooks may patch, and the invocation's paths.
struct HookContext {
  Value suite;    // composed suite body, or null
  Value run;      // composed run body, or null
  Value build;    // composed build body, or null
  Value scratch;  // map; patches from hook results land here
  HookPaths paths;
  std::string scope;  // log attribution, e.g. "run1"
  Logger* log = nullptr;
  const std::atomic<bool>* cancel = nullptr;
  std::optional<std::chrono::milliseconds> timeout;
};

struct HookResult {
  // Forwarded verbatim as the next hook's payload in the same phase chain.
  Value payload;
  // Merged into the caller's scratch.
  Value context_patch;
  // Meaningful for run_check and comp.
  bool ok = true;
};

using HookImpl = std::function<HookResult(HookContext&, const Value& payload)>;

// Immutable after startup; dispatch is reentrant and safe across workers.
// Lookup order per identifier: explicit registration, then an executable
// app_root/hooks/<identifier>, then the packaged stub defaults.
class Registry {
 public:
  Registry();  // installs the "correct but useless" stub defaults

  void add(std::string name, HookImpl impl);  // DuplicateHookError on repeat
  bool registered(std::string_view name) const;

  // If the innermost in-scope definition (run, else build, else suite)
  // carries a key equal to the canonical hook name, its value names the
  // routine to call instead.
  std::string resolve_alias(Hook h, const HookContext& ctx) const;

  // Resolves the alias, runs the implementation, merges the context patch
  // into ctx.scratch, and logs start/end plus any emitted text. Throws
  // HookFailure or UnknownHookError.
  HookResult dispatch(Hook h, HookContext& ctx,
                      const Value& payload = Value()) const;

 private:
  const HookImpl* lookup(const std::string& name,
                         const HookContext& ctx) const;

  std::map<std::string, HookImpl, std::less<>> impls_;
  std::map<std::string, HookImpl, std::less<>> stubs_;
};

// Out-of-process hook contract: {context, payload} serialized on stdin, a
// {payload, context_patch, ok} document expected on stdout, stderr captured
// into the invocation log. Nonzero exit, a malformed response, timeout, or
// cancellation is a HookFailure.
HookResult external_adapter(const std::filesystem::path& exe,
                            HookContext& ctx, const Value& payload);

}  // namespace ddts
