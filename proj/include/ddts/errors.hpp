#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ddts {

// Exit codes: 0 = all tests passed, 1 = test failure(s),
// 2 = configuration/definition error, 3 = framework-internal fault.

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Problems with definitions, arguments or on-disk layout. Exit 2.
struct ConfigError : Error {
  using Error::Error;
};

struct ParseError : ConfigError {
  ParseError(const std::string& origin, int line_no, const std::string& what)
      : ConfigError(origin + ":" + std::to_string(line_no) + ": " + what),
        line(line_no) {}
  int line;
};

struct NotFoundError : ConfigError {
  NotFoundError(const std::string& kind, const std::string& name)
      : ConfigError("no such " + kind + ": " + name) {}
};

struct CycleError : ConfigError {
  explicit CycleError(std::vector<std::string> names_in_cycle)
      : ConfigError(join(names_in_cycle)), names(std::move(names_in_cycle)) {}
  std::vector<std::string> names;

 private:
  static std::string join(const std::vector<std::string>& ns) {
    std::string s = "cycle detected:";
    for (const auto& n : ns) s += " " + n;
    return s;
  }
};

struct BadSuiteError : ConfigError {
  using ConfigError::ConfigError;
};

struct UsageError : ConfigError {
  using ConfigError::ConfigError;
};

struct DuplicateHookError : ConfigError {
  explicit DuplicateHookError(const std::string& name)
      : ConfigError("hook already registered: " + name) {}
};

// Dispatch-time hook problems. Captured into run/build verdicts, never fatal
// to the invocation itself.
struct UnknownHookError : Error {
  explicit UnknownHookError(const std::string& name)
      : Error("no implementation for hook: " + name) {}
};

struct HookFailure : Error {
  HookFailure(const std::string& hook, const std::string& detail)
      : Error("hook " + hook + " failed: " + detail) {}
};

// Faults in the framework itself (e.g. an unwritable log). Exit 3.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace ddts
