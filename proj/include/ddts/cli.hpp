#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ddts/definitions.hpp"
#include "ddts/engine.hpp"

namespace ddts {

struct Invocation {
  enum class Command { RunSuite, RunSingle, Show, List, Help, Version };
  Command command = Command::RunSuite;
  std::string name;           // suite or run name
  Kind kind = Kind::Run;      // for show/list
  EngineOptions modes;
  std::filesystem::path app_root;  // DDTS_APP, default .
  std::filesystem::path out_root;  // DDTS_OUT, default ./ddts-out
};

// Grammar:
//   ddts <suite>
//   ddts run <run>
//   ddts show {build|run|suite} <name>
//   ddts list {builds|runs|suites}
// Flags: --use-baseline DIR, --gen-baseline DIR, --force-baseline,
//        --workers N, --hook-timeout SECS, --help, --version
// Throws UsageError (exit 2) on bad arguments.
Invocation parse_args(const std::vector<std::string>& args);

std::string usage_text();

// Full entry point: parses, executes, reports. Returns the process exit
// code (0 pass, 1 test failure, 2 configuration error, 3 internal fault).
int cli_main(int argc, char** argv);

}  // namespace ddts
