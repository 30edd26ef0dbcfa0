#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>

#include "util.hpp"

// DDTS_BIN is provided by the build: the path of the command-line tool.

using testutil::ProcessResult;
using testutil::TempDir;
using testutil::run_process;
using testutil::write_file;

namespace {

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

ProcessResult ddts(const std::filesystem::path& app,
                   const std::filesystem::path& out, const std::string& args) {
  return run_process("DDTS_APP=" + q(app) + " DDTS_OUT=" + q(out) + " " +
                     std::string(DDTS_BIN) + " " + args);
}

// A minimal stub-only application: no hooks directory at all, so every hook
// falls back to the packaged defaults.
void stub_app(const TempDir& app) {
  write_file(app / "builds/b", "kind: stub\n");
  write_file(app / "runs/r1", "build: b\n");
  write_file(app / "runs/r2", "build: b\n");
  write_file(app / "suites/s", "g:\n  - r1\n  - r2\n");
}

}  // namespace

TEST_CASE("--help and --version") {
  ProcessResult r = run_process(std::string(DDTS_BIN) + " --help");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("usage:") != std::string::npos);
  CHECK(r.out.find("--gen-baseline") != std::string::npos);
  r = run_process(std::string(DDTS_BIN) + " --version");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("ddts") != std::string::npos);
}

TEST_CASE("usage errors exit 2 with guidance") {
  TempDir app, out;
  for (const char* bad :
       {"", "show", "show run", "show gizmo x", "list", "list gizmos",
        "run", "s extra", "--bogus-flag s", "--workers 0 s",
        "--workers -3 s", "--hook-timeout nope s", "--force-baseline s"}) {
    ProcessResult r = ddts(app, out, bad);
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("usage:") != std::string::npos);
  }
  // gen and use pointing at one directory is contradictory.
  ProcessResult r = ddts(app, out,
                         "--gen-baseline /tmp/x --use-baseline /tmp/x s");
  CHECK(r.exit_code == 2);
}

TEST_CASE("show and list") {
  TempDir app, out;
  stub_app(app);
  write_file(app / "runs/child", "extends: r1\nnote: leaf\n");

  ProcessResult r = ddts(app, out, "show run child");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "# child < r1\n\nbuild: b\nnote: leaf\n");

  r = ddts(app, out, "show build b");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "# b\n\nkind: stub\n");

  r = ddts(app, out, "list runs");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "child\nr1\nr2\n");

  r = ddts(app, out, "list suites");
  CHECK(r.out == "s\n");

  r = ddts(app, out, "show run ghost");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("no such run: ghost") != std::string::npos);
}

TEST_CASE("stub-only suite passes end to end") {
  TempDir app, out;
  stub_app(app);
  ProcessResult r = ddts(app, out, "s");
  CHECK(r.exit_code == 0);
  // The definitive final line.
  CHECK(r.out.find("ALL TESTS PASSED") != std::string::npos);
  // One log file exists and contains every screen line.
  std::filesystem::path logs = out / "logs";
  std::vector<std::filesystem::path> files(
      std::filesystem::directory_iterator(logs), {});
  REQUIRE(files.size() == 1);
  std::string log_text = testutil::read_file(files[0]);
  size_t start = 0;
  while (start < r.out.size()) {
    size_t end = r.out.find('\n', start);
    if (end == std::string::npos) end = r.out.size();
    std::string line = r.out.substr(start, end - start);
    if (!line.empty()) CHECK(log_text.find(line) != std::string::npos);
    start = end + 1;
  }
}

TEST_CASE("single run via the run subcommand") {
  TempDir app, out;
  stub_app(app);
  ProcessResult r = ddts(app, out, "run r1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("ALL TESTS PASSED") != std::string::npos);
  r = ddts(app, out, "run ghost");
  CHECK(r.exit_code == 2);
}

TEST_CASE("definition errors exit 2, not 1") {
  TempDir app, out;
  stub_app(app);
  write_file(app / "suites/empty", "# no groups at all\n");
  write_file(app / "suites/cyclic", "extends: cyclic\n");
  write_file(app / "runs/mangled", "\tbad: indent\n");
  CHECK(ddts(app, out, "nosuite").exit_code == 2);
  CHECK(ddts(app, out, "empty").exit_code == 2);
  CHECK(ddts(app, out, "cyclic").exit_code == 2);
  CHECK(ddts(app, out, "show run mangled").exit_code == 2);
}

TEST_CASE("failing hook exits 1 with a red summary") {
  TempDir app, out;
  stub_app(app);
  std::filesystem::create_directories(app / "hooks");
  testutil::write_script(app / "hooks/lib_run_check",
                         "#!/bin/sh\ncat > /dev/null\nprintf 'ok: false\\n'\n");
  ProcessResult r = ddts(app, out, "s");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("TEST SUITE FAILED") != std::string::npos);
  CHECK(r.out.find("ALL TESTS PASSED") == std::string::npos);
}

TEST_CASE("hook timeout flag is honored") {
  TempDir app, out;
  stub_app(app);
  std::filesystem::create_directories(app / "hooks");
  testutil::write_script(app / "hooks/lib_run",
                         "#!/bin/sh\ncat > /dev/null\nsleep 60\n");
  auto start = std::chrono::steady_clock::now();
  ProcessResult r = ddts(app, out, "--hook-timeout 1 s");
  CHECK(r.exit_code == 1);
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(30));
  CHECK(r.err.find("timed out") != std::string::npos);
}
