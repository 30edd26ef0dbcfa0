#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <regex>
#include <thread>

#include "ddts/engine.hpp"
#include "ddts/report.hpp"
#include "util.hpp"

using ddts::Logger;
using testutil::TempDir;
using testutil::read_file;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

}  // namespace

TEST_CASE("log line format") {
  TempDir tmp;
  Logger log(tmp, "fmt");
  log.info("scope1", "hello world");
  log.debug("scope2", "quiet note");
  std::regex pattern(
      R"(^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}Z (DEBUG|INFO|WARN|ERROR) \[[^\]]*\] .*$)");
  for (const auto& line : lines_of(read_file(log.path())))
    CHECK(std::regex_match(line, pattern));
  CHECK(read_file(log.path()).find("INFO [scope1] hello world") !=
        std::string::npos);
  CHECK(read_file(log.path()).find("DEBUG [scope2] quiet note") !=
        std::string::npos);
}

TEST_CASE("multi-line text is split into intact lines") {
  TempDir tmp;
  Logger log(tmp, "split");
  log.info("s", "one\ntwo\nthree");
  auto lines = lines_of(read_file(log.path()));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].find("one") != std::string::npos);
  CHECK(lines[2].find("three") != std::string::npos);
}

TEST_CASE("log files are unique within one second") {
  TempDir tmp;
  Logger a(tmp, "same");
  Logger b(tmp, "same");
  Logger c(tmp, "same");
  CHECK(a.path() != b.path());
  CHECK(b.path() != c.path());
  CHECK(std::filesystem::exists(a.path()));
  CHECK(std::filesystem::exists(c.path()));
  // Names follow <name>.<timestamp>.<counter>.log.
  std::regex name_pattern(R"(^same\.\d{8}T\d{6}Z\.\d+\.log$)");
  CHECK(std::regex_match(a.path().filename().string(), name_pattern));
}

TEST_CASE("concurrent emission keeps lines intact") {
  TempDir tmp;
  Logger log(tmp, "conc");
  constexpr int kThreads = 8;
  constexpr int kPerThread = 250;
  std::vector<std::thread> workers;
  for (int t = 0; t < kThreads; ++t)
    workers.emplace_back([&, t] {
      for (int i = 0; i < kPerThread; ++i)
        log.debug("w" + std::to_string(t),
                  "marker-" + std::to_string(t) + "-" + std::to_string(i));
    });
  for (auto& w : workers) w.join();
  auto lines = lines_of(read_file(log.path()));
  CHECK(lines.size() == kThreads * kPerThread);
  std::regex pattern(R"(^.* DEBUG \[w\d\] marker-\d-\d+$)");
  for (const auto& line : lines) CHECK(std::regex_match(line, pattern));
}

TEST_CASE("finalize: pass emits the definitive line") {
  TempDir tmp;
  Logger log(tmp, "final");
  ddts::SuiteVerdict verdict;
  verdict.passed = true;
  ddts::finalize(log, verdict);
  std::string text = read_file(log.path());
  CHECK(text.find("ALL TESTS PASSED") != std::string::npos);
  CHECK(text.find("FAILED") == std::string::npos);
}

TEST_CASE("finalize: failure lists every failed node and the log path") {
  TempDir tmp;
  Logger log(tmp, "final");
  ddts::SuiteVerdict verdict;
  verdict.passed = false;
  verdict.runs["r_bad"] = {ddts::RunStatus::Failed, "check said no", {}, {}};
  verdict.runs["r_skip"] = {ddts::RunStatus::Skipped, "cancelled", {}, {}};
  verdict.runs["r_ok"] = {ddts::RunStatus::Passed, "", {}, {}};
  ddts::BuildOutcome bo;
  bo.status = ddts::BuildStatus::Failed;
  bo.failure_reason = "compiler sad";
  verdict.builds["b1"] = bo;
  ddts::GroupOutcome go;
  go.passed = false;
  go.failure_reason = "output inequivalent within group";
  verdict.groups.emplace_back("g1", go);
  ddts::finalize(log, verdict);
  std::string text = read_file(log.path());
  CHECK(text.find("FAILED run r_bad: check said no") != std::string::npos);
  CHECK(text.find("SKIPPED run r_skip: cancelled") != std::string::npos);
  CHECK(text.find("r_ok") == std::string::npos);
  CHECK(text.find("FAILED build b1: compiler sad") != std::string::npos);
  CHECK(text.find("FAILED group g1") != std::string::npos);
  CHECK(text.find("TEST SUITE FAILED") != std::string::npos);
  CHECK(text.find(std::filesystem::absolute(log.path()).string()) !=
        std::string::npos);
  CHECK(text.find("ALL TESTS PASSED") == std::string::npos);
}
