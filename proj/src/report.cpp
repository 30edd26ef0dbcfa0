#include "ddts/report.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>

#include "ddts/engine.hpp"
#include "ddts/errors.hpp"

namespace ddts {

std::string_view level_name(Level l) {
  switch (l) {
    case Level::Debug: return "DEBUG";
    case Level::Info: return "INFO";
    case Level::Warn: return "WARN";
    case Level::Error: return "ERROR";
  }
  return "?";
}

namespace {

std::string utc_stamp(const char* fmt) {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[64];
  std::strftime(buf, sizeof buf, fmt, &tm);
  return buf;
}

}  // namespace

Logger::Logger(const std::filesystem::path& out_root, const std::string& name) {
  std::filesystem::path dir = out_root / "logs";
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InternalError("cannot create log directory " + dir.string());
  std::string stamp = utc_stamp("%Y%m%dT%H%M%SZ");
  for (int n = 0;; ++n) {
    std::filesystem::path candidate =
        dir / (name + "." + stamp + "." + std::to_string(n) + ".log");
    int fd = ::open(candidate.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd >= 0) {
      ::close(fd);
      path_ = candidate;
      break;
    }
    if (errno != EEXIST)
      throw InternalError("cannot create log file " + candidate.string());
  }
  out_.open(path_, std::ios::app);
  if (!out_) throw InternalError("cannot open log file " + path_.string());
}

void Logger::emit(Level level, std::string_view scope, std::string_view text,
                  bool to_screen) {
  std::string stamp = utc_stamp("%Y-%m-%dT%H:%M:%SZ");
  std::lock_guard lock(mu_);
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    std::string_view line = text.substr(
        start, end == std::string_view::npos ? std::string_view::npos
                                             : end - start);
    out_ << stamp << ' ' << level_name(level) << " [" << scope << "] " << line
         << '\n';
    if (to_screen) {
      std::ostream& s = (level == Level::Error) ? std::cerr : std::cout;
      s << line << '\n';
      s.flush();
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  out_.flush();
  if (!out_) throw InternalError("log write failed: " + path_.string());
}

void finalize(Logger& log, const SuiteVerdict& verdict) {
  if (verdict.passed) {
    log.info("suite", "ALL TESTS PASSED");
    return;
  }
  for (const auto& [name, build] : verdict.builds) {
    if (build.status == BuildStatus::Failed)
      log.error("suite", "FAILED build " + name + ": " + build.failure_reason);
  }
  for (const auto& [name, run] : verdict.runs) {
    if (run.status == RunStatus::Failed)
      log.error("suite", "FAILED run " + name + ": " + run.failure_reason);
    else if (run.status == RunStatus::Skipped)
      log.error("suite", "SKIPPED run " + name + ": " + run.failure_reason);
    if (run.baseline_report && !run.baseline_report->equivalent)
      log.error("suite", "FAILED baseline comparison for run " + name + ": " +
                             describe(*run.baseline_report));
  }
  for (const auto& [name, group] : verdict.groups) {
    if (!group.passed) {
      log.error("suite",
                "FAILED group " + name + ": " + group.failure_reason);
      for (const auto& report : group.reports)
        if (!report.equivalent)
          log.error("suite", "  " + describe(report));
    }
  }
  log.error("suite", "TEST SUITE FAILED (log: " +
                         std::filesystem::absolute(log.path()).string() + ")");
}

}  // namespace ddts
