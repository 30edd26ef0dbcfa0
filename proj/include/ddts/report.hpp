#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <string_view>

namespace ddts {

enum class Level { Debug, Info, Warn, Error };

std::string_view level_name(Level l);

// One log file per invocation under <out_root>/logs, unique even for
// same-second invocations. Everything printed to the screen is also logged;
// concurrent emission is line-atomic.
class Logger {
 public:
  // name tags the invocation (suite or run name).
  Logger(const std::filesystem::path& out_root, const std::string& name);

  // Multi-line text is split so each log line stays intact. A failed log
  // write throws InternalError: an invocation without a record is aborted.
  void emit(Level level, std::string_view scope, std::string_view text,
            bool to_screen);

  void debug(std::string_view scope, std::string_view text) {
    emit(Level::Debug, scope, text, false);
  }
  void info(std::string_view scope, std::string_view text) {
    emit(Level::Info, scope, text, true);
  }
  void warn(std::string_view scope, std::string_view text) {
    emit(Level::Warn, scope, text, true);
  }
  void error(std::string_view scope, std::string_view text) {
    emit(Level::Error, scope, text, true);
  }

  const std::filesystem::path& path() const { return path_; }

 private:
  std::mutex mu_;
  std::ofstream out_;
  std::filesystem::path path_;
};

struct SuiteVerdict;

// Final definitive screen message: "ALL TESTS PASSED" on success, otherwise
// a summary of every failed/skipped node plus the log file path.
void finalize(Logger& log, const SuiteVerdict& verdict);

}  // namespace ddts
