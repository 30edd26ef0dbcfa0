#pragma once

// Shared helpers for the test programs: scratch directories, small file IO,
// and spawning the command-line tool with captured output.

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace testutil {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    std::string tmpl =
        (fs::temp_directory_path() / "ddts-test-XXXXXX").string();
    if (!::mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  operator const fs::path&() const { return path_; }
  fs::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  fs::path path_;
};

inline void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ProcessResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs `command` (a shell line) with stdout/stderr captured separately.
inline ProcessResult run_process(const std::string& command,
                                 const fs::path& workdir = {}) {
  static std::atomic<int> seq{0};
  fs::path base = fs::temp_directory_path() /
                  ("ddts-proc-" + std::to_string(::getpid()) + "-" +
                   std::to_string(seq.fetch_add(1)));
  fs::path out_file = base.string() + ".out";
  fs::path err_file = base.string() + ".err";
  std::string full;
  if (!workdir.empty()) full += "cd '" + workdir.string() + "' && ";
  full += command + " >'" + out_file.string() + "' 2>'" + err_file.string() +
          "'";
  int status = std::system(full.c_str());
  ProcessResult r;
  if (status >= 0 && WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  r.out = fs::exists(out_file) ? read_file(out_file) : "";
  r.err = fs::exists(err_file) ? read_file(err_file) : "";
  std::error_code ec;
  fs::remove(out_file, ec);
  fs::remove(err_file, ec);
  return r;
}

// Makes a script executable.
inline void write_script(const fs::path& path, const std::string& body) {
  write_file(path, body);
  fs::permissions(path, fs::perms::owner_all | fs::perms::group_read |
                            fs::perms::others_read);
}

}  // namespace testutil
