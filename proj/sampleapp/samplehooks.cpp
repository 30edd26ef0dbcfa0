// Multi-call hook executable for the sample application. Installed into the
// application's hooks/ directory under one name per hook; dispatches on
// argv[0]. Speaks the framework's hook protocol: a {context, payload}
// document on stdin, a {payload, context_patch, ok} document on stdout,
// diagnostics on stderr.

#include <fcntl.h>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "ddts/value.hpp"

using ddts::Value;

namespace {

struct HookInput {
  Value context;
  Value payload;
};

HookInput read_input() {
  std::ostringstream ss;
  ss << std::cin.rdbuf();
  Value doc = ddts::parse_document(ss.str(), "<stdin>");
  HookInput input;
  if (const Value* c = doc.find("context")) input.context = *c;
  if (const Value* p = doc.find("payload")) input.payload = *p;
  return input;
}

void respond(Value payload, bool ok = true) {
  Value doc = Value::map();
  if (!payload.is_null()) doc.set("payload", std::move(payload));
  if (!ok) doc.set("ok", false);
  std::cout << ddts::emit_document(doc);
}

[[noreturn]] void die(const std::string& msg) {
  std::cerr << msg << "\n";
  std::exit(1);
}

std::string path_of(const Value& context, const char* key) {
  const Value* paths = context.find("paths");
  if (!paths) die("no paths in context");
  auto p = paths->get_string(key);
  if (!p) die(std::string("no ") + key + " in context paths");
  return *p;
}

const Value& run_def(const Value& context) {
  const Value* run = context.find("run");
  if (!run) die("no run definition in context");
  return *run;
}

int exec_and_wait(const std::string& exe, const std::string& arg,
                  const std::string& workdir) {
  pid_t pid = ::fork();
  if (pid < 0) die("fork failed");
  if (pid == 0) {
    if (::chdir(workdir.c_str()) != 0) _exit(126);
    ::execl(exe.c_str(), exe.c_str(), arg.c_str(), (char*)nullptr);
    std::cerr << "cannot execute " << exe << ": " << std::strerror(errno)
              << "\n";
    _exit(127);
  }
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (!WIFEXITED(status)) return 128;
  return WEXITSTATUS(status);
}

// ------------------------------------------------------------- simbatch
// Directory-based batch queue: one file per job, the file's content is the
// job state (queued, running, done, failed, cancelled). A detached worker
// process drives the job; cancellation wins over completion.

void write_state(const std::string& jobfile, const std::string& state) {
  std::string tmp = jobfile + ".tmp";
  {
    std::ofstream out(tmp);
    out << state << "\n";
  }
  ::rename(tmp.c_str(), jobfile.c_str());
}

std::string read_state(const std::string& jobfile) {
  std::ifstream in(jobfile);
  std::string state;
  std::getline(in, state);
  return state;
}

std::string submit_job(const std::string& jobs_dir, const std::string& exe,
                       const std::string& arg, const std::string& workdir) {
  ::mkdir(jobs_dir.c_str(), 0755);
  std::string id = std::to_string(::getpid()) + "-" +
                   std::to_string(std::chrono::steady_clock::now()
                                      .time_since_epoch()
                                      .count());
  std::string jobfile = jobs_dir + "/" + id;
  write_state(jobfile, "queued");
  pid_t pid = ::fork();
  if (pid < 0) die("fork failed");
  if (pid == 0) {
    // Worker: detach from the hook's session so it outlives it, and drop the
    // inherited stdio pipes so the framework sees the hook's EOF promptly.
    ::setsid();
    int devnull = ::open("/dev/null", O_RDWR);
    if (devnull >= 0) {
      ::dup2(devnull, STDIN_FILENO);
      ::dup2(devnull, STDOUT_FILENO);
      ::dup2(devnull, STDERR_FILENO);
      if (devnull > STDERR_FILENO) ::close(devnull);
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(100));
    if (read_state(jobfile) == "cancelled") _exit(0);
    write_state(jobfile, "running");
    int rc = exec_and_wait(exe, arg, workdir);
    if (read_state(jobfile) == "cancelled") _exit(0);
    write_state(jobfile, rc == 0 ? "done" : "failed");
    _exit(0);
  }
  return jobfile;
}

// ---------------------------------------------------------------- hooks

int hook_build(const HookInput& in) {
  const Value* build = in.context.find("build");
  if (!build) die("no build definition in context");
  auto program = build->get_string("program");
  if (!program) die("build definition needs a 'program' key");
  std::string app_root = path_of(in.context, "app_root");
  std::string build_dir = path_of(in.context, "build_dir");
  std::string src = program->front() == '/' ? *program
                                            : app_root + "/" + *program;
  std::string dst = build_dir + "/toyprog";
  std::ifstream from(src, std::ios::binary);
  if (!from) die("cannot read program " + src);
  ::mkdir(build_dir.c_str(), 0755);
  {
    std::ofstream to(dst, std::ios::binary);
    to << from.rdbuf();
    if (!to) die("cannot write " + dst);
  }
  ::chmod(dst.c_str(), 0755);
  std::cerr << "installed " << src << " -> " << dst << "\n";
  respond(Value(build_dir));
  return 0;
}

int hook_run_prep(const HookInput& in) {
  std::string run_dir = path_of(in.context, "run_dir");
  std::error_code ec;
  std::filesystem::create_directories(run_dir, ec);
  if (ec) die("cannot create run directory " + run_dir);
  const Value* params = run_def(in.context).find("params");
  if (!params) die("run definition needs a 'params' map");
  std::ofstream out(run_dir + "/params");
  for (const char* key : {"seed", "steps", "perturb", "work_ms"}) {
    if (const Value* v = params->find(key))
      out << key << ": " << ddts::emit_document(*v);
  }
  if (!out) die("cannot write parameter file");
  respond(Value(run_dir));
  return 0;
}

int hook_run_direct(const HookInput& in) {
  std::string run_dir = path_of(in.context, "run_dir");
  std::string build_dir = path_of(in.context, "build_dir");
  int rc = exec_and_wait(build_dir + "/toyprog", run_dir + "/params", run_dir);
  if (rc != 0) die("toyprog exited with status " + std::to_string(rc));
  Value payload = Value::map();
  payload.set("mode", "direct");
  respond(std::move(payload));
  return 0;
}

int hook_run_batch(const HookInput& in) {
  std::string run_dir = path_of(in.context, "run_dir");
  std::string build_dir = path_of(in.context, "build_dir");
  std::string out_root = path_of(in.context, "out_root");
  std::string jobfile = submit_job(out_root + "/simbatch",
                                   build_dir + "/toyprog",
                                   run_dir + "/params", run_dir);
  std::cerr << "submitted batch job " << jobfile << "\n";
  Value payload = Value::map();
  payload.set("mode", "batch");
  payload.set("jobfile", jobfile);
  respond(std::move(payload));
  return 0;
}

int hook_run_post(const HookInput& in) {
  auto jobfile = in.payload.get_string("jobfile");
  if (!jobfile) {
    respond(in.payload);  // direct run: nothing to wait for
    return 0;
  }
  for (;;) {
    std::string state = read_state(*jobfile);
    if (state == "done") break;
    if (state == "failed" || state == "cancelled")
      die("batch job " + *jobfile + " " + state);
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  respond(in.payload);
  return 0;
}

int hook_run_check(const HookInput& in) {
  if (auto force = run_def(in.context).get_bool("force_fail");
      force && *force) {
    std::cerr << "force_fail set; reporting failure\n";
    respond(Value(), /*ok=*/false);
    return 0;
  }
  std::string run_dir = path_of(in.context, "run_dir");
  std::ifstream summary(run_dir + "/summary.txt");
  std::string line;
  bool complete = false;
  while (std::getline(summary, line))
    if (line == "status: complete") complete = true;
  respond(Value(), complete);
  return 0;
}

int hook_outfiles(const HookInput& in) {
  std::string run_dir = path_of(in.context, "run_dir");
  Value::List entries;
  for (const char* name : {"field.dat", "summary.txt"}) {
    Value entry = Value::map();
    entry.set("root", run_dir);
    entry.set("relpath", name);
    entries.push_back(std::move(entry));
  }
  respond(Value(std::move(entries)));
  return 0;
}

int hook_queue_del(const HookInput& in) {
  auto jobfile = in.payload.get_string("jobfile");
  if (!jobfile) {
    respond(Value());
    return 0;
  }
  write_state(*jobfile, "cancelled");
  std::cerr << "cancelled batch job " << *jobfile << "\n";
  respond(Value());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  (void)argc;
  std::string name = std::filesystem::path(argv[0]).filename().string();
  try {
    HookInput in = read_input();
    if (name == "lib_build") return hook_build(in);
    if (name == "lib_run_prep") return hook_run_prep(in);
    if (name == "run_direct") return hook_run_direct(in);
    if (name == "run_batch") return hook_run_batch(in);
    if (name == "lib_run_post") return hook_run_post(in);
    if (name == "lib_run_check") return hook_run_check(in);
    if (name == "lib_outfiles") return hook_outfiles(in);
    if (name == "lib_queue_del_cmd") return hook_queue_del(in);
    std::cerr << "samplehooks: unknown hook name " << name << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << name << ": " << e.what() << "\n";
    return 1;
  }
}
