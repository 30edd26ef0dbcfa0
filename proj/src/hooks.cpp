#include "ddts/hooks.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>

#include "ddts/compare.hpp"
#include "ddts/errors.hpp"
#include "ddts/report.hpp"

namespace ddts {

std::string_view hook_name(Hook h) {
  switch (h) {
    case Hook::SuitePrep: return "lib_suite_prep";
    case Hook::BuildPrep: return "lib_build_prep";
    case Hook::Build: return "lib_build";
    case Hook::BuildPost: return "lib_build_post";
    case Hook::Data: return "lib_data";
    case Hook::RunPrep: return "lib_run_prep";
    case Hook::Run: return "lib_run";
    case Hook::RunPost: return "lib_run_post";
    case Hook::RunCheck: return "lib_run_check";
    case Hook::Outfiles: return "lib_outfiles";
    case Hook::Comp: return "lib_comp";
    case Hook::SuitePost: return "lib_suite_post";
    case Hook::QueueDelCmd: return "lib_queue_del_cmd";
  }
  return "?";
}

bool is_canonical_hook_name(std::string_view name) {
  for (Hook h : kAllHooks)
    if (hook_name(h) == name) return true;
  return false;
}

namespace {

HookResult passthrough(HookContext&, const Value& payload) {
  return {payload, Value(), true};
}

HookResult make_dir_stub(const std::optional<std::filesystem::path>& dir,
                         const char* what) {
  if (!dir) throw HookFailure(what, "no directory in context");
  std::filesystem::create_directories(*dir);
  return {Value(dir->string()), Value(), true};
}

}  // namespace

Registry::Registry() {
  stubs_["lib_suite_prep"] = passthrough;
  stubs_["lib_suite_post"] = passthrough;
  stubs_["lib_data"] = passthrough;
  stubs_["lib_build"] = passthrough;
  stubs_["lib_build_post"] = passthrough;
  stubs_["lib_run"] = passthrough;
  stubs_["lib_run_post"] = passthrough;
  stubs_["lib_queue_del_cmd"] = passthrough;
  stubs_["lib_build_prep"] = [](HookContext& ctx, const Value&) {
    return make_dir_stub(ctx.paths.build_dir, "lib_build_prep");
  };
  stubs_["lib_run_prep"] = [](HookContext& ctx, const Value&) {
    return make_dir_stub(ctx.paths.run_dir, "lib_run_prep");
  };
  stubs_["lib_run_check"] = [](HookContext&, const Value& payload) {
    return HookResult{payload, Value(), true};
  };
  stubs_["lib_outfiles"] = [](HookContext&, const Value&) {
    return HookResult{Value::list(), Value(), true};
  };
  stubs_["lib_comp"] = [](HookContext&, const Value& payload) {
    auto left = payload.get_string("left");
    auto right = payload.get_string("right");
    if (!left || !right)
      throw HookFailure("lib_comp", "payload must carry left and right paths");
    return HookResult{Value(), Value(), bitwise_equal(*left, *right)};
  };
}

void Registry::add(std::string name, HookImpl impl) {
  if (impls_.count(name)) throw DuplicateHookError(name);
  impls_.emplace(std::move(name), std::move(impl));
}

bool Registry::registered(std::string_view name) const {
  return impls_.find(name) != impls_.end();
}

std::string Registry::resolve_alias(Hook h, const HookContext& ctx) const {
  std::string canonical(hook_name(h));
  for (const Value* body : {&ctx.run, &ctx.build, &ctx.suite}) {
    if (!body->is_map()) continue;
    if (auto alias = body->get_string(canonical)) return *alias;
  }
  return canonical;
}

const HookImpl* Registry::lookup(const std::string& name,
                                 const HookContext&) const {
  auto it = impls_.find(name);
  if (it != impls_.end()) return &it->second;
  return nullptr;
}

HookResult Registry::dispatch(Hook h, HookContext& ctx,
                              const Value& payload) const {
  std::string canonical(hook_name(h));
  std::string target = resolve_alias(h, ctx);
  if (ctx.log) {
    std::string label = canonical;
    if (target != canonical) label += " -> " + target;
    ctx.log->debug(ctx.scope, "hook " + label + " start");
  }
  HookResult result;
  try {
    if (const HookImpl* impl = lookup(target, ctx)) {
      result = (*impl)(ctx, payload);
    } else {
      std::filesystem::path exe = ctx.paths.app_root / "hooks" / target;
      std::error_code ec;
      auto status = std::filesystem::status(exe, ec);
      bool executable = !ec && std::filesystem::is_regular_file(status) &&
                        (status.permissions() &
                         std::filesystem::perms::owner_exec) !=
                            std::filesystem::perms::none;
      if (executable) {
        result = external_adapter(exe, ctx, payload);
      } else {
        auto it = stubs_.find(target);
        if (it == stubs_.end()) throw UnknownHookError(target);
        result = it->second(ctx, payload);
      }
    }
  } catch (const HookFailure&) {
    throw;
  } catch (const UnknownHookError&) {
    throw;
  } catch (const Error& e) {
    throw HookFailure(target, e.what());
  }
  if (!result.context_patch.is_null())
    ctx.scratch = merge_values(ctx.scratch, result.context_patch);
  if (ctx.log) ctx.log->debug(ctx.scope, "hook " + canonical + " end");
  return result;
}

// ------------------------------------------------------- external adapter

namespace {

struct Pipe {
  int fds[2] = {-1, -1};
  Pipe() {
    if (::pipe(fds) != 0) throw InternalError("pipe() failed");
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  void close_read() {
    if (fds[0] >= 0) ::close(fds[0]);
    fds[0] = -1;
  }
  void close_write() {
    if (fds[1] >= 0) ::close(fds[1]);
    fds[1] = -1;
  }
};

Value serialize_context(const HookContext& ctx) {
  Value doc = Value::map();
  Value context = Value::map();
  if (!ctx.suite.is_null()) context.set("suite", ctx.suite);
  if (!ctx.run.is_null()) context.set("run", ctx.run);
  if (!ctx.build.is_null()) context.set("build", ctx.build);
  if (!ctx.scratch.is_null()) context.set("scratch", ctx.scratch);
  Value paths = Value::map();
  paths.set("app_root", ctx.paths.app_root.string());
  paths.set("out_root", ctx.paths.out_root.string());
  paths.set("log_path", ctx.paths.log_path.string());
  paths.set("builds_root", ctx.paths.builds_root.string());
  paths.set("runs_root", ctx.paths.runs_root.string());
  if (ctx.paths.baseline_dir)
    paths.set("baseline_dir", ctx.paths.baseline_dir->string());
  if (ctx.paths.build_dir) paths.set("build_dir", ctx.paths.build_dir->string());
  if (ctx.paths.run_dir) paths.set("run_dir", ctx.paths.run_dir->string());
  context.set("paths", std::move(paths));
  doc.set("context", std::move(context));
  return doc;
}

}  // namespace

HookResult external_adapter(const std::filesystem::path& exe, HookContext& ctx,
                            const Value& payload) {
  std::string name = exe.filename().string();
  Value doc = serialize_context(ctx);
  doc.set("payload", payload);
  std::string input = emit_document(doc);

  Pipe in, out, err;
  pid_t pid = ::fork();
  if (pid < 0) throw InternalError("fork() failed");
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(in.fds[0], STDIN_FILENO);
    ::dup2(out.fds[1], STDOUT_FILENO);
    ::dup2(err.fds[1], STDERR_FILENO);
    for (Pipe* p : {&in, &out, &err}) {
      ::close(p->fds[0]);
      ::close(p->fds[1]);
    }
    ::execl(exe.c_str(), exe.c_str(), (char*)nullptr);
    ::fprintf(stderr, "cannot execute %s: %s\n", exe.c_str(),
              ::strerror(errno));
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  in.close_read();
  out.close_write();
  err.close_write();

  // Feed stdin then drain stdout/stderr while watching for cancellation and
  // the optional timeout.
  size_t written = 0;
  ::fcntl(in.fds[1], F_SETFL, O_NONBLOCK);
  std::string out_text, err_text;
  bool killed = false;
  std::string kill_reason;
  auto deadline = ctx.timeout
                      ? std::optional(std::chrono::steady_clock::now() +
                                      *ctx.timeout)
                      : std::nullopt;
  while (true) {
    struct pollfd fds[3];
    int n = 0;
    int in_idx = -1, out_idx = -1, err_idx = -1;
    if (in.fds[1] >= 0 && written < input.size()) {
      in_idx = n;
      fds[n++] = {in.fds[1], POLLOUT, 0};
    } else if (in.fds[1] >= 0) {
      in.close_write();
    }
    if (out.fds[0] >= 0) {
      out_idx = n;
      fds[n++] = {out.fds[0], POLLIN, 0};
    }
    if (err.fds[0] >= 0) {
      err_idx = n;
      fds[n++] = {err.fds[0], POLLIN, 0};
    }
    if (n == 0) break;
    int rc = ::poll(fds, n, 50);
    if (rc < 0 && errno != EINTR) break;
    if (!killed) {
      if (ctx.cancel && ctx.cancel->load()) {
        killed = true;
        kill_reason = "cancelled";
      } else if (deadline && std::chrono::steady_clock::now() > *deadline) {
        killed = true;
        kill_reason = "timed out";
      }
      if (killed) ::kill(-pid, SIGKILL);
    }
    if (in_idx >= 0 && (fds[in_idx].revents & (POLLOUT | POLLERR))) {
      ssize_t w = ::write(in.fds[1], input.data() + written,
                          input.size() - written);
      if (w > 0)
        written += static_cast<size_t>(w);
      else if (w < 0 && errno != EAGAIN && errno != EINTR)
        in.close_write();
      if (written == input.size()) in.close_write();
    }
    char buf[4096];
    if (out_idx >= 0 && (fds[out_idx].revents & (POLLIN | POLLHUP))) {
      ssize_t r = ::read(out.fds[0], buf, sizeof buf);
      if (r > 0)
        out_text.append(buf, static_cast<size_t>(r));
      else if (r == 0 || (r < 0 && errno != EAGAIN && errno != EINTR))
        out.close_read();
    }
    if (err_idx >= 0 && (fds[err_idx].revents & (POLLIN | POLLHUP))) {
      ssize_t r = ::read(err.fds[0], buf, sizeof buf);
      if (r > 0)
        err_text.append(buf, static_cast<size_t>(r));
      else if (r == 0 || (r < 0 && errno != EAGAIN && errno != EINTR))
        err.close_read();
    }
  }

  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }

  while (!err_text.empty() && err_text.back() == '\n') err_text.pop_back();
  if (ctx.log && !err_text.empty()) ctx.log->debug(name, err_text);

  if (killed) throw HookFailure(name, kill_reason);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    std::string detail =
        WIFEXITED(status)
            ? "exited with status " + std::to_string(WEXITSTATUS(status))
            : "terminated by signal " +
                  std::to_string(WIFSIGNALED(status) ? WTERMSIG(status) : 0);
    std::string tail = err_text.size() > 500
                           ? err_text.substr(err_text.size() - 500)
                           : err_text;
    if (!tail.empty()) detail += "; stderr: " + tail;
    throw HookFailure(name, detail);
  }

  Value response;
  try {
    response = parse_document(out_text, name + " (stdout)");
  } catch (const ParseError& e) {
    throw HookFailure(name, std::string("malformed response: ") + e.what());
  }
  HookResult result;
  if (response.is_map()) {
    if (const Value* p = response.find("payload")) result.payload = *p;
    if (const Value* p = response.find("context_patch"))
      result.context_patch = *p;
    if (const Value* p = response.find("ok")) {
      if (!p->is_bool())
        throw HookFailure(name, "response 'ok' must be a boolean");
      result.ok = p->as_bool();
    }
  } else if (!response.is_null()) {
    throw HookFailure(name, "response must be a mapping");
  }
  return result;
}

}  // namespace ddts
