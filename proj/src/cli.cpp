#include "ddts/cli.hpp"

#include <cstdlib>
#include <iostream>

#include "ddts/errors.hpp"
#include "ddts/report.hpp"

namespace ddts {

namespace {

constexpr const char* kVersion = "ddts 1.0.0";

std::optional<Kind> parse_kind(const std::string& word, bool plural) {
  if (word == (plural ? "builds" : "build")) return Kind::Build;
  if (word == (plural ? "runs" : "run")) return Kind::Run;
  if (word == (plural ? "suites" : "suite")) return Kind::Suite;
  return std::nullopt;
}

long parse_positive(const std::string& flag, const std::string& value) {
  char* end = nullptr;
  long n = std::strtol(value.c_str(), &end, 10);
  if (!end || *end != '\0' || n <= 0)
    throw UsageError(flag + " needs a positive integer, got '" + value + "'");
  return n;
}

}  // namespace

std::string usage_text() {
  return "usage:\n"
         "  ddts <suite>                 execute a test suite\n"
         "  ddts run <run>               execute a single run\n"
         "  ddts show build|run|suite <name>\n"
         "                               display a composed definition\n"
         "  ddts list builds|runs|suites\n"
         "                               list known definitions\n"
         "\n"
         "flags:\n"
         "  --use-baseline <dir>         compare runs against stored baselines\n"
         "  --gen-baseline <dir>         generate baselines from run output\n"
         "  --force-baseline             allow overwriting existing baselines\n"
         "  --workers <n>                cap simultaneously active run workers\n"
         "  --hook-timeout <secs>        kill hook commands after this long\n"
         "  --help, --version\n"
         "\n"
         "environment:\n"
         "  DDTS_APP                     application root (definitions and\n"
         "                               hooks); default: current directory\n"
         "  DDTS_OUT                     output root (logs, builds, run\n"
         "                               workspaces); default: ./ddts-out\n";
}

Invocation parse_args(const std::vector<std::string>& args) {
  Invocation inv;
  if (const char* app = std::getenv("DDTS_APP"); app && *app)
    inv.app_root = app;
  else
    inv.app_root = ".";
  if (const char* out = std::getenv("DDTS_OUT"); out && *out)
    inv.out_root = out;
  else
    inv.out_root = "./ddts-out";

  std::vector<std::string> positional;
  for (size_t i = 0; i < args.size(); ++i) {
    const std::string& arg = args[i];
    auto next = [&]() -> const std::string& {
      if (++i >= args.size()) throw UsageError(arg + " needs an argument");
      return args[i];
    };
    if (arg == "--help" || arg == "-h") {
      inv.command = Invocation::Command::Help;
      return inv;
    }
    if (arg == "--version") {
      inv.command = Invocation::Command::Version;
      return inv;
    }
    if (arg == "--use-baseline") {
      inv.modes.use_baseline = next();
    } else if (arg == "--gen-baseline") {
      inv.modes.gen_baseline = next();
    } else if (arg == "--force-baseline") {
      inv.modes.force_baseline = true;
    } else if (arg == "--workers") {
      inv.modes.worker_cap = static_cast<int>(parse_positive(arg, next()));
    } else if (arg == "--hook-timeout") {
      inv.modes.hook_timeout =
          std::chrono::seconds(parse_positive(arg, next()));
    } else if (!arg.empty() && arg[0] == '-') {
      throw UsageError("unknown flag: " + arg);
    } else {
      positional.push_back(arg);
    }
  }

  if (inv.modes.force_baseline && !inv.modes.gen_baseline)
    throw UsageError("--force-baseline requires --gen-baseline");
  if (inv.modes.use_baseline && inv.modes.gen_baseline &&
      std::filesystem::weakly_canonical(*inv.modes.use_baseline) ==
          std::filesystem::weakly_canonical(*inv.modes.gen_baseline))
    throw UsageError(
        "--use-baseline and --gen-baseline must name distinct directories");

  if (positional.empty()) throw UsageError("no command given");
  const std::string& first = positional[0];
  if (first == "run") {
    if (positional.size() != 2) throw UsageError("usage: ddts run <name>");
    inv.command = Invocation::Command::RunSingle;
    inv.name = positional[1];
  } else if (first == "show") {
    if (positional.size() != 3)
      throw UsageError("usage: ddts show build|run|suite <name>");
    auto kind = parse_kind(positional[1], /*plural=*/false);
    if (!kind) throw UsageError("unknown definition kind: " + positional[1]);
    inv.command = Invocation::Command::Show;
    inv.kind = *kind;
    inv.name = positional[2];
  } else if (first == "list") {
    if (positional.size() != 2)
      throw UsageError("usage: ddts list builds|runs|suites");
    auto kind = parse_kind(positional[1], /*plural=*/true);
    if (!kind) throw UsageError("unknown definition kind: " + positional[1]);
    inv.command = Invocation::Command::List;
    inv.kind = *kind;
  } else {
    if (positional.size() != 1)
      throw UsageError("unexpected argument: " + positional[1]);
    inv.command = Invocation::Command::RunSuite;
    inv.name = first;
  }
  return inv;
}

int cli_main(int argc, char** argv) {
  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    Invocation inv = parse_args(args);
    switch (inv.command) {
      case Invocation::Command::Help:
        std::cout << usage_text();
        return 0;
      case Invocation::Command::Version:
        std::cout << kVersion << "\n";
        return 0;
      case Invocation::Command::Show: {
        Store store(inv.app_root);
        std::cout << show(store.resolve(inv.kind, inv.name));
        return 0;
      }
      case Invocation::Command::List: {
        Store store(inv.app_root);
        for (const auto& name : store.list(inv.kind)) std::cout << name << "\n";
        return 0;
      }
      case Invocation::Command::RunSuite:
      case Invocation::Command::RunSingle: {
        Store store(inv.app_root);
        Registry registry;
        Logger log(inv.out_root, inv.name);
        Engine engine(store, registry, log, inv.out_root, inv.modes);
        SuiteVerdict verdict = inv.command == Invocation::Command::RunSuite
                                   ? engine.run_suite(inv.name)
                                   : engine.run_single(inv.name);
        finalize(log, verdict);
        return verdict.passed ? 0 : 1;
      }
    }
    return 3;
  } catch (const UsageError& e) {
    std::cerr << "ddts: " << e.what() << "\n\n" << usage_text();
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "ddts: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ddts: internal fault: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace ddts
