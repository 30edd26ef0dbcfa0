#include "ddts/definitions.hpp"

#include <algorithm>

#include "ddts/errors.hpp"
#include "ddts/hooks.hpp"

namespace ddts {

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::Build: return "build";
    case Kind::Run: return "run";
    case Kind::Suite: return "suite";
  }
  return "?";
}

std::string_view kind_dir(Kind k) {
  switch (k) {
    case Kind::Build: return "builds";
    case Kind::Run: return "runs";
    case Kind::Suite: return "suites";
  }
  return "?";
}

Store::Store(std::filesystem::path app_root) : app_root_(std::move(app_root)) {}

RawDefinition Store::load(Kind kind, const std::string& name) const {
  if (name.empty() || name.find('/') != std::string::npos ||
      name.find('\\') != std::string::npos)
    throw ConfigError("definition names must be pathless: " + name);
  std::filesystem::path path = app_root_ / kind_dir(kind) / name;
  if (!std::filesystem::is_regular_file(path))
    throw NotFoundError(std::string(kind_name(kind)), name);
  Value body = load_document(path);
  if (body.is_null()) body = Value::map();
  if (!body.is_map())
    throw ParseError(path.string(), 1, "definition must be a mapping");
  return RawDefinition{name, kind, std::move(body), std::move(path)};
}

ResolvedDefinition Store::resolve(Kind kind, const std::string& name) const {
  std::string cache_key = std::string(kind_dir(kind)) + "/" + name;
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find(cache_key);
    if (it != cache_.end()) return it->second;
  }

  // Walk the extends chain from the most-derived definition to the root.
  std::vector<RawDefinition> chain;
  std::vector<std::string> seen;
  std::string current = name;
  for (;;) {
    if (std::find(seen.begin(), seen.end(), current) != seen.end()) {
      auto at = std::find(seen.begin(), seen.end(), current);
      throw CycleError(std::vector<std::string>(at, seen.end()));
    }
    seen.push_back(current);
    chain.push_back(load(kind, current));
    const Value* ext = chain.back().body.find("extends");
    if (!ext) break;
    if (!ext->is_string())
      throw ConfigError("extends must name a " + std::string(kind_name(kind)) +
                        " in " + chain.back().source_path.string());
    current = ext->as_string();
  }

  // Fold from the root down, child keys overlaying the composed ancestor.
  Value body = Value::map();
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    Value layer = it->body;
    layer.erase("extends");
    body = merge_values(body, layer);
  }

  ResolvedDefinition out{name, kind, std::move(body), std::move(seen)};
  {
    std::lock_guard lock(mu_);
    cache_.emplace(cache_key, out);
  }
  return out;
}

std::vector<std::string> Store::list(Kind kind) const {
  std::filesystem::path dir = app_root_ / kind_dir(kind);
  std::vector<std::string> names;
  if (std::filesystem::is_directory(dir)) {
    for (const auto& entry : std::filesystem::directory_iterator(dir))
      if (entry.is_regular_file())
        names.push_back(entry.path().filename().string());
  }
  std::sort(names.begin(), names.end());
  return names;
}

std::string show(const ResolvedDefinition& def) {
  std::string out = "#";
  for (size_t i = 0; i < def.ancestry.size(); ++i)
    out += (i ? " < " : " ") + def.ancestry[i];
  out += "\n\n";
  out += emit_document(def.body, /*sort_keys=*/true);
  return out;
}

namespace {

const std::vector<std::string> kReservedSuiteKeys = {
    "extends", "build_only", "continue", "retain_builds"};

bool reserved(const std::string& key) {
  return std::find(kReservedSuiteKeys.begin(), kReservedSuiteKeys.end(),
                   key) != kReservedSuiteKeys.end();
}

}  // namespace

SuiteModel build_suite_model(const ResolvedDefinition& suite,
                             const Store& store) {
  if (suite.kind != Kind::Suite)
    throw ConfigError("not a suite definition: " + suite.name);
  SuiteModel model;
  model.name = suite.name;
  for (const auto& [key, value] : suite.body.as_map()) {
    if (reserved(key)) {
      if (!value.is_bool())
        throw BadSuiteError("suite " + suite.name + ": key '" + key +
                            "' must be a boolean");
      if (key == "build_only") model.options.build_only = value.as_bool();
      else if (key == "continue")
        model.options.continue_on_error = value.as_bool();
      else if (key == "retain_builds")
        model.options.retain_builds = value.as_bool();
      continue;
    }
    if (is_canonical_hook_name(key)) {
      if (!value.is_string())
        throw BadSuiteError("suite " + suite.name + ": hook alias '" + key +
                            "' must name a routine");
      continue;  // stays in the body, consulted at dispatch time
    }
    if (!value.is_list())
      throw BadSuiteError("suite " + suite.name + ": group '" + key +
                          "' must be a list of run names");
    std::vector<std::string> runs;
    for (const Value& item : value.as_list()) {
      if (!item.is_string())
        throw BadSuiteError("suite " + suite.name + ": group '" + key +
                            "' entries must be run names");
      runs.push_back(item.as_string());
    }
    if (runs.empty())
      throw BadSuiteError("suite " + suite.name + ": group '" + key +
                          "' is empty");
    model.groups.emplace_back(key, std::move(runs));
  }
  if (model.groups.empty())
    throw BadSuiteError("suite " + suite.name + " defines no comparison groups");
  for (const auto& [group, runs] : model.groups)
    for (const auto& run : runs) store.resolve(Kind::Run, run);
  return model;
}

}  // namespace ddts
