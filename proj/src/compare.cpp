#include "ddts/compare.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "ddts/errors.hpp"

namespace ddts {

std::string describe(const ComparisonReport& report) {
  std::string s = report.left + " vs " + report.right + ": ";
  if (report.equivalent) return s + "equivalent";
  if (!report.note.empty()) return s + report.note;
  std::string detail;
  for (const auto& fv : report.file_verdicts)
    if (!fv.equivalent) detail += (detail.empty() ? "" : ", ") + fv.relpath + " differs";
  for (const auto& m : report.missing_left)
    detail += (detail.empty() ? "" : ", ") + m + " missing from " + report.left;
  for (const auto& m : report.missing_right)
    detail += (detail.empty() ? "" : ", ") + m + " missing from " + report.right;
  return s + detail;
}

bool bitwise_equal(const std::filesystem::path& a,
                   const std::filesystem::path& b) {
  std::error_code ec;
  auto size_a = std::filesystem::file_size(a, ec);
  if (ec) throw ConfigError("cannot read " + a.string());
  auto size_b = std::filesystem::file_size(b, ec);
  if (ec) throw ConfigError("cannot read " + b.string());
  if (size_a != size_b) return false;
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  if (!fa) throw ConfigError("cannot read " + a.string());
  if (!fb) throw ConfigError("cannot read " + b.string());
  constexpr size_t kChunk = 1 << 16;
  std::vector<char> buf_a(kChunk), buf_b(kChunk);
  while (fa && fb) {
    fa.read(buf_a.data(), kChunk);
    fb.read(buf_b.data(), kChunk);
    if (fa.gcount() != fb.gcount()) return false;
    if (!std::equal(buf_a.begin(), buf_a.begin() + fa.gcount(), buf_b.begin()))
      return false;
  }
  return fa.eof() && fb.eof();
}

namespace {

std::map<std::string, std::filesystem::path> index_outfiles(
    const OutfileList& files) {
  std::map<std::string, std::filesystem::path> idx;
  for (const auto& entry : files) idx[entry.relpath] = entry.root / entry.relpath;
  return idx;
}

ComparisonReport compare_file_sets(
    ComparisonReport::Scope scope, const std::string& left_name,
    const std::string& right_name,
    const std::map<std::string, std::filesystem::path>& left,
    const std::map<std::string, std::filesystem::path>& right,
    const Comparator& comparator) {
  ComparisonReport report;
  report.scope = scope;
  report.left = left_name;
  report.right = right_name;
  for (const auto& [relpath, path] : left) {
    auto it = right.find(relpath);
    if (it == right.end()) {
      report.missing_right.push_back(relpath);
      continue;
    }
    report.file_verdicts.push_back({relpath, comparator(path, it->second)});
  }
  for (const auto& [relpath, path] : right)
    if (!left.count(relpath)) report.missing_left.push_back(relpath);
  report.equivalent =
      report.missing_left.empty() && report.missing_right.empty() &&
      std::all_of(report.file_verdicts.begin(), report.file_verdicts.end(),
                  [](const FileVerdict& fv) { return fv.equivalent; });
  return report;
}

}  // namespace

std::vector<ComparisonReport> compare_runs(
    const std::vector<std::pair<std::string, OutfileList>>& runs,
    const Comparator& comparator) {
  std::vector<ComparisonReport> reports;
  if (runs.size() < 2) return reports;  // single-run group: smoke test
  auto master = index_outfiles(runs.front().second);
  for (size_t i = 1; i < runs.size(); ++i) {
    reports.push_back(compare_file_sets(
        ComparisonReport::Scope::Group, runs.front().first, runs[i].first,
        master, index_outfiles(runs[i].second), comparator));
  }
  return reports;
}

ComparisonReport compare_to_baseline(const std::string& run_name,
                                     const OutfileList& outfiles,
                                     const std::string& baseline_name,
                                     const std::filesystem::path& baseline_root,
                                     const Comparator& comparator) {
  std::filesystem::path dir = baseline_root / baseline_name;
  if (!std::filesystem::is_directory(dir)) {
    ComparisonReport report;
    report.scope = ComparisonReport::Scope::Baseline;
    report.left = run_name;
    report.right = baseline_name;
    report.equivalent = false;
    report.note = "baseline directory missing: " + dir.string();
    return report;
  }
  std::map<std::string, std::filesystem::path> baseline_files;
  for (const auto& entry :
       std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file())
      baseline_files[entry.path().lexically_relative(dir).generic_string()] =
          entry.path();
  }
  return compare_file_sets(ComparisonReport::Scope::Baseline, run_name,
                           baseline_name, index_outfiles(outfiles),
                           baseline_files, comparator);
}

void generate_baseline(const OutfileList& outfiles,
                       const std::filesystem::path& dest, bool force) {
  if (std::filesystem::exists(dest)) {
    if (!force)
      throw ConfigError("baseline directory already exists (use "
                        "--force-baseline to overwrite): " +
                        dest.string());
    std::filesystem::remove_all(dest);
  }
  std::filesystem::create_directories(dest);
  for (const auto& entry : outfiles) {
    std::filesystem::path target = dest / entry.relpath;
    std::filesystem::create_directories(target.parent_path());
    std::filesystem::copy_file(entry.root / entry.relpath, target,
                               std::filesystem::copy_options::overwrite_existing);
  }
}

}  // namespace ddts
