#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "ddts/compare.hpp"
#include "ddts/errors.hpp"
#include "util.hpp"

using ddts::ComparisonReport;
using ddts::OutfileList;
using testutil::TempDir;
using testutil::read_file;
using testutil::write_file;

namespace {

// All-pairs oracle: a group is equivalent iff every pair of runs has equal
// file sets and byte-equal contents — computed here by direct enumeration,
// with no notion of a master run.
bool oracle_group_equivalent(
    const std::vector<std::pair<std::string, OutfileList>>& runs) {
  for (size_t i = 0; i < runs.size(); ++i) {
    for (size_t j = i + 1; j < runs.size(); ++j) {
      std::set<std::string> left, right;
      for (const auto& f : runs[i].second) left.insert(f.relpath);
      for (const auto& f : runs[j].second) right.insert(f.relpath);
      if (left != right) return false;
      for (const auto& rel : left) {
        auto find = [&](const OutfileList& l) {
          for (const auto& f : l)
            if (f.relpath == rel) return f.root / f.relpath;
          return std::filesystem::path();
        };
        if (read_file(find(runs[i].second)) != read_file(find(runs[j].second)))
          return false;
      }
    }
  }
  return true;
}

bool verdict_of(const std::vector<ComparisonReport>& reports) {
  for (const auto& r : reports)
    if (!r.equivalent) return false;
  return true;
}

}  // namespace

TEST_CASE("bitwise_equal") {
  TempDir tmp;
  write_file(tmp / "a", "same bytes");
  write_file(tmp / "b", "same bytes");
  write_file(tmp / "c", "same bytez");
  write_file(tmp / "d", "same bytes but longer");
  CHECK(ddts::bitwise_equal(tmp / "a", tmp / "b"));
  CHECK_FALSE(ddts::bitwise_equal(tmp / "a", tmp / "c"));
  CHECK_FALSE(ddts::bitwise_equal(tmp / "a", tmp / "d"));
  CHECK_THROWS_AS(ddts::bitwise_equal(tmp / "a", tmp / "missing"),
                  ddts::ConfigError);
  // Large files spanning several read chunks.
  std::string big(300000, 'x');
  write_file(tmp / "big1", big);
  write_file(tmp / "big2", big);
  CHECK(ddts::bitwise_equal(tmp / "big1", tmp / "big2"));
  big[299999] = 'y';
  write_file(tmp / "big3", big);
  CHECK_FALSE(ddts::bitwise_equal(tmp / "big1", tmp / "big3"));
}

TEST_CASE("compare_runs: first run is the master") {
  TempDir tmp;
  for (const char* run : {"m", "r1", "r2"}) {
    write_file(tmp.path() / run / "out.dat", run == std::string("r2")
                                                 ? "different"
                                                 : "common");
  }
  std::vector<std::pair<std::string, OutfileList>> runs;
  for (const char* run : {"m", "r1", "r2"})
    runs.push_back({run, {{tmp.path() / run, "out.dat"}}});
  auto reports = ddts::compare_runs(runs, ddts::bitwise_equal);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].left == "m");
  CHECK(reports[0].right == "r1");
  CHECK(reports[0].equivalent);
  CHECK(reports[1].right == "r2");
  CHECK_FALSE(reports[1].equivalent);
}

TEST_CASE("compare_runs: mismatched file sets are inequivalence") {
  TempDir tmp;
  write_file(tmp / "a/x.dat", "1");
  write_file(tmp / "b/x.dat", "1");
  write_file(tmp / "b/y.dat", "2");
  std::vector<std::pair<std::string, OutfileList>> runs = {
      {"a", {{tmp / "a", "x.dat"}}},
      {"b", {{tmp / "b", "x.dat"}, {tmp / "b", "y.dat"}}}};
  auto reports = ddts::compare_runs(runs, ddts::bitwise_equal);
  REQUIRE(reports.size() == 1);
  CHECK_FALSE(reports[0].equivalent);
  CHECK(reports[0].missing_left == std::vector<std::string>{"y.dat"});
}

TEST_CASE("single-run groups produce no reports") {
  TempDir tmp;
  write_file(tmp / "a/x.dat", "1");
  std::vector<std::pair<std::string, OutfileList>> runs = {
      {"a", {{tmp / "a", "x.dat"}}}};
  CHECK(ddts::compare_runs(runs, ddts::bitwise_equal).empty());
}

TEST_CASE("master-vs-all verdict equals all-pairs oracle (randomized)") {
  std::mt19937 rng(20260823);
  auto roll = [&](int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(rng);
  };
  for (int rep = 0; rep < 200; ++rep) {
    TempDir tmp;
    int nruns = 2 + roll(4);
    int nfiles = 1 + roll(3);
    std::vector<std::pair<std::string, OutfileList>> runs;
    for (int r = 0; r < nruns; ++r) {
      std::string rn = "run" + std::to_string(r);
      OutfileList files;
      for (int f = 0; f < nfiles; ++f) {
        // Mostly identical contents, occasionally perturbed or dropped.
        if (roll(10) == 0) continue;
        std::string rel = "f" + std::to_string(f) + ".dat";
        std::string content = "content-" + std::to_string(f);
        if (roll(8) == 0) content += "-perturbed" + std::to_string(r);
        write_file(tmp.path() / rn / rel, content);
        files.push_back({tmp.path() / rn, rel});
      }
      runs.push_back({rn, std::move(files)});
    }
    bool got = verdict_of(ddts::compare_runs(runs, ddts::bitwise_equal));
    bool want = oracle_group_equivalent(runs);
    // Master-vs-all and all-pairs agree because bitwise equality is
    // transitive; this is the property under test.
    CHECK(got == want);
  }
}

TEST_CASE("baseline round trip") {
  TempDir tmp;
  write_file(tmp / "run/a.dat", "alpha");
  write_file(tmp / "run/sub/b.dat", "beta");
  OutfileList files = {{tmp / "run", "a.dat"}, {tmp / "run", "sub/b.dat"}};

  ddts::generate_baseline(files, tmp / "bl/name1", false);
  CHECK(read_file(tmp / "bl/name1/a.dat") == "alpha");
  CHECK(read_file(tmp / "bl/name1/sub/b.dat") == "beta");

  auto report =
      ddts::compare_to_baseline("run", files, "name1", tmp / "bl",
                                ddts::bitwise_equal);
  CHECK(report.equivalent);
  CHECK(report.scope == ComparisonReport::Scope::Baseline);

  // Regeneration without force is refused; with force it succeeds.
  CHECK_THROWS_AS(ddts::generate_baseline(files, tmp / "bl/name1", false),
                  ddts::ConfigError);
  ddts::generate_baseline(files, tmp / "bl/name1", true);

  // Flip one byte: the report names the file.
  std::string bytes = read_file(tmp / "bl/name1/sub/b.dat");
  bytes[0] ^= 1;
  write_file(tmp / "bl/name1/sub/b.dat", bytes);
  report = ddts::compare_to_baseline("run", files, "name1", tmp / "bl",
                                     ddts::bitwise_equal);
  CHECK_FALSE(report.equivalent);
  bool named = false;
  for (const auto& fv : report.file_verdicts)
    if (fv.relpath == "sub/b.dat" && !fv.equivalent) named = true;
  CHECK(named);
  CHECK(ddts::describe(report).find("sub/b.dat") != std::string::npos);
}

TEST_CASE("baseline file-set mismatches are reported both ways") {
  TempDir tmp;
  write_file(tmp / "run/a.dat", "alpha");
  write_file(tmp / "bl/n/a.dat", "alpha");
  write_file(tmp / "bl/n/extra.dat", "ghost");
  OutfileList files = {{tmp / "run", "a.dat"}};
  auto report = ddts::compare_to_baseline("run", files, "n", tmp / "bl",
                                          ddts::bitwise_equal);
  CHECK_FALSE(report.equivalent);
  CHECK(report.missing_left == std::vector<std::string>{"extra.dat"});
}

TEST_CASE("missing baseline directory is inequivalence, not an error") {
  TempDir tmp;
  write_file(tmp / "run/a.dat", "alpha");
  OutfileList files = {{tmp / "run", "a.dat"}};
  auto report = ddts::compare_to_baseline("run", files, "ghost", tmp / "bl",
                                          ddts::bitwise_equal);
  CHECK_FALSE(report.equivalent);
  CHECK_FALSE(report.note.empty());
}
