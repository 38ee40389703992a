#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " '" TERNARY_MASS_EXE "' " + args + " 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ternary_cli_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("enumerate writes a deterministic cache") {
  TempDir dir;
  auto cache = (dir.path / "forms.jsonl").string();
  auto r = run("enumerate --max-det 8 --cache '" + cache + "'");
  CHECK(r.code == 0);
  std::string first = slurp(cache);
  CHECK(count_lines(first) == 3);
  CHECK(first.find("\"det_h\":4") != std::string::npos);
  CHECK(first.find("\"det_h\":6") != std::string::npos);
  CHECK(first.find("\"det_h\":8") != std::string::npos);

  CHECK(run("enumerate --max-det 8 --cache '" + cache + "'").code == 0);
  CHECK(slurp(cache) == first);

  // extending and rebuilding from scratch give the same bytes, whatever the worker count
  CHECK(run("enumerate --max-det 120 --workers 2 --cache '" + cache + "'").code == 0);
  auto other = (dir.path / "fresh.jsonl").string();
  CHECK(run("enumerate --max-det 120 --workers 1 --cache '" + other + "'").code == 0);
  CHECK(slurp(cache) == slurp(other));

  auto j = run("enumerate --max-det 8 --format json --cache '" + cache + "'");
  CHECK(nlohmann::json::parse(j.out).at("records") == 3);
}

TEST_CASE("cache path from the environment") {
  TempDir dir;
  auto cache = dir.path / "env.jsonl";
  CHECK(run("enumerate --max-det 16", "TERNARY_MASS_CACHE='" + cache.string() + "'").code == 0);
  CHECK(fs::exists(cache));
}

TEST_CASE("usage errors") {
  CHECK(run("enumerate --max-det 7").code == 2);
  CHECK(run("enumerate --max-det 0").code == 2);
  CHECK(run("enumerate --max-det x").code == 2);
  CHECK(run("series --which C --bound 4").code == 2);
  CHECK(run("series --which mass").code == 2);
  CHECK(run("local --prime 4 --valuation 1 --unit 1").code == 2);
  CHECK(run("local --prime 3 --valuation 1 --unit 3").code == 2);
  CHECK(run("local --prime 2 --valuation 1 --unit 2").code == 2);
  CHECK(run("mass --det 9").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("verify") {
  TempDir dir;
  auto cache = (dir.path / "forms.jsonl").string();
  auto ok = run("verify --max-det 200 --cache '" + cache + "'");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("all pass") != std::string::npos);

  auto json = run("verify --max-det 200 --no-build --format json --cache '" + cache + "'");
  CHECK(json.code == 0);
  CHECK(count_lines(json.out) == 200);
  auto first = nlohmann::json::parse(json.out.substr(0, json.out.find('\n')));
  CHECK(first.at("S") == 2);
  CHECK(first.at("pass") == true);

  // short cache without permission to build
  CHECK(run("verify --max-det 400 --no-build --cache '" + cache + "'").code == 3);
  CHECK(run("verify --max-det 8 --no-build --cache '" + (dir.path / "missing.jsonl").string() + "'").code == 3);

  // drop x^2 + y^2 + z^2 from the cache
  std::string text = slurp(cache);
  const std::string line = R"({"a":1,"b":1,"c":1,"r":0,"s":0,"t":0,"det_h":8,"aut":48,"primitive":true})";
  auto at = text.find(line + "\n");
  REQUIRE(at != std::string::npos);
  text.erase(at, line.size() + 1);
  std::ofstream(cache) << text;
  auto bad = run("verify --max-det 200 --no-build --cache '" + cache + "'");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("mismatch at S = 8\n") != std::string::npos);
}

TEST_CASE("corrupt cache lines are I/O errors") {
  TempDir dir;
  auto cache = (dir.path / "forms.jsonl").string();
  REQUIRE(run("enumerate --max-det 40 --cache '" + cache + "'").code == 0);
  std::string text = slurp(cache);
  auto second = text.find('\n') + 1;
  text.insert(second, "{\"a\":1}\n");
  std::ofstream(cache) << text;
  std::string cmd = "'" TERNARY_MASS_EXE "' verify --max-det 40 --no-build --cache '" + cache + "' 2>&1 >/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string err;
  char buf[512];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) err.append(buf, n);
  int status = ::pclose(pipe);
  CHECK(WEXITSTATUS(status) == 3);
  CHECK(err.find("line 2") != std::string::npos);
}

TEST_CASE("series dumps") {
  auto mass = run("series --which mass --bound 8");
  CHECK(mass.code == 0);
  CHECK(mass.out.find("8\t1/48\n") != std::string::npos);
  std::istringstream lines(mass.out);
  std::string l;
  while (std::getline(lines, l)) {
    if (l.empty() || l[0] == '#') continue;
    CHECK(std::stol(l.substr(0, l.find('\t'))) % 2 == 0);
  }

  auto B = run("series --which B --bound 2");
  CHECK(B.code == 0);
  CHECK(B.out == "# routes-agree=true\n2\t-1\n");
  auto A = run("series --which A --bound 600");
  CHECK(A.out.rfind("# routes-agree=true\n", 0) == 0);

  auto prim = run("series --which primitive-mass --bound 64 --format json");
  CHECK(prim.code == 0);
  CHECK(prim.out.find(R"({"n":64,"value":"17/24"})") != std::string::npos);
}

TEST_CASE("local and mass reports") {
  auto odd = run("local --prime 3 --valuation 2 --unit -1");
  CHECK(odd.code == 0);
  CHECK(odd.out.find("A* = 4/27") != std::string::npos);
  auto two = run("local --prime 2 --valuation 5 --unit 3");
  CHECK(two.code == 0);
  CHECK(two.out.find("n/a (fused compartment)") != std::string::npos);
  auto json = run("local --prime 2 --valuation 4 --unit 7 --format json");
  CHECK(json.code == 0);

  auto m = run("mass --det 16");
  CHECK(m.code == 0);
  CHECK(m.out.find("TMass  = 7/48") != std::string::npos);
  auto mj = run("mass --det 6 --format json");
  CHECK(nlohmann::json::parse(mj.out).at("total_mass") == "1/24");
}
