// Runs the built csfa binary and inspects exit codes and JSON reports.
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CSFA_BINARY) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) {
  return std::string(CSFA_FIXTURES) + "/" + name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("csfa-cli-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("check reports structural properties") {
  auto r = run("--no-timing check " + fixture("a1.aut"));
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK_FALSE(j.contains("timing_ms"));
  const auto& p = j["properties"];
  CHECK(p["csfa"] == true);
  CHECK(p["circular"] == "a");
  CHECK(p["cyclic_ordering"] == json::array({0, 1, 2, 3, 4, 5}));
  CHECK(p["cycles"]["b"] == json::array({0, 3}));
  CHECK(p["levels"]["b"] == 1);
  CHECK(j["clusters"][1]["levels"] == json::array({0, 1, 1, 0, 1, 1}));

  auto timed = run("check " + fixture("a1.aut"));
  CHECK(json::parse(timed.out).contains("timing_ms"));
}

TEST_CASE("sync exit codes") {
  auto e2 = run("--no-timing sync " + fixture("e2.aut"));
  CHECK(e2.code == 0);
  auto j = json::parse(e2.out)["synchronization"];
  CHECK(j["method"] == "thm4-construction");
  CHECK(j["word"] == "bbbaaaabbb");
  CHECK(j["length"] == 10);
  CHECK(j["bound"] == 4);
  CHECK(j["within_bound"] == false);

  auto bfs = run("--no-timing sync --method bfs " + fixture("e2.aut"));
  CHECK(bfs.code == 0);
  CHECK(json::parse(bfs.out)["synchronization"]["word"] == "bab");
  CHECK(json::parse(bfs.out)["synchronization"]["within_bound"] == true);

  auto e1 = run("--no-timing sync " + fixture("e1.aut"));
  CHECK(e1.code == 0);
  CHECK(json::parse(e1.out)["synchronization"]["method"] == "thm2-construction");

  for (const char* name : {"a1.aut", "a2.aut"}) {
    auto r = run("--no-timing sync " + fixture(name));
    CHECK(r.code == 1);
    auto s = json::parse(r.out)["synchronization"];
    CHECK(s["synchronizing"] == false);
    CHECK(s["word"].is_null());
  }
  CHECK(run("sync --method thm4 " + fixture("a1.aut")).code == 2);
  CHECK(run("sync --method nope " + fixture("e2.aut")).code == 2);
}

TEST_CASE("input errors exit with 2") {
  auto dir = scratch("bad");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.aut") << "states: 3\nalphabet: a\ninitial: 0\nfinals: 0\na: 1 2\n";
  CHECK(run("check " + (dir / "bad.aut").string()).code == 2);
  CHECK(run("check " + (dir / "missing.aut").string()).code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("verify").code == 2);
  CHECK(run("verify --n 1").code == 2);
  fs::remove_all(dir);
}

TEST_CASE("monoid report") {
  auto r = run("--no-timing monoid " + fixture("e1.aut"));
  CHECK(r.code == 0);
  auto m = json::parse(r.out)["monoid"];
  CHECK(m["size"] == 4);
  CHECK(m["has_constant"] == true);
  CHECK(m["units_order"] == 2);
  CHECK(m["unit_generator_witness"] == "a");

  auto a1 = json::parse(run("--no-timing monoid " + fixture("a1.aut")).out)["monoid"];
  CHECK(a1["has_constant"] == false);
  CHECK(a1["units_order"] == 6);

  auto cut = json::parse(run("--no-timing monoid --cap 1 " + fixture("a1.aut")).out)["monoid"];
  CHECK(cut["truncated"] == true);
  CHECK(cut["has_constant"].is_null());
}

TEST_CASE("reports are byte-stable without timing") {
  for (const char* cmd : {"check", "sync", "monoid"}) {
    auto a = run(std::string("--no-timing ") + cmd + " " + fixture("a2.aut"));
    auto b = run(std::string("--no-timing ") + cmd + " " + fixture("a2.aut"));
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
}

TEST_CASE("verify over small n") {
  auto r = run("verify --n 2,3,4");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  REQUIRE(j["sweeps"].size() == 3);
  CHECK(j["sweeps"][0]["csfa"] == 2);
  CHECK(j["sweeps"][1]["csfa"] == 6);
  CHECK(j["sweeps"][2]["csfa"] == 24);
  CHECK(j["sweeps"][1]["checks_passed"]["odd_two_cycle_synchronizes"] == 3);

  auto random = run("verify --n 7 --mode random --count 50 --seed 4");
  REQUIRE(random.code == 0);
  CHECK(json::parse(random.out)["sweeps"][0]["csfa"] == 50);
  CHECK(run("verify --n 7 --mode random --count 50 --seed 4").out == random.out);
}

TEST_CASE("enumerate writes automata and a summary") {
  auto dir = scratch("enum");
  auto r = run("enumerate --n 3 --filter csfa --out " + dir.string());
  REQUIRE(r.code == 0);
  auto summary = json::parse(slurp(dir / "summary.json"));
  CHECK(summary == json::parse(r.out));
  CHECK(summary["candidates"] == 27);
  CHECK(summary["emitted"] == 6);
  REQUIRE(summary["files"].size() == 6);
  CHECK(fs::exists(dir / "n3-b1-0-0.aut"));
  for (const auto& f : summary["files"]) {
    auto c = run("--no-timing check " + (dir / f.get<std::string>()).string());
    CHECK(c.code == 0);
    CHECK(json::parse(c.out)["properties"]["csfa"] == true);
  }
  // the E2 file is identical apart from its comment line to the fixture
  auto fixture_text = slurp(fixture("e2.aut"));
  CHECK(fixture_text.find(slurp(dir / "n3-b1-0-0.aut")) != std::string::npos);
  fs::remove_all(dir);

  CHECK(run("enumerate --n 3 --filter nonsense --out " + dir.string()).code == 2);
  CHECK(run("enumerate --n 9 --out " + dir.string()).code == 2);
  fs::remove_all(dir);
}
