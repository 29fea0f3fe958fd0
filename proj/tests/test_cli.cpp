// Drives the installed binary end to end: output layout, determinism,
// manifest replay, exit codes.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "revgraph/io.hpp"

namespace {

const char* cli_path() { return REVGRAPH_CLI_PATH; }

int run(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  return revgraph::read_text_file(path);
}

struct TempDir {
  std::string path;
  TempDir() {
    char buf[] = "/tmp/revgraph_cli_test_XXXXXX";
    path = mkdtemp(buf);
  }
  ~TempDir() {
    if (std::system(("rm -rf " + path).c_str()) != 0) std::perror("cleanup");
  }
  std::string file(const std::string& name) const { return path + "/" + name; }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("survival emits the fixed-point row") {
  TempDir dir;
  const auto stem = dir.file("surv");
  REQUIRE(run("survival --epsilon 1.0 --out " + stem) == 0);
  const auto csv = slurp(stem + ".csv");
  CHECK(csv.find("epsilon,lambda,root,residual,iterations") == 0);
  CHECK(csv.find("0.7968121300200202") != std::string::npos);

  const auto manifest = revgraph::read_manifest(stem + ".manifest.json");
  CHECK(manifest.command == "survival");
  CHECK(manifest.parameters.at("epsilon") == "1.0");
}

TEST_CASE("sweep runs are byte-identical across reruns and replay") {
  TempDir dir;
  const auto a = dir.file("a");
  const auto b = dir.file("b");
  const std::string flags =
      "sweep --n 5 --c 0.5,1.5 --trials 5 --seed 42 --method both "
      "--cutoff 400 ";
  REQUIRE(run(flags + "--out " + a) == 0);
  REQUIRE(run(flags + "--out " + b) == 0);
  CHECK(slurp(a + ".csv") == slurp(b + ".csv"));
  CHECK(slurp(a + "_summary.csv") == slurp(b + "_summary.csv"));
  CHECK(slurp(a + "_plot.csv") == slurp(b + "_plot.csv"));

  // replay rewrites the same outputs
  const auto before = slurp(a + ".csv");
  REQUIRE(run("replay --manifest " + a + ".manifest.json") == 0);
  CHECK(slurp(a + ".csv") == before);
}

TEST_CASE("omitting the seed still records one in the manifest") {
  TempDir dir;
  const auto stem = dir.file("seeded");
  REQUIRE(run("components --n 4 --c 1.2 --out " + stem) == 0);
  const auto manifest = revgraph::read_manifest(stem + ".manifest.json");
  CHECK(!manifest.parameters.at("seed").empty());
  // replaying the recorded seed reproduces the run
  const auto before = slurp(stem + ".csv");
  REQUIRE(run("replay --manifest " + stem + ".manifest.json") == 0);
  CHECK(slurp(stem + ".csv") == before);
}

TEST_CASE("config file provides defaults, flags win") {
  TempDir dir;
  const auto cfg = dir.file("run.cfg");
  revgraph::write_text_file(cfg, "epsilon=0.5\ntol=1e-8\n");
  const auto stem = dir.file("fromcfg");
  REQUIRE(run("survival --config " + cfg + " --out " + stem) == 0);
  CHECK(slurp(stem + ".csv").find("0.58281164") != std::string::npos);

  REQUIRE(run("survival --config " + cfg + " --epsilon 1.0 --out " + stem) ==
          0);
  CHECK(slurp(stem + ".csv").find("0.79681213") != std::string::npos);
}

TEST_CASE("json format mirrors the csv content") {
  TempDir dir;
  const auto stem = dir.file("js");
  REQUIRE(run("critical-rates --lengths 2.5,8.8 --format json --out " + stem) ==
          0);
  const auto doc = slurp(stem + ".json");
  CHECK(doc.find("\"critical_probability_2dp\": 0.23") != std::string::npos);
  CHECK(doc.find("\"critical_probability_2dp\": 0.02") != std::string::npos);
}

TEST_CASE("exit codes distinguish usage, infeasible and io failures") {
  CHECK(run("definitely-not-a-command") == 2);
  CHECK(run("sweep --not-a-flag 1") == 2);
  CHECK(run("survival") == 2);  // missing required --epsilon
  CHECK(run("components --n 12 --c 1.5 --seed 1 --out /tmp/never") == 3);
  CHECK(run("tree --n 8 --c 1.5 --seed 1 --out /tmp/never") == 3);
  CHECK(run("survival --epsilon 1.0 --out /no/such/dir/x") == 4);
  CHECK(run("replay --manifest /no/such/manifest.json") == 4);
  CHECK(run("density --n 3 --set /no/such/set.txt --out /tmp/never") == 4);
}

TEST_CASE("transposition sweep accepts the no-flip variant") {
  TempDir dir;
  const auto stem = dir.file("tw");
  REQUIRE(run("transposition-sweep --n 4 --c 1.5 --trials 2 --seed 5 "
              "--no-flips --out " +
              stem) == 0);
  const auto manifest = revgraph::read_manifest(stem + ".manifest.json");
  CHECK(manifest.parameters.at("gens") == "transpositions-noflip");
}

}  // TEST_SUITE
