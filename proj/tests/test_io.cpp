#include <cstdio>

#include "doctest.h"
#include "revgraph/errors.hpp"
#include "revgraph/io.hpp"

using namespace revgraph;

TEST_SUITE("io") {

TEST_CASE("csv quoting") {
  CHECK(csv_field(std::string("plain")) == "plain");
  CHECK(csv_field(std::string("a,b")) == "\"a,b\"");
  CHECK(csv_field(std::string("say \"hi\"")) == "\"say \"\"hi\"\"\"");
  CHECK(csv_field(std::string("line\nbreak")) == "\"line\nbreak\"");
  CHECK(csv_field(std::uint64_t{42}) == "42");
}

TEST_CASE("doubles render at round-trip precision") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(format_double(1e-9) == "1e-09");
}

TEST_CASE("manifest round trip") {
  RunManifest m;
  m.command = "sweep";
  m.parameters = {{"n", "5,6"}, {"c", "0.5,1.5"}, {"seed", "42"}};
  m.master_seed = 42;
  m.started_at = "2024-01-01T00:00:00Z";
  m.finished_at = "2024-01-01T00:00:05Z";
  m.outputs = {"sweep.csv", "sweep_summary.csv"};

  const std::string path = "manifest_roundtrip.json";
  write_manifest(m, path);
  const auto loaded = read_manifest(path);
  CHECK(loaded.command == m.command);
  CHECK(loaded.parameters == m.parameters);
  CHECK(loaded.master_seed == m.master_seed);
  CHECK(loaded.version == m.version);
  CHECK(loaded.outputs == m.outputs);
  std::remove(path.c_str());

  CHECK_THROWS_AS(read_manifest("missing-manifest.json"), io_error);
  write_text_file(path, "not json");
  CHECK_THROWS_AS(read_manifest(path), io_error);
  std::remove(path.c_str());
}

}  // TEST_SUITE
