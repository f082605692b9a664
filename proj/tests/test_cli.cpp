#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "pmfde/config.hpp"
#include "pmfde/csv.hpp"

using namespace pmfde;

TEST_CASE("minimal config parses", "[cli]") {
  const std::string text =
      "[run]\n"
      "command = barenblatt\n"
      "output_path = out.csv\n"
      "seed = 7\n"
      "[problem]\n"
      "m = 2\n"
      "n = 1\n"
      "t = 1\n"
      "samples = 100\n";
  const RunConfig rc = parse_config(text);
  CHECK(rc.command == "barenblatt");
  CHECK(rc.output_path == "out.csv");
  CHECK(rc.seed == 7);
  CHECK(rc.parameters.at("problem.m") == "2");
  CHECK(param_double(rc, "problem.t", 0.0) == 1.0);
  CHECK(param_int(rc, "problem.samples", 0) == 100);
}

TEST_CASE("subcritical exponent rejected at parse time", "[cli]") {
  const std::string text =
      "[run]\ncommand = barenblatt\noutput_path = o.csv\n[problem]\nm = 0.2\nn = 3\n";
  try {
    parse_config(text);
    FAIL("expected ConfigInvalid");
  } catch (const ConfigInvalid& e) {
    CHECK(std::string(e.what()).find("m_c") != std::string::npos);
  }
}

TEST_CASE("all validation errors are collected", "[cli]") {
  const std::string text =
      "[run]\ncommand = frobnicate\nseed = abc\n[problem]\nbroken line\n";
  try {
    parse_config(text);
    FAIL("expected ConfigInvalid");
  } catch (const ConfigInvalid& e) {
    const std::string msg = e.what();
    CHECK(msg.find("unknown command") != std::string::npos);
    CHECK(msg.find("run.seed") != std::string::npos);
    CHECK(msg.find("output_path") != std::string::npos);
    CHECK(msg.find("key = value") != std::string::npos);
  }
}

TEST_CASE("serialize then parse is the identity", "[cli]") {
  RunConfig rc;
  rc.command = "sweep-dirichlet";
  rc.output_path = "sweep.csv";
  rc.seed = 42;
  rc.parameters = {{"problem.m", "2"},   {"problem.n", "1"},    {"grid.cells", "64"},
                   {"time.T", "0.25"},   {"time.dt", "0.0078"}, {"sweep.deltas", "0.1, -0.1"}};
  const RunConfig back = parse_config(serialize_config(rc));
  CHECK(back.command == rc.command);
  CHECK(back.output_path == rc.output_path);
  CHECK(back.seed == rc.seed);
  CHECK(back.parameters == rc.parameters);
  CHECK(serialize_config(back) == serialize_config(rc));
}

TEST_CASE("comma list parameters", "[cli]") {
  RunConfig rc;
  rc.parameters["sweep.deltas"] = "0.2, -0.2, 0.1";
  const auto v = param_list(rc, "sweep.deltas", {});
  REQUIRE(v.size() == 3);
  CHECK(v[1] == -0.2);
  rc.parameters["sweep.deltas"] = "0.2, oops";
  CHECK_THROWS_AS(param_list(rc, "sweep.deltas", {}), ConfigInvalid);
}

TEST_CASE("csv emission", "[cli]") {
  const std::string path = "test_cli_out.csv";
  emit_csv({"a", "b"}, {}, path);
  {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == "a,b\n");
  }

  const double x = 0.1 + 0.2;  // not representable; must round-trip exactly
  emit_csv({"v", "s"}, {{x, std::string("he,llo")}}, path);
  {
    std::ifstream f(path, std::ios::binary);
    std::string header, line;
    std::getline(f, header);
    std::getline(f, line);
    const std::string num = line.substr(0, line.find(','));
    CHECK(std::stod(num) == x);
    CHECK(line.find("\"he,llo\"") != std::string::npos);
  }
  std::remove(path.c_str());

  CHECK_THROWS_AS(emit_csv({"a"}, {}, "/nonexistent_dir_zzz/out.csv"), IoError);
}
