#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "pkit/cli.hpp"
#include "pkit/report.hpp"

using namespace pkit;

TEST_CASE("polygon command") {
  CommandResult r = run_command({"polygon", "--input", "x^3 + y^3"});
  CHECK(r.status == kExitOk);
  json j = json::parse(r.out);
  CHECK(j["schema"] == kSchema);
  CHECK(j["input"] == "y^3 + x^3");
  CHECK(j["result"]["d"] == "3/2");
}

TEST_CASE("input from a file") {
  const char* path = "cli_input_test.txt";
  {
    std::ofstream out(path);
    out << "y^2 - x^3\n";
  }
  CommandResult r = run_command({"puiseux", "-i", path, "-K", "6"});
  std::remove(path);
  CHECK(r.status == kExitOk);
  CHECK(json::parse(r.out)["input"] == "y^2 - x^3");
}

TEST_CASE("adapt command and csv") {
  CommandResult r = run_command({"adapt", "-i", "y^2 - 2*x^2*y + x^4"});
  CHECK(r.status == kExitOk);
  CHECK(json::parse(r.out)["result"]["epsilon"] == "1/2");
  CommandResult c = run_command({"puiseux", "-i", "y^2 - x^3", "--csv"});
  CHECK(c.status == kExitOk);
  CHECK(c.out.rfind("branch_id,x,re,im", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(run_command({"polygon", "-i", "x +"}).status == kExitParse);
  CHECK(run_command({"frobnicate"}).status == kExitParse);
  CHECK(run_command({"polygon"}).status == kExitParse);
  CHECK(run_command({"adapt", "-i", "1 + x"}).status == kExitPrecondition);
  CHECK(run_command({"adapt", "-i", "(y - x - x^2)^2", "-K", "2"}).status == kExitPrecondition);
  CHECK(run_command({"adapt", "-i", "x^2 + y^2", "--csv"}).status == kExitPrecondition);
  CHECK(run_command({"validate", "-i", "x^2 + y^2", "--mode", "decay", "--lambda-min", "256", "--lambda-max",
                     "512"})
            .status == kExitPrecondition);
  CHECK(run_command({"validate", "-i", "x^2 + y^2", "--mode", "decay", "--lambda-max", "262144", "--max-cells",
                     "16"})
            .status == kExitNumeric);
  CHECK(run_command({"--help"}).status == kExitOk);
}

TEST_CASE("errors are reported as JSON on stderr") {
  CommandResult r = run_command({"polygon", "-i", "x $ y"});
  json e = json::parse(r.err);
  CHECK(e["error"]["kind"] == "parse");
  CHECK(e["error"]["position"] == 2);
}

TEST_CASE("validate integrability agrees with the prediction") {
  CommandResult r = run_command({"validate", "-i", "x^3 + y^3", "--mode", "integrability"});
  CHECK(r.status == kExitOk);
  json j = json::parse(r.out);
  CHECK(j["result"]["predicted_epsilon"] == "2/3");
  CHECK(j["result"]["agrees"] == true);
}

TEST_CASE("output is deterministic") {
  std::vector<std::string> args{"validate", "-i", "x^2 + y^2", "--mode", "integrability", "--seed", "5"};
  CHECK(run_command(args).out == run_command(args).out);
}
