#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sslo/cli.hpp"
#include "sslo/reports.hpp"

using namespace sslo;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const char* name) {
  const fs::path p = fs::temp_directory_path() / ("sslo-test-" + std::string(name) + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

cli::RunConfig parse(std::vector<const char*> args) {
  args.insert(args.begin(), "sslo-lab");
  auto c = cli::parse_args(static_cast<int>(args.size()), args.data());
  REQUIRE(c.has_value());
  return *c;
}

}  // namespace

TEST_CASE("number formatting round-trips and csv escaping") {
  const double v = 0.1 + 0.2;
  CHECK(std::stod(reports::format_double(v)) == v);
  CHECK(reports::format_double(1.0) == "1");
  CHECK(reports::csv_escape("a,b") == "\"a,b\"");
  CHECK(reports::csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(reports::csv_escape("plain") == "plain");
}

TEST_CASE("config hash is stable and content sensitive") {
  const nlohmann::json a = {{"x", 1}, {"y", "z"}};
  CHECK(reports::config_hash(a) == reports::config_hash(nlohmann::json::parse(a.dump())));
  CHECK(reports::config_hash(a) != reports::config_hash({{"x", 2}, {"y", "z"}}));
  CHECK(reports::config_hash(a).size() == 16);
}

TEST_CASE("artifacts are never silently overwritten") {
  const auto dir = scratch_dir("artifact");
  reports::write_artifact(dir, "a.csv", "1\n");
  CHECK_NOTHROW(reports::write_artifact(dir, "a.csv", "1\n"));
  CHECK_THROWS_AS(reports::write_artifact(dir, "a.csv", "2\n"), reports::ArtifactConflict);
  CHECK(slurp(dir / "a.csv") == "1\n");
  fs::remove_all(dir);
}

TEST_CASE("csv table layout") {
  reports::CsvTable t({"k", "v"});
  t.row().add(0).add(0.5);
  t.row().add(1).add("x,y");
  CHECK(t.render("abc") == "k,v,config_hash\n0,0.5,abc\n1,\"x,y\",abc\n");
  CHECK_THROWS(t.row().add(1).add(2).add(3));
}

TEST_CASE("argument parsing and per-command validation") {
  const auto c = parse({"bounds-sweep", "--W", "12.5", "--W", "31.4", "--eps", "0.1", "--eps", "0.01", "--out", "/tmp/x"});
  CHECK(c.command == cli::Command::BoundsSweep);
  CHECK(c.W.size() == 2);
  CHECK(c.eps.size() == 2);
  CHECK_THROWS_AS(parse({"spectrum", "--d", "1"}), std::invalid_argument);
  CHECK_THROWS_AS(parse({"spectrum", "--d", "2", "--r", "8", "--body", "{\"kind\":\"torus\"}"}), std::invalid_argument);
  CHECK_THROWS_AS(parse({"spectrum", "--d", "2", "--r", "8", "--body", "{\"kind\":"}), std::invalid_argument);
  CHECK_THROWS_AS(parse({"bounds-sweep", "--W", "10", "--eps", "0.7"}), std::invalid_argument);
  CHECK_THROWS_AS(parse({"frobnicate"}), std::invalid_argument);
  CHECK(cli::parse_body_arg("cube")["halfwidth"] == 1.0);
}

TEST_CASE("spectrum run is deterministic and trace matches W / pi") {
  const auto dir = scratch_dir("cli");
  const std::string out = dir.string();
  auto c = parse({"spectrum", "--d", "1", "--W", "31.4159", "--n", "256", "--out", out.c_str()});
  const auto first = cli::run(c);
  REQUIRE(first.exit_code == cli::kExitOk);
  REQUIRE(first.artifacts.size() == 2);
  const std::string csv = slurp(first.artifacts[0]);
  const auto summary = nlohmann::json::parse(slurp(first.artifacts[1]));
  CHECK(summary["trace"].get<double>() == doctest::Approx(31.4159 / M_PI).epsilon(1e-12));
  fs::remove_all(dir);
  const auto second = cli::run(c);
  CHECK(slurp(second.artifacts[0]) == csv);
  fs::remove_all(dir);
}

TEST_CASE("counting and bounds-sweep exit codes") {
  const auto dir = scratch_dir("cli2");
  const std::string out = dir.string();
  CHECK(cli::run(parse({"counting", "--d", "2", "--samples", "5", "--eta", "1", "--seed", "4", "--out", out.c_str()}))
            .exit_code == cli::kExitOk);
  CHECK(cli::run(parse({"bounds-sweep", "--W", "12.566", "--eps", "0.1", "--n", "128", "--out", out.c_str()})).exit_code ==
        cli::kExitOk);
  const char* argv[] = {"sslo-lab", "spectrum", "--d", "2", "--r", "8", "--body", "{", "--out", out.c_str()};
  CHECK(cli::main_entry(10, argv) == cli::kExitConfig);
  fs::remove_all(dir);
}
