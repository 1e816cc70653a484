#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "milnorkit/cli.hpp"
#include "milnorkit/parse.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "milnorkit");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  auto* old_out = std::cout.rdbuf(out.rdbuf());
  auto* old_err = std::cerr.rdbuf(err.rdbuf());
  int code = milnorkit::cli::run(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  return {code, out.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("milnorkit_cli_" + name)).string();
}

}  // namespace

TEST_CASE("weights subcommand") {
  auto r = run_cli({"--json", "weights", "--corpus", "ex_nisol"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["radial"]["q"] == std::vector<int>{1, 1, 1});
  CHECK(j["radial"]["d"] == 3);
  CHECK(j["polar"]["p"] == std::vector<int>{3, 2, 1});
  CHECK(j["polar"]["k"] == 1);
  CHECK(j.contains("lattices"));
  auto real = nlohmann::json::parse(run_cli({"--json", "weights", "e_thom"}).out);
  CHECK(real["radial"].is_null());
  CHECK(real["polar"].is_null());
}

TEST_CASE("certify subcommand on the Thom example") {
  auto r = run_cli({"certify", "--corpus", "e_thom", "--json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["theorem_path"] == "Thm1.2");
  CHECK(j["schema"] == 1);

  auto single = run_cli({"--json", "certify", "(x1^2 - x1, x2)", "--check", "sing", "--tau", "1/10000"});
  CHECK(single.code == milnorkit::cli::kExitCounterexample);
  auto region = run_cli({"certify", "z1 + 0*z2", "--check", "milnor", "--region",
                         "box:[-1,1]^4; x3^2 + x4^2 >= 1/10; x1^2 + x2^2 + x3^2 + x4^2 <= 1"});
  CHECK(region.code == 0);
  auto degenerate = run_cli({"certify", "(x1, x2)"});
  CHECK(degenerate.code == milnorkit::cli::kExitInconclusive);
}

TEST_CASE("usage errors exit with 64") {
  CHECK(run_cli({}).code == milnorkit::cli::kExitUsage);
  CHECK(run_cli({"weights"}).code == milnorkit::cli::kExitUsage);
  CHECK(run_cli({"weights", "z1 +"}).code == milnorkit::cli::kExitUsage);
  CHECK(run_cli({"certify", "e_thom", "--check", "bogus"}).code == milnorkit::cli::kExitUsage);
  CHECK(run_cli({"corpus", "nope"}).code == milnorkit::cli::kExitUsage);
  CHECK(run_cli({"sample", "cube", "--corpus", "holo_a1"}).code == milnorkit::cli::kExitUsage);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("sebastiani subcommand prints h") {
  auto r = run_cli({"sebastiani", "--left", "e_thom", "--right", "w^2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("h = (-x1^4 - x1^2*x3^2 + x2^4 + x4^2 - x5^2, x1*x2 + 2*x4*x5)") != std::string::npos);
  auto j = nlohmann::json::parse(run_cli({"--json", "sebastiani", "--left", "z1^2", "--right", "w^3"}).out);
  CHECK(j["combined_radial"]["q"] == std::vector<int>{3, 3, 2, 2});
  CHECK(j["combined_radial"]["d"] == 6);
  CHECK(milnorkit::parse_mixed(j["h_mixed"].get<std::string>()) == milnorkit::parse_mixed("z1^2 + z2^3"));
}

TEST_CASE("corpus and info subcommands") {
  auto r = run_cli({"--json", "corpus"});
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["entries"].size() == 5);
  auto one = nlohmann::json::parse(run_cli({"--json", "corpus", "e_ex2"}).out);
  CHECK(one["kind"] == "real");
  auto info = nlohmann::json::parse(run_cli({"--json", "info", "ex_nisol"}).out);
  CHECK(info["input"]["m"] == 6);
}

TEST_CASE("seeded outputs are byte-identical") {
  auto a = run_cli({"--seed", "42", "sample", "pages", "--corpus", "ex_nisol", "--n", "300"});
  auto b = run_cli({"--seed", "42", "sample", "pages", "--corpus", "ex_nisol", "--n", "300"});
  auto c = run_cli({"--seed", "43", "sample", "pages", "--corpus", "ex_nisol", "--n", "300"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(a.out.rfind("x1,x2,x3,x4,x5,x6,page,theta,norm_psi,radius\n", 0) == 0);

  const auto p1 = temp_path("flow1.csv"), p2 = temp_path("flow2.csv");
  CHECK(run_cli({"flow", "holo_a1", "--n", "5", "--out", p1}).code == 0);
  CHECK(run_cli({"flow", "holo_a1", "--n", "5", "--out", p2}).code == 0);
  CHECK(slurp(p1) == slurp(p2));
  CHECK_FALSE(slurp(p1).empty());

  const auto ply = temp_path("tube.ply");
  CHECK(run_cli({"sample", "tube", "--corpus", "e_thom", "--n", "20", "--format", "ply", "--out", ply}).code == 0);
  CHECK(slurp(ply).rfind("ply\n", 0) == 0);
  for (const auto& p : {p1, p2, ply}) std::remove(p.c_str());
}

TEST_CASE("defect sampling subcommands") {
  auto m = nlohmann::json::parse(run_cli({"--json", "milnor-set", "z1 + 0*z2", "--grid", "5"}).out);
  CHECK(m["points"] == 625);
  CHECK(m["zero_points"] == 25);  // x3 = x4 = 0 on the grid
  auto o = run_cli({"--json", "omega", "holo_a1", "--samples", "2000"});
  CHECK(o.code == 0);
  CHECK(nlohmann::json::parse(o.out)["violations"] == 0);
  auto rho = run_cli({"milnor-set", "e_thom", "--kind", "rho"});
  CHECK(rho.code == milnorkit::cli::kExitUsage);
}
