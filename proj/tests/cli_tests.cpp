#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polydisc/json_io.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(POLYDISC_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string output;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) output += buf.data();
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

}  // namespace

using polydisc::json;

TEST_CASE("cli solve: quadratic roots with hyperplane normals") {
  const auto r = run_cli(R"(solve --poly '{"degree":2,"coeffs":[-3,2]}')");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  REQUIRE(j.at("roots").size() == 2);
  const auto& roots = j.at("roots");
  CHECK(roots[0].at("root")[0].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(roots[1].at("root")[0].get<double>() == doctest::Approx(2.0).epsilon(1e-9));
  // Normal of the tangent line at root u is (u, 1): last component 1.
  CHECK(roots[0].at("normal")[1][0].get<double>() == 1.0);
  CHECK(roots[0].at("normal")[0][0].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cli partition gamma") {
  const auto r = run_cli("partition gamma --kappa 2,1 --tau 2,2,1");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.output).at("gamma").get<long long>() == 4);
}

TEST_CASE("cli stratify: worked seventh-degree configuration") {
  // (z-4)^3 (z-6)^3 (z-8) expanded.
  const polydisc::MonicPoly p = polydisc::from_roots(polydisc::RootConfig(
      {{polydisc::Complex(4.0), 3}, {polydisc::Complex(6.0), 3}, {polydisc::Complex(8.0), 1}}));
  const std::string poly_arg = polydisc::to_json(p).dump();
  const auto r = run_cli("stratify --poly '" + poly_arg + "'");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j.at("mu") == json::parse("[3,3,1]"));
  CHECK(j.at("distinct_roots").get<int>() == 3);
  for (const auto& m : j.at("memberships"))
    CHECK(m.at("in_Ddk").get<bool>() == (m.at("k").get<int>() <= 3));
}

TEST_CASE("cli discriminant and flow") {
  const auto r = run_cli(R"(discriminant --poly '{"degree":3,"coeffs":[0,-3,2]}')");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(std::abs(j.at("discriminant")[0].get<double>()) <= 1e-10);

  const auto f = run_cli(R"(flow --poly '{"degree":2,"coeffs":[1,1]}' --t 0.5)");
  REQUIRE(f.exit_code == 0);
  const json fj = json::parse(f.output);
  // (b - 2t, c - bt + t^2) = (0, 0.75).
  CHECK(fj.at("poly").at("coeffs")[0][0].get<double>() == doctest::Approx(0.0));
  CHECK(fj.at("poly").at("coeffs")[1][0].get<double>() == doctest::Approx(0.75));
  CHECK(fj.at("invariants").at("mu_invariant").get<bool>());
}

TEST_CASE("cli reduce") {
  const auto r = run_cli(R"(reduce --poly '{"degree":2,"coeffs":[4,1]}')");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j.at("poly").at("coeffs")[0][0].get<double>() == 0.0);
  CHECK(j.at("poly").at("coeffs")[1][0].get<double>() == doctest::Approx(-3.0));
  CHECK(j.at("t_star")[0].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("cli partition calculators") {
  CHECK(json::parse(run_cli("partition down1 --mu 3,2,1").output) == json::parse("[2,1]"));
  CHECK(json::parse(run_cli("partition up1 --mu 3,2,1,1").output) == json::parse("[4,3]"));
  CHECK(json::parse(run_cli("partition uplus --mu 2,1 --tau 1,1").output) ==
        json::parse("[2,1,1,1]"));
  const json deg = json::parse(run_cli("partition deg --mu 2,2").output);
  CHECK(deg.at("degree").get<long long>() == 4);
  CHECK(deg.at("dual_degree_bound").get<long long>() == 6);
  const json dims = json::parse(run_cli("partition dualdim --mu 2,1,1").output);
  CHECK(dims.at("dual_dim").get<int>() == 1);
  CHECK(dims.at("gauss_dim").get<int>() == 1);
  const json res = json::parse(run_cli("partition resdown1 --tau 3,3,1 --mu 3,2,1,1").output);
  CHECK(res.at("count").get<long long>() == 2);
}

TEST_CASE("cli tangent-space and tangent-count") {
  const auto r = run_cli(R"(tangent-space --poly '{"degree":3,"coeffs":[-4,5,-2]}' --tol 1e-6)");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j.at("dimension").get<int>() == 2);
  CHECK(j.at("divisor").at("degree").get<int>() == 1);
  CHECK_FALSE(j.at("full_space").get<bool>());

  const auto c = run_cli(R"(tangent-count --poly '{"degree":5,"coeffs":[0.3,-1.2,0.5,0.9,-0.4]}' --mu 2,1,1,1)");
  REQUIRE(c.exit_code == 0);
  CHECK(json::parse(c.output).at("count").get<long long>() == 5);
}

TEST_CASE("cli grid emitters validate and write deterministic CSV") {
  const std::string path = "/tmp/polydisc_grid_test.csv";
  const auto r = run_cli("grid parabola-tangents --samples 9 --out " + path);
  REQUIRE(r.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "u,b,c");
  int count = 0;
  std::string line;
  std::string all;
  while (std::getline(in, line)) {
    ++count;
    all += line + "\n";
    double u, b, c;
    char comma;
    std::stringstream ss(line);
    ss >> u >> comma >> b >> comma >> c;
    CHECK(std::abs(u * u + b * u + c) == 0.0);  // exact on the dyadic grid
  }
  CHECK(count == 81);

  // Deterministic across runs despite the parallel workers.
  REQUIRE(run_cli("grid parabola-tangents --samples 9 --out " + path).exit_code == 0);
  std::ifstream in2(path);
  std::getline(in2, header);
  std::string all2;
  while (std::getline(in2, line)) all2 += line + "\n";
  CHECK(all == all2);

  // The u = 1 cusp fixture lands at (c, d) = (-3, 2).
  const auto cusp = run_cli("grid cubic-cusp-tangents --samples 9");
  REQUIRE(cusp.exit_code == 0);
  CHECK(cusp.output.find("cusp,1,-3,2") != std::string::npos);

  const auto swallow = run_cli("grid swallowtail --samples 7");
  REQUIRE(swallow.exit_code == 0);
}

TEST_CASE("cli check suites run clean") {
  for (const std::string suite : {"poly_core", "partitions", "viete", "strata", "flow"}) {
    const auto r = run_cli("check --suite " + suite + " --seed 7 --samples 12");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.output);
    for (const auto& c : j.at("checks")) CHECK(c.at("pass").get<bool>());
  }
}

TEST_CASE("cli exit codes: usage errors and numerical failures") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("solve").exit_code == 2);  // missing --poly/--roots
  CHECK(run_cli(R"(solve --poly '{"degree":2}')").exit_code == 2);
  CHECK(run_cli(R"(solve --poly 'not json')").exit_code == 2);
  CHECK(run_cli(R"(solve --poly '{"degree":2,"coeffs":[1,2,3]}')").exit_code == 2);
  CHECK(run_cli("partition gamma --kappa 2,1").exit_code == 2);  // missing --tau
  CHECK(run_cli("check --suite nope").exit_code == 2);
  // Unwritable output path is a runtime failure.
  CHECK(run_cli("grid swallowtail --samples 3 --out /nonexistent_dir/x.csv").exit_code == 3);
}

TEST_CASE("cli csv format flattens JSON output") {
  const auto r = run_cli(R"(discriminant --poly '{"degree":2,"coeffs":[0,-1]}' --format csv)");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("discriminant[0],4.0") != std::string::npos);
}

TEST_CASE("cli accepts --roots as polynomial input") {
  const auto r = run_cli(R"(solve --roots '[1, 2, [0, 1], [0, -1]]')");
  REQUIRE(r.exit_code == 0);
  CHECK(json::parse(r.output).at("roots").size() == 4);

  const auto d = run_cli(R"(discriminant --roots '[1, 1, 2]')");
  REQUIRE(d.exit_code == 0);
  CHECK(std::abs(json::parse(d.output).at("discriminant")[0].get<double>()) <= 1e-10);
}

TEST_CASE("cli real field: R-visible stratification") {
  const auto r = run_cli(R"(stratify --poly '{"degree":3,"coeffs":[0,1,0]}' --field real)");
  REQUIRE(r.exit_code == 0);
  const json j = json::parse(r.output);
  CHECK(j.at("mu") == json::parse("[1]"));
  CHECK(j.at("distinct_roots").get<int>() == 3);
}
