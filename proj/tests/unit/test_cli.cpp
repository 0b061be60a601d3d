#include "cli.hpp"

#include "json.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

using freeconv::run_cli;
using Json = nlohmann::ordered_json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override { unsetenv("FREECONV_ORDER"); }
  void TearDown() override { unsetenv("FREECONV_ORDER"); }
};

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_F(Cli, ShowWignerCumulants) {
  const auto r = run({"show", "wigner(0,1)", "--order", "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.json();
  EXPECT_EQ(j.at("order"), 6);
  EXPECT_EQ(j.at("free_cumulants"), Json::parse(R"(["0","1","0","0","0","0"])"));
  EXPECT_EQ(j.at("moments"), Json::parse(R"(["0","1","0","2","0","5"])"));
  EXPECT_EQ(j.at("spec").at("name"), "wigner");
}

TEST_F(Cli, ShowBoxtimesJson) {
  const auto r = run({"show", R"j({"kind":"ops","boxtimes":[{"kind":"catalog","name":"mlotkowski","params":["3/2",1]},{"kind":"catalog","name":"mlotkowski","params":["3/2",1]}]})j",
                      "--order", "8"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json().at("moments"), Json::parse(R"(["1","2","5","14","42","132","429","1430"])"));
}

TEST_F(Cli, ShowFreePoissonCsv) {
  const auto r = run({"show", "marchenko_pastur(2)", "--order", "3", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out), (std::vector<std::string>{"n,moment,free_cumulant", "1,2,2", "2,6,2", "3,22,2"}));
}

TEST_F(Cli, ShowFloatOutputHasTwelveDigits) {
  const auto r = run({"show", "moments(~0.1, ~0.3)", "--order", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json().at("free_cumulants").at(1), Json(0.29));
}

TEST_F(Cli, OrderFromEnvironment) {
  setenv("FREECONV_ORDER", "5", 1);
  auto r = run({"show", "gue"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json().at("order"), 5);
  r = run({"show", "gue", "--order", "3"});
  EXPECT_EQ(r.json().at("order"), 3);
  setenv("FREECONV_ORDER", "many", 1);
  EXPECT_EQ(run({"show", "gue"}).code, 2);
}

TEST_F(Cli, DefaultOrder) { EXPECT_EQ(run({"show", "gue"}).json().at("order"), 16); }

TEST_F(Cli, ClassifyExitCodes) {
  auto r = run({"classify", "box2div", "marchenko_pastur(0.1)"});
  EXPECT_EQ(r.code, 1) << r.err;
  auto j = r.json();
  EXPECT_EQ(j.at("outcome"), "Rejected");
  EXPECT_EQ(j.at("test"), "box2div");
  EXPECT_EQ(j.at("tested_order"), 16);
  EXPECT_EQ(j.at("failures").at(0).at("size"), 3);

  r = run({"classify", "typew", "mlotkowski(5/4,1)", "--order", "8"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json().at("outcome"), "Rejected");

  r = run({"classify", "freeid", R"j({"kind":"catalog","name":"wigner","params":[0,1]})j"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json().at("outcome"), "Inconclusive");
}

TEST_F(Cli, ClassifyAllTests) {
  EXPECT_EQ(run({"classify", "regular", "marchenko_pastur(1/2)"}).code, 0);
  EXPECT_EQ(run({"classify", "typeas", "beta_sym(1)", "--order", "10"}).code, 0);
  const auto r = run({"classify", "wignermix", "arcsine_sym(1)", "--order", "10"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.json().contains("grid_point"));
  EXPECT_EQ(run({"classify", "kurtosis", "gue"}).code, 2);
}

TEST_F(Cli, DensityCsv) {
  auto r = run({"density", "wigner(0,1)", "--grid", "-2:2:5"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], "x,density");
  EXPECT_EQ(rows[1], "-2.0,0.0");
  EXPECT_EQ(rows[5], "2.0,0.0");
  EXPECT_EQ(rows[3], "0.0,0.318309886184");

  r = run({"density", "marchenko_pastur(0.5)", "--grid", "0:3:4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).front(), "# atom at 0: 1/2");

  r = run({"density", "arcsine_sym(1)", "--grid", "0:0:1", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = r.json();
  EXPECT_NEAR(j.at("points").at(0).at(1).get<double>(), 1 / M_PI, 1e-12);
  EXPECT_EQ(j.at("atom_at_zero"), "0");
}

TEST_F(Cli, DensityErrors) {
  EXPECT_EQ(run({"density", "mlotkowski(3,1)", "--grid", "0:1:3"}).code, 2);
  EXPECT_EQ(run({"density", "moments(1,2)", "--grid", "0:1:3"}).code, 2);
  EXPECT_EQ(run({"density", "gue", "--grid", "0:1"}).code, 2);
  EXPECT_EQ(run({"density", "gue", "--grid", "1:0:3"}).code, 2);
}

TEST_F(Cli, MonteCarlo) {
  auto r = run({"mc", "boxplus", "gue", "gue", "--dim", "64", "--trials", "3", "--seed", "5", "--orders", "4"});
  ASSERT_LE(r.code, 1) << r.err;
  auto j = r.json();
  EXPECT_EQ(j.at("dimension"), 64);
  EXPECT_EQ(j.at("orders").size(), 4u);
  EXPECT_EQ(j.at("orders").at(1).at("predicted"), 2.0);
  EXPECT_EQ(j.at("threshold"), 4.0);

  r = run({"mc", "boxtimes", "wishart(1)", "gue", "--dim", "64", "--trials", "3", "--orders", "4", "--threshold",
           "0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.json().at("pass"), false);

  EXPECT_EQ(run({"mc", "boxplus", "gue", "gue", "--dim", "1"}).code, 2);
  EXPECT_EQ(run({"mc", "boxplus", "mlotkowski(3/2,1)", "gue", "--dim", "8"}).code, 2);
  EXPECT_EQ(run({"mc", "boxplus", "gue", "gue", "--dim", "8", "--orders", "9"}).code, 2);
}

TEST_F(Cli, ConvertNormalizes) {
  const auto r = run({"convert", "reflect(marchenko_pastur(1/2))"});
  ASSERT_EQ(r.code, 0);
  const auto j = r.json();
  EXPECT_EQ(j.at("kind"), "ops");
  EXPECT_EQ(j.at("reflect").at("params").at(0), "1/2");
  const auto again = run({"convert", r.out});
  EXPECT_EQ(again.json(), j);
}

TEST_F(Cli, BercoviciPata) {
  auto r = run({"bp", "gaussian(0,1)", "--order", "6"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json().at("moments"), Json::parse(R"(["0","1","0","2","0","5"])"));
  r = run({"bp", "poisson_classical(3)", "--order", "3", "--format", "csv"});
  EXPECT_EQ(lines(r.out)[1], "1,3,3");
}

TEST_F(Cli, SymmetrizeAndBack) {
  auto r = run({"symmetrize", "point_mass(1)", "--order", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.json();
  EXPECT_EQ(j.at("free_cumulants"), Json::parse(R"(["0","1","0","0"])"));
  EXPECT_EQ(j.at("result").at("kind"), "symmetric_carrier");

  r = run({"desymmetrize", "wigner(0,1)", "--order", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.json().at("moments"), Json::parse(R"(["1","1","1","1"])"));

  r = run({"symmetrize", R"j({"kind":"triplet","a":0,"b":2,"levy":{"atoms":[[4,1]]}})j", "--order", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  j = r.json();
  EXPECT_EQ(j.at("triplet").at("a"), "2");
  EXPECT_EQ(j.at("triplet").at("levy").at("atoms"), Json::parse(R"([["2","1/2"],["-2","1/2"]])"));

  EXPECT_EQ(run({"symmetrize", "mlotkowski(3/2,1)", "--order", "6"}).code, 2);
  EXPECT_EQ(run({"desymmetrize", "arcsine_pos(1)"}).code, 2);
}

TEST_F(Cli, InputAndComputeErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"show"}).code, 2);
  EXPECT_EQ(run({"show", "wigner(0,"}).code, 2);
  EXPECT_EQ(run({"show", "wigner(0,-1)"}).code, 2);
  EXPECT_EQ(run({"show", "gue", "--order", "0"}).code, 2);
  EXPECT_EQ(run({"show", "gue", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"show", "moments(1,2)", "--order", "4"}).code, 2);
  // negative first moment: the square root of S fails inside the computation
  EXPECT_EQ(run({"classify", "box2div", "moments(-1,2,-3,5)", "--order", "4"}).code, 3);
}

TEST_F(Cli, HelpExitsCleanly) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("classify"), std::string::npos);
}
