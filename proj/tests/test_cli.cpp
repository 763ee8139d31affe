#include <gtest/gtest.h>

#include "cli.hpp"
#include "test_support.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = polymul::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parse(const std::string& s) { return nlohmann::json::parse(s); }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

std::filesystem::path fresh_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("polymul_cli_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, OpmatrixHermiteCsvMatchesDisplay) {
  const auto r = run_cli({"opmatrix", "--basis", "hermite-orthonormal", "-n", "5", "-k", "3", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 6u);
  for (const auto& row : rows) ASSERT_EQ(row.size(), 9u);
  auto at = [&](std::size_t i, std::size_t j) { return std::stod(rows[i - 1][j - 1]); };
  EXPECT_NEAR(at(1, 4), 1.0, 1e-12);
  EXPECT_NEAR(at(2, 3), std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(at(4, 3), 3.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(at(5, 6), 2.0 * std::sqrt(30.0), 1e-12);
  EXPECT_NEAR(at(6, 9), 2.0 * std::sqrt(14.0), 1e-12);
  EXPECT_NEAR(at(1, 1), 0.0, 0.0);
}

TEST(Cli, MulMonomial) {
  const auto r = run_cli({"mul", "--basis", "monomial", "--a", "[1,1]", "--b", "[1,1]"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r.out);
  EXPECT_EQ(j["basis"], "monomial");
  EXPECT_EQ(j["coeffs"].get<std::vector<double>>(), (std::vector<double>{1, 2, 1}));
}

TEST(Cli, ExactMulSerializesRationals) {
  const auto r = run_cli({"--exact", "mul", "--basis", "chebyshev-t", "--a", "[0,1]", "--b", "[0,1]"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto c = parse(r.out)["coeffs"];
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0]["num"], 1);
  EXPECT_EQ(c[0]["den"], 2);
  EXPECT_EQ(c[1]["num"], 0);
  EXPECT_EQ(c[2]["den"], 2);
  const auto csv = run_cli({"--exact", "--format", "csv", "mul", "--basis", "chebyshev-t", "--a", "[0,1]", "--b", "[0,1]"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(csv_rows(csv.out), (std::vector<std::vector<std::string>>{{"1/2", "0/1", "1/2"}}));
}

TEST(Cli, JsonArtifactsRoundTrip) {
  const auto first = run_cli({"--exact", "pow", "--basis", "legendre", "--a", "[1,2,3]", "-p", "2"});
  ASSERT_EQ(first.code, 0) << first.err;
  const auto again = run_cli({"--exact", "mul", "--basis", "legendre", "--a", first.out, "--b", "[1]"});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(again.out, first.out);

  const auto b = run_cli({"bmul", "--a", "[1,2]", "--b", "[3,-1,4]"});
  ASSERT_EQ(b.code, 0) << b.err;
  const auto b2 = run_cli({"bmul", "--a", b.out, "--b", "[1]"});
  ASSERT_EQ(b2.code, 0) << b2.err;
  EXPECT_EQ(parse(b2.out), parse(b.out));

  const auto l = run_cli({"lmul", "--a", R"({"nodes":[0,1],"values":[0,1]})", "--b", R"({"nodes":[0,1],"values":[0,1]})",
                          "--extra-nodes", "[2]"});
  ASSERT_EQ(l.code, 0) << l.err;
  EXPECT_EQ(parse(l.out)["values"].get<std::vector<double>>(), (std::vector<double>{0, 1, 4}));
  const auto l2 = run_cli({"lpow", "--a", l.out, "-p", "1"});
  ASSERT_EQ(l2.code, 0) << l2.err;
  EXPECT_EQ(parse(l2.out), parse(l.out));
}

TEST(Cli, BernsteinLiftMatrixExact) {
  const auto r = run_cli({"--exact", "blift", "-n", "2", "-m", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse(r.out)["rows"];
  ASSERT_EQ(rows.size(), 3u);
  ASSERT_EQ(rows[0].size(), 6u);
  EXPECT_EQ(rows[0][1]["num"], 3);
  EXPECT_EQ(rows[0][1]["den"], 5);
  EXPECT_EQ(rows[1][2]["num"], 3);
  EXPECT_EQ(rows[1][2]["den"], 5);
  EXPECT_EQ(rows[2][5]["num"], 1);
}

TEST(Cli, GalerkinFormats) {
  const auto coo = run_cli({"galerkin", "--basis", "hermite-orthonormal", "-k", "1", "-p", "1", "--format", "coo"});
  ASSERT_EQ(coo.code, 0) << coo.err;
  const auto j = parse(coo.out);
  EXPECT_EQ(j["rows"], 2);
  EXPECT_EQ(j["entries"].size(), 2u);
  const auto g = run_cli({"galerkin-g", "--basis", "hermite-orthonormal", "--alpha", "1,2", "--orders", "2,2", "--format", "csv"});
  ASSERT_EQ(g.code, 0) << g.err;
  const auto rows = csv_rows(g.out);
  ASSERT_EQ(rows.size(), 9u);
  for (const auto& row : rows) EXPECT_EQ(row.size(), 9u);
}

TEST(Cli, BasisListNamesAllBases) {
  const auto r = run_cli({"basis-list"});
  ASSERT_EQ(r.code, 0);
  const auto j = parse(r.out);
  ASSERT_EQ(j.size(), polymul::testing::registered_names().size());
  for (std::size_t i = 0; i < j.size(); ++i) EXPECT_EQ(j[i]["name"], polymul::testing::registered_names()[i]);
}

TEST(Cli, VerifyIsDeterministicAndPasses) {
  const std::vector<std::string> args{"verify", "--basis", "chebyshev-t", "--degree-max", "8", "--trials", "100", "--seed", "7"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("result PASS"), std::string::npos);
  const auto other = run_cli({"verify", "--basis", "chebyshev-t", "--degree-max", "8", "--trials", "100", "--seed", "8"});
  EXPECT_NE(other.out, a.out);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"mul", "--basis", "monomial", "--a", "[1]"}).code, 2);
  EXPECT_EQ(run_cli({"mul", "--basis", "monomial", "--a", "[1]", "--b", "[1]", "--bogus"}).code, 2);
  EXPECT_EQ(run_cli({"--format", "xml", "mul", "--basis", "monomial", "--a", "[1]", "--b", "[1]"}).code, 2);

  const auto bad_json = run_cli({"mul", "--basis", "monomial", "--a", "[1,", "--b", "[1]"});
  EXPECT_EQ(bad_json.code, 1);
  EXPECT_EQ(std::count(bad_json.err.begin(), bad_json.err.end(), '\n'), 1);
  EXPECT_EQ(run_cli({"mul", "--basis", "no-such-basis", "--a", "[1]", "--b", "[1]"}).code, 1);
  EXPECT_EQ(run_cli({"--exact", "opmatrix", "--basis", "hermite-orthonormal", "-n", "1", "-k", "1"}).code, 1);
  EXPECT_EQ(run_cli({"galerkin", "--basis", "hermite", "-k", "1", "-p", "1"}).code, 1);
  EXPECT_EQ(run_cli({"lmul", "--a", R"({"nodes":[0,1],"values":[0,1]})", "--b", R"({"nodes":[5,6],"values":[0,1]})"}).code, 1);
}

TEST(Cli, OutWritesFile) {
  const auto dir = fresh_dir("out");
  const auto path = dir / "product.json";
  const auto r = run_cli({"--out", path.string(), "mul", "--basis", "monomial", "--a", "[1,1]", "--b", "[1,1]"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  EXPECT_EQ(nlohmann::json::parse(in)["coeffs"].get<std::vector<double>>(), (std::vector<double>{1, 2, 1}));
  std::filesystem::remove_all(dir);
}

TEST(Cli, CacheDirectoryPersistsMatrices) {
  const auto dir = fresh_dir("cache");
  ::setenv("POLYMUL_CACHE_DIR", dir.c_str(), 1);
  const auto r = run_cli({"opmatrix", "--basis", "hermite-orthonormal", "-n", "5", "-k", "3"});
  ::unsetenv("POLYMUL_CACHE_DIR");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "H_hermite-orthonormal_5_3.json"));

  // A fresh cache on the same directory loads the file instead of recomputing.
  polymul::OpMatrixCache<double> cache(dir);
  const auto h = cache.get(polymul::builtin_basis<double>("hermite-orthonormal"), 5, 3);
  EXPECT_EQ(cache.stats().files_loaded, 1u);
  EXPECT_EQ(cache.stats().rows_computed, 0u);
  EXPECT_NEAR(h->entries(3, 2), 3.0 * std::sqrt(2.0), 1e-12);
  std::filesystem::remove_all(dir);
}
