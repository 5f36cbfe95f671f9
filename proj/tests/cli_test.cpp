#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "json.hpp"
#include "subprocess.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("padic-cli-" + std::to_string(std::random_device{}()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CommandResult run(const std::string& args) const {
    return run_command("PADIC_CACHE_DIR=" + shell_quote(dir_.string()) + " " + shell_quote(PADIC_CLI) + " " + args,
                       (dir_ / "stderr.txt").string());
  }
  std::string last_stderr() const {
    std::ifstream in(dir_ / "stderr.txt");
    return {std::istreambuf_iterator<char>(in), {}};
  }
  std::size_t cache_entries() const {
    std::size_t n = 0;
    for (auto& e : fs::directory_iterator(dir_))
      if (e.path().extension() == ".json") ++n;
    return n;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, TableCsvMatchesReference) {
  auto r = run("table --p 5 --degree 3 --trace-zero --kmax 4");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out, "k,irreducible,ambiguous,hensel\n1,8,1,16\n2,20,5,0\n3,20,5,100\n4,40,85,0\n");
}

TEST_F(Cli, WarmCacheIsByteIdentical) {
  const std::string args = "table --p 5 --degree 4 --class \"(x^2+2)^2\" --kmax 3 --format json";
  auto cold = run(args);
  ASSERT_EQ(cold.exit_code, 0);
  EXPECT_EQ(cache_entries(), 1u);
  auto warm = run(args);
  ASSERT_EQ(warm.exit_code, 0);
  EXPECT_EQ(cold.out, warm.out);
  auto bypass = run("--no-cache " + args);
  EXPECT_EQ(bypass.out, cold.out);
  EXPECT_EQ(cache_entries(), 1u);
}

TEST_F(Cli, JsonEnvelope) {
  auto r = run("density --prime-degree 2 --p 5");
  ASSERT_EQ(r.exit_code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["schema_version"], "1");
  EXPECT_EQ(j["command"], "density");
  EXPECT_TRUE(j.contains("params"));
  EXPECT_TRUE(j.contains("provenance"));
  EXPECT_EQ(j["result"]["value"]["numerator"], "7");
  EXPECT_EQ(j["result"]["value"]["denominator"], "12");
}

TEST_F(Cli, DensityValues) {
  auto dq = Json::parse(run("density --double-quadratic --p 5").out);
  EXPECT_EQ(dq["result"]["value"]["numerator"], "51");
  EXPECT_EQ(dq["result"]["value"]["denominator"], "52");
  auto q = Json::parse(run("density --quartic --p 3").out);
  EXPECT_EQ(q["result"]["value"]["numerator"], "55973");
  EXPECT_EQ(q["result"]["value"]["denominator"], "196820");
}

TEST_F(Cli, BracketContainsClosedForm) {
  auto r = run("bracket --p 5 --degree 3 --kmax 5");
  ASSERT_EQ(r.exit_code, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["result"]["closed_form"]["contained"], true);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run("table --p 2 --degree 3 --kmax 2").exit_code, 1);
  auto err = Json::parse(last_stderr());
  EXPECT_EQ(err["error"]["code"], "usage");
  EXPECT_EQ(run("table --p 5 --degree 4 --class \"(x^2+2\" --kmax 2").exit_code, 1);
  EXPECT_EQ(run("table --p 5").exit_code, 1);
  EXPECT_EQ(run("density --prime-degree 3 --p 3").exit_code, 2);
  EXPECT_EQ(run("density --quartic --p 2").exit_code, 2);
  EXPECT_EQ(run("mc --p 5 --degree 2 --samples 0").exit_code, 1);
  auto trunc = run("table --p 5 --degree 3 --trace-zero --kmax 7 --max-work 200");
  EXPECT_EQ(trunc.exit_code, 3);
  EXPECT_NE(trunc.out.find("# truncated:true"), std::string::npos);
  EXPECT_EQ(cache_entries(), 0u);
  EXPECT_EQ(run("verify-claims --p 3 --claim claim1").exit_code, 0);
  EXPECT_EQ(run("verify-claims --p 7").exit_code, 1);
  EXPECT_EQ(run("--help").exit_code, 0);
}

TEST_F(Cli, McIsDeterministic) {
  auto a = run("--no-cache mc --p 5 --degree 2 --samples 2000 --seed 3");
  auto b = run("--no-cache mc --p 5 --degree 2 --samples 2000 --seed 3");
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
}
