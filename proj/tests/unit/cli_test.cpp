#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "run.hpp"

namespace sfide::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("sfide_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST(ParseConfig, FullExample) {
  const auto cfg = parse_config(
      "# convergence run\n"
      "command = converge\n"
      "problem = example_5_1\n"
      "N_values = 8, 16, 32, 64, 128\n"
      "M = 500   # paths\n"
      "seed = 42\n"
      "alpha = 0.6\n");
  EXPECT_EQ(cfg.command, Command::Converge);
  EXPECT_EQ(cfg.problem, BuiltinProblem::Example51);
  EXPECT_EQ(cfg.N_values, (std::vector<std::size_t>{8, 16, 32, 64, 128}));
  EXPECT_EQ(cfg.M, 500u);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.params.alpha, 0.6);
  EXPECT_EQ(cfg.params.beta1, 0.5);
}

TEST(ParseConfig, Example52TakesVectorInitialValue) {
  const auto cfg = parse_config("command = simulate\nproblem = example_5_2\ny0 = 0.5, -1\n");
  EXPECT_EQ(cfg.params.d, 2u);
  EXPECT_EQ(cfg.params.y0, (std::vector<double>{0.5, -1.0}));
}

TEST(ParseConfig, Beta2RangeErrorNamesTheRule) {
  try {
    parse_config("command = converge\nbeta2 = 0.6\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("beta2 < 1/2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  }
}

TEST(ParseConfig, EmptyFile) {
  try {
    parse_config("");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("missing required key: command"), std::string::npos);
  }
}

TEST(ParseConfig, UnknownKeyCarriesLine) {
  try {
    parse_config("command = simulate\n\nbogus = 3\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("bogus"), std::string::npos) << msg;
  }
}

TEST(ParseConfig, MalformedInputs) {
  EXPECT_THROW(parse_config("command simulate\n"), ConfigError);
  EXPECT_THROW(parse_config("command = simulate\ncommand = converge\n"), ConfigError);
  EXPECT_THROW(parse_config("command = fly\n"), ConfigError);
  EXPECT_THROW(parse_config("command = simulate\nproblem = nope\n"), ConfigError);
  EXPECT_THROW(parse_config("command = simulate\nN = -3\n"), ConfigError);
  EXPECT_THROW(parse_config("command = simulate\nalpha = abc\n"), ConfigError);
  EXPECT_THROW(parse_config("command = simulate\nM =\n"), ConfigError);
  EXPECT_THROW(parse_config("command = moments\np = 3\n"), ConfigError);
}

TEST(ParseConfig, KnownKeysCoverFlags) {
  const auto& keys = known_keys();
  for (const char* k : {"command", "problem", "alpha", "beta1", "beta2", "T", "N", "N_values", "M", "p", "seed",
                        "output_path", "n_quad_nodes", "threads"}) {
    EXPECT_NE(std::find(keys.begin(), keys.end(), k), keys.end()) << k;
  }
}

TEST_F(CliTest, SimulateZeroWritesConstantRows) {
  auto cfg = parse_config("command = simulate\nproblem = zero\nN = 16\n");
  cfg.output_path = (dir_ / "traj.csv").string();
  std::ostringstream out, err;
  ASSERT_EQ(run(cfg, out, err), kOk) << err.str();
  std::istringstream csv(slurp(cfg.output_path));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "t,y_1");
  std::getline(csv, line);
  EXPECT_EQ(line.rfind("# spec_hash=", 0), 0u);
  EXPECT_NE(line.find("rng=philox4x32-10"), std::string::npos);
  EXPECT_NE(line.find("version="), std::string::npos);
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    EXPECT_EQ(line.substr(line.find(',')), ",1");
  }
  EXPECT_EQ(rows, 17u);
  EXPECT_NE(out.str().find("Y_N"), std::string::npos);
}

TEST_F(CliTest, LemmaCheckWritesCsv) {
  auto cfg = parse_config("command = lemma-check\nwhich = L2\nc = 0.25\nN_values = 16,32,64,128,256,512\n");
  cfg.output_path = (dir_ / "lemma.csv").string();
  std::ostringstream out, err;
  ASSERT_EQ(run(cfg, out, err), kOk) << err.str();
  const auto text = slurp(cfg.output_path);
  EXPECT_EQ(text.rfind("which,c,N,value,fitted_order,predicted_order\n", 0), 0u);
  EXPECT_NE(text.find("spec_hash="), std::string::npos);
  EXPECT_NE(text.find("rng=philox4x32-10"), std::string::npos);
  const auto pos = out.str().find("fitted_order=");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_NEAR(std::stod(out.str().substr(pos + 13)), 1.5, 0.1);
}

TEST_F(CliTest, ConvergeSmallIsByteStableAcrossThreads) {
  auto cfg = parse_config("command = converge\nproblem = example_5_2\nN_values = 4,8,16\nM = 6\nseed = 9\n");
  std::ostringstream out, err;
  cfg.threads = 1;
  cfg.output_path = (dir_ / "a.csv").string();
  ASSERT_EQ(run(cfg, out, err), kOk) << err.str();
  cfg.threads = 3;
  cfg.output_path = (dir_ / "b.csv").string();
  ASSERT_EQ(run(cfg, out, err), kOk) << err.str();
  const auto a = slurp(dir_ / "a.csv");
  EXPECT_EQ(a, slurp(dir_ / "b.csv"));
  EXPECT_EQ(a.rfind("N,h,eps,M,seed\n# fitted_rate=", 0), 0u);
}

TEST_F(CliTest, ProbeAndStabilityAndMoments) {
  std::ostringstream out, err;
  auto probe = parse_config("command = probe-assumptions\nproblem = example_5_1\nn_samples = 50\n");
  probe.output_path = (dir_ / "probe.csv").string();
  EXPECT_EQ(run(probe, out, err), kOk) << err.str();
  EXPECT_NE(slurp(probe.output_path).find("not a certificate"), std::string::npos);

  auto stab = parse_config("command = stability\nproblem = zero\nN = 8\nM = 3\n");
  stab.output_path = (dir_ / "stab.csv").string();
  EXPECT_EQ(run(stab, out, err), kOk) << err.str();
  EXPECT_NE(slurp(stab.output_path).find("\n8,3,42,0.10000000000000009,"), std::string::npos);

  auto mom = parse_config("command = moments\nproblem = zero\nN_values = 4,8,16\nM = 3\n");
  mom.output_path = (dir_ / "mom.csv").string();
  EXPECT_EQ(run(mom, out, err), kOk) << err.str();
  EXPECT_NE(slurp(mom.output_path).find("\n16,3,2,42,1\n"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  std::ostringstream out, err;
  auto cfg = parse_config("command = simulate\nproblem = zero\nN = 4\n");
  cfg.output_path = (dir_ / "missing_dir" / "x.csv").string();
  EXPECT_EQ(run(cfg, out, err), kIoError);
  EXPECT_NE(err.str().find("I/O error"), std::string::npos);

  // Set past the parser so run() itself has to map the failure.
  auto bad = parse_config("command = stability\nproblem = zero\nM = 2\n");
  bad.z0 = std::vector<double>{1.0, 2.0};
  bad.output_path = (dir_ / "l.csv").string();
  EXPECT_EQ(run(bad, out, err), kConfigError);
  EXPECT_FALSE(fs::exists(bad.output_path));
}

}  // namespace
}  // namespace sfide::cli
