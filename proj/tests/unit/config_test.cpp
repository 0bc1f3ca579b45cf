#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "omlat/config.hpp"
#include "omlat/errors.hpp"
#include "omlat/example5.hpp"

using namespace omlat;
namespace fs = std::filesystem;

namespace {

const char* kExample = R"(# example
n        = 30
nu       = 0.1
lambda   = 0.4
f_coeffs = 0, 0.1
q_spec   = example5:0.01,31
T        = 30
)";

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "omlat_config_test";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(ConfigParse, ExampleFileMatchesBuiltIn) {
  const LatticeConfig cfg = parse_config(kExample);
  EXPECT_TRUE(is_example5(cfg));
  EXPECT_EQ(cfg.dim(), 61);
  EXPECT_EQ(config_hash(cfg), config_hash(example5_config()));
  const LatticeConfig shipped = load_config(fs::path(OMLAT_CONFIG_DIR) / "example5.cfg");
  EXPECT_EQ(config_hash(shipped), config_hash(cfg));
}

TEST(ConfigParse, CanonicalTextRoundTrips) {
  LatticeConfig cfg = parse_config(
      "n = 2\nnu = 0.25\nlambda = 1.5\nf_coeffs = 0.5, 0, 0.01\ng = 1,2,3,4,5\nq_spec = decay:0.3,0.7\n"
      "rho = 1, 0.5, 0.25, 0.5, 1\nT = 2.5\n");
  const std::string text = canonical_text(cfg);
  const LatticeConfig again = parse_config(text);
  EXPECT_EQ(canonical_text(again), text);
  EXPECT_EQ(config_hash(again), config_hash(cfg));
  EXPECT_EQ(again.f.growth_exponent(), 2);
  EXPECT_DOUBLE_EQ(again.q.value(-2, 0.0), 0.3 * std::exp(-1.4));
}

TEST(ConfigParse, HashSeesEveryField) {
  const LatticeConfig base = parse_config(kExample);
  LatticeConfig other = base;
  other.nu = 0.1000001;
  EXPECT_NE(config_hash(base), config_hash(other));
  other = base;
  other.q = NoiseCoefficient::site_profile(0.02, 31.0);
  EXPECT_NE(config_hash(base), config_hash(other));
}

TEST(ConfigParse, ErrorsNameTheField) {
  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("n = 1\nnu = 0.1\nlambda = 0.4\nf_coeffs = 0\nq_spec = constant:1\nT = 1\nbogus = 3\n")
                .find("bogus"),
            std::string::npos);
  EXPECT_NE(message("n = 1\nn = 2\n").find("duplicate"), std::string::npos);
  EXPECT_NE(message("n = 1\nnu = 0.1\nlambda = 0.4\nf_coeffs = 0\nT = 1\n").find("q_spec"), std::string::npos);
  EXPECT_NE(message("n = 1\nnu = abc\nlambda = 0.4\nf_coeffs = 0\nq_spec = constant:1\nT = 1\n").find("nu"),
            std::string::npos);
  EXPECT_NE(message("n = 1\nnu = 0.1\nlambda = 0.4\nf_coeffs = 0\nq_spec = constant:1\nT = 1\ng = 1,2\n").find("g"),
            std::string::npos);
  EXPECT_NE(message("n = 1\nnu = 0.1\nlambda = 0.4\nf_coeffs = 0\nq_spec = weird:1\nT = 1\n").find("q_spec"),
            std::string::npos);
  EXPECT_NE(message("n = 0\nnu = 0.1\nlambda = 0.4\nf_coeffs = 0\nq_spec = constant:0\nT = 1\n").find("q_0"),
            std::string::npos);
}

TEST(ConfigParse, QTableInterpolatesAndClamps) {
  const fs::path dir = scratch_dir();
  {
    std::ofstream os(dir / "q.csv");
    os << "t,q_-1,q_0,q_1\n0,1,2,3\n1,3,4,5\n";
  }
  const LatticeConfig cfg = parse_config(
      "n = 1\nnu = 0.1\nlambda = 0.4\nf_coeffs = 0\nq_spec = table:q.csv\nT = 2\n", dir);
  EXPECT_DOUBLE_EQ(cfg.q.value(0, 0.25), 2.5);
  EXPECT_DOUBLE_EQ(cfg.q.value(1, 1.5), 5.0);
  EXPECT_DOUBLE_EQ(cfg.q.value(-1, -1.0), 1.0);
  EXPECT_EQ(cfg.q.table_sites(), 3);
  EXPECT_NE(cfg.q.describe().find('#'), std::string::npos);
  EXPECT_THROW(parse_config("n = 2\nnu = 0.1\nlambda = 0.4\nf_coeffs = 0\nq_spec = table:q.csv\nT = 2\n", dir),
               ConfigError);
}

TEST(StateSpec, Grammar) {
  EXPECT_TRUE(parse_state_spec("zero", 2).isZero(0.0));
  EXPECT_TRUE((parse_state_spec("const:1.5", 1).array() == 1.5).all());
  const LatticeState g = parse_state_spec("gauss:0.6,8", 30);
  EXPECT_DOUBLE_EQ(g[30], 0.6);
  EXPECT_DOUBLE_EQ(g[40], 0.6 * std::exp(-100.0 / 128.0));
  EXPECT_TRUE(g.isApprox(example5_initial_state(30)));
  const LatticeState l = parse_state_spec("list:1,2,3", 1);
  EXPECT_EQ(l[2], 3.0);
  EXPECT_THROW(parse_state_spec("list:1,2", 1), ConfigError);
  EXPECT_THROW(parse_state_spec("gauss:1,0", 1), ConfigError);
  EXPECT_THROW(parse_state_spec("ones", 1), ConfigError);
}
