#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "kummer/cli.hpp"

namespace {

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;

  std::map<std::string, std::string> values() const {
    std::map<std::string, std::string> kv;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) {
      const auto eq = line.find('=');
      if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
  }
};

Invocation run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Invocation inv;
  inv.code = kummer::cli::run(args, out, err);
  inv.out = out.str();
  inv.err = err.str();
  return inv;
}

}  // namespace

TEST(Cli, EvalExponential) {
  const Invocation r = run({"eval", "--a", "1", "--b", "1", "--z", "1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(r.values().at("value")), 2.718281828459, 1e-12);
  EXPECT_EQ(r.values().at("method"), "ic");
  EXPECT_EQ(r.values().at("kummer"), "0");
}

TEST(Cli, EvalLogAgreesWithLinear) {
  const Invocation lin = run({"eval", "--a", "2", "--b", "3", "--z", "300"});
  const Invocation lg = run({"eval", "--a", "2", "--b", "3", "--z", "300", "--log"});
  ASSERT_EQ(lin.code, 0);
  ASSERT_EQ(lg.code, 0);
  EXPECT_EQ(lg.values().at("sign"), "1");
  const double v = std::stod(lin.values().at("value"));
  EXPECT_NEAR(std::exp(std::stod(lg.values().at("log_mag"))), v, 1e-13 * v);
  EXPECT_EQ(lin.values().at("method"), "roi");
  EXPECT_TRUE(lin.values().count("n_lower"));
}

TEST(Cli, EvalMethodAndVariant) {
  const Invocation r = run({"eval", "--a", "2", "--b", "3", "--z", "100", "--method", "ic"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.values().at("method"), "ic");
  const Invocation v = run({"eval", "--a", "2", "--b", "3", "--z", "100", "--variant", "T1.5"});
  ASSERT_EQ(v.code, 0);
  EXPECT_EQ(v.values().at("variant"), "t1.5");
  const Invocation k = run({"eval", "--a", "1", "--b", "2", "--z", "-1"});
  EXPECT_EQ(k.values().at("kummer"), "1");
  EXPECT_NEAR(std::stod(k.values().at("value")), 0.63212055882855768, 1e-12);
}

TEST(Cli, RoiDiagnostics) {
  const Invocation r = run({"roi", "--a", "2", "--b", "3", "--z", "100", "--eps", "1e-12", "--variant", "t2.5"});
  ASSERT_EQ(r.code, 0);
  const auto kv = r.values();
  EXPECT_EQ(kv.at("n_mode"), "99");
  EXPECT_EQ(kv.at("n_lower"), "28");
  EXPECT_EQ(kv.at("n_upper"), "178");
  EXPECT_NEAR(std::stod(kv.at("k_upper")), 79.8377, 1e-3);
  EXPECT_NEAR(std::stod(kv.at("k_lower")), 69.5681, 1e-3);
  EXPECT_TRUE(kv.count("log10_eps_min"));
}

TEST(Cli, PoissonBeta) {
  const Invocation r = run({"pb", "--alpha", "1", "--beta", "1", "--gamma", "1", "--x", "0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(r.values().at("density")), 0.63212, 1e-5);
  EXPECT_NEAR(std::stod(r.values().at("log_density")), -0.45867514538708189, 1e-12);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"eval", "--a", "1"}).code, 2);
  EXPECT_EQ(run({"eval", "--a", "1", "--b", "1", "--z", "1", "--bogus", "3"}).code, 2);
  EXPECT_EQ(run({"eval", "--a", "1", "--b", "1", "--z", "1", "--variant", "t7"}).code, 2);
  EXPECT_EQ(run({"eval", "--a", "1", "--b", "1", "--z", "1", "--method", "fast"}).code, 2);
  EXPECT_EQ(run({"eval", "--a", "1", "--b", "1", "--z", "1", "--eps", "2"}).code, 2);
  EXPECT_EQ(run({"eval", "--a", "1", "--b", "-2", "--z", "1"}).code, 2);
  EXPECT_EQ(run({"bench", "fig9"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, NumericFailuresExitThree) {
  const Invocation r = run({"roi", "--a", "1", "--b", "10", "--z", "5", "--eps", "1e-6"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("NoPositiveRoot"), std::string::npos);
  const Invocation p = run({"roi", "--a", "2", "--b", "3", "--z", "100", "--eps", "1e-200", "--variant", "t3"});
  EXPECT_EQ(p.code, 3);
  EXPECT_NE(p.err.find("PrecisionBelowMinimum"), std::string::npos);
}

TEST(Cli, BenchWritesCsv) {
  const Invocation r = run({"bench", "fig5", "--z", "100", "1000", "--eps", "1e-12"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("z,eps,roi_variant,roi_terms,ic_terms,reduction,ic_double_overflow\n", 0), 0u);
  EXPECT_NE(r.err.find("# a=2"), std::string::npos);
  std::istringstream in(r.out);
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 3);

  const std::string path = ::testing::TempDir() + "kummer_fig6.csv";
  const Invocation f = run({"bench", "fig6", "--alpha", "1", "--beta", "1", "--gamma", "10", "1000", "--out", path});
  ASSERT_EQ(f.code, 0);
  EXPECT_TRUE(f.out.empty());
  std::ifstream file(path);
  std::string header, first, second;
  std::getline(file, header);
  std::getline(file, first);
  std::getline(file, second);
  EXPECT_EQ(header, "alpha,beta,gamma,ic_log10_range,roi_log10_range,roi_terms");
  EXPECT_NE(second.find("FAILED"), std::string::npos);
  std::remove(path.c_str());
}

TEST(Cli, BenchGridOverridesAndDeterminism) {
  const std::vector<std::string> args = {"bench", "fig3", "--z", "50", "--a-range", "1", "100", "3",
                                         "--b-range", "1", "10", "2"};
  const Invocation a = run(args);
  const Invocation b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::istringstream in(a.out);
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 1 + 3 * 2);
  const Invocation c = run({"bench", "fig1", "--a", "2", "--b", "5", "--k-max", "10"});
  ASSERT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("upper"), std::string::npos);
}
