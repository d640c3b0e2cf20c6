// Copyright 2026 The ivauction Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"
#include "fixtures.hpp"

#include "ivauction/instance_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace iv = ivauction;
namespace fs = std::filesystem;

namespace {

struct Result
{
  int         code = -1;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args)
{
  args.insert(args.begin(), "ivauction");
  std::vector<char const *> argv;
  for (auto const &a : args)
  {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  Result             r;
  r.code = iv::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out  = out.str();
  r.err  = err.str();
  return r;
}

class CliTest : public ::testing::Test
{
protected:
  void SetUp() override
  {
    dir_ = fs::temp_directory_path() /
           ("ivauction_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(std::string const &name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::string const e1 = iv::testing::data_path("e1.json");
std::string const e3 = iv::testing::data_path("e3.json");

}  // namespace

TEST_F(CliTest, RunIsDeterministic)
{
  std::vector<std::string> args{"run", "--instance", e1, "--mechanism", "binary", "--pricing", "welfare",
                                "--signals", "1,1", "--seed", "0", "--trace"};
  auto const a = cli(args);
  auto const b = cli(args);
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("winner="), std::string::npos);
  EXPECT_NE(a.out.find("EVENT"), std::string::npos);
}

TEST_F(CliTest, RunPrintsSeedCoinOutcome)
{
  auto const r = cli({"run", "--instance", e1, "--mechanism", "binary", "--signals", "1,1", "--seed", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  iv::Instance const inst(iv::testing::e1());
  auto const space = iv::coin_space(inst, iv::MechanismKind::Binary, iv::Pricing::Welfare);
  std::mt19937_64 rng(0);
  auto const coins = space.sample(rng);
  auto const out   = iv::run_binary(inst, {1, 1}, coins, iv::Pricing::Welfare).outcome;
  EXPECT_NE(r.out.find(iv::format_coins(coins)), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("winner=" + std::to_string(*out.winner) + " price=" + iv::format_money(out.price)),
            std::string::npos)
      << r.out;
}

TEST_F(CliTest, ClockAndDirectAgree)
{
  auto const direct = cli({"run", "--instance", e3, "--mechanism", "kary", "--signals", "2,2", "--seed", "4"});
  auto const clock  = cli({"run", "--instance", e3, "--mechanism", "kary", "--signals", "2,2", "--seed", "4", "--clock"});
  ASSERT_EQ(direct.code, 0);
  ASSERT_EQ(clock.code, 0);
  auto const last = [](std::string const &s) { return s.substr(s.rfind("winner=")); };
  EXPECT_EQ(last(direct.out), last(clock.out));
}

TEST_F(CliTest, CompatibilityRules)
{
  EXPECT_EQ(cli({"run", "--instance", e3, "--mechanism", "binary", "--signals", "1,1"}).code, 2);
  EXPECT_EQ(cli({"run", "--instance", e1, "--mechanism", "kary", "--signals", "1,1"}).code, 0);
  EXPECT_EQ(cli({"run", "--instance", e1, "--mechanism", "binary", "--signals", "1,2"}).code, 2);
  EXPECT_EQ(cli({"run", "--instance", path("missing.json"), "--signals", "1,1"}).code, 2);
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST_F(CliTest, EvaluateRowsAndRatio)
{
  auto const r = cli({"evaluate", "--instance", e1, "--mechanism", "binary"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "profile,opt,welfare,revenue,p_optimal,ratio,samples");
  EXPECT_NE(r.out.find("\"1,1\",10,11/2"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("worst"), std::string::npos);
  EXPECT_NE(r.out.find("20/11"), std::string::npos);
  auto const mc = cli({"evaluate", "--instance", e1, "--mechanism", "binary", "--samples", "100", "--seed", "3"});
  EXPECT_EQ(mc.code, 0);
  EXPECT_EQ(mc.out, cli({"evaluate", "--instance", e1, "--mechanism", "binary", "--samples", "100", "--seed", "3"}).out);
}

TEST_F(CliTest, EvaluateBudgetAdvisesSampling)
{
  auto const big = path("big.json");
  iv::save_instance_file(big, iv::random_instance(7, 2, 1, iv::RandomFamily::Binary, 1));
  auto const r = cli({"evaluate", "--instance", big, "--mechanism", "binary"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--samples"), std::string::npos) << r.err;
}

TEST_F(CliTest, VerifyExitCodes)
{
  auto const ok = cli({"verify", "--instance", e1, "--mechanism", "binary", "--check", "all"});
  EXPECT_EQ(ok.code, 0) << ok.out << ok.err;
  EXPECT_EQ(ok.out.substr(0, ok.out.find('\n')), "check,instance,mechanism,pricing,result,quantity,witness");

  auto const broken = cli({"verify", "--instance", e1, "--mechanism", "fixture-overcharge", "--check", "icir"});
  EXPECT_EQ(broken.code, 1);
  EXPECT_NE(broken.out.find(",fail,"), std::string::npos);

  auto const big = path("big.json");
  iv::save_instance_file(big, iv::random_instance(5, 3, 1, iv::RandomFamily::Shared, 2));
  EXPECT_EQ(cli({"verify", "--instance", big, "--mechanism", "kary", "--check", "oxp"}).code, 2);
}

TEST_F(CliTest, GenerateFamilies)
{
  auto const out = path("thm11.json");
  ASSERT_EQ(cli({"generate", "--family", "thm11", "--l", "2", "--k", "3", "--M", "100", "--out", out}).code, 0);
  EXPECT_EQ(iv::load_instance_file(out).n(), 7);
  EXPECT_TRUE(fs::exists(out + ".designated"));
  EXPECT_EQ(cli({"verify", "--instance", out, "--check", "certificate", "--designated", out + ".designated"}).code, 0);

  auto const six = path("thm6.json");
  ASSERT_EQ(cli({"generate", "--family", "thm6", "--l", "1", "--k", "2", "--out", six}).code, 0);
  EXPECT_EQ(iv::load_instance_file(six).n(), 2);

  auto const r1 = path("r1.json");
  auto const r2 = path("r2.json");
  ASSERT_EQ(cli({"generate", "--family", "random", "--n", "6", "--k", "2", "--seed", "7", "--out", r1}).code, 0);
  ASSERT_EQ(cli({"generate", "--family", "random", "--n", "6", "--k", "2", "--seed", "7", "--out", r2}).code, 0);
  std::ifstream a(r1);
  std::ifstream b(r2);
  std::stringstream sa;
  std::stringstream sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(cli({"verify", "--instance", r1, "--mechanism", "binary", "--check", "all"}).code, 0);
}
