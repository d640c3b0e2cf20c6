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

#include "fixtures.hpp"

#include "ivauction/clock_runtime.hpp"
#include "ivauction/kary_auction.hpp"

#include <gtest/gtest.h>

#include <map>
#include <stdexcept>

namespace iv = ivauction;

namespace {

iv::ClockResponse ask(iv::Strategy const &s, int level)
{
  return s(iv::DecisionPoint{0, level, {}});
}

std::vector<iv::Strategy> consistent(iv::SignalProfile const &s)
{
  std::vector<iv::Strategy> out;
  for (auto v : s)
  {
    out.push_back(iv::consistent_strategy(v));
  }
  return out;
}

}  // namespace

TEST(ConsistentStrategy, AcceptsUpToSignal)
{
  EXPECT_EQ(ask(iv::consistent_strategy(0), 1), iv::ClockResponse::Exit);
  auto const top = iv::consistent_strategy(2);
  EXPECT_EQ(ask(top, 1), iv::ClockResponse::Accept);
  EXPECT_EQ(ask(top, 2), iv::ClockResponse::Accept);
  auto const mid = iv::consistent_strategy(1);
  EXPECT_EQ(ask(mid, 1), iv::ClockResponse::Accept);
  EXPECT_EQ(ask(mid, 2), iv::ClockResponse::Exit);
}

TEST(RunClock, E1MatchesDirectRun)
{
  iv::Instance const inst(iv::testing::e1());
  iv::CoinRealization c = iv::identity_coins(2);
  c.priority            = {1, 0};
  auto const run = iv::run_clock(inst, iv::ClockMechanism::Binary, consistent({1, 1}), c, iv::Pricing::Welfare);
  ASSERT_TRUE(run.outcome.winner);
  EXPECT_EQ(*run.outcome.winner, 0);
  EXPECT_EQ(run.outcome.price, 10);
  EXPECT_EQ(run.transcript.winner, run.outcome.winner);
  EXPECT_EQ(run.outcome, iv::run_binary(inst, {1, 1}, c, iv::Pricing::Welfare).outcome);
}

TEST(RunClock, EarlyExitNeverWins)
{
  iv::Instance const inst(iv::testing::e1());
  auto strategies = consistent({1, 1});
  strategies[0]   = iv::consistent_strategy(0);
  for (auto p : {std::vector<iv::BidderId>{0, 1}, std::vector<iv::BidderId>{1, 0}})
  {
    iv::CoinRealization c = iv::identity_coins(2);
    c.priority            = p;
    auto const run = iv::run_clock(inst, iv::ClockMechanism::Binary, strategies, c, iv::Pricing::Welfare);
    EXPECT_NE(run.outcome.winner, std::optional<iv::BidderId>(0));
  }
}

TEST(RunClock, StrategyFailureAborts)
{
  iv::Instance const inst(iv::testing::e1());
  std::vector<iv::Strategy> strategies{[](iv::DecisionPoint const &) -> iv::ClockResponse {
                                         throw std::runtime_error("boom");
                                       },
                                       iv::consistent_strategy(1)};
  EXPECT_THROW(iv::run_clock(inst, iv::ClockMechanism::Binary, strategies, iv::identity_coins(2), iv::Pricing::Welfare),
               iv::ClockAbort);
  EXPECT_THROW(iv::run_clock(inst, iv::ClockMechanism::Binary, {iv::consistent_strategy(1)}, iv::identity_coins(2),
                             iv::Pricing::Welfare),
               iv::InvalidInput);
}

TEST(RunClock, ClocksRiseMonotonicallyAndElicitTruth)
{
  for (int k : {3, 4})
  {
    for (auto const &entry : iv::testing::random_suite(iv::RandomFamily::Shared, k, 1, 2, 4, 4, 900))
    {
      iv::Instance const inst(entry.data);
      auto const space = iv::coin_space(inst, iv::MechanismKind::Kary, iv::Pricing::Revenue);
      for (auto const &s : iv::testing::all_profiles(inst.n(), k))
      {
        for (auto const &w : space.enumerate())
        {
          auto const run = iv::run_clock(inst, iv::ClockMechanism::Kary, consistent(s), w.coins, iv::Pricing::Revenue);
          ASSERT_EQ(run.outcome, iv::run_kary(inst, s, w.coins, iv::Pricing::Revenue).outcome);
          std::map<iv::BidderId, int> level;
          std::map<iv::BidderId, bool> exited;
          for (auto const &e : run.transcript.events)
          {
            ASSERT_FALSE(exited[e.bidder]);
            ASSERT_GT(e.level, level[e.bidder]);
            level[e.bidder] = e.level;
            if (e.response == iv::ClockResponse::Exit)
            {
              exited[e.bidder] = true;
              ASSERT_EQ(e.level - 1, s[static_cast<std::size_t>(e.bidder)]);
            }
            else
            {
              ASSERT_LE(e.level, s[static_cast<std::size_t>(e.bidder)]);
            }
          }
        }
      }
    }
  }
}

TEST(ClockTranscript, FormatAndParse)
{
  iv::ClockTranscript t;
  t.events = {{1, 1, iv::ClockResponse::Exit}, {0, 1, iv::ClockResponse::Accept}};
  t.winner = 0;
  t.price  = iv::Money(21, 2);
  auto const text = iv::format_clock_transcript(t);
  EXPECT_EQ(text, "CLOCK 1 1 exit\nCLOCK 0 1 accept\nRESULT 0 10.5\n");
  EXPECT_EQ(iv::parse_clock_transcript(text), t);
  iv::ClockTranscript none;
  EXPECT_EQ(iv::format_clock_transcript(none), "RESULT none 0\n");
  EXPECT_EQ(iv::parse_clock_transcript("RESULT none 0\n"), none);
}
