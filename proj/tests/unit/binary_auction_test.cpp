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

#include "ivauction/binary_auction.hpp"
#include "ivauction/verification.hpp"

#include <gtest/gtest.h>

namespace iv = ivauction;
using iv::testing::e1;

namespace {

iv::CoinRealization prio(std::vector<iv::BidderId> p, std::int64_t grid = 0, int group = 0)
{
  iv::CoinRealization c;
  c.priority   = std::move(p);
  c.price_grid = grid;
  c.group_pick = group;
  return c;
}

}  // namespace

TEST(BinaryAuction, E1FirstSampledIsTheOptimalBidder)
{
  iv::Instance const inst(e1());
  auto const run = iv::run_binary(inst, {1, 1}, prio({0, 1}), iv::Pricing::Welfare);
  ASSERT_TRUE(run.outcome.winner);
  EXPECT_EQ(*run.outcome.winner, 1);
  EXPECT_EQ(run.outcome.price, 1);
}

TEST(BinaryAuction, E1OptimalBidderSurvives)
{
  iv::Instance const inst(e1());
  auto const run = iv::run_binary(inst, {1, 1}, prio({1, 0}), iv::Pricing::Welfare);
  ASSERT_TRUE(run.outcome.winner);
  EXPECT_EQ(*run.outcome.winner, 0);
  EXPECT_EQ(run.outcome.price, 10);
  EXPECT_EQ(inst.value(0, {1, 1}) - run.outcome.price, 0);
  ASSERT_FALSE(run.transcript.events.empty());
  EXPECT_EQ(run.transcript.events.front().kind, iv::EventKind::Costly);
  EXPECT_EQ(run.transcript.events.front().bidder, 1);
  EXPECT_EQ(run.transcript.events.back().kind, iv::EventKind::Termination);
}

TEST(BinaryAuction, SingleBidderPaysValueAtZero)
{
  iv::InstanceData d;
  d.n         = 1;
  d.k         = 2;
  d.groups    = {{0}};
  d.valuation = iv::BinarySymmetric{{{4, 6}}};
  iv::Instance const inst(d);
  auto const run = iv::run_binary(inst, {1}, prio({0}), iv::Pricing::Welfare);
  ASSERT_TRUE(run.outcome.winner);
  EXPECT_EQ(*run.outcome.winner, 0);
  EXPECT_EQ(run.outcome.price, 4);
}

TEST(BinaryAuction, CandidateHighCounts)
{
  iv::DiscoveryState s;
  s.q_min = 1;
  s.q_max = 2;
  EXPECT_EQ(iv::candidate_highcounts(s), (std::vector<int>{1, 2}));
  s.q_min = s.q_max = 3;
  EXPECT_EQ(iv::candidate_highcounts(s), (std::vector<int>{3}));
  EXPECT_EQ(iv::candidate_highcounts(iv::initial_binary_state(4)), (std::vector<int>{0, 1, 2, 3, 4}));
  EXPECT_EQ(iv::initial_binary_state(4).active.size(), 4u);
}

TEST(BinaryAuction, RejectsIncompatibleInput)
{
  iv::Instance const e3(iv::testing::e3());
  EXPECT_THROW(iv::run_binary(e3, {0, 0}, prio({0, 1}), iv::Pricing::Welfare), iv::InvalidInput);
  iv::Instance const inst(e1());
  EXPECT_THROW(iv::run_binary(inst, {1}, prio({0, 1}), iv::Pricing::Welfare), iv::InvalidInput);
  EXPECT_THROW(iv::run_binary(inst, {1, 2}, prio({0, 1}), iv::Pricing::Welfare), iv::InvalidInput);
  EXPECT_THROW(iv::run_binary(inst, {1, 1}, prio({0, 0}), iv::Pricing::Welfare), iv::InvalidInput);
  EXPECT_THROW(iv::run_binary(inst, {1, 1}, prio({0, 1}, 2), iv::Pricing::Revenue), iv::InvalidInput);
}

TEST(BinaryAuction, TranscriptRoundTripsAndIsDeterministic)
{
  for (auto const &entry : iv::testing::random_suite(iv::RandomFamily::Binary, 2, 1, 2, 5, 6, 100))
  {
    iv::Instance const inst(entry.data);
    auto const space = iv::coin_space(inst, iv::MechanismKind::Binary, iv::Pricing::Revenue);
    for (auto const &s : iv::testing::all_profiles(inst.n(), 2))
    {
      for (auto const &w : space.enumerate())
      {
        auto const a = iv::run_binary(inst, s, w.coins, iv::Pricing::Revenue);
        auto const b = iv::run_binary(inst, s, w.coins, iv::Pricing::Revenue);
        ASSERT_EQ(a.outcome, b.outcome);
        ASSERT_EQ(a.transcript, b.transcript);
        ASSERT_EQ(iv::parse_transcript(iv::format_transcript(a.transcript)), a.transcript);
      }
    }
  }
}

TEST(BinaryAuction, MatchesReferenceOracle)
{
  for (auto const &entry : iv::testing::random_suite(iv::RandomFamily::Binary, 2, 1, 2, 5, 8, 200))
  {
    iv::Instance const inst(entry.data);
    for (auto pricing : {iv::Pricing::Welfare, iv::Pricing::Revenue})
    {
      auto const space = iv::coin_space(inst, iv::MechanismKind::Binary, pricing);
      for (auto const &s : iv::testing::all_profiles(inst.n(), 2))
      {
        for (auto const &w : space.enumerate())
        {
          auto const got  = iv::run_binary(inst, s, w.coins, pricing).outcome;
          auto const want = iv::testing::reference_discovery(inst, iv::MechanismKind::Binary, s, w.coins, pricing);
          ASSERT_EQ(got, want) << entry.name << " " << iv::profile_key(s) << " " << iv::format_coins(w.coins);
        }
      }
    }
  }
}

TEST(BinaryAuction, IrGuardHoldsOnEveryRun)
{
  for (auto const &entry : iv::testing::random_suite(iv::RandomFamily::Binary, 2, 1, 2, 5, 6, 300))
  {
    iv::Instance const inst(entry.data);
    auto const space = iv::coin_space(inst, iv::MechanismKind::Binary, iv::Pricing::Revenue);
    for (auto const &s : iv::testing::all_profiles(inst.n(), 2))
    {
      for (auto const &w : space.enumerate())
      {
        auto const out = iv::run_binary(inst, s, w.coins, iv::Pricing::Revenue).outcome;
        if (out.winner)
        {
          ASSERT_LE(out.price, inst.value(*out.winner, s));
        }
      }
    }
  }
}

TEST(BinaryGrouped, SingleGroupMatchesPlain)
{
  iv::Instance const inst(iv::random_instance(4, 2, 1, iv::RandomFamily::Binary, 3));
  for (auto pricing : {iv::Pricing::Welfare, iv::Pricing::Revenue})
  {
    auto const space = iv::coin_space(inst, iv::MechanismKind::BinaryGrouped, pricing);
    for (auto const &s : iv::testing::all_profiles(4, 2))
    {
      for (auto const &w : space.enumerate())
      {
        EXPECT_EQ(iv::run_binary_grouped(inst, s, w.coins, pricing).outcome,
                  iv::run_binary(inst, s, w.coins, pricing).outcome);
      }
    }
  }
}

TEST(BinaryGrouped, OutOfGroupBiddersAreRejectedFirst)
{
  iv::InstanceData d = iv::random_instance(4, 2, 2, iv::RandomFamily::Shared, 8);
  iv::Instance const inst(d);
  iv::SignalProfile const s{1, 1, 1, 1};
  int const opt_group = inst.group_of(inst.optimal_bidder(s));
  int const other     = 1 - opt_group;
  auto const run = iv::run_binary_grouped(inst, s, prio({0, 1, 2, 3}, 0, other), iv::Pricing::Welfare);
  ASSERT_FALSE(run.transcript.events.empty());
  EXPECT_EQ(run.transcript.events.front().kind, iv::EventKind::OutOfGroup);
  bool saw_opt = false;
  for (auto const &e : run.transcript.events)
  {
    if (e.kind == iv::EventKind::OutOfGroup && e.bidder == inst.optimal_bidder(s))
    {
      saw_opt = true;
    }
  }
  EXPECT_TRUE(saw_opt);
  EXPECT_NE(run.outcome.winner, std::optional<iv::BidderId>(inst.optimal_bidder(s)));
}

TEST(BinaryGrouped, SingletonGroupOfOptimalBidderWins)
{
  iv::InstanceData d;
  d.n      = 2;
  d.k      = 2;
  d.groups = {{0}, {1}};
  iv::SharedQualityGrouped m;
  m.tables.resize(2);
  for (auto const &q : iv::all_quality_vectors(2, d.groups))
  {
    m.tables[0][q] = 5 + q[0] + q[1];
    m.tables[1][q] = q[1];
  }
  d.valuation = m;
  iv::Instance const inst(d);
  iv::SignalProfile const s{1, 1};
  ASSERT_EQ(inst.optimal_bidder(s), 0);
  auto const run = iv::run_binary_grouped(inst, s, prio({1, 0}, 0, 0), iv::Pricing::Welfare);
  ASSERT_TRUE(run.outcome.winner);
  EXPECT_EQ(*run.outcome.winner, 0);
  EXPECT_EQ(run.outcome.price, 6);
}

TEST(BinaryGrouped, MatchesReferenceOracle)
{
  for (int l : {2, 3})
  {
    for (auto const &entry : iv::testing::random_suite(iv::RandomFamily::Shared, 2, l, 3, 5, 4, 400))
    {
      iv::Instance const inst(entry.data);
      for (auto pricing : {iv::Pricing::Welfare, iv::Pricing::Revenue})
      {
        auto const space = iv::coin_space(inst, iv::MechanismKind::BinaryGrouped, pricing);
        for (auto const &s : iv::testing::all_profiles(inst.n(), 2))
        {
          for (auto const &w : space.enumerate())
          {
            ASSERT_EQ(iv::run_binary_grouped(inst, s, w.coins, pricing).outcome,
                      iv::testing::reference_discovery(inst, iv::MechanismKind::BinaryGrouped, s, w.coins, pricing))
                << entry.name << " " << iv::profile_key(s) << " " << iv::format_coins(w.coins);
          }
        }
      }
    }
  }
}
