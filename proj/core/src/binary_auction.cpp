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

#include "ivauction/binary_auction.hpp"

#include "discovery_engine.hpp"

#include <numeric>

namespace ivauction {

DiscoveryState initial_binary_state(int n)
{
  DiscoveryState state;
  state.active.resize(static_cast<std::size_t>(n));
  std::iota(state.active.begin(), state.active.end(), 0);
  state.q_min = 0;
  state.q_max = n;
  return state;
}

std::vector<int> candidate_highcounts(DiscoveryState const &state)
{
  std::vector<int> out;
  for (int q = state.q_min; q <= state.q_max; ++q)
  {
    out.push_back(q);
  }
  return out;
}

namespace {

AuctionRun run(Instance const &inst, SignalProfile const &reports, CoinRealization const &coins, Pricing pricing,
               bool grouped)
{
  if (inst.k() != 2)
  {
    throw InvalidInput("binary auction requires k = 2");
  }
  if (!grouped && inst.num_groups() != 1)
  {
    throw InvalidInput("binary auction requires a single expertise group; use the grouped wrapper");
  }
  inst.check_profile(reports);
  check_coins(coins, inst.n(), 1, grouped ? inst.num_groups() : 1, lcm_upto(2));

  AuctionRun            out;
  detail::DirectSignals source{reports};
  int const             group = grouped ? coins.group_pick : 0;
  out.outcome = detail::run_discovery(inst, group, grouped, detail::BinaryBounds{}, coins, pricing, source,
                                      &out.transcript);
  return out;
}

}  // namespace

AuctionRun run_binary(Instance const &inst, SignalProfile const &reports, CoinRealization const &coins,
                      Pricing pricing)
{
  return run(inst, reports, coins, pricing, false);
}

AuctionRun run_binary_grouped(Instance const &inst, SignalProfile const &reports, CoinRealization const &coins,
                              Pricing pricing)
{
  return run(inst, reports, coins, pricing, true);
}

}  // namespace ivauction
