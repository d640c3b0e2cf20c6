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

#include "ivauction/kary_auction.hpp"

#include "discovery_engine.hpp"

namespace ivauction {

std::vector<int> residue_set(int m, int k, int lo, int hi)
{
  if (k < 2)
  {
    throw InvalidInput("k must be >= 2");
  }
  if (m < 0 || m > std::max(k - 2, 0))
  {
    throw InvalidInput("residue " + std::to_string(m) + " outside [0, k-2]");
  }
  std::vector<int> out;
  for (int q = std::max(lo, 0); q <= hi; ++q)
  {
    if (q % (k - 1) == m)
    {
      out.push_back(q);
    }
  }
  return out;
}

namespace {

AuctionRun run(Instance const &inst, SignalProfile const &reports, CoinRealization const &coins, Pricing pricing,
               bool grouped)
{
  if (!inst.quality_based())
  {
    throw InvalidInput("k-ary discovery auction needs values that depend only on quality");
  }
  if (!grouped && inst.num_groups() != 1)
  {
    throw InvalidInput("k-ary auction requires a single expertise group; use the grouped wrapper");
  }
  inst.check_profile(reports);
  int const k = inst.k();
  check_coins(coins, inst.n(), k - 1, grouped ? inst.num_groups() : 1, lcm_upto(k));

  AuctionRun            out;
  detail::DirectSignals source{reports};
  int const             group = grouped ? coins.group_pick : 0;
  out.outcome = detail::run_discovery(inst, group, grouped, detail::ResidueBounds{k, coins.residue}, coins,
                                      pricing, source, &out.transcript);
  return out;
}

}  // namespace

AuctionRun run_kary(Instance const &inst, SignalProfile const &reports, CoinRealization const &coins,
                    Pricing pricing)
{
  return run(inst, reports, coins, pricing, false);
}

AuctionRun run_kary_grouped(Instance const &inst, SignalProfile const &reports, CoinRealization const &coins,
                            Pricing pricing)
{
  return run(inst, reports, coins, pricing, true);
}

}  // namespace ivauction
