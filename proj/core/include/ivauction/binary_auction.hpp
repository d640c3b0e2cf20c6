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

#pragma once

#include "ivauction/coins.hpp"
#include "ivauction/model.hpp"
#include "ivauction/transcript.hpp"

#include <vector>

namespace ivauction {

struct AuctionRun
{
  Outcome    outcome;
  Transcript transcript;
};

/// Bookkeeping of a discovery auction in progress.
struct DiscoveryState
{
  std::vector<BidderId> active;
  std::vector<BidderId> rstar;
  int                   q_min = 0;
  int                   q_max = 0;
};

/// Initial state over n bidders: everyone active, bounds [0, n].
DiscoveryState initial_binary_state(int n);

/// High counts consistent with the state: the integer interval [q_min, q_max].
std::vector<int> candidate_highcounts(DiscoveryState const &state);

/// Signal discovery auction for binary signals and a single expertise group.
///
/// Sampling takes the first still-active bidder in `coins.priority`. Welfare
/// pricing charges the value at the lowest high count where the survivor is
/// optimal; revenue pricing picks among the (at most two) such counts with
/// `coins.price_grid` over a grid of size 2. The survivor is only served when
/// her value at the reported profile covers the price.
AuctionRun run_binary(Instance const &inst, SignalProfile const &reports, CoinRealization const &coins,
                      Pricing pricing);

/// Grouped wrapper: bidders outside group `coins.group_pick` are rejected and
/// their signals learned, then the binary auction runs inside the group with
/// optimality evaluated on full quality vectors.
AuctionRun run_binary_grouped(Instance const &inst, SignalProfile const &reports, CoinRealization const &coins,
                              Pricing pricing);

}  // namespace ivauction
