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

#include "ivauction/binary_auction.hpp"

namespace ivauction {

/// Qualities in [lo, hi] congruent to m modulo k-1, ascending.
std::vector<int> residue_set(int m, int k, int lo, int hi);

/// Signal discovery auction for k signal values and a shared scalar quality.
///
/// The residue coin m restricts attention to qualities q with
/// q mod (k-1) = m; costly and free discoveries narrow [q_min, q_max] by the
/// discovered signal. Pricing and the final guard mirror run_binary, over
/// a price grid of size lcm(1..k).
AuctionRun run_kary(Instance const &inst, SignalProfile const &reports, CoinRealization const &coins,
                    Pricing pricing);

/// Grouped wrapper for shared quality vectors: out-of-group bidders fix their
/// groups' coordinates; the residue and interval apply to the picked group's
/// coordinate only.
AuctionRun run_kary_grouped(Instance const &inst, SignalProfile const &reports, CoinRealization const &coins,
                            Pricing pricing);

}  // namespace ivauction
