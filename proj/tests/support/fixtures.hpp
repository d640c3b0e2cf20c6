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
#include "ivauction/generators.hpp"
#include "ivauction/model.hpp"
#include "ivauction/verification.hpp"

#include <string>
#include <vector>

namespace ivauction::testing {

/// Binary symmetric, n = 2: bidder 0 values [0, 0, 10], bidder 1 values [1, 1, 1].
InstanceData e1();

/// Shared quality, n = 2, k = 3: bidder 0 values [0, 0, 0, 0, 9], bidder 1 [1, 2, 2, 2, 2].
InstanceData e3();

std::string data_path(std::string const &name);

/// Every profile of length n over k signals, lexicographic.
std::vector<SignalProfile> all_profiles(int n, int k);

struct SuiteEntry
{
  std::string  name;
  InstanceData data;
};

/// Seeded random instances: `count` instances cycling n over [n_lo, n_hi].
std::vector<SuiteEntry> random_suite(RandomFamily family, int k, int l, int n_lo, int n_hi, int count,
                                     std::uint64_t seed);

/// Reference discovery auction. Tracks the set of bidders whose signals are
/// still unknown and decides optimality by enumerating every completion of
/// those signals, instead of maintaining quality bounds.
Outcome reference_discovery(Instance const &inst, MechanismKind kind, SignalProfile const &reports,
                            CoinRealization const &coins, Pricing pricing);

/// x_i(s) > 0 per the closed form, computed by scanning own signals.
bool reference_allocated(Instance const &inst, BidderId bidder, SignalProfile const &s);

}  // namespace ivauction::testing
