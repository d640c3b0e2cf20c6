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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ivauction {

/// min{n, l * k(k-1)/2 + 1}.
int rho(Instance const &inst);

/// Grid size of the general mechanism's price coin: rho * lcm(1..k).
std::int64_t general_grid_size(Instance const &inst);

/// Allocation probabilities x_i(s) in {0, 1/rho}, plus the slot of every
/// (bidder, others' signals) node used to couple winners.
class AllocationTable
{
public:
  AllocationTable() = default;
  AllocationTable(int n, int k, int rho, std::vector<Rational> x, std::vector<int> slots);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  int rho() const noexcept { return rho_; }

  bool     allocated(BidderId bidder, SignalProfile const &profile) const;
  Rational probability(BidderId bidder, SignalProfile const &profile) const;

  /// Bidders with positive probability at `profile`, ascending.
  std::vector<BidderId> positive_bidders(SignalProfile const &profile) const;

  /// Slot in [0, rho) of the node (bidder, profile without the bidder's coordinate).
  int slot(BidderId bidder, SignalProfile const &profile) const;

  /// Overwrites one entry; used to exercise the table checker.
  void set_probability(BidderId bidder, SignalProfile const &profile, Rational value);

  bool operator==(AllocationTable const &) const = default;

private:
  std::size_t cell(BidderId bidder, SignalProfile const &profile) const;
  std::size_t node(BidderId bidder, SignalProfile const &profile) const;

  int                   n_   = 0;
  int                   k_   = 2;
  int                   rho_ = 1;
  std::vector<Rational> x_;      // [profile index * n + bidder]
  std::vector<int>      slots_;  // [bidder * k^(n-1) + others index]
};

/// Builds the table by visiting profiles in lexicographic order (or in the
/// given order of profile indices) and, at each profile whose optimal bidder
/// is unallocated, allocating her there and at every profile raising only
/// her signal. Throws ResourceLimit if k^n exceeds `budget` or no valid slot
/// assignment with rho slots exists.
AllocationTable build_allocation_table(Instance const &inst, std::int64_t budget = 1 << 20,
                                       std::optional<std::vector<std::int64_t>> const &order = std::nullopt);

/// x_i(s) > 0 iff some t <= s_i makes i optimal at (t, s_-i).
bool allocated_closed_form(Instance const &inst, BidderId bidder, SignalProfile const &profile);

/// Smallest own signal at which the bidder is allocated, others fixed at
/// `profile`. Throws NoThreshold if there is none.
Signal threshold_signal(AllocationTable const &table, BidderId bidder, SignalProfile const &profile);

/// One draw of the general mechanism. The grid coin selects slot
/// grid / lcm(1..k); the positive bidder holding that slot (if any) wins.
/// Welfare pricing charges her value at her threshold signal; revenue pricing
/// offers her value at t-hat = t + floor((grid mod L)(k - t) / L) and sells
/// only if her reported value covers it.
Outcome run_general(Instance const &inst, AllocationTable const &table, SignalProfile const &reports,
                    CoinRealization const &coins, Pricing pricing);

/// Lines `bidder profile 1/rho` for every positive entry, profiles in
/// lexicographic order, bidders ascending.
std::string dump_table(AllocationTable const &table);

}  // namespace ivauction
