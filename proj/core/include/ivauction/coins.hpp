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

#include "ivauction/model.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace ivauction {

/// All randomness a mechanism consumes, reified so every run is a
/// deterministic function of (instance, reports, coins).
struct CoinRealization
{
  /// Bidder ids in sampling order: the first still-active entry is sampled next.
  std::vector<BidderId> priority;
  int                   residue    = 0;  // in [0, max(k-2, 0)]
  int                   group_pick = 0;  // 0-based group index
  std::int64_t          price_grid = 0;  // in [0, K-1]

  bool operator==(CoinRealization const &) const = default;
};

enum class Pricing
{
  Welfare,
  Revenue,
};

std::string_view to_string(Pricing pricing);
Pricing          parse_pricing(std::string_view text);

struct Outcome
{
  std::optional<BidderId> winner;
  Money                   price = 0;
  Pricing                 pricing = Pricing::Welfare;

  bool operator==(Outcome const &) const = default;
};

/// lcm(1, ..., k): the price grid size of the discovery auctions.
std::int64_t lcm_upto(int k);

CoinRealization identity_coins(int n);

/// Throws InvalidInput unless `priority` is a permutation of 0..n-1 and the
/// scalar coins are within the given ranges.
void check_coins(CoinRealization const &coins, int n, int residues, int groups, std::int64_t grid);

/// "prio=1,0;res=0;grp=0;grid=1"
std::string   format_coins(CoinRealization const &coins);
CoinRealization parse_coins(std::string const &text);

/// Uniform integer in [0, bound) from a 64-bit engine by rejection; unlike
/// std::uniform_int_distribution the draw sequence is identical on every
/// standard library.
std::uint64_t uniform_below(std::mt19937_64 &rng, std::uint64_t bound);

/// Expands a seed into one coin realization: a Fisher-Yates permutation of
/// the bidders from sequential uniform draws, then residue, group and grid
/// index, in that order.
CoinRealization coins_from_seed(std::uint64_t seed, int n, int residues, int groups, std::int64_t grid);

/// Same expansion, continuing from an existing engine.
CoinRealization draw_coins(std::mt19937_64 &rng, int n, int residues, int groups, std::int64_t grid);

}  // namespace ivauction
