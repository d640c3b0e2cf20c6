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

#include "ivauction/coins.hpp"

#include <limits>
#include <numeric>
#include <sstream>

namespace ivauction {

std::string_view to_string(Pricing pricing)
{
  return pricing == Pricing::Welfare ? "welfare" : "revenue";
}

Pricing parse_pricing(std::string_view text)
{
  if (text == "welfare")
  {
    return Pricing::Welfare;
  }
  if (text == "revenue")
  {
    return Pricing::Revenue;
  }
  throw InvalidInput("unknown pricing mode '" + std::string(text) + "'");
}

std::int64_t lcm_upto(int k)
{
  std::int64_t out = 1;
  for (int i = 2; i <= k; ++i)
  {
    out = std::lcm(out, static_cast<std::int64_t>(i));
  }
  return out;
}

CoinRealization identity_coins(int n)
{
  CoinRealization coins;
  coins.priority.resize(static_cast<std::size_t>(n));
  std::iota(coins.priority.begin(), coins.priority.end(), 0);
  return coins;
}

void check_coins(CoinRealization const &coins, int n, int residues, int groups, std::int64_t grid)
{
  if (static_cast<int>(coins.priority.size()) != n)
  {
    throw InvalidInput("priority must list all " + std::to_string(n) + " bidders");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (BidderId b : coins.priority)
  {
    if (b < 0 || b >= n || seen[static_cast<std::size_t>(b)])
    {
      throw InvalidInput("priority is not a permutation of the bidders");
    }
    seen[static_cast<std::size_t>(b)] = true;
  }
  if (coins.residue < 0 || coins.residue >= residues)
  {
    throw InvalidInput("residue coin " + std::to_string(coins.residue) + " outside [0, " +
                       std::to_string(residues - 1) + "]");
  }
  if (coins.group_pick < 0 || coins.group_pick >= groups)
  {
    throw InvalidInput("group coin " + std::to_string(coins.group_pick) + " outside [0, " +
                       std::to_string(groups - 1) + "]");
  }
  if (coins.price_grid < 0 || coins.price_grid >= grid)
  {
    throw InvalidInput("price grid coin " + std::to_string(coins.price_grid) + " outside [0, " +
                       std::to_string(grid - 1) + "]");
  }
}

std::string format_coins(CoinRealization const &coins)
{
  std::string out = "prio=";
  for (std::size_t i = 0; i < coins.priority.size(); ++i)
  {
    out += (i ? "," : "") + std::to_string(coins.priority[i]);
  }
  out += ";res=" + std::to_string(coins.residue);
  out += ";grp=" + std::to_string(coins.group_pick);
  out += ";grid=" + std::to_string(coins.price_grid);
  return out;
}

CoinRealization parse_coins(std::string const &text)
{
  CoinRealization    coins;
  std::istringstream in(text);
  std::string        part;
  while (std::getline(in, part, ';'))
  {
    auto eq = part.find('=');
    if (eq == std::string::npos)
    {
      throw InvalidInput("malformed coin field '" + part + "'");
    }
    auto name  = part.substr(0, eq);
    auto value = part.substr(eq + 1);
    try
    {
      if (name == "prio")
      {
        coins.priority = value.empty() ? std::vector<BidderId>{} : parse_profile_key(value);
      }
      else if (name == "res")
      {
        coins.residue = std::stoi(value);
      }
      else if (name == "grp")
      {
        coins.group_pick = std::stoi(value);
      }
      else if (name == "grid")
      {
        coins.price_grid = std::stoll(value);
      }
      else
      {
        throw InvalidInput("unknown coin field '" + name + "'");
      }
    }
    catch (std::logic_error const &)
    {
      throw InvalidInput("malformed coin field '" + part + "'");
    }
  }
  return coins;
}

std::uint64_t uniform_below(std::mt19937_64 &rng, std::uint64_t bound)
{
  if (bound <= 1)
  {
    return 0;
  }
  std::uint64_t const limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = rng();
  while (draw >= limit)
  {
    draw = rng();
  }
  return draw % bound;
}

CoinRealization draw_coins(std::mt19937_64 &rng, int n, int residues, int groups, std::int64_t grid)
{
  CoinRealization coins = identity_coins(n);
  for (int i = n - 1; i > 0; --i)
  {
    auto j = static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
    std::swap(coins.priority[static_cast<std::size_t>(i)], coins.priority[j]);
  }
  coins.residue    = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(residues)));
  coins.group_pick = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(groups)));
  coins.price_grid = static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(grid)));
  return coins;
}

CoinRealization coins_from_seed(std::uint64_t seed, int n, int residues, int groups, std::int64_t grid)
{
  std::mt19937_64 rng(seed);
  return draw_coins(rng, n, residues, groups, grid);
}

}  // namespace ivauction
