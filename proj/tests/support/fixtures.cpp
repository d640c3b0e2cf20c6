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

#include <algorithm>
#include <map>
#include <numeric>

#ifndef IVAUCTION_TEST_DATA_DIR
#error "IVAUCTION_TEST_DATA_DIR must be defined"
#endif

namespace ivauction::testing {

InstanceData e1()
{
  InstanceData d;
  d.n         = 2;
  d.k         = 2;
  d.groups    = {{0, 1}};
  d.valuation = BinarySymmetric{{{0, 0, 10}, {1, 1, 1}}};
  return d;
}

InstanceData e3()
{
  InstanceData d;
  d.n         = 2;
  d.k         = 3;
  d.groups    = {{0, 1}};
  d.valuation = SharedQuality{{{0, 0, 0, 0, 9}, {1, 2, 2, 2, 2}}};
  return d;
}

std::string data_path(std::string const &name)
{
  return std::string(IVAUCTION_TEST_DATA_DIR) + "/" + name;
}

std::vector<SignalProfile> all_profiles(int n, int k)
{
  std::vector<SignalProfile> out;
  SignalProfile              s(static_cast<std::size_t>(n), 0);
  for (;;)
  {
    out.push_back(s);
    int i = n - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == k - 1)
    {
      s[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0)
    {
      return out;
    }
    ++s[static_cast<std::size_t>(i)];
  }
}

std::vector<SuiteEntry> random_suite(RandomFamily family, int k, int l, int n_lo, int n_hi, int count,
                                     std::uint64_t seed)
{
  std::vector<SuiteEntry> out;
  for (int c = 0; c < count; ++c)
  {
    int const n = n_lo + c % (n_hi - n_lo + 1);
    if (n < l)
    {
      continue;
    }
    std::uint64_t const s = seed + static_cast<std::uint64_t>(c);
    out.push_back(SuiteEntry{"n" + std::to_string(n) + "k" + std::to_string(k) + "l" + std::to_string(l) + "s" +
                                 std::to_string(s),
                             random_instance(n, k, l, family, s)});
  }
  return out;
}

namespace {

BidderId argmax(Instance const &inst, SignalProfile const &s)
{
  BidderId best = 0;
  for (BidderId i = 1; i < inst.n(); ++i)
  {
    if (inst.value(i, s) > inst.value(best, s))
    {
      best = i;
    }
  }
  return best;
}

int group_quality(Instance const &inst, int g, SignalProfile const &s)
{
  int q = 0;
  for (BidderId b : inst.group(g))
  {
    q += s[static_cast<std::size_t>(b)];
  }
  return q;
}

struct Knowledge
{
  Instance const       &inst;
  int                   group;
  int                   residue;  // -1 when every quality is admissible
  SignalProfile         known;    // -1 for unknown
  std::vector<BidderId> unknown;

  // Calls f on every completion whose tracked quality is admissible.
  template <class F>
  void each_completion(F &&f) const
  {
    SignalProfile s = known;
    for (BidderId b : unknown)
    {
      s[static_cast<std::size_t>(b)] = 0;
    }
    int const k = inst.k();
    for (;;)
    {
      int const q = group_quality(inst, group, s);
      if (residue < 0 || q % (k - 1) == residue)
      {
        f(s);
      }
      std::size_t p = 0;
      while (p < unknown.size() && s[static_cast<std::size_t>(unknown[p])] == k - 1)
      {
        s[static_cast<std::size_t>(unknown[p])] = 0;
        ++p;
      }
      if (p == unknown.size())
      {
        return;
      }
      ++s[static_cast<std::size_t>(unknown[p])];
    }
  }

  bool possibly_optimal(BidderId j) const
  {
    bool found = false;
    each_completion([&](SignalProfile const &s) { found = found || argmax(inst, s) == j; });
    return found;
  }

  void learn(BidderId b, Signal v)
  {
    known[static_cast<std::size_t>(b)] = v;
    unknown.erase(std::find(unknown.begin(), unknown.end(), b));
  }
};

}  // namespace

Outcome reference_discovery(Instance const &inst, MechanismKind kind, SignalProfile const &reports,
                            CoinRealization const &coins, Pricing pricing)
{
  bool const grouped = kind == MechanismKind::BinaryGrouped || kind == MechanismKind::KaryGrouped;
  bool const kary    = kind == MechanismKind::Kary || kind == MechanismKind::KaryGrouped;
  int const  group   = grouped ? coins.group_pick : 0;

  Knowledge know{inst, group, kary ? coins.residue : -1, SignalProfile(reports.size(), -1), {}};
  for (BidderId b = 0; b < inst.n(); ++b)
  {
    know.unknown.push_back(b);
  }
  for (BidderId b = 0; b < inst.n(); ++b)
  {
    if (inst.group_of(b) != group)
    {
      know.learn(b, reports[static_cast<std::size_t>(b)]);
    }
  }

  std::vector<BidderId> active = inst.group(group);
  std::sort(active.begin(), active.end());
  std::vector<BidderId> rstar;
  while (active.size() > 1)
  {
    BidderId sampled = -1;
    for (BidderId b : coins.priority)
    {
      if (std::find(active.begin(), active.end(), b) != active.end())
      {
        sampled = b;
        break;
      }
    }
    active.erase(std::find(active.begin(), active.end(), sampled));
    rstar.push_back(sampled);
    know.learn(sampled, reports[static_cast<std::size_t>(sampled)]);

    for (bool again = true; again;)
    {
      again = false;
      for (BidderId j : active)
      {
        if (!know.possibly_optimal(j))
        {
          active.erase(std::find(active.begin(), active.end(), j));
          know.learn(j, reports[static_cast<std::size_t>(j)]);
          again = true;
          break;
        }
      }
    }
    rstar.erase(std::remove_if(rstar.begin(), rstar.end(), [&](BidderId j) { return !know.possibly_optimal(j); }),
                rstar.end());
  }

  Outcome out;
  out.pricing = pricing;
  if (active.empty())
  {
    return out;
  }
  BidderId const winner = active.front();

  // Distinct tracked qualities at which the winner is optimal, with her value there.
  std::map<int, Money> levels;
  know.each_completion([&](SignalProfile const &s) {
    if (argmax(inst, s) == winner)
    {
      levels.emplace(group_quality(inst, group, s), inst.value(winner, s));
    }
  });
  if (levels.empty())
  {
    return out;
  }
  auto it = levels.begin();
  if (pricing == Pricing::Revenue)
  {
    std::int64_t const K = lcm_upto(inst.k());
    std::advance(it, static_cast<long>(coins.price_grid * static_cast<std::int64_t>(levels.size()) / K));
  }
  Money const price = it->second;
  if (inst.value(winner, reports) >= price)
  {
    out.winner = winner;
    out.price  = price;
  }
  return out;
}

bool reference_allocated(Instance const &inst, BidderId bidder, SignalProfile const &s)
{
  SignalProfile t = s;
  for (Signal v = s[static_cast<std::size_t>(bidder)]; v >= 0; --v)
  {
    t[static_cast<std::size_t>(bidder)] = v;
    if (argmax(inst, t) == bidder)
    {
      return true;
    }
  }
  return false;
}

}  // namespace ivauction::testing
