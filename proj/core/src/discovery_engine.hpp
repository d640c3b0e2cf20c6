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

// Signal-discovery schedule shared by the direct mechanisms and their clock
// implementations. The engine never reads reports directly: every signal it
// learns comes from a Source, so the same schedule can be driven by a report
// vector or by ascending clocks.
//
// Source requirements:
//   Signal discover(BidderId b);                    // learn b's signal (b leaves play)
//   bool final_offer(BidderId b, Meets meets);      // meets(t): would own signal t afford the price?

#include "ivauction/coins.hpp"
#include "ivauction/model.hpp"
#include "ivauction/transcript.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace ivauction::detail {

/// Binary updates: a low signal drops q_max, a high one raises q_min.
struct BinaryBounds
{
  int k = 2;

  int  initial_max(int members) const { return members; }
  bool admissible(int) const { return true; }
  void on_discovery(Signal s, int &q_min, int &q_max) const
  {
    if (s == 0)
    {
      --q_max;
    }
    else
    {
      ++q_min;
    }
  }
};

/// k-ary updates restricted to qualities congruent to `residue` mod k-1.
struct ResidueBounds
{
  int k       = 2;
  int residue = 0;

  int  initial_max(int members) const { return members * (k - 1); }
  bool admissible(int q) const { return q % (k - 1) == residue; }
  void on_discovery(Signal s, int &q_min, int &q_max) const
  {
    q_max -= (k - 1 - s);
    q_min += s;
  }
};

struct DirectSignals
{
  SignalProfile const &reports;

  Signal discover(BidderId b) { return reports[static_cast<std::size_t>(b)]; }

  template <class Meets>
  bool final_offer(BidderId b, Meets &&meets)
  {
    return meets(reports[static_cast<std::size_t>(b)]);
  }
};

/// Runs the discovery auction among the bidders of `group`. When
/// `reject_outside` is set, every bidder outside the group is rejected first
/// and her signal fixes her group's quality coordinate.
template <class Bounds, class Source>
Outcome run_discovery(Instance const &inst, int group, bool reject_outside, Bounds const &bounds,
                      CoinRealization const &coins, Pricing pricing, Source &source, Transcript *log)
{
  int const                    n       = inst.n();
  std::vector<BidderId> const &members = inst.group(group);
  auto const                   members_n = static_cast<int>(members.size());

  auto record = [&](EventKind kind, BidderId b, Signal s, int lo, int hi) {
    if (log != nullptr)
    {
      log->events.push_back(DiscoveryEvent{kind, b, s, lo, hi, TerminationReason::SingleSurvivor});
    }
  };
  auto terminate = [&](TerminationReason reason, BidderId b, int lo, int hi) {
    if (log != nullptr)
    {
      log->events.push_back(DiscoveryEvent{EventKind::Termination, b, -1, lo, hi, reason});
    }
  };

  QualityVector quality(static_cast<std::size_t>(inst.num_groups()), 0);
  int           q_min = 0;
  int           q_max = bounds.initial_max(members_n);

  if (reject_outside)
  {
    for (BidderId b = 0; b < n; ++b)
    {
      if (inst.group_of(b) != group)
      {
        Signal const s = source.discover(b);
        quality[static_cast<std::size_t>(inst.group_of(b))] += s;
        record(EventKind::OutOfGroup, b, s, q_min, q_max);
      }
    }
  }

  std::vector<int> rank(static_cast<std::size_t>(n), 0);
  for (std::size_t pos = 0; pos < coins.priority.size(); ++pos)
  {
    rank[static_cast<std::size_t>(coins.priority[pos])] = static_cast<int>(pos);
  }

  auto optimal_at = [&](int q) {
    quality[static_cast<std::size_t>(group)] = q;
    return inst.optimal_at_quality(quality);
  };
  auto optimal_somewhere = [&](BidderId j) {
    for (int q = q_min; q <= q_max; ++q)
    {
      if (bounds.admissible(q) && optimal_at(q) == j)
      {
        return true;
      }
    }
    return false;
  };

  std::vector<BidderId> active(members.begin(), members.end());  // ascending ids
  std::vector<BidderId> rstar;                                   // ascending ids
  std::vector<Signal>   learned(static_cast<std::size_t>(n), -1);

  while (active.size() > 1)
  {
    // Costly discovery of the first active bidder in priority order.
    auto sampled = std::min_element(active.begin(), active.end(), [&](BidderId a, BidderId b) {
      return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)];
    });
    BidderId const i = *sampled;
    active.erase(sampled);
    rstar.insert(std::upper_bound(rstar.begin(), rstar.end(), i), i);
    Signal const s = source.discover(i);
    learned[static_cast<std::size_t>(i)] = s;
    bounds.on_discovery(s, q_min, q_max);
    record(EventKind::Costly, i, s, q_min, q_max);

    // Free discoveries, lowest id first.
    for (;;)
    {
      auto it = std::find_if(active.begin(), active.end(), [&](BidderId j) { return !optimal_somewhere(j); });
      if (it == active.end())
      {
        break;
      }
      BidderId const j = *it;
      active.erase(it);
      Signal const sj = source.discover(j);
      learned[static_cast<std::size_t>(j)] = sj;
      bounds.on_discovery(sj, q_min, q_max);
      record(EventKind::Free, j, sj, q_min, q_max);
    }

    for (;;)
    {
      auto it = std::find_if(rstar.begin(), rstar.end(), [&](BidderId j) { return !optimal_somewhere(j); });
      if (it == rstar.end())
      {
        break;
      }
      BidderId const j = *it;
      rstar.erase(it);
      record(EventKind::Cleanup, j, learned[static_cast<std::size_t>(j)], q_min, q_max);
    }
  }

  Outcome outcome;
  outcome.pricing = pricing;
  if (active.empty())
  {
    terminate(TerminationReason::ActiveEmpty, -1, q_min, q_max);
    return outcome;
  }

  BidderId const   winner = active.front();
  std::vector<int> candidates;
  for (int q = q_min; q <= q_max; ++q)
  {
    if (bounds.admissible(q) && optimal_at(q) == winner)
    {
      candidates.push_back(q);
    }
  }
  if (candidates.empty())
  {
    terminate(TerminationReason::NoOptimalLevel, winner, q_min, q_max);
    return outcome;
  }
  if (candidates.size() > 2)
  {
    // The survivor's own signal moves the quality by at most k-1 and
    // admissible levels are k-1 apart.
    throw std::logic_error("survivor optimal at more than two candidate levels");
  }

  int price_level = candidates.front();
  if (pricing == Pricing::Revenue)
  {
    std::int64_t const grid = lcm_upto(bounds.k);
    auto const         pick = coins.price_grid * static_cast<std::int64_t>(candidates.size()) / grid;
    price_level             = candidates[static_cast<std::size_t>(pick)];
  }
  quality[static_cast<std::size_t>(group)] = price_level;
  Money const price                        = inst.value_at_quality(winner, quality);

  int const base = q_min;
  auto meets     = [&](Signal t) {
    quality[static_cast<std::size_t>(group)] = base + t;
    return inst.value_at_quality(winner, quality) >= price;
  };
  bool const sold = source.final_offer(winner, meets);
  terminate(TerminationReason::SingleSurvivor, winner, q_min, q_max);
  if (sold)
  {
    outcome.winner = winner;
    outcome.price  = price;
  }
  return outcome;
}

}  // namespace ivauction::detail
