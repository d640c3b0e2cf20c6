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

#include "ivauction/verification.hpp"

#include "verification_internal.hpp"

#include <map>
#include <memory>

namespace ivauction {

namespace detail {

namespace {

std::string history_key(DecisionPoint const &point)
{
  std::string key;
  for (auto const &e : point.history)
  {
    key += std::to_string(e.bidder) + '.' + std::to_string(e.level) +
           (e.response == ClockResponse::Accept ? 'a' : 'e') + ';';
  }
  return key + '@' + std::to_string(point.level);
}

struct Path
{
  std::vector<std::string> keys;
  std::vector<bool>        accepts;
  Money                    utility;
};

// Plays the clock auction with every opponent consistent and bidder i
// answering her d-th proposal with bits[d] (exit once bits run out).
Path play(Instance const &inst, MechanismKind kind, Pricing pricing, CoinRealization const &coins,
          SignalProfile const &truth, BidderId i, std::optional<std::vector<bool>> const &bits)
{
  auto                  path = std::make_shared<Path>();
  std::vector<Strategy> strategies;
  for (BidderId b = 0; b < inst.n(); ++b)
  {
    Signal const own = truth[static_cast<std::size_t>(b)];
    if (b != i)
    {
      strategies.push_back(consistent_strategy(own));
      continue;
    }
    strategies.push_back([path, bits, own, i](DecisionPoint const &point) {
      std::size_t decision = 0;
      for (auto const &e : point.history)
      {
        decision += e.bidder == i ? 1 : 0;
      }
      bool accept = bits ? (decision < bits->size() && (*bits)[decision]) : point.level <= own;
      path->keys.push_back(history_key(point));
      path->accepts.push_back(accept);
      return accept ? ClockResponse::Accept : ClockResponse::Exit;
    });
  }
  Outcome const out = run_clock(inst, clock_of(kind), strategies, coins, pricing).outcome;
  path->utility     = utility(inst, i, out, truth);
  return *path;
}

std::string bit_string(std::vector<bool> const &bits)
{
  std::string out;
  for (bool b : bits)
  {
    out += b ? '1' : '0';
  }
  return out;
}

struct Node
{
  Money                                      worst_truthful;
  std::vector<std::pair<SignalProfile, int>> visits;  // (profile, decision index)
};

}  // namespace

std::optional<Witness> oxp_point(Instance const &inst, MechanismKind kind, Pricing pricing,
                                 CoinRealization const &coins, BidderId bidder, Signal signal)
{
  auto const   idx   = static_cast<std::size_t>(bidder);
  int const    depth = 2 * (inst.k() - 1);
  std::map<std::string, Node>       nodes;
  std::map<SignalProfile, Path>     truthful;
  SignalProfile                     s(static_cast<std::size_t>(inst.n()), 0);
  do
  {
    if (s[idx] != signal)
    {
      continue;
    }
    Path path = play(inst, kind, pricing, coins, s, bidder, std::nullopt);
    for (std::size_t d = 0; d < path.keys.size(); ++d)
    {
      auto [it, fresh] = nodes.try_emplace(path.keys[d], Node{path.utility, {}});
      if (!fresh)
      {
        it->second.worst_truthful = std::min(it->second.worst_truthful, path.utility);
      }
      it->second.visits.emplace_back(s, static_cast<int>(d));
    }
    truthful.emplace(s, std::move(path));
  } while (next_profile(s, inst.k()));

  for (auto const &[key, node] : nodes)
  {
    std::optional<Money> best;
    Witness              best_witness;
    for (auto const &[profile, d] : node.visits)
    {
      Path const        &base = truthful.at(profile);
      std::vector<bool>  bits(base.accepts.begin(), base.accepts.begin() + d);
      bits.push_back(!base.accepts[static_cast<std::size_t>(d)]);
      int const free_bits = depth - d - 1;
      for (std::int64_t mask = 0; mask < (std::int64_t{1} << std::max(free_bits, 0)); ++mask)
      {
        std::vector<bool> full = bits;
        for (int b = 0; b < free_bits; ++b)
        {
          full.push_back(((mask >> b) & 1) != 0);
        }
        Money const u = play(inst, kind, pricing, coins, profile, bidder, full).utility;
        if (!best || u > *best)
        {
          best         = u;
          best_witness = Witness{profile, bidder, "decision=" + std::to_string(d) + " bits=" + bit_string(full),
                                 coins, ""};
        }
      }
    }
    if (best && *best > node.worst_truthful)
    {
      best_witness.detail = "history " + key + ": deviation utility " + format_money(*best) + " > worst truthful " +
                            format_money(node.worst_truthful);
      return best_witness;
    }
  }
  return std::nullopt;
}

}  // namespace detail

Report check_oxp(Instance const &inst, MechanismKind kind, Pricing pricing, Budget const &budget)
{
  clock_of(kind);
  if (inst.n() > budget.oxp_n || inst.k() > budget.oxp_k)
  {
    throw ResourceLimit("game-tree enumeration limited to n <= " + std::to_string(budget.oxp_n) + ", k <= " +
                        std::to_string(budget.oxp_k));
  }
  Report       report = detail::make_report("oxp", inst, std::string(to_string(kind)), pricing);
  std::int64_t trees  = 0;
  for (auto const &wc : coin_space(inst, kind, pricing).enumerate())
  {
    for (BidderId i = 0; i < inst.n(); ++i)
    {
      for (Signal v = 0; v < inst.k(); ++v)
      {
        ++trees;
        if (auto w = detail::oxp_point(inst, kind, pricing, wc.coins, i, v))
        {
          detail::fail(report, std::move(*w));
          report.quantity = "trees=" + std::to_string(trees);
          return report;
        }
      }
    }
  }
  report.quantity = "trees=" + std::to_string(trees);
  return report;
}

}  // namespace ivauction
