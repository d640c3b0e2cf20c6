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

#include "ivauction/general_auction.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace ivauction {

int rho(Instance const &inst)
{
  int const k     = inst.k();
  int const bound = inst.num_groups() * k * (k - 1) / 2 + 1;
  return std::min(inst.n(), bound);
}

std::int64_t general_grid_size(Instance const &inst)
{
  return static_cast<std::int64_t>(rho(inst)) * lcm_upto(inst.k());
}

namespace {

std::int64_t ipow(int base, int exp)
{
  std::int64_t out = 1;
  for (int e = 0; e < exp; ++e)
  {
    out *= base;
  }
  return out;
}

std::int64_t others_index(SignalProfile const &profile, BidderId bidder, int k)
{
  std::int64_t idx = 0;
  for (std::size_t j = 0; j < profile.size(); ++j)
  {
    if (static_cast<BidderId>(j) != bidder)
    {
      idx = idx * k + profile[j];
    }
  }
  return idx;
}

SignalProfile profile_at(std::int64_t index, int n, int k)
{
  SignalProfile s(static_cast<std::size_t>(n), 0);
  for (int i = n - 1; i >= 0; --i)
  {
    s[static_cast<std::size_t>(i)] = static_cast<Signal>(index % k);
    index /= k;
  }
  return s;
}

// Exact colouring by DSatur order with backtracking.
class Colouring
{
public:
  Colouring(std::vector<std::vector<int>> adjacency, int colours, std::int64_t step_limit)
      : adj_(std::move(adjacency)), colours_(colours), limit_(step_limit), colour_(adj_.size(), -1)
  {
  }

  bool solve() { return extend(0, 0); }

  std::vector<int> const &result() const { return colour_; }

private:
  bool extend(std::size_t coloured, int used)
  {
    if (coloured == adj_.size())
    {
      return true;
    }
    if (++steps_ > limit_)
    {
      throw ResourceLimit("slot assignment search exceeded " + std::to_string(limit_) + " steps");
    }
    std::size_t best     = adj_.size();
    int         best_sat = -1;
    std::size_t best_deg = 0;
    for (std::size_t v = 0; v < adj_.size(); ++v)
    {
      if (colour_[v] >= 0)
      {
        continue;
      }
      std::set<int> seen;
      for (int u : adj_[v])
      {
        if (colour_[static_cast<std::size_t>(u)] >= 0)
        {
          seen.insert(colour_[static_cast<std::size_t>(u)]);
        }
      }
      auto const sat = static_cast<int>(seen.size());
      if (sat > best_sat || (sat == best_sat && adj_[v].size() > best_deg))
      {
        best     = v;
        best_sat = sat;
        best_deg = adj_[v].size();
      }
    }
    int const top = std::min(colours_, used + 1);
    for (int c = 0; c < top; ++c)
    {
      bool clash = std::any_of(adj_[best].begin(), adj_[best].end(),
                               [&](int u) { return colour_[static_cast<std::size_t>(u)] == c; });
      if (clash)
      {
        continue;
      }
      colour_[best] = c;
      if (extend(coloured + 1, std::max(used, c + 1)))
      {
        return true;
      }
      colour_[best] = -1;
    }
    return false;
  }

  std::vector<std::vector<int>> adj_;
  int                           colours_;
  std::int64_t                  limit_;
  std::int64_t                  steps_ = 0;
  std::vector<int>              colour_;
};

}  // namespace

AllocationTable::AllocationTable(int n, int k, int rho, std::vector<Rational> x, std::vector<int> slots)
    : n_(n), k_(k), rho_(rho), x_(std::move(x)), slots_(std::move(slots))
{
}

std::size_t AllocationTable::cell(BidderId bidder, SignalProfile const &profile) const
{
  if (bidder < 0 || bidder >= n_ || static_cast<int>(profile.size()) != n_)
  {
    throw InvalidInput("bidder or profile does not match the allocation table");
  }
  return static_cast<std::size_t>(profile_index(profile, k_) * n_ + bidder);
}

std::size_t AllocationTable::node(BidderId bidder, SignalProfile const &profile) const
{
  return static_cast<std::size_t>(bidder * ipow(k_, n_ - 1) + others_index(profile, bidder, k_));
}

bool AllocationTable::allocated(BidderId bidder, SignalProfile const &profile) const
{
  return x_.at(cell(bidder, profile)) > 0;
}

Rational AllocationTable::probability(BidderId bidder, SignalProfile const &profile) const
{
  return x_.at(cell(bidder, profile));
}

std::vector<BidderId> AllocationTable::positive_bidders(SignalProfile const &profile) const
{
  std::vector<BidderId> out;
  for (BidderId i = 0; i < n_; ++i)
  {
    if (allocated(i, profile))
    {
      out.push_back(i);
    }
  }
  return out;
}

int AllocationTable::slot(BidderId bidder, SignalProfile const &profile) const
{
  cell(bidder, profile);
  return slots_.at(node(bidder, profile));
}

void AllocationTable::set_probability(BidderId bidder, SignalProfile const &profile, Rational value)
{
  x_.at(cell(bidder, profile)) = std::move(value);
}

AllocationTable build_allocation_table(Instance const &inst, std::int64_t budget,
                                       std::optional<std::vector<std::int64_t>> const &order)
{
  int const          n     = inst.n();
  int const          k     = inst.k();
  std::int64_t const total = profile_count(n, k, budget);
  int const          r     = rho(inst);

  std::vector<std::int64_t> visit(static_cast<std::size_t>(total));
  if (order)
  {
    visit = *order;
    std::vector<std::int64_t> sorted = visit;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::int64_t> expected(static_cast<std::size_t>(total));
    std::iota(expected.begin(), expected.end(), 0);
    if (sorted != expected)
    {
      throw InvalidInput("construction order must be a permutation of the profile indices");
    }
  }
  else
  {
    std::iota(visit.begin(), visit.end(), 0);
  }

  std::vector<char> positive(static_cast<std::size_t>(total * n), 0);
  auto at = [&](SignalProfile const &s, BidderId i) -> char & {
    return positive[static_cast<std::size_t>(profile_index(s, k) * n + i)];
  };
  for (std::int64_t idx : visit)
  {
    SignalProfile  s = profile_at(idx, n, k);
    BidderId const i = inst.optimal_bidder(s);
    if (at(s, i) != 0)
    {
      continue;
    }
    for (Signal t = s[static_cast<std::size_t>(i)]; t < k; ++t)
    {
      s[static_cast<std::size_t>(i)] = t;
      at(s, i)                       = 1;
    }
  }

  std::int64_t const nodes_per_bidder = ipow(k, n - 1);
  std::vector<int>   slots(static_cast<std::size_t>(n * nodes_per_bidder), 0);
  if (r == n)
  {
    for (BidderId i = 0; i < n; ++i)
    {
      std::fill_n(slots.begin() + i * nodes_per_bidder, nodes_per_bidder, i);
    }
  }
  else if (r > 1)
  {
    std::vector<std::set<int>> edges(slots.size());
    SignalProfile              s(static_cast<std::size_t>(n), 0);
    do
    {
      std::vector<int> nodes;
      for (BidderId i = 0; i < n; ++i)
      {
        if (at(s, i) != 0)
        {
          nodes.push_back(static_cast<int>(i * nodes_per_bidder + others_index(s, i, k)));
        }
      }
      if (static_cast<int>(nodes.size()) > r)
      {
        throw std::logic_error("more than rho bidders allocated at one profile");
      }
      for (int a : nodes)
      {
        for (int b : nodes)
        {
          if (a != b)
          {
            edges[static_cast<std::size_t>(a)].insert(b);
          }
        }
      }
    } while (next_profile(s, k));
    std::vector<std::vector<int>> adjacency;
    adjacency.reserve(edges.size());
    for (auto const &e : edges)
    {
      adjacency.emplace_back(e.begin(), e.end());
    }
    Colouring colouring(std::move(adjacency), r, 2'000'000);
    if (!colouring.solve())
    {
      throw ResourceLimit("no assignment of " + std::to_string(r) + " slots separates co-allocated bidders");
    }
    slots = colouring.result();
  }
  std::vector<Rational> x(positive.size());
  Rational const        share(1, r);
  for (std::size_t c = 0; c < positive.size(); ++c)
  {
    if (positive[c] != 0)
    {
      x[c] = share;
    }
  }
  return AllocationTable(n, k, r, std::move(x), std::move(slots));
}

bool allocated_closed_form(Instance const &inst, BidderId bidder, SignalProfile const &profile)
{
  inst.check_profile(profile);
  SignalProfile s = profile;
  for (Signal t = 0; t <= profile[static_cast<std::size_t>(bidder)]; ++t)
  {
    s[static_cast<std::size_t>(bidder)] = t;
    if (inst.optimal_bidder(s) == bidder)
    {
      return true;
    }
  }
  return false;
}

Signal threshold_signal(AllocationTable const &table, BidderId bidder, SignalProfile const &profile)
{
  SignalProfile s = profile;
  for (Signal t = 0; t < table.k(); ++t)
  {
    s[static_cast<std::size_t>(bidder)] = t;
    if (table.allocated(bidder, s))
    {
      return t;
    }
  }
  throw NoThreshold("bidder " + std::to_string(bidder) + " is never allocated against these signals");
}

Outcome run_general(Instance const &inst, AllocationTable const &table, SignalProfile const &reports,
                    CoinRealization const &coins, Pricing pricing)
{
  inst.check_profile(reports);
  if (table.n() != inst.n() || table.k() != inst.k() || table.rho() != rho(inst))
  {
    throw InvalidInput("allocation table was built for a different instance");
  }
  std::int64_t const L = lcm_upto(inst.k());
  check_coins(coins, inst.n(), 1, 1, general_grid_size(inst));

  Outcome outcome;
  outcome.pricing = pricing;
  int const slot  = static_cast<int>(coins.price_grid / L);
  auto const positive = table.positive_bidders(reports);
  auto it = std::find_if(positive.begin(), positive.end(),
                         [&](BidderId i) { return table.slot(i, reports) == slot; });
  if (it == positive.end())
  {
    return outcome;
  }
  BidderId const winner = *it;
  int const      k      = inst.k();
  Signal const   t      = threshold_signal(table, winner, reports);
  SignalProfile  at     = reports;
  if (pricing == Pricing::Welfare)
  {
    at[static_cast<std::size_t>(winner)] = t;
    outcome.winner                        = winner;
    outcome.price                         = inst.value(winner, at);
    return outcome;
  }
  auto const offset = static_cast<int>((coins.price_grid % L) * (k - t) / L);
  at[static_cast<std::size_t>(winner)] = t + offset;
  Money const offer                     = inst.value(winner, at);
  if (inst.value(winner, reports) >= offer)
  {
    outcome.winner = winner;
    outcome.price  = offer;
  }
  return outcome;
}

std::string dump_table(AllocationTable const &table)
{
  std::ostringstream out;
  SignalProfile      s(static_cast<std::size_t>(table.n()), 0);
  do
  {
    for (BidderId i = 0; i < table.n(); ++i)
    {
      if (table.allocated(i, s))
      {
        Rational const x = table.probability(i, s);
        out << i << ' ' << profile_key(s) << ' '
            << (x == Rational(1, table.rho()) ? "1/" + std::to_string(table.rho()) : format_fraction(x)) << '\n';
      }
    }
  } while (next_profile(s, table.k()));
  return out.str();
}

}  // namespace ivauction
