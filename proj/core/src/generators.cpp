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

#include "ivauction/generators.hpp"

#include "ivauction/coins.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace ivauction {

namespace {

Money power(Money const &base, int exp)
{
  Money out = 1;
  for (int e = 0; e < exp; ++e)
  {
    out *= base;
  }
  return out;
}

// count of group members with signal >= x, per group and x, from a histogram
int count_at_least(Histogram const &h, int k, int g, int x)
{
  int c = 0;
  for (int v = x; v < k; ++v)
  {
    c += h[static_cast<std::size_t>(g * k + v)];
  }
  return c;
}

bool dominates(Histogram const &upper, Histogram const &lower, int k, int groups)
{
  for (int g = 0; g < groups; ++g)
  {
    for (int x = 1; x < k; ++x)
    {
      if (count_at_least(upper, k, g, x) < count_at_least(lower, k, g, x))
      {
        return false;
      }
    }
  }
  return true;
}

Histogram histogram_for(SignalProfile const &s, std::vector<int> const &group_of, int k, int groups)
{
  Histogram h(static_cast<std::size_t>(groups * k), 0);
  for (std::size_t b = 0; b < s.size(); ++b)
  {
    ++h[static_cast<std::size_t>(group_of[b] * k + s[b])];
  }
  return h;
}

void require(bool ok, std::string const &message)
{
  if (!ok)
  {
    throw InvalidInput(message);
  }
}

}  // namespace

FamilyInstance general_lower_bound_family(int l, int k, Money const &M)
{
  require(l >= 1, "l must be >= 1");
  require(k >= 2, "k must be >= 2");
  require(M > 1, "M must exceed 1");

  struct Expert
  {
    int i, j, g;
  };
  std::vector<Expert> experts;
  for (int g = 0; g < l; ++g)
  {
    for (int i = 1; i < k; ++i)
    {
      for (int j = 0; j < i; ++j)
      {
        experts.push_back({i, j, g});
      }
    }
  }
  int const n       = static_cast<int>(experts.size()) + 1;
  int const special = n - 1;

  FamilyInstance fam;
  fam.scale = M;
  fam.data.n = n;
  fam.data.k = k;
  fam.data.groups.assign(static_cast<std::size_t>(l), {});
  std::vector<int> group_of(static_cast<std::size_t>(n), 0);
  fam.common_profile.assign(static_cast<std::size_t>(n), 0);
  for (int b = 0; b < special; ++b)
  {
    auto const &e = experts[static_cast<std::size_t>(b)];
    group_of[static_cast<std::size_t>(b)] = e.g;
    fam.data.groups[static_cast<std::size_t>(e.g)].push_back(b);
    fam.common_profile[static_cast<std::size_t>(b)] = e.i;
    fam.labels.push_back("(" + std::to_string(e.i) + "," + std::to_string(e.j) + "," + std::to_string(e.g) + ")");
  }
  fam.data.groups[0].push_back(special);
  fam.labels.push_back("special");

  std::vector<Histogram> targets;
  for (int b = 0; b < special; ++b)
  {
    auto const   &e       = experts[static_cast<std::size_t>(b)];
    SignalProfile lowered = fam.common_profile;
    lowered[static_cast<std::size_t>(b)] = e.j;
    fam.designated.push_back(DesignatedPair{lowered, b});
    targets.push_back(histogram_for(lowered, group_of, k, l));
  }
  fam.designated.push_back(DesignatedPair{fam.common_profile, special});
  Histogram const top = histogram_for(fam.common_profile, group_of, k, l);

  GeneralSymmetric model;
  model.tables.assign(static_cast<std::size_t>(n), {});
  Money const high = power(M, k);
  for (Histogram const &h : all_histograms(k, fam.data.groups))
  {
    for (int b = 0; b < special; ++b)
    {
      bool const on = dominates(h, targets[static_cast<std::size_t>(b)], k, l);
      model.tables[static_cast<std::size_t>(b)][h] =
          on ? power(M, experts[static_cast<std::size_t>(b)].j) : Money(0);
    }
    model.tables[static_cast<std::size_t>(special)][h] = dominates(h, top, k, l) ? high : Money(0);
  }
  fam.data.valuation = std::move(model);
  return fam;
}

FamilyInstance shared_quality_lower_bound_family(int l, int k, Money const &H)
{
  require(l >= 1, "l must be >= 1");
  require(k >= 2, "k must be >= 2");
  require(H > 1, "H must exceed 1");

  int const n       = l * (k - 1) + 1;
  int const special = n - 1;

  FamilyInstance fam;
  fam.scale  = H;
  fam.data.n = n;
  fam.data.k = k;
  fam.data.groups.assign(static_cast<std::size_t>(l), {});
  fam.common_profile.assign(static_cast<std::size_t>(n), 0);

  std::vector<int> weight(static_cast<std::size_t>(l), 1);
  for (int g = 1; g < l; ++g)
  {
    weight[static_cast<std::size_t>(g)] = weight[static_cast<std::size_t>(g - 1)] * k;
  }
  std::vector<int> drop(static_cast<std::size_t>(n), 0);  // S - threshold
  int              b = 0;
  for (int g = 0; g < l; ++g)
  {
    for (int d = 1; d < k; ++d, ++b)
    {
      fam.data.groups[static_cast<std::size_t>(g)].push_back(b);
      fam.common_profile[static_cast<std::size_t>(b)] = k - 1;
      drop[static_cast<std::size_t>(b)]               = d * weight[static_cast<std::size_t>(g)];
      fam.labels.push_back("(" + std::to_string(d) + "," + std::to_string(g) + ")");
    }
  }
  fam.data.groups[0].push_back(special);
  fam.labels.push_back("special");

  int S = 0;
  for (int g = 0; g < l; ++g)
  {
    S += weight[static_cast<std::size_t>(g)] * (k - 1) * (k - 1);
  }

  // Rank by threshold: the special bidder (drop 0) ranks highest.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int c) { return drop[static_cast<std::size_t>(a)] > drop[static_cast<std::size_t>(c)]; });
  std::vector<Money> amount(static_cast<std::size_t>(n));
  for (std::size_t r = 0; r < order.size(); ++r)
  {
    amount[static_cast<std::size_t>(order[r])] = power(H, static_cast<int>(r));
  }

  for (int i = 0; i < special; ++i)
  {
    SignalProfile lowered = fam.common_profile;
    int const     d       = drop[static_cast<std::size_t>(i)] / weight[static_cast<std::size_t>(i / (k - 1))];
    lowered[static_cast<std::size_t>(i)] -= d;
    fam.designated.push_back(DesignatedPair{lowered, i});
  }
  fam.designated.push_back(DesignatedPair{fam.common_profile, special});

  SharedQualityGrouped model;
  model.tables.assign(static_cast<std::size_t>(n), {});
  for (QualityVector const &q : all_quality_vectors(k, fam.data.groups))
  {
    int t = 0;
    for (int g = 0; g < l; ++g)
    {
      t += weight[static_cast<std::size_t>(g)] * q[static_cast<std::size_t>(g)];
    }
    for (int i = 0; i < n; ++i)
    {
      model.tables[static_cast<std::size_t>(i)][q] =
          t >= S - drop[static_cast<std::size_t>(i)] ? amount[static_cast<std::size_t>(i)] : Money(0);
    }
  }
  fam.data.valuation = std::move(model);
  return fam;
}

RandomFamily parse_random_family(std::string_view text)
{
  if (text == "binary")
  {
    return RandomFamily::Binary;
  }
  if (text == "shared")
  {
    return RandomFamily::Shared;
  }
  if (text == "general")
  {
    return RandomFamily::General;
  }
  throw InvalidInput("unknown random family '" + std::string(text) + "'");
}

namespace {

// Non-negative increment; zero about half the time so ties and flat regions occur.
Money increment(std::mt19937_64 &rng)
{
  if (uniform_below(rng, 2) == 0)
  {
    return 0;
  }
  return Money(static_cast<long long>(1 + uniform_below(rng, 8)));
}

std::vector<Money> monotone_table(std::mt19937_64 &rng, int size)
{
  std::vector<Money> out(static_cast<std::size_t>(size));
  Money              acc = 0;
  for (auto &v : out)
  {
    acc += increment(rng);
    v = acc;
  }
  return out;
}

}  // namespace

InstanceData random_instance(int n, int k, int l, RandomFamily family, std::uint64_t seed)
{
  require(n >= 1, "n must be >= 1");
  require(k >= 2, "k must be >= 2");
  require(l >= 1 && l <= n, "l must be in [1, n]");
  require(family != RandomFamily::Binary || k == 2, "the binary family needs k = 2");

  std::mt19937_64 rng(seed);
  InstanceData    data;
  data.n = n;
  data.k = k;

  std::vector<BidderId> ids(static_cast<std::size_t>(n));
  std::iota(ids.begin(), ids.end(), 0);
  for (int i = n - 1; i > 0; --i)
  {
    auto const j = static_cast<std::size_t>(uniform_below(rng, static_cast<std::uint64_t>(i + 1)));
    std::swap(ids[static_cast<std::size_t>(i)], ids[j]);
  }
  data.groups.assign(static_cast<std::size_t>(l), {});
  for (std::size_t p = 0; p < ids.size(); ++p)
  {
    data.groups[p % static_cast<std::size_t>(l)].push_back(ids[p]);
  }
  for (auto &g : data.groups)
  {
    std::sort(g.begin(), g.end());
  }

  if (family == RandomFamily::General)
  {
    // Per bidder: weights on "members of group g with signal >= x" plus one
    // step bonus on a single such count.
    GeneralSymmetric model;
    for (int b = 0; b < n; ++b)
    {
      std::vector<Money> w(static_cast<std::size_t>(l * (k - 1)));
      for (auto &x : w)
      {
        x = increment(rng);
      }
      int const   bg    = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(l)));
      int const   bx    = 1 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(k - 1)));
      int const   bc    = 1 + static_cast<int>(uniform_below(rng, data.groups[static_cast<std::size_t>(bg)].size()));
      Money const bonus = increment(rng) * 5;
      std::map<Histogram, Money> table;
      for (Histogram const &h : all_histograms(k, data.groups))
      {
        Money v = 0;
        for (int g = 0; g < l; ++g)
        {
          for (int x = 1; x < k; ++x)
          {
            v += w[static_cast<std::size_t>(g * (k - 1) + x - 1)] * count_at_least(h, k, g, x);
          }
        }
        if (count_at_least(h, k, bg, bx) >= bc)
        {
          v += bonus;
        }
        table[h] = v;
      }
      model.tables.push_back(std::move(table));
    }
    data.valuation = std::move(model);
    return data;
  }

  if (l == 1)
  {
    int const size = n * (k - 1) + 1;
    std::vector<std::vector<Money>> tables;
    for (int b = 0; b < n; ++b)
    {
      tables.push_back(monotone_table(rng, size));
    }
    if (family == RandomFamily::Binary)
    {
      data.valuation = BinarySymmetric{std::move(tables)};
    }
    else
    {
      data.valuation = SharedQuality{std::move(tables)};
    }
    return data;
  }

  // Grouped: a monotone table over a weighted sum of the group qualities.
  SharedQualityGrouped model;
  for (int b = 0; b < n; ++b)
  {
    std::vector<int> weight(static_cast<std::size_t>(l));
    int              reach = 0;
    for (int g = 0; g < l; ++g)
    {
      weight[static_cast<std::size_t>(g)] = 1 + static_cast<int>(uniform_below(rng, 3));
      reach += weight[static_cast<std::size_t>(g)] * static_cast<int>(data.groups[static_cast<std::size_t>(g)].size()) *
               (k - 1);
    }
    std::vector<Money> const base = monotone_table(rng, reach + 1);
    std::map<QualityVector, Money> table;
    for (QualityVector const &q : all_quality_vectors(k, data.groups))
    {
      int t = 0;
      for (int g = 0; g < l; ++g)
      {
        t += weight[static_cast<std::size_t>(g)] * q[static_cast<std::size_t>(g)];
      }
      table[q] = base[static_cast<std::size_t>(t)];
    }
    model.tables.push_back(std::move(table));
  }
  data.valuation = std::move(model);
  return data;
}

std::string format_designated(std::vector<DesignatedPair> const &pairs)
{
  std::string out;
  for (auto const &p : pairs)
  {
    out += profile_key(p.profile) + ';' + std::to_string(p.bidder) + '\n';
  }
  return out;
}

std::vector<DesignatedPair> parse_designated(std::string_view text)
{
  std::vector<DesignatedPair> out;
  std::istringstream          in{std::string(text)};
  std::string                 line;
  while (std::getline(in, line))
  {
    if (line.empty())
    {
      continue;
    }
    auto const semi = line.find(';');
    if (semi == std::string::npos)
    {
      throw InvalidInput("designated line lacks ';': " + line);
    }
    try
    {
      out.push_back(DesignatedPair{parse_profile_key(line.substr(0, semi)), std::stoi(line.substr(semi + 1))});
    }
    catch (std::logic_error const &)
    {
      throw InvalidInput("malformed designated line: " + line);
    }
  }
  return out;
}

SignalProfile common_profile_of(std::vector<DesignatedPair> const &pairs)
{
  if (pairs.empty())
  {
    throw InvalidInput("no designated pairs");
  }
  SignalProfile top = pairs.front().profile;
  for (auto const &p : pairs)
  {
    if (p.profile.size() != top.size())
    {
      throw InvalidInput("designated profiles differ in length");
    }
    for (std::size_t j = 0; j < top.size(); ++j)
    {
      top[j] = std::max(top[j], p.profile[j]);
    }
  }
  return top;
}

}  // namespace ivauction
