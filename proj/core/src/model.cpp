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

#include "ivauction/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace ivauction {

namespace {

template <class... Ts>
struct Overloaded : Ts...
{
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string join(std::vector<int> const &values, char sep)
{
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i)
  {
    if (i > 0)
    {
      out += sep;
    }
    out += std::to_string(values[i]);
  }
  return out;
}

std::vector<int> split_ints(std::string const &text, char sep)
{
  std::vector<int> out;
  std::string      token;
  std::istringstream in(text);
  while (std::getline(in, token, sep))
  {
    std::size_t used = 0;
    int         v    = 0;
    try
    {
      v = std::stoi(token, &used);
    }
    catch (std::exception const &)
    {
      throw InvalidInput("malformed key '" + text + "'");
    }
    if (used != token.size())
    {
      throw InvalidInput("malformed key '" + text + "'");
    }
    out.push_back(v);
  }
  if (out.empty())
  {
    throw InvalidInput("empty key");
  }
  return out;
}

// All ways to distribute `m` bidders over k signal values, lexicographic.
void compositions(int m, int k, std::vector<int> &current, std::vector<std::vector<int>> &out)
{
  if (static_cast<int>(current.size()) == k - 1)
  {
    int used = std::accumulate(current.begin(), current.end(), 0);
    current.push_back(m - used);
    out.push_back(current);
    current.pop_back();
    return;
  }
  int used = std::accumulate(current.begin(), current.end(), 0);
  for (int c = 0; c <= m - used; ++c)
  {
    current.push_back(c);
    compositions(m, k, current, out);
    current.pop_back();
  }
}

template <class Part>
std::vector<std::vector<int>> cartesian(std::vector<std::vector<Part>> const &parts)
{
  std::vector<std::vector<int>> out{{}};
  for (auto const &options : parts)
  {
    std::vector<std::vector<int>> next;
    for (auto const &prefix : out)
    {
      for (auto const &option : options)
      {
        auto row = prefix;
        if constexpr (std::is_same_v<Part, int>)
        {
          row.push_back(option);
        }
        else
        {
          row.insert(row.end(), option.begin(), option.end());
        }
        next.push_back(std::move(row));
      }
    }
    out = std::move(next);
  }
  return out;
}

void check_structure(InstanceData const &data, std::vector<Violation> &out)
{
  if (data.n < 1)
  {
    out.push_back({"n-range", -1, "", "", "n must be >= 1"});
  }
  if (data.k < 2)
  {
    out.push_back({"k-range", -1, "", "", "k must be >= 2"});
  }
  if (data.groups.empty())
  {
    out.push_back({"partition", -1, "", "", "at least one expertise group is required"});
  }
  std::vector<int> seen(static_cast<std::size_t>(std::max(data.n, 0)), 0);
  for (std::size_t g = 0; g < data.groups.size(); ++g)
  {
    if (data.groups[g].empty())
    {
      out.push_back({"empty-group", -1, "", "", "group " + std::to_string(g) + " is empty"});
    }
    for (BidderId b : data.groups[g])
    {
      if (b < 0 || b >= data.n)
      {
        out.push_back({"partition", b, "", "",
                       "bidder id " + std::to_string(b) + " in group " + std::to_string(g) +
                           " is out of range"});
        continue;
      }
      if (++seen[static_cast<std::size_t>(b)] == 2)
      {
        out.push_back({"partition", b, "", "", "bidder " + std::to_string(b) + " appears in more than one group slot"});
      }
    }
  }
  for (int b = 0; b < data.n; ++b)
  {
    if (seen[static_cast<std::size_t>(b)] == 0)
    {
      out.push_back({"partition", b, "", "", "bidder " + std::to_string(b) + " is in no group"});
    }
  }
}

void check_dense(std::vector<std::vector<Money>> const &tables, int n, int length,
                 std::vector<Violation> &out)
{
  if (static_cast<int>(tables.size()) != n)
  {
    out.push_back({"table-size", -1, "", "",
                   "expected " + std::to_string(n) + " tables, got " + std::to_string(tables.size())});
    return;
  }
  for (int b = 0; b < n; ++b)
  {
    auto const &t = tables[static_cast<std::size_t>(b)];
    if (static_cast<int>(t.size()) != length)
    {
      out.push_back({"totality", b, "", "",
                     "table must have " + std::to_string(length) + " entries, got " + std::to_string(t.size())});
      continue;
    }
    for (int q = 0; q < length; ++q)
    {
      if (t[static_cast<std::size_t>(q)] < 0)
      {
        out.push_back({"negativity", b, "q=" + std::to_string(q), "", "negative value at q=" + std::to_string(q)});
      }
      if (q + 1 < length && t[static_cast<std::size_t>(q)] > t[static_cast<std::size_t>(q) + 1])
      {
        out.push_back({"monotonicity", b, "q=" + std::to_string(q), "q=" + std::to_string(q + 1),
                       "value decreases from q=" + std::to_string(q) + " to q=" + std::to_string(q + 1)});
      }
    }
  }
}

template <class Key, class KeyFmt, class Successors>
void check_keyed(std::vector<std::map<Key, Money>> const &tables, int n, std::vector<Key> const &domain,
                 KeyFmt fmt, Successors successors, std::vector<Violation> &out)
{
  if (static_cast<int>(tables.size()) != n)
  {
    out.push_back({"table-size", -1, "", "",
                   "expected " + std::to_string(n) + " tables, got " + std::to_string(tables.size())});
    return;
  }
  std::set<Key> const domain_set(domain.begin(), domain.end());
  for (int b = 0; b < n; ++b)
  {
    auto const &t     = tables[static_cast<std::size_t>(b)];
    bool        total = true;
    for (auto const &key : domain)
    {
      if (!t.count(key))
      {
        total = false;
        out.push_back({"totality", b, fmt(key), "", "missing entry for key " + fmt(key)});
      }
    }
    for (auto const &[key, value] : t)
    {
      if (!domain_set.count(key))
      {
        out.push_back({"extra-key", b, fmt(key), "", "key " + fmt(key) + " is outside the domain"});
        total = false;
      }
      else if (value < 0)
      {
        out.push_back({"negativity", b, fmt(key), "", "negative value at " + fmt(key)});
      }
    }
    if (!total)
    {
      continue;
    }
    for (auto const &key : domain)
    {
      for (auto const &up : successors(key))
      {
        if (t.at(key) > t.at(up))
        {
          out.push_back({"monotonicity", b, fmt(key), fmt(up),
                         "value decreases from " + fmt(key) + " to " + fmt(up)});
        }
      }
    }
  }
}

}  // namespace

std::string quality_key(QualityVector const &quality)
{
  return join(quality, ',');
}

std::string profile_key(SignalProfile const &profile)
{
  return join(profile, ',');
}

std::string histogram_key(Histogram const &histogram, int k)
{
  std::string out;
  for (std::size_t i = 0; i < histogram.size(); ++i)
  {
    if (i > 0)
    {
      out += (i % static_cast<std::size_t>(k) == 0) ? '|' : ',';
    }
    out += std::to_string(histogram[i]);
  }
  return out;
}

QualityVector parse_quality_key(std::string const &key)
{
  return split_ints(key, ',');
}

SignalProfile parse_profile_key(std::string const &key)
{
  return split_ints(key, ',');
}

Histogram parse_histogram_key(std::string const &key, int k, int num_groups)
{
  Histogram          out;
  std::string        part;
  std::istringstream in(key);
  int                groups = 0;
  while (std::getline(in, part, '|'))
  {
    auto counts = split_ints(part, ',');
    if (static_cast<int>(counts.size()) != k)
    {
      throw InvalidInput("histogram key '" + key + "' needs " + std::to_string(k) + " counts per group");
    }
    out.insert(out.end(), counts.begin(), counts.end());
    ++groups;
  }
  if (groups != num_groups)
  {
    throw InvalidInput("histogram key '" + key + "' needs " + std::to_string(num_groups) + " groups");
  }
  return out;
}

std::vector<QualityVector> all_quality_vectors(int k, std::vector<std::vector<BidderId>> const &groups)
{
  std::vector<std::vector<int>> ranges;
  for (auto const &g : groups)
  {
    std::vector<int> r(static_cast<std::size_t>(static_cast<int>(g.size()) * (k - 1) + 1));
    std::iota(r.begin(), r.end(), 0);
    ranges.push_back(std::move(r));
  }
  return cartesian(ranges);
}

std::vector<Histogram> all_histograms(int k, std::vector<std::vector<BidderId>> const &groups)
{
  std::vector<std::vector<std::vector<int>>> per_group;
  for (auto const &g : groups)
  {
    std::vector<std::vector<int>> options;
    std::vector<int>              current;
    compositions(static_cast<int>(g.size()), k, current, options);
    per_group.push_back(std::move(options));
  }
  return cartesian(per_group);
}

std::vector<Violation> validate_instance(InstanceData const &data)
{
  std::vector<Violation> out;
  check_structure(data, out);
  if (!out.empty())
  {
    return out;
  }

  int const n = data.n;
  int const k = data.k;
  int const l = static_cast<int>(data.groups.size());

  std::visit(
      Overloaded{
          [&](BinarySymmetric const &m) {
            if (k != 2 || l != 1)
            {
              out.push_back({"model-shape", -1, "", "", "binary_symmetric requires k = 2 and a single group"});
              return;
            }
            check_dense(m.tables, n, n + 1, out);
          },
          [&](SharedQuality const &m) {
            if (l != 1)
            {
              out.push_back({"model-shape", -1, "", "", "shared_quality requires a single group"});
              return;
            }
            check_dense(m.tables, n, n * (k - 1) + 1, out);
          },
          [&](SharedQualityGrouped const &m) {
            std::vector<int> caps;
            for (auto const &g : data.groups)
            {
              caps.push_back(static_cast<int>(g.size()) * (k - 1));
            }
            auto successors = [&](QualityVector const &q) {
              std::vector<QualityVector> ups;
              for (std::size_t g = 0; g < q.size(); ++g)
              {
                if (q[g] < caps[g])
                {
                  auto up = q;
                  ++up[g];
                  ups.push_back(std::move(up));
                }
              }
              return ups;
            };
            check_keyed(m.tables, n, all_quality_vectors(k, data.groups), quality_key, successors, out);
          },
          [&](GeneralSymmetric const &m) {
            auto fmt        = [k](Histogram const &h) { return histogram_key(h, k); };
            auto successors = [&](Histogram const &h) {
              std::vector<Histogram> ups;
              for (int g = 0; g < l; ++g)
              {
                for (int v = 0; v + 1 < k; ++v)
                {
                  auto const at = static_cast<std::size_t>(g * k + v);
                  if (h[at] > 0)
                  {
                    auto up = h;
                    --up[at];
                    ++up[at + 1];
                    ups.push_back(std::move(up));
                  }
                }
              }
              return ups;
            };
            check_keyed(m.tables, n, all_histograms(k, data.groups), fmt, successors, out);
          },
      },
      data.valuation);
  return out;
}

std::string describe(Violation const &v)
{
  std::string out = v.rule;
  if (v.bidder >= 0)
  {
    out += " (bidder " + std::to_string(v.bidder) + ")";
  }
  if (!v.from.empty() && !v.to.empty())
  {
    out += " [" + v.from + " -> " + v.to + "]";
  }
  else if (!v.from.empty())
  {
    out += " [" + v.from + "]";
  }
  return out + ": " + v.message;
}

namespace {

std::string summarize(std::vector<Violation> const &violations)
{
  std::string out = "invalid instance:";
  for (auto const &v : violations)
  {
    out += "\n  " + describe(v);
  }
  return out;
}

}  // namespace

InvalidInstance::InvalidInstance(std::vector<Violation> violations)
  : Error(summarize(violations))
  , violations_(std::move(violations))
{}

Instance::Instance(InstanceData data)
  : data_(std::move(data))
{
  if (auto violations = validate_instance(data_); !violations.empty())
  {
    throw InvalidInstance(std::move(violations));
  }

  int const n = data_.n;
  int const k = data_.k;
  int const l = num_groups();

  group_of_.assign(static_cast<std::size_t>(n), -1);
  for (int g = 0; g < l; ++g)
  {
    std::sort(data_.groups[static_cast<std::size_t>(g)].begin(), data_.groups[static_cast<std::size_t>(g)].end());
    for (BidderId b : group(g))
    {
      group_of_[static_cast<std::size_t>(b)] = g;
    }
    capacity_.push_back(static_cast<int>(group(g).size()) * (k - 1));
  }

  stride_.assign(static_cast<std::size_t>(l), 1);
  for (int g = l - 2; g >= 0; --g)
  {
    stride_[static_cast<std::size_t>(g)] =
        stride_[static_cast<std::size_t>(g) + 1] * (capacity_[static_cast<std::size_t>(g) + 1] + 1);
  }

  auto const *general = std::get_if<GeneralSymmetric>(&data_.valuation);
  quality_based_      = general == nullptr || k == 2;

  auto argmax = [n](std::vector<Money> const &row) {
    BidderId best = 0;
    for (BidderId b = 1; b < n; ++b)
    {
      if (row[static_cast<std::size_t>(b)] > row[static_cast<std::size_t>(best)])
      {
        best = b;
      }
    }
    return best;
  };

  if (general != nullptr)
  {
    for (auto const &h : all_histograms(k, data_.groups))
    {
      std::vector<Money> row;
      for (BidderId b = 0; b < n; ++b)
      {
        row.push_back(general->tables[static_cast<std::size_t>(b)].at(h));
      }
      histogram_row_.emplace(h, by_histogram_.size());
      optimal_by_histogram_.push_back(argmax(row));
      by_histogram_.push_back(std::move(row));
    }
  }

  if (quality_based_)
  {
    auto const domain = all_quality_vectors(k, data_.groups);
    by_quality_.assign(static_cast<std::size_t>(n), std::vector<Money>(domain.size()));
    optimal_.assign(domain.size(), 0);
    for (auto const &q : domain)
    {
      std::size_t const  idx = quality_index(q);
      std::vector<Money> row;
      for (BidderId b = 0; b < n; ++b)
      {
        auto const bi = static_cast<std::size_t>(b);
        Money      v  = std::visit(
            Overloaded{
                [&](BinarySymmetric const &m) { return m.tables[bi][static_cast<std::size_t>(q[0])]; },
                [&](SharedQuality const &m) { return m.tables[bi][static_cast<std::size_t>(q[0])]; },
                [&](SharedQualityGrouped const &m) { return m.tables[bi].at(q); },
                [&](GeneralSymmetric const &m) {
                  // k == 2: the histogram of each group is (size - q_g, q_g).
                  Histogram h;
                  for (int g = 0; g < l; ++g)
                  {
                    int const size = static_cast<int>(group(g).size());
                    h.push_back(size - q[static_cast<std::size_t>(g)]);
                    h.push_back(q[static_cast<std::size_t>(g)]);
                  }
                  return m.tables[bi].at(h);
                },
            },
            data_.valuation);
        by_quality_[bi][idx] = v;
        row.push_back(std::move(v));
      }
      optimal_[idx] = argmax(row);
    }
  }
}

void Instance::check_profile(SignalProfile const &profile) const
{
  if (static_cast<int>(profile.size()) != n())
  {
    throw InvalidInput("profile has " + std::to_string(profile.size()) + " signals, expected " +
                       std::to_string(n()));
  }
  for (Signal s : profile)
  {
    if (s < 0 || s >= k())
    {
      throw InvalidInput("signal " + std::to_string(s) + " outside [0, " + std::to_string(k() - 1) + "]");
    }
  }
}

QualityVector Instance::quality_of(SignalProfile const &profile) const
{
  check_profile(profile);
  QualityVector q(static_cast<std::size_t>(num_groups()), 0);
  for (BidderId b = 0; b < n(); ++b)
  {
    q[static_cast<std::size_t>(group_of(b))] += profile[static_cast<std::size_t>(b)];
  }
  return q;
}

Histogram Instance::histogram_of(SignalProfile const &profile) const
{
  check_profile(profile);
  Histogram h(static_cast<std::size_t>(num_groups() * k()), 0);
  for (BidderId b = 0; b < n(); ++b)
  {
    ++h[static_cast<std::size_t>(group_of(b) * k() + profile[static_cast<std::size_t>(b)])];
  }
  return h;
}

std::size_t Instance::quality_index(QualityVector const &quality) const
{
  if (static_cast<int>(quality.size()) != num_groups())
  {
    throw InvalidInput("quality vector has wrong length");
  }
  std::size_t idx = 0;
  for (std::size_t g = 0; g < quality.size(); ++g)
  {
    if (quality[g] < 0 || quality[g] > capacity_[g])
    {
      throw InvalidInput("quality " + quality_key(quality) + " outside the instance's range");
    }
    idx += static_cast<std::size_t>(quality[g] * stride_[g]);
  }
  return idx;
}

Money const &Instance::value_at_quality(BidderId bidder, QualityVector const &quality) const
{
  if (!quality_based_)
  {
    throw InvalidInput("values of this instance are not a function of the quality vector");
  }
  return by_quality_.at(static_cast<std::size_t>(bidder))[quality_index(quality)];
}

BidderId Instance::optimal_at_quality(QualityVector const &quality) const
{
  if (!quality_based_)
  {
    throw InvalidInput("values of this instance are not a function of the quality vector");
  }
  return optimal_[quality_index(quality)];
}

Money Instance::lookup(BidderId bidder, SignalProfile const &profile) const
{
  if (quality_based_)
  {
    return by_quality_[static_cast<std::size_t>(bidder)][quality_index(quality_of(profile))];
  }
  return by_histogram_[histogram_row_.at(histogram_of(profile))][static_cast<std::size_t>(bidder)];
}

Money Instance::value(BidderId bidder, SignalProfile const &profile) const
{
  if (bidder < 0 || bidder >= n())
  {
    throw InvalidInput("bidder " + std::to_string(bidder) + " out of range");
  }
  return lookup(bidder, profile);
}

BidderId Instance::optimal_bidder(SignalProfile const &profile) const
{
  if (quality_based_)
  {
    return optimal_[quality_index(quality_of(profile))];
  }
  return optimal_by_histogram_[histogram_row_.at(histogram_of(profile))];
}

Money Instance::optimal_welfare(SignalProfile const &profile) const
{
  return lookup(optimal_bidder(profile), profile);
}

std::int64_t profile_count(int n, int k, std::int64_t budget)
{
  std::int64_t count = 1;
  for (int i = 0; i < n; ++i)
  {
    count *= k;
    if (count > budget)
    {
      throw ResourceLimit("k^n = " + std::to_string(k) + "^" + std::to_string(n) +
                          " signal profiles exceed the budget of " + std::to_string(budget));
    }
  }
  return count;
}

bool next_profile(SignalProfile &profile, int k)
{
  for (std::size_t i = profile.size(); i-- > 0;)
  {
    if (++profile[i] < k)
    {
      return true;
    }
    profile[i] = 0;
  }
  return false;
}

std::int64_t profile_index(SignalProfile const &profile, int k)
{
  std::int64_t idx = 0;
  for (Signal s : profile)
  {
    idx = idx * k + s;
  }
  return idx;
}

}  // namespace ivauction
