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

#include "ivauction/kary_auction.hpp"
#include "verification_internal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ivauction {

using detail::describe_outcome;
using detail::fail;
using detail::make_report;
using detail::utility;

std::string_view to_string(MechanismKind kind)
{
  switch (kind)
  {
  case MechanismKind::Binary: return "binary";
  case MechanismKind::BinaryGrouped: return "binary-grouped";
  case MechanismKind::Kary: return "kary";
  case MechanismKind::KaryGrouped: return "kary-grouped";
  case MechanismKind::General: return "general";
  }
  return "unknown";
}

MechanismKind parse_mechanism_kind(std::string_view text)
{
  for (auto kind : {MechanismKind::Binary, MechanismKind::BinaryGrouped, MechanismKind::Kary,
                    MechanismKind::KaryGrouped, MechanismKind::General})
  {
    if (text == to_string(kind))
    {
      return kind;
    }
  }
  throw InvalidInput("unknown mechanism '" + std::string(text) + "'");
}

ClockMechanism clock_of(MechanismKind kind)
{
  switch (kind)
  {
  case MechanismKind::Binary: return ClockMechanism::Binary;
  case MechanismKind::BinaryGrouped: return ClockMechanism::BinaryGrouped;
  case MechanismKind::Kary: return ClockMechanism::Kary;
  case MechanismKind::KaryGrouped: return ClockMechanism::KaryGrouped;
  case MechanismKind::General: break;
  }
  throw InvalidInput("the general mechanism has no clock implementation");
}

// ---------------------------------------------------------------------------
// Coin spaces

std::int64_t CoinSpace::size() const
{
  std::int64_t perms = 1;
  if (permute)
  {
    for (int i = 2; i <= n; ++i)
    {
      perms *= i;
    }
  }
  return perms * residues * groups * static_cast<std::int64_t>(grid_points.size());
}

std::vector<WeightedCoin> CoinSpace::enumerate() const
{
  std::vector<WeightedCoin> out;
  out.reserve(static_cast<std::size_t>(size()));
  Rational const        p(1, size());
  std::vector<BidderId> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do
  {
    for (int r = 0; r < residues; ++r)
    {
      for (int g = 0; g < groups; ++g)
      {
        for (std::int64_t grid : grid_points)
        {
          out.push_back(WeightedCoin{CoinRealization{perm, r, g, grid}, p});
        }
      }
    }
  } while (permute && std::next_permutation(perm.begin(), perm.end()));
  return out;
}

CoinRealization CoinSpace::sample(std::mt19937_64 &rng) const
{
  CoinRealization c = identity_coins(n);
  if (permute)
  {
    for (int i = n - 1; i > 0; --i)
    {
      auto const j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i + 1)));
      std::swap(c.priority[static_cast<std::size_t>(i)], c.priority[static_cast<std::size_t>(j)]);
    }
  }
  c.residue    = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(residues)));
  c.group_pick = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(groups)));
  c.price_grid = grid_points[static_cast<std::size_t>(uniform_below(rng, grid_points.size()))];
  return c;
}

CoinSpace coin_space(Instance const &inst, MechanismKind kind, Pricing pricing)
{
  CoinSpace space;
  space.n           = inst.n();
  bool const rev    = pricing == Pricing::Revenue;
  auto       points = [](std::int64_t count, std::int64_t step) {
    std::vector<std::int64_t> out;
    for (std::int64_t i = 0; i < count; ++i)
    {
      out.push_back(i * step);
    }
    return out;
  };
  switch (kind)
  {
  case MechanismKind::Binary:
  case MechanismKind::BinaryGrouped:
    space.permute     = true;
    space.groups      = kind == MechanismKind::BinaryGrouped ? inst.num_groups() : 1;
    space.grid_points = rev ? points(2, 1) : points(1, 1);
    break;
  case MechanismKind::Kary:
  case MechanismKind::KaryGrouped:
    space.permute     = true;
    space.residues    = inst.k() - 1;
    space.groups      = kind == MechanismKind::KaryGrouped ? inst.num_groups() : 1;
    space.grid_points = rev ? points(lcm_upto(inst.k()), 1) : points(1, 1);
    break;
  case MechanismKind::General:
  {
    std::int64_t const L = lcm_upto(inst.k());
    space.grid_points    = rev ? points(general_grid_size(inst), 1) : points(rho(inst), L);
    break;
  }
  }
  return space;
}

// ---------------------------------------------------------------------------
// Mechanisms

namespace {

AuctionRun run_direct(Instance const &inst, MechanismKind kind, SignalProfile const &reports,
                      CoinRealization const &coins, Pricing pricing)
{
  switch (kind)
  {
  case MechanismKind::Binary: return run_binary(inst, reports, coins, pricing);
  case MechanismKind::BinaryGrouped: return run_binary_grouped(inst, reports, coins, pricing);
  case MechanismKind::Kary: return run_kary(inst, reports, coins, pricing);
  case MechanismKind::KaryGrouped: return run_kary_grouped(inst, reports, coins, pricing);
  case MechanismKind::General: break;
  }
  throw InvalidInput("the general mechanism has no discovery transcript");
}

void require_discovery(MechanismKind kind)
{
  if (kind == MechanismKind::General)
  {
    throw InvalidInput("this check applies to the discovery mechanisms only");
  }
}

std::int64_t profile_total(Instance const &inst, Budget const &budget)
{
  return profile_count(inst.n(), inst.k(), budget.max_profiles);
}

}  // namespace

void check_budget(Instance const &inst, MechanismKind kind, Budget const &budget)
{
  profile_total(inst, budget);
  bool const binary = kind == MechanismKind::Binary || kind == MechanismKind::BinaryGrouped;
  if (binary && inst.n() > budget.binary_n)
  {
    throw ResourceLimit("exact enumeration limited to n <= " + std::to_string(budget.binary_n) +
                        " for the binary auction; use Monte Carlo sampling");
  }
  if (!binary && kind != MechanismKind::General && (inst.n() > budget.kary_n || inst.k() > budget.kary_k))
  {
    throw ResourceLimit("exact enumeration limited to n <= " + std::to_string(budget.kary_n) + ", k <= " +
                        std::to_string(budget.kary_k) + " for the k-ary auction; use Monte Carlo sampling");
  }
}

MechanismUnderTest make_mechanism(Instance const &inst, MechanismKind kind, Pricing pricing, Budget const &budget)
{
  MechanismUnderTest m;
  m.name    = std::string(to_string(kind));
  m.kind    = kind;
  m.pricing = pricing;
  m.coins   = coin_space(inst, kind, pricing);
  Instance const *ip = &inst;
  if (kind == MechanismKind::General)
  {
    m.table = std::make_shared<AllocationTable const>(build_allocation_table(inst, budget.max_profiles));
    auto table = m.table;
    m.run      = [ip, table, pricing](SignalProfile const &reports, CoinRealization const &coins) {
      return run_general(*ip, *table, reports, coins, pricing);
    };
  }
  else
  {
    m.run = [ip, kind, pricing](SignalProfile const &reports, CoinRealization const &coins) {
      return run_direct(*ip, kind, reports, coins, pricing).outcome;
    };
  }
  return m;
}

namespace {

MechanismUnderTest make_fixture(Instance const &inst, MechanismKind kind, std::string name, Money surcharge)
{
  require_discovery(kind);
  MechanismUnderTest m = make_mechanism(inst, kind, Pricing::Welfare);
  m.name               = std::move(name);
  Instance const *ip   = &inst;
  m.run = [ip, kind, surcharge](SignalProfile const &reports, CoinRealization const &coins) {
    Outcome out = run_direct(*ip, kind, reports, coins, Pricing::Welfare).outcome;
    if (out.winner)
    {
      out.price = ip->value(*out.winner, reports) + surcharge;
    }
    return out;
  };
  return m;
}

}  // namespace

MechanismUnderTest make_overcharge_fixture(Instance const &inst, MechanismKind kind)
{
  return make_fixture(inst, kind, "fixture-overcharge", Money(1));
}

MechanismUnderTest make_first_price_fixture(Instance const &inst, MechanismKind kind)
{
  return make_fixture(inst, kind, "fixture-first-price", Money(0));
}

// ---------------------------------------------------------------------------
// Expectations

OutcomeStats expected_outcome(Instance const &inst, MechanismUnderTest const &mech, SignalProfile const &profile)
{
  inst.check_profile(profile);
  BidderId const opt = inst.optimal_bidder(profile);
  OutcomeStats   stats;
  for (auto const &wc : mech.coins.enumerate())
  {
    Outcome const out = mech.run(profile, wc.coins);
    if (out.winner)
    {
      stats.welfare += wc.probability * inst.value(*out.winner, profile);
      stats.revenue += wc.probability * out.price;
      if (*out.winner == opt)
      {
        stats.p_optimal += wc.probability;
      }
    }
  }
  return stats;
}

OutcomeStats estimate_outcome(Instance const &inst, MechanismUnderTest const &mech, SignalProfile const &profile,
                              std::int64_t samples, std::uint64_t seed)
{
  if (samples <= 0)
  {
    throw InvalidInput("sample count must be positive");
  }
  inst.check_profile(profile);
  BidderId const  opt = inst.optimal_bidder(profile);
  std::mt19937_64 rng(seed);
  Rational        sw, sr, so;
  double          w2 = 0, r2 = 0;
  for (std::int64_t i = 0; i < samples; ++i)
  {
    Outcome const out = mech.run(profile, mech.coins.sample(rng));
    if (out.winner)
    {
      Money const w = inst.value(*out.winner, profile);
      sw += w;
      sr += out.price;
      w2 += to_double(w) * to_double(w);
      r2 += to_double(out.price) * to_double(out.price);
      if (*out.winner == opt)
      {
        so += 1;
      }
    }
  }
  OutcomeStats stats;
  stats.samples     = samples;
  stats.welfare     = sw / samples;
  stats.revenue     = sr / samples;
  stats.p_optimal   = so / samples;
  auto const  m     = static_cast<double>(samples);
  auto        se    = [m](double mean, double second) {
    double const var = std::max(0.0, second / m - mean * mean);
    return std::sqrt(var / m);
  };
  double const pw   = to_double(stats.welfare);
  double const pr   = to_double(stats.revenue);
  double const po   = to_double(stats.p_optimal);
  stats.se_welfare  = se(pw, w2);
  stats.se_revenue  = se(pr, r2);
  stats.se_optimal  = se(po, po * m);
  return stats;
}

Ratio worst_case_ratio(Instance const &inst, MechanismUnderTest const &mech, Objective objective,
                       Budget const &budget)
{
  check_budget(inst, mech.kind, budget);
  Ratio         worst;
  SignalProfile s(static_cast<std::size_t>(inst.n()), 0);
  do
  {
    Money const opt = inst.optimal_welfare(s);
    if (opt <= 0)
    {
      continue;
    }
    OutcomeStats const stats = expected_outcome(inst, mech, s);
    Rational const    &got   = objective == Objective::Welfare ? stats.welfare : stats.revenue;
    if (!worst.defined)
    {
      worst.defined = true;
      worst.profile = s;
    }
    if (got == 0)
    {
      if (!worst.infinite)
      {
        worst.infinite = true;
        worst.profile  = s;
      }
      continue;
    }
    Rational const ratio = opt / got;
    if (!worst.infinite && ratio > worst.value)
    {
      worst.value   = ratio;
      worst.profile = s;
    }
  } while (next_profile(s, inst.k()));
  return worst;
}

// ---------------------------------------------------------------------------
// Reports

std::string format_witness(Witness const &w)
{
  std::string out = "profile=" + profile_key(w.profile) + " bidder=" + std::to_string(w.bidder);
  if (!w.deviation.empty())
  {
    out += " deviation=" + w.deviation;
  }
  if (w.coins)
  {
    out += " coins=" + format_coins(*w.coins);
  }
  out += " detail=" + w.detail;
  return out;
}

namespace {

std::string csv_field(std::string const &text)
{
  if (text.find_first_of(",\"\n") == std::string::npos)
  {
    return text;
  }
  std::string out = "\"";
  for (char c : text)
  {
    if (c == '"')
    {
      out += '"';
    }
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string format_reports_csv(std::vector<Report> const &reports)
{
  std::string out = "check,instance,mechanism,pricing,result,quantity,witness\n";
  for (auto const &r : reports)
  {
    out += csv_field(r.check) + ',' + csv_field(r.instance) + ',' + csv_field(r.mechanism) + ',' +
           csv_field(r.pricing) + ',' + (r.pass ? "pass" : "fail") + ',' + csv_field(r.quantity) + ',' +
           (r.witness ? csv_field(format_witness(*r.witness)) : std::string()) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Incentive checks

namespace {

template <class Lookup>
std::optional<Witness> universal_point(Instance const &inst, CoinRealization const &coins,
                                       SignalProfile const &truth, BidderId i, Lookup &&lookup)
{
  Money const truthful = utility(inst, i, lookup(truth), truth);
  if (truthful < 0)
  {
    return Witness{truth, i, "", coins, "truthful utility " + format_money(truthful) + " < 0"};
  }
  SignalProfile report = truth;
  for (Signal t = 0; t < inst.k(); ++t)
  {
    if (t == truth[static_cast<std::size_t>(i)])
    {
      continue;
    }
    report[static_cast<std::size_t>(i)] = t;
    Money const deviating               = utility(inst, i, lookup(report), truth);
    if (deviating > truthful)
    {
      return Witness{truth, i, "report=" + std::to_string(t), coins,
                     "misreport utility " + format_money(deviating) + " > truthful " + format_money(truthful)};
    }
  }
  return std::nullopt;
}

struct ExpectedTerms
{
  std::vector<Rational> win;  // per bidder
  std::vector<Rational> pay;
};

ExpectedTerms expected_terms(Instance const &inst, MechanismUnderTest const &mech, SignalProfile const &reports,
                             std::vector<WeightedCoin> const &coins)
{
  ExpectedTerms t{std::vector<Rational>(static_cast<std::size_t>(inst.n())),
                  std::vector<Rational>(static_cast<std::size_t>(inst.n()))};
  for (auto const &wc : coins)
  {
    Outcome const out = mech.run(reports, wc.coins);
    if (out.winner)
    {
      t.win[static_cast<std::size_t>(*out.winner)] += wc.probability;
      t.pay[static_cast<std::size_t>(*out.winner)] += wc.probability * out.price;
    }
  }
  return t;
}

template <class Terms>
std::optional<Witness> expectation_point(Instance const &inst, MechanismUnderTest const &mech,
                                         std::vector<WeightedCoin> const &coins, SignalProfile const &truth,
                                         BidderId i, Terms &&terms)
{
  auto const  idx   = static_cast<std::size_t>(i);
  Money const value = inst.value(i, truth);
  for (auto const &wc : coins)
  {
    Outcome const out = mech.run(truth, wc.coins);
    Money const   u   = utility(inst, i, out, truth);
    if (u < 0)
    {
      return Witness{truth, i, "", wc.coins, "realized winner utility " + format_money(u) + " < 0"};
    }
  }
  ExpectedTerms const &own      = terms(truth);
  Rational const       truthful = own.win[idx] * value - own.pay[idx];
  SignalProfile        report   = truth;
  for (Signal t = 0; t < inst.k(); ++t)
  {
    if (t == truth[idx])
    {
      continue;
    }
    report[idx]              = t;
    ExpectedTerms const &dev = terms(report);
    Rational const deviating = dev.win[idx] * value - dev.pay[idx];
    if (deviating > truthful)
    {
      return Witness{truth, i, "report=" + std::to_string(t), std::nullopt,
                     "expected misreport utility " + format_fraction(deviating) + " > truthful " +
                         format_fraction(truthful)};
    }
  }
  return std::nullopt;
}

}  // namespace

Report check_universal_icir(Instance const &inst, MechanismUnderTest const &mech, Budget const &budget)
{
  check_budget(inst, mech.kind, budget);
  Report       report = make_report("icir-universal", inst, mech.name, mech.pricing);
  std::int64_t total  = profile_total(inst, budget);
  std::int64_t checks = 0;
  for (auto const &wc : mech.coins.enumerate())
  {
    std::vector<Outcome> outcomes(static_cast<std::size_t>(total));
    SignalProfile        s(static_cast<std::size_t>(inst.n()), 0);
    do
    {
      outcomes[static_cast<std::size_t>(profile_index(s, inst.k()))] = mech.run(s, wc.coins);
    } while (next_profile(s, inst.k()));
    auto lookup = [&](SignalProfile const &p) -> Outcome const & {
      return outcomes[static_cast<std::size_t>(profile_index(p, inst.k()))];
    };
    do
    {
      for (BidderId i = 0; i < inst.n(); ++i)
      {
        ++checks;
        if (auto w = universal_point(inst, wc.coins, s, i, lookup))
        {
          fail(report, std::move(*w));
          report.quantity = "checked=" + std::to_string(checks);
          return report;
        }
      }
    } while (next_profile(s, inst.k()));
  }
  report.quantity = "checked=" + std::to_string(checks);
  return report;
}

Report check_expost_ic(Instance const &inst, MechanismUnderTest const &mech, Budget const &budget)
{
  check_budget(inst, mech.kind, budget);
  Report       report = make_report("ic-expectation", inst, mech.name, mech.pricing);
  auto const   coins  = mech.coins.enumerate();
  std::int64_t total  = profile_total(inst, budget);
  std::vector<ExpectedTerms> cache(static_cast<std::size_t>(total));
  std::vector<bool>          ready(static_cast<std::size_t>(total), false);
  auto terms = [&](SignalProfile const &p) -> ExpectedTerms const & {
    auto const idx = static_cast<std::size_t>(profile_index(p, inst.k()));
    if (!ready[idx])
    {
      cache[idx] = expected_terms(inst, mech, p, coins);
      ready[idx] = true;
    }
    return cache[idx];
  };
  std::int64_t  checks = 0;
  SignalProfile s(static_cast<std::size_t>(inst.n()), 0);
  do
  {
    for (BidderId i = 0; i < inst.n(); ++i)
    {
      ++checks;
      if (auto w = expectation_point(inst, mech, coins, s, i, terms))
      {
        fail(report, std::move(*w));
        report.quantity = "checked=" + std::to_string(checks);
        return report;
      }
    }
  } while (next_profile(s, inst.k()));
  report.quantity = "checked=" + std::to_string(checks);
  return report;
}

namespace {

std::string_view guarantee_name(Guarantee g)
{
  switch (g)
  {
  case Guarantee::OptimalWins: return "guarantee-optimal";
  case Guarantee::Welfare: return "guarantee-welfare";
  case Guarantee::Revenue: return "guarantee-revenue";
  }
  return "guarantee";
}

// Returns the factor achieved at s (smaller is better for the mechanism) and
// whether it is within alpha.
std::optional<Witness> guarantee_point(Instance const &inst, MechanismUnderTest const &mech, Guarantee g,
                                       Rational const &alpha, SignalProfile const &s, Rational *factor)
{
  OutcomeStats const stats = expected_outcome(inst, mech, s);
  Money const        opt   = inst.optimal_welfare(s);
  if (g == Guarantee::OptimalWins)
  {
    *factor = stats.p_optimal;
    if (stats.p_optimal * alpha < 1)
    {
      return Witness{s, inst.optimal_bidder(s), "alpha=" + format_fraction(alpha), std::nullopt,
                     "P[optimal wins] = " + format_fraction(stats.p_optimal) + " < 1/" + format_fraction(alpha)};
    }
    return std::nullopt;
  }
  Rational const &got = g == Guarantee::Welfare ? stats.welfare : stats.revenue;
  *factor             = got > 0 ? Rational(opt / got) : Rational(-1);
  if (got * alpha < opt)
  {
    return Witness{s, inst.optimal_bidder(s), "alpha=" + format_fraction(alpha), std::nullopt,
                   std::string(g == Guarantee::Welfare ? "E[welfare] = " : "E[revenue] = ") + format_fraction(got) +
                       " < OPT / " + format_fraction(alpha) + " with OPT = " + format_money(opt)};
  }
  return std::nullopt;
}

}  // namespace

Report check_guarantee(Instance const &inst, MechanismUnderTest const &mech, Guarantee guarantee,
                       Rational const &alpha, Budget const &budget)
{
  check_budget(inst, mech.kind, budget);
  Report   report = make_report(std::string(guarantee_name(guarantee)), inst, mech.name, mech.pricing);
  Rational worst  = guarantee == Guarantee::OptimalWins ? Rational(1) : Rational(0);
  bool     unbounded = false;
  SignalProfile s(static_cast<std::size_t>(inst.n()), 0);
  do
  {
    Rational factor;
    auto     w = guarantee_point(inst, mech, guarantee, alpha, s, &factor);
    if (guarantee == Guarantee::OptimalWins)
    {
      worst = std::min(worst, factor);
    }
    else if (factor < 0)
    {
      unbounded = unbounded || inst.optimal_welfare(s) > 0;
    }
    else
    {
      worst = std::max(worst, factor);
    }
    if (w && report.pass)
    {
      fail(report, std::move(*w));
    }
  } while (next_profile(s, inst.k()));
  if (guarantee == Guarantee::OptimalWins)
  {
    report.quantity = "min P[optimal]=" + format_fraction(worst);
  }
  else
  {
    report.quantity = "max OPT/E=" + (unbounded ? std::string("inf") : format_fraction(worst));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Discovery transcripts

std::optional<std::string> transcript_violation(Instance const &inst, MechanismKind kind, SignalProfile const &truth,
                                                CoinRealization const &coins, Transcript const &transcript,
                                                int *max_rstar)
{
  require_discovery(kind);
  bool const grouped = kind == MechanismKind::BinaryGrouped || kind == MechanismKind::KaryGrouped;
  int const  group   = grouped ? coins.group_pick : 0;
  int const  width   = inst.k() - 1;
  int        active  = static_cast<int>(inst.group(group).size());
  int        rstar   = 0;
  int        q_min   = 0;
  int        q_max   = width * active;
  int        true_q  = 0;
  for (BidderId b : inst.group(group))
  {
    true_q += truth[static_cast<std::size_t>(b)];
  }
  if (max_rstar != nullptr)
  {
    *max_rstar = 0;
  }
  bool started = false;
  auto interval_law = [&](std::size_t at) -> std::optional<std::string> {
    if (q_max - q_min != width * active)
    {
      return "event " + std::to_string(at) + ": q_max - q_min = " + std::to_string(q_max - q_min) + " but (k-1)|A| = " +
             std::to_string(width * active);
    }
    return std::nullopt;
  };
  for (std::size_t at = 0; at < transcript.events.size(); ++at)
  {
    DiscoveryEvent const &e = transcript.events[at];
    switch (e.kind)
    {
    case EventKind::OutOfGroup:
      if (!grouped || inst.group_of(e.bidder) == group)
      {
        return "event " + std::to_string(at) + ": out-of-group rejection of a group member";
      }
      break;
    case EventKind::Costly:
      if (started)
      {
        if (auto v = interval_law(at))
        {
          return v;
        }
      }
      started = true;
      --active;
      ++rstar;
      break;
    case EventKind::Free: --active; break;
    case EventKind::Cleanup:
      if (rstar == 0)
      {
        return "event " + std::to_string(at) + ": cleanup with empty R*";
      }
      --rstar;
      break;
    case EventKind::Termination:
      if (auto v = interval_law(at))
      {
        return v;
      }
      if ((e.reason == TerminationReason::ActiveEmpty) != (active == 0))
      {
        return "event " + std::to_string(at) + ": termination reason does not match |A| = " + std::to_string(active);
      }
      break;
    }
    if (e.kind != EventKind::OutOfGroup && e.kind != EventKind::Termination)
    {
      q_min = e.q_min;
      q_max = e.q_max;
    }
    if (max_rstar != nullptr)
    {
      *max_rstar = std::max(*max_rstar, rstar);
    }
    if (rstar > 2)
    {
      return "event " + std::to_string(at) + ": |R*| = " + std::to_string(rstar);
    }
    if (active < 0)
    {
      return "event " + std::to_string(at) + ": more rejections than bidders";
    }
    if (true_q < q_min || true_q > q_max)
    {
      return "event " + std::to_string(at) + ": true quality " + std::to_string(true_q) + " outside [" +
             std::to_string(q_min) + ", " + std::to_string(q_max) + "]";
    }
  }
  if (transcript.events.empty() || transcript.events.back().kind != EventKind::Termination)
  {
    return std::string("transcript does not end with a termination event");
  }
  return std::nullopt;
}

namespace {

std::optional<Witness> discovery_point(Instance const &inst, MechanismKind kind, Pricing pricing,
                                       CoinRealization const &coins, SignalProfile const &s, int *max_rstar)
{
  AuctionRun const run = run_direct(inst, kind, s, coins, pricing);
  if (auto v = transcript_violation(inst, kind, s, coins, run.transcript, max_rstar))
  {
    return Witness{s, -1, "", coins, *v};
  }
  return std::nullopt;
}

std::optional<Witness> equivalence_point(Instance const &inst, MechanismKind kind, Pricing pricing,
                                         CoinRealization const &coins, SignalProfile const &s)
{
  Outcome const         direct = run_direct(inst, kind, s, coins, pricing).outcome;
  std::vector<Strategy> strategies;
  for (Signal v : s)
  {
    strategies.push_back(consistent_strategy(v));
  }
  Outcome const clock = run_clock(inst, clock_of(kind), strategies, coins, pricing).outcome;
  if (!(direct == clock))
  {
    return Witness{s, -1, "", coins, "direct " + describe_outcome(direct) + " vs clock " + describe_outcome(clock)};
  }
  return std::nullopt;
}

}  // namespace

Report check_discovery_invariants(Instance const &inst, MechanismKind kind, Pricing pricing, Budget const &budget)
{
  require_discovery(kind);
  check_budget(inst, kind, budget);
  Report report  = make_report("rstar", inst, std::string(to_string(kind)), pricing);
  int    highest = 0;
  for (auto const &wc : coin_space(inst, kind, pricing).enumerate())
  {
    SignalProfile s(static_cast<std::size_t>(inst.n()), 0);
    do
    {
      int  seen = 0;
      auto w    = discovery_point(inst, kind, pricing, wc.coins, s, &seen);
      highest   = std::max(highest, seen);
      if (w)
      {
        fail(report, std::move(*w));
        report.quantity = "max|R*|=" + std::to_string(highest);
        return report;
      }
    } while (next_profile(s, inst.k()));
  }
  report.quantity = "max|R*|=" + std::to_string(highest);
  return report;
}

Report check_clock_equivalence(Instance const &inst, MechanismKind kind, Pricing pricing, Budget const &budget)
{
  require_discovery(kind);
  check_budget(inst, kind, budget);
  Report       report = make_report("equivalence", inst, std::string(to_string(kind)), pricing);
  std::int64_t runs   = 0;
  for (auto const &wc : coin_space(inst, kind, pricing).enumerate())
  {
    SignalProfile s(static_cast<std::size_t>(inst.n()), 0);
    do
    {
      ++runs;
      if (auto w = equivalence_point(inst, kind, pricing, wc.coins, s))
      {
        fail(report, std::move(*w));
        report.quantity = "runs=" + std::to_string(runs);
        return report;
      }
    } while (next_profile(s, inst.k()));
  }
  report.quantity = "runs=" + std::to_string(runs);
  return report;
}

// ---------------------------------------------------------------------------
// Allocation tables

namespace {

std::optional<Witness> table_point(Instance const &inst, AllocationTable const &table, SignalProfile const &s,
                                   Rational *sum)
{
  Rational const share(1, table.rho());
  *sum = 0;
  std::vector<int> slots;
  for (BidderId i = 0; i < inst.n(); ++i)
  {
    Rational const x = table.probability(i, s);
    *sum += x;
    if (x != 0 && x != share)
    {
      return Witness{s, i, "", std::nullopt, "entry " + format_fraction(x) + " is neither 0 nor 1/" +
                                                 std::to_string(table.rho())};
    }
    if (table.allocated(i, s) != allocated_closed_form(inst, i, s))
    {
      return Witness{s, i, "", std::nullopt, "table disagrees with the closed form"};
    }
    auto const idx = static_cast<std::size_t>(i);
    if (s[idx] + 1 < inst.k())
    {
      SignalProfile up = s;
      ++up[idx];
      if (table.probability(i, up) < x)
      {
        return Witness{s, i, "", std::nullopt, "allocation drops when raising the bidder's own signal"};
      }
    }
    if (x != 0)
    {
      int const slot = table.slot(i, s);
      if (slot < 0 || slot >= table.rho() || std::find(slots.begin(), slots.end(), slot) != slots.end())
      {
        return Witness{s, i, "", std::nullopt, "slot " + std::to_string(slot) + " collides or is out of range"};
      }
      slots.push_back(slot);
    }
  }
  if (*sum > 1)
  {
    return Witness{s, -1, "", std::nullopt, "allocation sum " + format_fraction(*sum) + " > 1"};
  }
  return std::nullopt;
}

}  // namespace

Report check_allocation_table(Instance const &inst, AllocationTable const &table)
{
  Report report = make_report("feasibility", inst, "general", Pricing::Welfare);
  if (table.n() != inst.n() || table.k() != inst.k() || table.rho() != rho(inst))
  {
    report.pass     = false;
    report.witness  = Witness{{}, -1, "", std::nullopt, "table shape does not match the instance"};
    return report;
  }
  Rational      max_sum;
  SignalProfile s(static_cast<std::size_t>(inst.n()), 0);
  do
  {
    Rational sum;
    auto     w = table_point(inst, table, s, &sum);
    max_sum    = std::max(max_sum, sum);
    if (w)
    {
      fail(report, std::move(*w));
      break;
    }
  } while (next_profile(s, inst.k()));
  report.quantity = "max sum=" + format_fraction(max_sum);
  return report;
}

// ---------------------------------------------------------------------------
// Replay

std::optional<Witness> replay_witness(Instance const &inst, MechanismUnderTest const &mech, Report const &report)
{
  if (!report.witness)
  {
    throw InvalidInput("report has no witness to replay");
  }
  Witness const &w = *report.witness;
  if (report.check == "icir-universal")
  {
    auto lookup = [&](SignalProfile const &p) { return mech.run(p, *w.coins); };
    return universal_point(inst, *w.coins, w.profile, w.bidder, lookup);
  }
  if (report.check == "ic-expectation")
  {
    auto const coins = mech.coins.enumerate();
    ExpectedTerms scratch;
    auto terms = [&](SignalProfile const &p) -> ExpectedTerms const & {
      scratch = expected_terms(inst, mech, p, coins);
      return scratch;
    };
    return expectation_point(inst, mech, coins, w.profile, w.bidder, terms);
  }
  if (report.check.rfind("guarantee-", 0) == 0)
  {
    Guarantee g = report.check == "guarantee-optimal" ? Guarantee::OptimalWins
                  : report.check == "guarantee-welfare" ? Guarantee::Welfare
                                                         : Guarantee::Revenue;
    if (w.deviation.rfind("alpha=", 0) != 0)
    {
      throw InvalidInput("guarantee witness lacks its alpha");
    }
    Rational const alpha = parse_rational(w.deviation.substr(6));
    Rational factor;
    return guarantee_point(inst, mech, g, alpha, w.profile, &factor);
  }
  if (report.check == "rstar")
  {
    return discovery_point(inst, mech.kind, mech.pricing, *w.coins, w.profile, nullptr);
  }
  if (report.check == "equivalence")
  {
    return equivalence_point(inst, mech.kind, mech.pricing, *w.coins, w.profile);
  }
  if (report.check == "oxp")
  {
    return detail::oxp_point(inst, mech.kind, mech.pricing, *w.coins, w.bidder,
                             w.profile[static_cast<std::size_t>(w.bidder)]);
  }
  if (report.check == "feasibility")
  {
    if (!mech.table)
    {
      throw InvalidInput("feasibility witnesses replay against the general mechanism's table");
    }
    Rational sum;
    return table_point(inst, *mech.table, w.profile, &sum);
  }
  throw InvalidInput("cannot replay check '" + report.check + "'");
}

// ---------------------------------------------------------------------------
// Lower-bound certificates

LowerBoundCertificate verify_lb_certificate(Instance const &inst, std::vector<DesignatedPair> const &designated,
                                            SignalProfile const &common)
{
  inst.check_profile(common);
  if (designated.empty())
  {
    throw CertificateInvalid("no designated pairs");
  }
  std::vector<BidderId> seen;
  for (auto const &pair : designated)
  {
    inst.check_profile(pair.profile);
    if (pair.bidder < 0 || pair.bidder >= inst.n())
    {
      throw CertificateInvalid("designated bidder " + std::to_string(pair.bidder) + " out of range");
    }
    if (std::find(seen.begin(), seen.end(), pair.bidder) != seen.end())
    {
      throw CertificateInvalid("bidder " + std::to_string(pair.bidder) + " designated twice");
    }
    seen.push_back(pair.bidder);
    for (std::size_t j = 0; j < common.size(); ++j)
    {
      bool const own = static_cast<BidderId>(j) == pair.bidder;
      if ((!own && pair.profile[j] != common[j]) || (own && pair.profile[j] > common[j]))
      {
        throw CertificateInvalid("profile " + profile_key(pair.profile) + " does not reach " + profile_key(common) +
                                 " by raising bidder " + std::to_string(pair.bidder) + " alone");
      }
    }
    if (inst.optimal_bidder(pair.profile) != pair.bidder)
    {
      throw CertificateInvalid("bidder " + std::to_string(pair.bidder) + " is not optimal at " +
                               profile_key(pair.profile));
    }
  }
  return LowerBoundCertificate{Rational(1, static_cast<long long>(designated.size())), designated};
}

}  // namespace ivauction
