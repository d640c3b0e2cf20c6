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

#include "cli.hpp"

#include "ivauction/clock_runtime.hpp"
#include "ivauction/coins.hpp"
#include "ivauction/general_auction.hpp"
#include "ivauction/generators.hpp"
#include "ivauction/instance_io.hpp"
#include "ivauction/kary_auction.hpp"
#include "ivauction/verification.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace ivauction::cli {

namespace {

struct Options
{
  std::string   instance;
  std::string   mechanism = "binary";
  std::string   pricing   = "welfare";
  std::string   signals;
  std::uint64_t seed = 0;
  bool          trace      = false;
  bool          dump_table = false;
  bool          clock      = false;

  std::string  objective = "welfare";
  std::int64_t samples   = 0;

  std::string check = "all";
  std::string mode;
  std::string designated;

  std::string family = "random";
  std::string model;
  int         l = 1;
  int         k = 2;
  int         n = 0;
  std::string M = "100";
  std::string out;
};

struct Usage : Error
{
  using Error::Error;
};

std::string csv(std::string const &text)
{
  if (text.find_first_of(",\"") == std::string::npos)
  {
    return text;
  }
  std::string quoted = "\"";
  for (char c : text)
  {
    quoted += c;
    if (c == '"')
    {
      quoted += '"';
    }
  }
  return quoted + '"';
}

std::string decimal(double v)
{
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << v;
  return s.str();
}

// Fixtures are named after the discovery mechanism they break.
MechanismKind fixture_kind(Instance const &inst)
{
  if (inst.num_groups() > 1)
  {
    return inst.k() == 2 ? MechanismKind::BinaryGrouped : MechanismKind::KaryGrouped;
  }
  return inst.k() == 2 ? MechanismKind::Binary : MechanismKind::Kary;
}

void check_compatible(Instance const &inst, MechanismKind kind)
{
  switch (kind)
  {
  case MechanismKind::Binary:
    if (inst.k() != 2 || inst.num_groups() != 1)
    {
      throw Usage("mechanism binary requires k = 2 and a single group");
    }
    break;
  case MechanismKind::BinaryGrouped:
    if (inst.k() != 2)
    {
      throw Usage("mechanism binary-grouped requires k = 2");
    }
    break;
  case MechanismKind::Kary:
    if (inst.num_groups() != 1 || !inst.quality_based())
    {
      throw Usage("mechanism kary requires a single group and values that depend only on quality");
    }
    break;
  case MechanismKind::KaryGrouped:
    if (!inst.quality_based())
    {
      throw Usage("mechanism kary-grouped requires values that depend only on quality vectors");
    }
    break;
  case MechanismKind::General: break;
  }
}

MechanismUnderTest build_mechanism(Instance const &inst, Options const &opt, Budget const &budget)
{
  Pricing const pricing = parse_pricing(opt.pricing);
  if (opt.mechanism == "fixture-overcharge")
  {
    return make_overcharge_fixture(inst, fixture_kind(inst));
  }
  if (opt.mechanism == "fixture-first-price")
  {
    return make_first_price_fixture(inst, fixture_kind(inst));
  }
  MechanismKind const kind = parse_mechanism_kind(opt.mechanism);
  check_compatible(inst, kind);
  return make_mechanism(inst, kind, pricing, budget);
}

SignalProfile parse_signals(Instance const &inst, std::string const &text)
{
  SignalProfile s;
  try
  {
    s = parse_profile_key(text);
  }
  catch (std::exception const &)
  {
    throw InvalidInput("malformed --signals '" + text + "'");
  }
  inst.check_profile(s);
  return s;
}

std::string outcome_line(Instance const &inst, Outcome const &outcome, SignalProfile const &truth)
{
  if (!outcome.winner)
  {
    return "winner=none price=0 welfare=0";
  }
  return "winner=" + std::to_string(*outcome.winner) + " price=" + format_money(outcome.price) +
         " welfare=" + format_money(inst.value(*outcome.winner, truth));
}

int cmd_run(Options const &opt, std::ostream &out)
{
  Instance const           inst = load_instance_file(opt.instance);
  MechanismUnderTest const mech = build_mechanism(inst, opt, Budget{});
  SignalProfile const      s    = parse_signals(inst, opt.signals);
  std::mt19937_64          rng(opt.seed);
  CoinRealization const    coins = mech.coins.sample(rng);

  out << "mechanism=" << mech.name << " pricing=" << to_string(mech.pricing) << " signals=" << profile_key(s)
      << " seed=" << opt.seed << '\n';
  out << "coins " << format_coins(coins) << '\n';
  if (opt.clock)
  {
    std::vector<Strategy> strategies;
    for (Signal v : s)
    {
      strategies.push_back(consistent_strategy(v));
    }
    ClockRun const run = run_clock(inst, clock_of(mech.kind), strategies, coins, mech.pricing);
    out << outcome_line(inst, run.outcome, s) << '\n';
    if (opt.trace)
    {
      out << format_clock_transcript(run.transcript);
    }
    return 0;
  }
  Outcome const outcome = mech.run(s, coins);
  out << outcome_line(inst, outcome, s) << '\n';
  if (opt.trace && mech.kind != MechanismKind::General)
  {
    AuctionRun run;
    switch (mech.kind)
    {
    case MechanismKind::Binary: run = run_binary(inst, s, coins, mech.pricing); break;
    case MechanismKind::BinaryGrouped: run = run_binary_grouped(inst, s, coins, mech.pricing); break;
    case MechanismKind::Kary: run = run_kary(inst, s, coins, mech.pricing); break;
    default: run = run_kary_grouped(inst, s, coins, mech.pricing); break;
    }
    out << format_transcript(run.transcript);
  }
  if (opt.dump_table)
  {
    if (!mech.table)
    {
      throw Usage("--dump-table applies to the general mechanism only");
    }
    out << dump_table(*mech.table);
  }
  return 0;
}

int cmd_evaluate(Options const &opt, std::ostream &out)
{
  Instance const           inst      = load_instance_file(opt.instance);
  Budget const             budget;
  MechanismUnderTest const mech      = build_mechanism(inst, opt, budget);
  Objective const          objective = opt.objective == "revenue" ? Objective::Revenue : Objective::Welfare;
  if (opt.objective != "welfare" && opt.objective != "revenue")
  {
    throw Usage("--objective must be welfare or revenue");
  }
  bool const exact = opt.samples == 0;
  if (exact)
  {
    try
    {
      check_budget(inst, mech.kind, budget);
    }
    catch (ResourceLimit const &e)
    {
      throw ResourceLimit(std::string(e.what()) + " (pass --samples N)");
    }
  }
  else
  {
    profile_count(inst.n(), inst.k(), budget.max_profiles);
  }

  std::vector<SignalProfile> profiles;
  if (!opt.signals.empty())
  {
    profiles.push_back(parse_signals(inst, opt.signals));
  }
  else
  {
    SignalProfile s(static_cast<std::size_t>(inst.n()), 0);
    do
    {
      profiles.push_back(s);
    } while (next_profile(s, inst.k()));
  }

  out << "profile,opt,welfare,revenue,p_optimal,ratio,samples\n";
  std::optional<std::string> worst_row;
  std::optional<Rational>    worst_exact;
  double                     worst_est = -1;
  bool                       worst_inf = false;
  for (SignalProfile const &s : profiles)
  {
    Money const  opt_value = inst.optimal_welfare(s);
    std::string  row       = csv(profile_key(s)) + ',' + format_money(opt_value) + ',';
    std::string  ratio;
    bool         infinite  = false;
    if (exact)
    {
      OutcomeStats const st  = expected_outcome(inst, mech, s);
      Rational const    &got = objective == Objective::Welfare ? st.welfare : st.revenue;
      row += format_fraction(st.welfare) + ',' + format_fraction(st.revenue) + ',' + format_fraction(st.p_optimal) + ',';
      if (opt_value > 0 && got == 0)
      {
        ratio    = "inf";
        infinite = true;
      }
      else if (opt_value > 0)
      {
        Rational const r = opt_value / got;
        ratio            = format_fraction(r);
        if (!worst_inf && (!worst_exact || r > *worst_exact))
        {
          worst_exact = r;
          worst_row.reset();
        }
      }
      row += ratio + ",0";
    }
    else
    {
      OutcomeStats const st  = estimate_outcome(inst, mech, s, opt.samples, opt.seed);
      double const       got = to_double(objective == Objective::Welfare ? st.welfare : st.revenue);
      row += decimal(to_double(st.welfare)) + ',' + decimal(to_double(st.revenue)) + ',' +
             decimal(to_double(st.p_optimal)) + ',';
      if (opt_value > 0 && got == 0)
      {
        ratio    = "inf";
        infinite = true;
      }
      else if (opt_value > 0)
      {
        double const r = to_double(opt_value) / got;
        ratio          = decimal(r);
        if (!worst_inf && r > worst_est)
        {
          worst_est = r;
          worst_row.reset();
        }
      }
      row += ratio + ',' + std::to_string(opt.samples);
    }
    if (infinite && !worst_inf)
    {
      worst_inf = true;
      worst_row.reset();
    }
    if (!worst_row && !ratio.empty() && (!worst_inf || infinite))
    {
      worst_row = row;
    }
    out << row << '\n';
  }
  if (worst_row)
  {
    out << "worst:" << *worst_row << '\n';
  }
  else
  {
    out << "worst:undefined (every profile has OPT = 0)\n";
  }
  return 0;
}

int verify_certificate(Instance const &inst, Options const &opt, std::ostream &out)
{
  if (opt.designated.empty())
  {
    throw Usage("--check certificate needs --designated");
  }
  std::ifstream in(opt.designated);
  if (!in)
  {
    throw InvalidInput("cannot read " + opt.designated);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto const pairs = parse_designated(buffer.str());
  Report     report;
  report.check     = "certificate";
  report.instance  = opt.instance;
  report.mechanism = "-";
  report.pricing   = "-";
  try
  {
    auto const cert = verify_lb_certificate(inst, pairs, common_profile_of(pairs));
    report.quantity = "p<=" + format_fraction(cert.bound);
  }
  catch (CertificateInvalid const &e)
  {
    report.pass    = false;
    report.witness = Witness{common_profile_of(pairs), -1, "", std::nullopt, e.what()};
  }
  out << format_reports_csv({report});
  return report.pass ? 0 : 1;
}

int cmd_verify(Options const &opt, std::ostream &out)
{
  Instance const inst = load_instance_file(opt.instance);
  if (opt.check == "certificate")
  {
    return verify_certificate(inst, opt, out);
  }
  Budget const             budget;
  MechanismUnderTest const mech   = build_mechanism(inst, opt, budget);
  std::string const        mode   = opt.mode.empty() ? (mech.pricing == Pricing::Welfare ? "universal" : "expectation")
                                                     : opt.mode;
  if (mode != "universal" && mode != "expectation")
  {
    throw Usage("--mode must be universal or expectation");
  }
  bool const all       = opt.check == "all";
  bool const discovery = mech.kind != MechanismKind::General;
  bool const fixture   = opt.mechanism.rfind("fixture-", 0) == 0;
  auto       wants     = [&](char const *name) { return all || opt.check == name; };

  static char const *const known[] = {"all", "icir", "oxp", "feasibility", "rstar", "equivalence"};
  if (std::find(std::begin(known), std::end(known), opt.check) == std::end(known))
  {
    throw Usage("unknown check '" + opt.check + "'");
  }

  std::vector<Report> reports;
  if (wants("icir"))
  {
    reports.push_back(mode == "universal" ? check_universal_icir(inst, mech, budget) : check_expost_ic(inst, mech, budget));
  }
  if (wants("feasibility"))
  {
    if (mech.table)
    {
      reports.push_back(check_allocation_table(inst, *mech.table));
    }
    else if (!all)
    {
      throw Usage("feasibility applies to the general mechanism");
    }
  }
  if (discovery && !fixture)
  {
    if (wants("rstar"))
    {
      reports.push_back(check_discovery_invariants(inst, mech.kind, mech.pricing, budget));
    }
    if (wants("equivalence"))
    {
      reports.push_back(check_clock_equivalence(inst, mech.kind, mech.pricing, budget));
    }
    if (wants("oxp"))
    {
      bool const fits = inst.n() <= budget.oxp_n && inst.k() <= budget.oxp_k;
      if (fits || !all)
      {
        reports.push_back(check_oxp(inst, mech.kind, mech.pricing, budget));
      }
    }
  }
  else if (!all && (opt.check == "rstar" || opt.check == "equivalence" || opt.check == "oxp"))
  {
    throw Usage("check " + opt.check + " applies to the discovery mechanisms");
  }
  for (auto &r : reports)
  {
    r.instance = opt.instance;
  }
  out << format_reports_csv(reports);
  bool const ok = std::all_of(reports.begin(), reports.end(), [](Report const &r) { return r.pass; });
  return ok ? 0 : 1;
}

void write_file(std::string const &path, std::string const &text)
{
  std::ofstream file(path, std::ios::binary);
  if (!file)
  {
    throw InvalidInput("cannot write " + path);
  }
  file << text;
}

int cmd_generate(Options const &opt, std::ostream &out)
{
  if (opt.out.empty())
  {
    throw Usage("--out is required");
  }
  Money const scale = parse_rational(opt.M);
  if (opt.family == "thm11" || opt.family == "thm6")
  {
    FamilyInstance const fam = opt.family == "thm11" ? general_lower_bound_family(opt.l, opt.k, scale)
                                                     : shared_quality_lower_bound_family(opt.l, opt.k, scale);
    Instance const inst(fam.data);
    save_instance_file(opt.out, fam.data);
    write_file(opt.out + ".designated", format_designated(fam.designated));
    out << "bidders=" << inst.n() << " designated=" << fam.designated.size() << " out=" << opt.out << '\n';
    return 0;
  }
  if (opt.family != "random")
  {
    throw Usage("--family must be thm11, thm6 or random");
  }
  if (opt.n <= 0)
  {
    throw Usage("--family random needs --n");
  }
  std::string const model = opt.model.empty() ? (opt.k == 2 ? "binary" : "shared") : opt.model;
  InstanceData const data = random_instance(opt.n, opt.k, opt.l, parse_random_family(model), opt.seed);
  Instance const     inst(data);
  save_instance_file(opt.out, data);
  out << "bidders=" << inst.n() << " out=" << opt.out << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, char const *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Prior-free clock auctions for bidders with interdependent values", "ivauction"};
  app.require_subcommand(1);
  Options opt;

  auto *run = app.add_subcommand("run", "Run one mechanism on one signal profile");
  run->add_option("--instance", opt.instance, "Instance JSON file")->required();
  run->add_option("--mechanism", opt.mechanism, "binary|binary-grouped|kary|kary-grouped|general");
  run->add_option("--pricing", opt.pricing, "welfare|revenue");
  run->add_option("--signals", opt.signals, "Comma-separated signals")->required();
  run->add_option("--seed", opt.seed, "Selects the coin realization");
  run->add_flag("--trace", opt.trace, "Print the transcript");
  run->add_flag("--clock", opt.clock, "Run the ascending clock implementation with consistent bidders");
  run->add_flag("--dump-table", opt.dump_table, "Print the allocation table (general)");

  auto *evaluate = app.add_subcommand("evaluate", "Expected welfare and revenue per profile");
  evaluate->add_option("--instance", opt.instance)->required();
  evaluate->add_option("--mechanism", opt.mechanism);
  evaluate->add_option("--pricing", opt.pricing);
  evaluate->add_option("--objective", opt.objective, "welfare|revenue, used for the ratio column");
  evaluate->add_option("--signals", opt.signals, "Evaluate only this profile");
  evaluate->add_option("--samples", opt.samples, "Monte Carlo samples instead of exact enumeration");
  evaluate->add_option("--seed", opt.seed);

  auto *verify = app.add_subcommand("verify", "Run property checks");
  verify->add_option("--instance", opt.instance)->required();
  verify->add_option("--mechanism", opt.mechanism);
  verify->add_option("--pricing", opt.pricing);
  verify->add_option("--check", opt.check, "icir|oxp|feasibility|rstar|equivalence|certificate|all");
  verify->add_option("--mode", opt.mode, "universal|expectation");
  verify->add_option("--designated", opt.designated, "Designated pairs file for --check certificate");

  auto *generate = app.add_subcommand("generate", "Write a generated instance");
  generate->add_option("--family", opt.family, "thm11|thm6|random");
  generate->add_option("--model", opt.model, "binary|shared|general (random family)");
  generate->add_option("--l", opt.l, "Number of expertise groups");
  generate->add_option("--k", opt.k, "Number of signal values");
  generate->add_option("--n", opt.n, "Number of bidders (random family)");
  generate->add_option("--M", opt.M, "Scale of the lower-bound families");
  generate->add_option("--seed", opt.seed);
  generate->add_option("--out", opt.out)->required();

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::ParseError const &e)
  {
    int const code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try
  {
    if (run->parsed())
    {
      return cmd_run(opt, out);
    }
    if (evaluate->parsed())
    {
      return cmd_evaluate(opt, out);
    }
    if (verify->parsed())
    {
      return cmd_verify(opt, out);
    }
    return cmd_generate(opt, out);
  }
  catch (ParseError const &e)
  {
    err << "error: " << e.what() << " (line " << e.line() << ", column " << e.column() << ")\n";
  }
  catch (InvalidInstance const &e)
  {
    err << "error: invalid instance\n";
    for (auto const &v : e.violations())
    {
      err << "  " << describe(v) << '\n';
    }
  }
  catch (Error const &e)
  {
    err << "error: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace ivauction::cli
