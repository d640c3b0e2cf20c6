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

#include "ivauction/binary_auction.hpp"
#include "ivauction/clock_runtime.hpp"
#include "ivauction/coins.hpp"
#include "ivauction/general_auction.hpp"
#include "ivauction/model.hpp"
#include "ivauction/transcript.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace ivauction {

enum class MechanismKind
{
  Binary,
  BinaryGrouped,
  Kary,
  KaryGrouped,
  General,
};

std::string_view to_string(MechanismKind kind);
MechanismKind    parse_mechanism_kind(std::string_view text);

/// The clock counterpart of a discovery mechanism; throws InvalidInput for General.
ClockMechanism clock_of(MechanismKind kind);

struct WeightedCoin
{
  CoinRealization coins;
  Rational        probability;
};

/// The product of the coin axes a mechanism actually reads; unused axes are
/// collapsed to a single point.
struct CoinSpace
{
  int                       n        = 1;
  bool                      permute  = false;
  int                       residues = 1;
  int                       groups   = 1;
  std::vector<std::int64_t> grid_points{0};

  std::int64_t              size() const;
  std::vector<WeightedCoin> enumerate() const;
  CoinRealization           sample(std::mt19937_64 &rng) const;
};

CoinSpace coin_space(Instance const &inst, MechanismKind kind, Pricing pricing);

struct Budget
{
  int          binary_n     = 6;
  int          kary_n       = 5;
  int          kary_k       = 4;
  int          oxp_n        = 3;
  int          oxp_k        = 3;
  std::int64_t max_profiles = 1 << 16;
};

/// A mechanism as a deterministic function of (reports, coins).
struct MechanismUnderTest
{
  std::string                                                               name;
  MechanismKind                                                             kind    = MechanismKind::Binary;
  Pricing                                                                   pricing = Pricing::Welfare;
  CoinSpace                                                                 coins;
  std::function<Outcome(SignalProfile const &, CoinRealization const &)>    run;
  std::shared_ptr<AllocationTable const>                                    table;  // General only
};

/// Binds a mechanism to an instance. Builds the allocation table for General.
MechanismUnderTest make_mechanism(Instance const &inst, MechanismKind kind, Pricing pricing,
                                  Budget const &budget = {});

/// Broken on purpose: runs the discovery mechanism but charges the winner her
/// value at the reported profile plus one.
MechanismUnderTest make_overcharge_fixture(Instance const &inst, MechanismKind kind);

/// Broken on purpose: first-price style, charges the winner her value at the
/// reported profile.
MechanismUnderTest make_first_price_fixture(Instance const &inst, MechanismKind kind);

/// Throws ResourceLimit if exact enumeration for this mechanism exceeds `budget`.
void check_budget(Instance const &inst, MechanismKind kind, Budget const &budget);

struct OutcomeStats
{
  Rational     welfare;
  Rational     revenue;
  Rational     p_optimal;
  std::int64_t samples = 0;  // 0 for exact enumeration
  double       se_welfare = 0;
  double       se_revenue = 0;
  double       se_optimal = 0;
};

OutcomeStats expected_outcome(Instance const &inst, MechanismUnderTest const &mech, SignalProfile const &profile);

OutcomeStats estimate_outcome(Instance const &inst, MechanismUnderTest const &mech, SignalProfile const &profile,
                              std::int64_t samples, std::uint64_t seed);

enum class Objective
{
  Welfare,
  Revenue,
};

struct Ratio
{
  bool          defined  = false;  // some profile has OPT > 0
  bool          infinite = false;  // OPT > 0 but the objective is 0 somewhere
  Rational      value;
  SignalProfile profile;           // a maximizing profile
};

/// Max over truthful profiles of OPT(s) / E[objective(s)], skipping OPT = 0.
Ratio worst_case_ratio(Instance const &inst, MechanismUnderTest const &mech, Objective objective,
                       Budget const &budget = {});

struct Witness
{
  SignalProfile                  profile;
  BidderId                       bidder = -1;
  std::string                    deviation;
  std::optional<CoinRealization> coins;
  std::string                    detail;

  bool operator==(Witness const &) const = default;
};

struct Report
{
  std::string            check;
  std::string            instance;
  std::string            mechanism;
  std::string            pricing;
  bool                   pass = true;
  std::string            quantity;
  std::optional<Witness> witness;
};

std::string format_witness(Witness const &witness);

/// `check,instance,mechanism,pricing,result,quantity,witness` header plus one row per report.
std::string format_reports_csv(std::vector<Report> const &reports);

/// Per coin realization: truthful utility >= 0 and no unilateral misreport
/// does better, utilities measured with true values.
Report check_universal_icir(Instance const &inst, MechanismUnderTest const &mech, Budget const &budget = {});

/// Same quantifiers with utilities in expectation over the coins, plus
/// non-negative winner utility in every realization under truthful reports.
Report check_expost_ic(Instance const &inst, MechanismUnderTest const &mech, Budget const &budget = {});

enum class Guarantee
{
  OptimalWins,  // P[optimal bidder wins] >= 1/alpha
  Welfare,      // alpha * E[welfare] >= OPT
  Revenue,      // alpha * E[revenue] >= OPT
};

/// Checks the guarantee at every truthful profile; quantity is the worst
/// observed factor.
Report check_guarantee(Instance const &inst, MechanismUnderTest const &mech, Guarantee guarantee,
                       Rational const &alpha, Budget const &budget = {});

/// Obvious ex-post equilibrium of consistent bidding in the clock auction,
/// per coin realization and reachable decision point.
Report check_oxp(Instance const &inst, MechanismKind kind, Pricing pricing, Budget const &budget = {});

/// Event-wise replay of a discovery transcript: |R*| <= 2, the interval law
/// q_max - q_min = (k-1)|A| at the end of every iteration, and the true
/// quality of the tracked group within the bounds. Returns the first violation.
std::optional<std::string> transcript_violation(Instance const &inst, MechanismKind kind,
                                                SignalProfile const &truth, CoinRealization const &coins,
                                                Transcript const &transcript, int *max_rstar = nullptr);

/// transcript_violation over every coin realization and truthful profile.
Report check_discovery_invariants(Instance const &inst, MechanismKind kind, Pricing pricing,
                                  Budget const &budget = {});

/// Feasibility, monotonicity, two-valuedness, closed-form equivalence and slot
/// disjointness of an allocation table.
Report check_allocation_table(Instance const &inst, AllocationTable const &table);

/// Clock run with consistent strategies equals the direct run for every coin
/// realization and truthful profile.
Report check_clock_equivalence(Instance const &inst, MechanismKind kind, Pricing pricing,
                               Budget const &budget = {});

/// Re-evaluates a failing report at its witness. Returns the witness found
/// there, which equals the stored one when the failure replays.
std::optional<Witness> replay_witness(Instance const &inst, MechanismUnderTest const &mech, Report const &report);

struct DesignatedPair
{
  SignalProfile profile;
  BidderId      bidder = -1;

  bool operator==(DesignatedPair const &) const = default;
};

struct LowerBoundCertificate
{
  Rational                    bound;   // any monotone feasible allocation has p <= bound
  std::vector<DesignatedPair> chains;  // verified pairs, each raising to the common profile
};

/// Verifies that each designated profile reaches `common` by raising only the
/// designated bidder's signal, that designated bidders are distinct and
/// optimal at their profiles; the bound is 1 / (number of pairs).
/// Throws CertificateInvalid otherwise.
LowerBoundCertificate verify_lb_certificate(Instance const &inst, std::vector<DesignatedPair> const &designated,
                                            SignalProfile const &common);

}  // namespace ivauction
