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

#include "ivauction/verification.hpp"

#include <sstream>

namespace ivauction::detail {

inline Money utility(Instance const &inst, BidderId bidder, Outcome const &outcome, SignalProfile const &truth)
{
  if (outcome.winner && *outcome.winner == bidder)
  {
    return inst.value(bidder, truth) - outcome.price;
  }
  return Money(0);
}

inline std::string describe_outcome(Outcome const &outcome)
{
  if (!outcome.winner)
  {
    return "no sale";
  }
  return "winner " + std::to_string(*outcome.winner) + " at " + format_money(outcome.price);
}

inline Report make_report(std::string check, Instance const &inst, std::string mechanism, Pricing pricing)
{
  Report r;
  r.check     = std::move(check);
  r.instance  = "n=" + std::to_string(inst.n()) + " k=" + std::to_string(inst.k()) +
               " l=" + std::to_string(inst.num_groups());
  r.mechanism = std::move(mechanism);
  r.pricing   = std::string(to_string(pricing));
  return r;
}

inline void fail(Report &report, Witness witness)
{
  report.pass    = false;
  report.witness = std::move(witness);
}

std::optional<Witness> oxp_point(Instance const &inst, MechanismKind kind, Pricing pricing,
                                 CoinRealization const &coins, BidderId bidder, Signal signal);

}  // namespace ivauction::detail
