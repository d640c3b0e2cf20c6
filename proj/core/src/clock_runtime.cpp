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

#include "ivauction/clock_runtime.hpp"

#include "discovery_engine.hpp"

#include <sstream>

namespace ivauction {

Strategy consistent_strategy(Signal signal)
{
  return [signal](DecisionPoint const &point) {
    return point.level <= signal ? ClockResponse::Accept : ClockResponse::Exit;
  };
}

std::string_view to_string(ClockMechanism mechanism)
{
  switch (mechanism)
  {
  case ClockMechanism::Binary: return "binary";
  case ClockMechanism::BinaryGrouped: return "binary-grouped";
  case ClockMechanism::Kary: return "kary";
  case ClockMechanism::KaryGrouped: return "kary-grouped";
  }
  return "unknown";
}

namespace {

class ClockSource
{
public:
  ClockSource(int n, int k, std::vector<Strategy> const &strategies, ClockTranscript &log)
      : k_(k), strategies_(strategies), log_(log), clock_(static_cast<std::size_t>(n), 0),
        exited_(static_cast<std::size_t>(n), false)
  {
  }

  Signal discover(BidderId b)
  {
    while (clock_[static_cast<std::size_t>(b)] < k_ - 1)
    {
      if (!raise(b))
      {
        return clock_[static_cast<std::size_t>(b)] - 1;
      }
    }
    return k_ - 1;
  }

  template <class Meets>
  bool final_offer(BidderId b, Meets &&meets)
  {
    int target = -1;
    for (Signal t = 0; t < k_; ++t)
    {
      if (meets(t))
      {
        target = t;
        break;
      }
    }
    if (target < 0)
    {
      return false;
    }
    while (clock_[static_cast<std::size_t>(b)] < target)
    {
      if (!raise(b))
      {
        return false;
      }
    }
    return true;
  }

private:
  // Proposes the next level to b; false when she exits.
  bool raise(BidderId b)
  {
    auto const idx = static_cast<std::size_t>(b);
    if (exited_[idx])
    {
      throw std::logic_error("clock raised for an exited bidder");
    }
    int const     level = clock_[idx] + 1;
    DecisionPoint point{b, level, std::span<ClockEvent const>(log_.events)};
    ClockResponse response{};
    try
    {
      response = strategies_[idx](point);
    }
    catch (std::exception const &e)
    {
      throw ClockAbort("strategy of bidder " + std::to_string(b) + " failed at level " + std::to_string(level) +
                       ": " + e.what());
    }
    catch (...)
    {
      throw ClockAbort("strategy of bidder " + std::to_string(b) + " failed at level " + std::to_string(level));
    }
    clock_[idx] = level;
    log_.events.push_back(ClockEvent{b, level, response});
    if (response == ClockResponse::Exit)
    {
      exited_[idx] = true;
      return false;
    }
    return true;
  }

  int                          k_;
  std::vector<Strategy> const &strategies_;
  ClockTranscript             &log_;
  std::vector<int>             clock_;
  std::vector<bool>            exited_;
};

}  // namespace

ClockRun run_clock(Instance const &inst, ClockMechanism mechanism, std::vector<Strategy> const &strategies,
                   CoinRealization const &coins, Pricing pricing)
{
  if (static_cast<int>(strategies.size()) != inst.n())
  {
    throw InvalidInput("expected one strategy per bidder");
  }
  bool const grouped = mechanism == ClockMechanism::BinaryGrouped || mechanism == ClockMechanism::KaryGrouped;
  bool const binary  = mechanism == ClockMechanism::Binary || mechanism == ClockMechanism::BinaryGrouped;
  int const  k       = inst.k();
  if (binary && k != 2)
  {
    throw InvalidInput("binary auction requires k = 2");
  }
  if (!binary && !inst.quality_based())
  {
    throw InvalidInput("k-ary discovery auction needs values that depend only on quality");
  }
  if (!grouped && inst.num_groups() != 1)
  {
    throw InvalidInput("ungrouped auction requires a single expertise group");
  }
  check_coins(coins, inst.n(), binary ? 1 : k - 1, grouped ? inst.num_groups() : 1, lcm_upto(k));

  ClockRun    run;
  ClockSource source(inst.n(), k, strategies, run.transcript);
  int const   group = grouped ? coins.group_pick : 0;
  if (binary)
  {
    run.outcome = detail::run_discovery(inst, group, grouped, detail::BinaryBounds{}, coins, pricing, source, nullptr);
  }
  else
  {
    run.outcome = detail::run_discovery(inst, group, grouped, detail::ResidueBounds{k, coins.residue}, coins,
                                        pricing, source, nullptr);
  }
  run.transcript.winner = run.outcome.winner;
  run.transcript.price  = run.outcome.winner ? run.outcome.price : Money(0);
  return run;
}

std::string format_clock_transcript(ClockTranscript const &transcript)
{
  std::ostringstream out;
  for (auto const &e : transcript.events)
  {
    out << "CLOCK " << e.bidder << ' ' << e.level << ' '
        << (e.response == ClockResponse::Accept ? "accept" : "exit") << '\n';
  }
  out << "RESULT ";
  if (transcript.winner)
  {
    out << *transcript.winner << ' ' << format_money(transcript.price);
  }
  else
  {
    out << "none 0";
  }
  out << '\n';
  return out.str();
}

ClockTranscript parse_clock_transcript(std::string_view text)
{
  ClockTranscript    out;
  std::istringstream in{std::string(text)};
  std::string        line;
  bool               finished = false;
  while (std::getline(in, line))
  {
    if (line.empty())
    {
      continue;
    }
    std::istringstream fields(line);
    std::string        tag;
    fields >> tag;
    if (finished)
    {
      throw InvalidInput("clock transcript continues after RESULT");
    }
    if (tag == "CLOCK")
    {
      ClockEvent  e;
      std::string response;
      if (!(fields >> e.bidder >> e.level >> response) || (response != "accept" && response != "exit"))
      {
        throw InvalidInput("malformed clock event: " + line);
      }
      e.response = response == "accept" ? ClockResponse::Accept : ClockResponse::Exit;
      out.events.push_back(e);
    }
    else if (tag == "RESULT")
    {
      std::string winner;
      std::string price;
      if (!(fields >> winner >> price))
      {
        throw InvalidInput("malformed clock result: " + line);
      }
      if (winner != "none")
      {
        out.winner = std::stoi(winner);
        out.price  = parse_rational(price);
      }
      finished = true;
    }
    else
    {
      throw InvalidInput("unknown clock transcript line: " + line);
    }
  }
  if (!finished)
  {
    throw InvalidInput("clock transcript has no RESULT line");
  }
  return out;
}

}  // namespace ivauction
