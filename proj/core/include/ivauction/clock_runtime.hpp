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

#include "ivauction/coins.hpp"
#include "ivauction/model.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ivauction {

enum class ClockResponse
{
  Accept,
  Exit,
};

struct ClockEvent
{
  BidderId      bidder   = -1;
  int           level    = 1;
  ClockResponse response = ClockResponse::Accept;

  bool operator==(ClockEvent const &) const = default;
};

struct ClockTranscript
{
  std::vector<ClockEvent> events;
  std::optional<BidderId> winner;
  Money                   price = 0;

  bool operator==(ClockTranscript const &) const = default;
};

/// What a bidder sees when her clock is raised: the proposed level and the
/// public history of every earlier clock event.
struct DecisionPoint
{
  BidderId                    bidder = -1;
  int                         level  = 1;
  std::span<ClockEvent const> history;
};

using Strategy = std::function<ClockResponse(DecisionPoint const &)>;

/// Accepts level c iff c <= signal.
Strategy consistent_strategy(Signal signal);

enum class ClockMechanism
{
  Binary,
  BinaryGrouped,
  Kary,
  KaryGrouped,
};

std::string_view to_string(ClockMechanism mechanism);

struct ClockRun
{
  Outcome         outcome;
  ClockTranscript transcript;
};

/// Drives the direct mechanism's discovery schedule with ascending signal
/// clocks: a bidder whose signal is needed has her clock raised one level at a
/// time until she exits (signal = exit level - 1) or accepts level k-1. The
/// survivor's clock is then raised to the lowest level at which her implied
/// value reaches the price; accepting every step buys the item.
///
/// Throws ClockAbort if a strategy throws.
ClockRun run_clock(Instance const &inst, ClockMechanism mechanism, std::vector<Strategy> const &strategies,
                   CoinRealization const &coins, Pricing pricing);

/// `CLOCK bidder level accept|exit` per event, then `RESULT winner price`
/// (`RESULT none 0` without a sale).
std::string     format_clock_transcript(ClockTranscript const &transcript);
ClockTranscript parse_clock_transcript(std::string_view text);

}  // namespace ivauction
