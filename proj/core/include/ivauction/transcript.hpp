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

#include "ivauction/model.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ivauction {

enum class EventKind
{
  Costly,      // sampled active bidder rejected and her signal discovered
  Free,        // provably non-optimal active bidder rejected
  Cleanup,     // bidder leaves R* once verified non-optimal
  OutOfGroup,  // grouped wrappers: bidder outside the picked group rejected
  Termination,
};

enum class TerminationReason
{
  SingleSurvivor,
  ActiveEmpty,     // every remaining bidder was proven non-optimal
  NoOptimalLevel,  // survivor is optimal at no candidate level
};

/// `q_min`/`q_max` are the bounds after the event, on the tracked (picked
/// group's) quality coordinate.
struct DiscoveryEvent
{
  EventKind         kind   = EventKind::Costly;
  BidderId          bidder = -1;
  Signal            signal = -1;
  int               q_min  = 0;
  int               q_max  = 0;
  TerminationReason reason = TerminationReason::SingleSurvivor;

  bool operator==(DiscoveryEvent const &) const = default;
};

struct Transcript
{
  std::vector<DiscoveryEvent> events;

  bool operator==(Transcript const &) const = default;
};

/// One line per event: `EVENT kind bidder signal q_min q_max`; the
/// termination kind carries its reason, e.g. `EVENT end:a-empty -1 -1 4 4`.
std::string format_transcript(Transcript const &transcript);
Transcript  parse_transcript(std::string_view text);

}  // namespace ivauction
