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

#include "ivauction/transcript.hpp"

#include <sstream>

namespace ivauction {

namespace {

std::string kind_token(DiscoveryEvent const &e)
{
  switch (e.kind)
  {
  case EventKind::Costly:
    return "costly";
  case EventKind::Free:
    return "free";
  case EventKind::Cleanup:
    return "cleanup";
  case EventKind::OutOfGroup:
    return "outgroup";
  case EventKind::Termination:
    switch (e.reason)
    {
    case TerminationReason::SingleSurvivor:
      return "end:single";
    case TerminationReason::ActiveEmpty:
      return "end:a-empty";
    case TerminationReason::NoOptimalLevel:
      return "end:no-level";
    }
  }
  return "?";
}

DiscoveryEvent parse_kind(std::string const &token)
{
  DiscoveryEvent e;
  if (token == "costly")
  {
    e.kind = EventKind::Costly;
  }
  else if (token == "free")
  {
    e.kind = EventKind::Free;
  }
  else if (token == "cleanup")
  {
    e.kind = EventKind::Cleanup;
  }
  else if (token == "outgroup")
  {
    e.kind = EventKind::OutOfGroup;
  }
  else if (token == "end:single" || token == "end:a-empty" || token == "end:no-level")
  {
    e.kind   = EventKind::Termination;
    e.reason = token == "end:single"    ? TerminationReason::SingleSurvivor
               : token == "end:a-empty" ? TerminationReason::ActiveEmpty
                                        : TerminationReason::NoOptimalLevel;
  }
  else
  {
    throw InvalidInput("unknown transcript event '" + token + "'");
  }
  return e;
}

}  // namespace

std::string format_transcript(Transcript const &transcript)
{
  std::ostringstream out;
  for (auto const &e : transcript.events)
  {
    out << "EVENT " << kind_token(e) << ' ' << e.bidder << ' ' << e.signal << ' ' << e.q_min << ' ' << e.q_max
        << '\n';
  }
  return out.str();
}

Transcript parse_transcript(std::string_view text)
{
  Transcript         out;
  std::istringstream in{std::string(text)};
  std::string        line;
  int                line_no = 0;
  while (std::getline(in, line))
  {
    ++line_no;
    if (line.empty())
    {
      continue;
    }
    std::istringstream fields(line);
    std::string        tag;
    std::string        kind;
    DiscoveryEvent     e;
    if (!(fields >> tag >> kind) || tag != "EVENT")
    {
      throw InvalidInput("transcript line " + std::to_string(line_no) + " is not an EVENT line");
    }
    e = parse_kind(kind);
    if (!(fields >> e.bidder >> e.signal >> e.q_min >> e.q_max))
    {
      throw InvalidInput("transcript line " + std::to_string(line_no) + " has missing fields");
    }
    out.events.push_back(e);
  }
  return out;
}

}  // namespace ivauction
