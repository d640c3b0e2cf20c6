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
#include "ivauction/verification.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ivauction {

struct FamilyInstance
{
  InstanceData                data;
  std::vector<DesignatedPair> designated;
  SignalProfile               common_profile;
  Money                       scale;
  std::vector<std::string>    labels;  // one per bidder
};

/// Lower-bound family for arbitrary monotone symmetric valuations with l
/// groups and k signal values: l * k(k-1)/2 + 1 bidders.
///
/// Expert (i, j, g) for 1 <= i <= k-1, 0 <= j < i sits in group g with signal
/// i at the common profile and values M^j once the profile dominates (up to
/// within-group permutation) the common profile with one of her group's
/// signals i lowered to j. The special bidder, last, sits in group 0 with
/// signal 0 and values M^k above the common profile. Bidders are ordered by
/// group, then i, then j.
FamilyInstance general_lower_bound_family(int l, int k, Money const &M = 100);

/// Lower-bound family for shared quality vectors with weights k^g: l(k-1)+1
/// bidders. Threshold bidder (d, g) sits in group g with signal k-1 and
/// values a positive amount once the weighted quality reaches S - d k^g,
/// where S is the weighted quality of the common profile; the last bidder
/// sits in group 0 with signal 0 and needs S. Higher thresholds carry
/// larger amounts, powers of H.
FamilyInstance shared_quality_lower_bound_family(int l, int k, Money const &H = 100);

enum class RandomFamily
{
  Binary,
  Shared,
  General,
};

RandomFamily parse_random_family(std::string_view text);

/// Random monotone instance, a pure function of its arguments. Groups are a
/// seeded shuffle dealt round-robin; value tables are prefix sums of sampled
/// non-negative increments.
InstanceData random_instance(int n, int k, int l, RandomFamily family, std::uint64_t seed);

/// `profile;bidder` per line.
std::string                 format_designated(std::vector<DesignatedPair> const &pairs);
std::vector<DesignatedPair> parse_designated(std::string_view text);

/// Coordinate-wise maximum of the designated profiles: the common profile
/// every valid chain ends at.
SignalProfile common_profile_of(std::vector<DesignatedPair> const &pairs);

}  // namespace ivauction
