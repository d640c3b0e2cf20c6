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

#include "fixtures.hpp"

#include "ivauction/generators.hpp"

#include <gtest/gtest.h>

namespace iv = ivauction;

TEST(GeneralFamily, BidderCounts)
{
  EXPECT_EQ(iv::general_lower_bound_family(1, 2).data.n, 2);
  EXPECT_EQ(iv::general_lower_bound_family(1, 3).data.n, 4);
  EXPECT_EQ(iv::general_lower_bound_family(2, 3).data.n, 7);
  EXPECT_EQ(iv::general_lower_bound_family(2, 2).data.n, 3);
}

TEST(GeneralFamily, SmallCaseProfiles)
{
  auto const fam = iv::general_lower_bound_family(1, 3, 10);
  ASSERT_EQ(fam.data.n, 4);
  EXPECT_EQ(fam.common_profile, (iv::SignalProfile{1, 2, 2, 0}));
  ASSERT_EQ(fam.designated.size(), 4u);
  for (auto const &pair : fam.designated)
  {
    for (std::size_t j = 0; j < 4; ++j)
    {
      if (static_cast<iv::BidderId>(j) != pair.bidder)
      {
        EXPECT_EQ(pair.profile[j], fam.common_profile[j]);
      }
    }
  }
  EXPECT_EQ(fam.labels.size(), 4u);
}

TEST(SharedFamily, BidderCountsAndWeights)
{
  EXPECT_EQ(iv::shared_quality_lower_bound_family(1, 2).data.n, 2);
  EXPECT_EQ(iv::shared_quality_lower_bound_family(2, 2).data.n, 3);
  EXPECT_EQ(iv::shared_quality_lower_bound_family(1, 3).data.n, 3);
}

TEST(Families, CertificatesHoldExactly)
{
  std::vector<std::pair<int, int>> const general{{1, 2}, {1, 3}, {2, 2}, {2, 3}};
  for (auto [l, k] : general)
  {
    auto const fam = iv::general_lower_bound_family(l, k);
    iv::Instance const inst(fam.data);
    auto const cert = iv::verify_lb_certificate(inst, fam.designated, fam.common_profile);
    EXPECT_EQ(cert.bound, iv::Rational(1, l * k * (k - 1) / 2 + 1));
    EXPECT_EQ(iv::common_profile_of(fam.designated), fam.common_profile);
  }
  std::vector<std::pair<int, int>> const shared{{1, 2}, {1, 3}, {2, 2}};
  for (auto [l, k] : shared)
  {
    auto const fam = iv::shared_quality_lower_bound_family(l, k);
    iv::Instance const inst(fam.data);
    auto const cert = iv::verify_lb_certificate(inst, fam.designated, fam.common_profile);
    EXPECT_EQ(cert.bound, iv::Rational(1, l * (k - 1) + 1));
  }
}

TEST(RandomInstance, DeterministicAndValid)
{
  for (auto family : {iv::RandomFamily::Binary, iv::RandomFamily::Shared, iv::RandomFamily::General})
  {
    int const k = family == iv::RandomFamily::Binary ? 2 : 3;
    for (int l : {1, 2})
    {
      for (std::uint64_t seed : {0u, 7u, 99u})
      {
        auto const a = iv::random_instance(4, k, l, family, seed);
        EXPECT_EQ(a, iv::random_instance(4, k, l, family, seed));
        EXPECT_TRUE(iv::validate_instance(a).empty());
      }
    }
  }
  EXPECT_NE(iv::random_instance(6, 2, 1, iv::RandomFamily::Binary, 7),
            iv::random_instance(6, 2, 1, iv::RandomFamily::Binary, 8));
  EXPECT_THROW(iv::random_instance(3, 3, 1, iv::RandomFamily::Binary, 1), iv::InvalidInput);
  EXPECT_THROW(iv::random_instance(2, 2, 3, iv::RandomFamily::Binary, 1), iv::InvalidInput);
  EXPECT_EQ(iv::parse_random_family("general"), iv::RandomFamily::General);
}

TEST(Designated, FormatParseRoundTrip)
{
  std::vector<iv::DesignatedPair> pairs{{{0, 1, 1}, 0}, {{1, 0, 1}, 1}};
  auto const text = iv::format_designated(pairs);
  EXPECT_EQ(text, "0,1,1;0\n1,0,1;1\n");
  EXPECT_EQ(iv::parse_designated(text), pairs);
  EXPECT_EQ(iv::common_profile_of(pairs), (iv::SignalProfile{1, 1, 1}));
  EXPECT_THROW(iv::parse_designated("0,1"), iv::InvalidInput);
}
