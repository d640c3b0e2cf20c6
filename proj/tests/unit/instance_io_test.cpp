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

#include "ivauction/instance_io.hpp"

#include <gtest/gtest.h>

namespace iv = ivauction;

TEST(InstanceIo, RoundTripsEveryModel)
{
  std::vector<iv::InstanceData> cases{iv::testing::e1(), iv::testing::e3(),
                                      iv::random_instance(4, 3, 2, iv::RandomFamily::Shared, 1),
                                      iv::random_instance(4, 3, 2, iv::RandomFamily::General, 2)};
  for (auto const &d : cases)
  {
    auto const text = iv::serialize_instance(d);
    EXPECT_EQ(iv::parse_instance(text).data(), d);
  }
}

TEST(InstanceIo, ReadsFixtureFile)
{
  auto const inst = iv::load_instance_file(iv::testing::data_path("e1.json"));
  EXPECT_EQ(inst.data(), iv::testing::e1());
}

TEST(InstanceIo, FractionalMoney)
{
  auto d                                              = iv::testing::e1();
  std::get<iv::BinarySymmetric>(d.valuation).tables[1] = {iv::Money(1, 3), iv::Money(1, 2), 1};
  auto const back = iv::parse_instance(iv::serialize_instance(d));
  EXPECT_EQ(back.value(1, {0, 0}), iv::Money(1, 3));
  EXPECT_EQ(back.value(1, {1, 0}), iv::Money(1, 2));
}

TEST(InstanceIo, SyntaxErrorCarriesPosition)
{
  try
  {
    iv::parse_instance("{\n  \"version\": 1,\n  \"n\": }");
    FAIL() << "expected a parse error";
  }
  catch (iv::ParseError const &e)
  {
    EXPECT_EQ(e.line(), 3);
    EXPECT_GT(e.column(), 1);
  }
}

TEST(InstanceIo, RejectsSmallK)
{
  auto d = iv::testing::e1();
  d.k    = 1;
  auto const text = iv::serialize_instance(d);
  try
  {
    iv::parse_instance(text);
    FAIL() << "expected rejection";
  }
  catch (iv::Error const &e)
  {
    EXPECT_NE(std::string(e.what()).find("k must be >= 2"), std::string::npos);
  }
}

TEST(InstanceIo, RejectsBrokenPartition)
{
  auto d   = iv::testing::e1();
  d.groups = {{0}};
  try
  {
    iv::parse_instance(iv::serialize_instance(d));
    FAIL() << "expected rejection";
  }
  catch (iv::InvalidInstance const &e)
  {
    ASSERT_FALSE(e.violations().empty());
    EXPECT_EQ(e.violations()[0].rule, "partition");
  }
}

TEST(InstanceIo, MissingFieldIsParseError)
{
  EXPECT_THROW(iv::parse_instance(R"({"version": 1, "n": 2, "k": 2})"), iv::ParseError);
  EXPECT_THROW(iv::parse_instance(R"({"version": 2, "n": 2, "k": 2, "groups": [[0,1]],
    "valuation": {"type": "binary_symmetric", "tables": [["0","0","1"],["0","0","1"]]}})"),
               iv::ParseError);
}
