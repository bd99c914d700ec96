// Copyright 2026 The deloc Authors
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

#include "deloc/subset.h"

#include <gtest/gtest.h>

#include <unordered_set>

namespace deloc {
namespace {

TEST(SubsetTest, MembershipAndSize) {
  Subset s{3, 1, 3, 70};
  EXPECT_EQ(s.size(), 3);
  EXPECT_TRUE(s.Contains(70));
  EXPECT_FALSE(s.Contains(2));
  EXPECT_EQ(s.Bound(), 71);
  EXPECT_EQ(s.Indices(), (std::vector<int>{1, 3, 70}));
  s.Erase(70);
  EXPECT_EQ(s.Bound(), 4);
  EXPECT_EQ(s, (Subset{1, 3}));
}

TEST(SubsetTest, EqualityIsStructural) {
  Subset a{5};
  a.Insert(100);
  a.Erase(100);
  EXPECT_EQ(a, Subset::Singleton(5));
  EXPECT_EQ(a.Hash(), Subset::Singleton(5).Hash());
  std::unordered_set<Subset, SubsetHash> set{a, Subset{5}};
  EXPECT_EQ(set.size(), 1u);
}

TEST(SubsetTest, SetAlgebra) {
  const Subset a{0, 1, 2}, b{2, 3};
  EXPECT_EQ(a.Union(b), Subset::Full(4));
  EXPECT_EQ(a.Intersection(b), Subset{2});
  EXPECT_EQ(a.Difference(b), (Subset{0, 1}));
  EXPECT_TRUE(a.Intersects(b));
  EXPECT_FALSE(Subset{0}.Intersects(Subset{1}));
  EXPECT_TRUE(Subset{2}.IsSubsetOf(a));
  EXPECT_TRUE(Subset{}.empty());
  EXPECT_EQ(Subset{}.Bound(), 0);
}

TEST(SubsetTest, OrderIsBySizeFirst) {
  EXPECT_LT(Subset{9}, (Subset{0, 1}));
  EXPECT_FALSE((Subset{0, 1}) < Subset{9});
}

TEST(SubsetTest, ToStringUsesZeroBasedMembers) {
  EXPECT_EQ((Subset{0, 1}).ToString(), "{0 1}");
}

TEST(SubsetTest, SubsetsOfSizeEnumeratesBinomial) {
  EXPECT_EQ(SubsetsOfSize(8, 2).size(), 28u);
  EXPECT_EQ(SubsetsOfSize(5, 5).size(), 1u);
  const auto s = SubsetsOfSize(4, 2);
  EXPECT_EQ(s.front(), (Subset{0, 1}));
  EXPECT_EQ(s.back(), (Subset{2, 3}));
}

}  // namespace
}  // namespace deloc
