// Copyright 2026 The subsamp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "subsamp/dataset.hpp"

#include <gtest/gtest.h>

#include "testutil.hpp"

namespace subsamp {
namespace {

const std::vector<std::string> kUniverse = {"a", "b", "c"};

TEST(DatasetTest, CanonicalEncodingFollowsUniverseOrder) {
  Dataset d = Dataset::from_elements(kUniverse, {"c", "a", "a"});
  EXPECT_EQ(d.canonical(), "a:2|c:1");
  EXPECT_EQ(d.size(), 3);
  EXPECT_EQ(d.count_of("a"), 2);
  EXPECT_EQ(d.count_of("b"), 0);
  EXPECT_FALSE(d.is_set());
  EXPECT_TRUE(Dataset::from_elements(kUniverse, {"a", "b"}).is_set());

  Dataset empty = Dataset::from_elements(kUniverse, {});
  EXPECT_EQ(empty.canonical(), "");
  EXPECT_EQ(empty.size(), 0);
}

TEST(DatasetTest, FromCountsValidates) {
  Dataset d = Dataset::from_counts(kUniverse, {1, 0, 2});
  EXPECT_EQ(d.canonical(), "a:1|c:2");
  EXPECT_ERRC(Dataset::from_counts(kUniverse, {1, -1, 0}), Errc::kBadParams);
  EXPECT_ERRC(Dataset::from_counts(kUniverse, {1, 1}), Errc::kBadParams);
  EXPECT_ERRC(Dataset::from_counts({"a", "a"}, {1, 1}), Errc::kBadParams);
  EXPECT_ERRC(Dataset::from_counts({"a:b"}, {1}), Errc::kBadParams);
  EXPECT_ERRC(Dataset::from_elements(kUniverse, {"z"}), Errc::kBadParams);
}

TEST(DatasetTest, ParseEncodingRecoversCounts) {
  std::map<std::string, long> counts = Dataset::parse_encoding("a:2|c:1");
  ASSERT_EQ(counts.size(), 2u);
  EXPECT_EQ(counts["a"], 2);
  EXPECT_EQ(counts["c"], 1);
  // Order-insensitive; the canonical form is just one valid spelling.
  EXPECT_EQ(Dataset::parse_encoding("c:1|a:2"), counts);
  EXPECT_TRUE(Dataset::parse_encoding("").empty());
  EXPECT_ERRC(Dataset::parse_encoding("a"), Errc::kBadParams);
  EXPECT_ERRC(Dataset::parse_encoding("a:x"), Errc::kBadParams);
  EXPECT_ERRC(Dataset::parse_encoding("a:0"), Errc::kBadParams);
  EXPECT_ERRC(Dataset::parse_encoding("a:1|a:1"), Errc::kBadParams);
}

TEST(DatasetTest, EditOperations) {
  Dataset d = Dataset::from_elements(kUniverse, {"a", "b"});
  EXPECT_EQ(d.with_removed("a").canonical(), "b:1");
  EXPECT_EQ(d.with_added("c").canonical(), "a:1|b:1|c:1");
  EXPECT_EQ(d.with_substituted("a", "c").canonical(), "b:1|c:1");
  EXPECT_ERRC(d.with_removed("c"), Errc::kBadParams);
  EXPECT_ERRC(d.with_added("z"), Errc::kBadParams);
}

TEST(PathDistanceTest, SubstituteMovesHalfTheMismatch) {
  Dataset x = Dataset::from_elements(kUniverse, {"a", "b"});
  Dataset y = Dataset::from_elements(kUniverse, {"a", "c"});
  Dataset doubled = Dataset::from_elements(kUniverse, {"a", "a"});
  Dataset z = Dataset::from_elements(kUniverse, {"b", "c"});
  EXPECT_EQ(path_distance(x, y, NeighborRelation::kSubstitute), 1);
  // {a,b} -> {b,c} swaps just the a, so one substitution reaches it.
  EXPECT_EQ(path_distance(x, z, NeighborRelation::kSubstitute), 1);
  EXPECT_EQ(path_distance(doubled, z, NeighborRelation::kSubstitute), 2);
  EXPECT_EQ(path_distance(x, x, NeighborRelation::kSubstitute), 0);

  Dataset shorter = Dataset::from_elements(kUniverse, {"a"});
  EXPECT_ERRC(path_distance(x, shorter, NeighborRelation::kSubstitute),
              Errc::kUnreachable);
}

TEST(PathDistanceTest, RemoveAddCountsEveryEdit) {
  Dataset x = Dataset::from_elements(kUniverse, {"a", "b"});
  Dataset y = Dataset::from_elements(kUniverse, {"a"});
  Dataset z = Dataset::from_elements(kUniverse, {"a", "c"});
  EXPECT_EQ(path_distance(x, y, NeighborRelation::kRemoveAdd), 1);
  EXPECT_EQ(path_distance(x, z, NeighborRelation::kRemoveAdd), 2);
}

TEST(PathDistanceTest, EncodingOverloadAgrees) {
  EXPECT_EQ(path_distance("a:1|b:1", "a:1|c:1", NeighborRelation::kSubstitute),
            1);
  EXPECT_EQ(path_distance("", "a:1", NeighborRelation::kRemoveAdd), 1);
  EXPECT_EQ(path_distance("a:2", "a:2", NeighborRelation::kSubstitute), 0);
}

}  // namespace
}  // namespace subsamp
