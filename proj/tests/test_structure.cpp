#include <gtest/gtest.h>

#include <set>

#include "udiag/presentation.hpp"
#include "udiag/structure.hpp"

namespace udiag {
namespace {

TEST(Structure, RejectsOutOfRangeValues) {
  EXPECT_THROW(Structure({}), std::invalid_argument);
  EXPECT_THROW(Structure({1}), std::invalid_argument);
  EXPECT_THROW(Structure({0, 2}), std::invalid_argument);
  EXPECT_NO_THROW(Structure({1, 0}));
}

TEST(Pairing, EncodeExamples) {
  EXPECT_EQ(encode_pair(Structure({0}), 0), Structure({0, 0}));
  EXPECT_EQ(encode_pair(Structure({1, 0}), 1), Structure({1, 1, 0}));
}

TEST(Pairing, DecodeExamples) {
  EXPECT_EQ(decode_pair(Structure({1, 1, 0})), (TaggedStructure{Structure({1, 0}), 1}));
  EXPECT_EQ(decode_pair(Structure({0, 0})), (TaggedStructure{Structure({0}), 0}));
  EXPECT_THROW(decode_pair(Structure({2, 0, 0})), NotInImage);
}

TEST(Pairing, DecodeRejectsNonImages) {
  EXPECT_THROW(decode_pair(Structure({0})), NotInImage);
  // shifted value 1 is not < inner size 1
  EXPECT_THROW(decode_pair(Structure({0, 1})), NotInImage);
  EXPECT_FALSE(try_decode_pair(Structure({2, 0, 0})).has_value());
}

TEST(Pairing, RoundTripAllSmallStructures) {
  for (const Structure& w : structures_up_to(5)) {
    for (int tag : {0, 1}) {
      EXPECT_EQ(decode_pair(encode_pair(w, tag)), (TaggedStructure{w, tag}));
    }
  }
}

TEST(Pairing, Injective) {
  std::set<Structure> seen;
  std::size_t count = 0;
  for (const Structure& w : structures_up_to(4)) {
    for (int tag : {0, 1}) {
      seen.insert(encode_pair(w, tag));
      ++count;
    }
  }
  EXPECT_EQ(seen.size(), count);
}

TEST(OplusMember, RoutesByTag) {
  auto all = [](const Structure&) { return true; };
  auto none = [](const Structure&) { return false; };
  const Structure w({2, 0, 1});
  EXPECT_TRUE(oplus_member(encode_pair(w, 0), all, none));
  EXPECT_FALSE(oplus_member(encode_pair(w, 1), all, none));
  EXPECT_FALSE(oplus_member(Structure({2, 0, 0}), all, all));
}

TEST(OplusMember, AllEmptyAcceptsExactlyTagZeroImage) {
  auto all = [](const Structure&) { return true; };
  auto none = [](const Structure&) { return false; };
  for (const Structure& w2 : structures_up_to(5)) {
    auto pair = try_decode_pair(w2);
    const bool tag0_image = pair && pair->tag == 0;
    EXPECT_EQ(oplus_member(w2, all, none), tag0_image) << w2;
  }
}

TEST(Enumeration, FirstBlocks) {
  auto one = enumerate_structures(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], Structure({0}));

  auto two = enumerate_structures(2);
  ASSERT_EQ(two.size(), 5u);
  EXPECT_EQ(two[1], Structure({0, 0}));
  EXPECT_EQ(two[2], Structure({0, 1}));
  EXPECT_EQ(two[3], Structure({1, 0}));
  EXPECT_EQ(two[4], Structure({1, 1}));
}

TEST(Enumeration, CountsAndOrder) {
  std::size_t per_size[6] = {};
  std::optional<Structure> prev;
  std::set<Structure> seen;
  for (const Structure& s : structures_up_to(5)) {
    ++per_size[s.size()];
    if (prev) {
      EXPECT_LT(*prev, s);
      EXPECT_EQ(next_structure(*prev), s);
    }
    seen.insert(s);
    prev = s;
  }
  for (Natural n = 1; n <= 5; ++n) EXPECT_EQ(per_size[n], structures_of_size(n)) << n;
  EXPECT_EQ(per_size[3], 27u);
  EXPECT_EQ(seen.size(), 3413u);
}

TEST(Enumeration, NextStructureExamples) {
  EXPECT_EQ(next_structure(Structure({0})), Structure({0, 0}));
  EXPECT_EQ(next_structure(Structure({0, 1})), Structure({1, 0}));
  EXPECT_EQ(next_structure(Structure({1, 1})), Structure({0, 0, 0}));
}

TEST(Enumeration, ExactSizeRange) {
  std::size_t count = 0;
  for (const Structure& s : structures_of_exact_size(4)) {
    EXPECT_EQ(s.size(), 4u);
    ++count;
  }
  EXPECT_EQ(count, 256u);
}

TEST(StructureText, FormatIsBitExact) {
  EXPECT_EQ(format_structure(Structure({2, 0, 1})), "3\n2 0 1\n");
  EXPECT_EQ(format_structure(Structure({0})), "1\n0\n");
}

TEST(StructureText, ParseRoundTrip) {
  for (const Structure& s : structures_up_to(3)) EXPECT_EQ(parse_structure(format_structure(s)), s);
  EXPECT_EQ(parse_structure("2\n1 1\n"), Structure({1, 1}));
}

TEST(StructureText, ParseErrors) {
  EXPECT_THROW(parse_structure(""), std::invalid_argument);
  EXPECT_THROW(parse_structure("0\n\n"), std::invalid_argument);
  EXPECT_THROW(parse_structure("2\n0\n"), std::invalid_argument);
  EXPECT_THROW(parse_structure("2\n0 2\n"), std::invalid_argument);
  EXPECT_THROW(parse_structure("1\n0 0\n"), std::invalid_argument);
}

}  // namespace
}  // namespace udiag
