#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "sdc/io.hpp"

using sdc::BinaryCode;
using sdc::BitVector;
using sdc::Permutation;
namespace io = sdc::io;

TEST(PermutationText, CycleAndOneLineForms) {
  EXPECT_EQ(io::parse_permutation("(1,2,3)(4,5)"), Permutation::from_cycles(5, {{0, 1, 2}, {3, 4}}));
  EXPECT_EQ(io::parse_permutation("(1 2 3) (4 5)"), Permutation::from_cycles(5, {{0, 1, 2}, {3, 4}}));
  EXPECT_EQ(io::parse_permutation("[2,3,1,5,4]"), Permutation::from_cycles(5, {{0, 1, 2}, {3, 4}}));
  EXPECT_EQ(io::parse_permutation("()", 4), Permutation::identity(4));
  EXPECT_EQ(io::parse_permutation("(1,2)", 6).degree(), 6U);
  EXPECT_EQ(io::format_permutation(Permutation::from_cycles(6, {{3, 4}, {0, 2, 1}})), "(1,3,2)(4,5)");
  EXPECT_EQ(io::format_permutation(Permutation::identity(3)), "()");
}

TEST(PermutationText, Errors) {
  EXPECT_THROW(io::parse_permutation("(1,2"), sdc::ParseError);
  EXPECT_THROW(io::parse_permutation("(0,1)"), sdc::ParseError);
  EXPECT_THROW(io::parse_permutation("(1,1)"), sdc::ParseError);
  EXPECT_THROW(io::parse_permutation("(1,a)"), sdc::ParseError);
  EXPECT_THROW(io::parse_permutation("[1,1,2]"), sdc::ParseError);
  EXPECT_THROW(io::parse_permutation("(1,5)", 3), sdc::ParseError);
  EXPECT_THROW(io::parse_permutation(""), sdc::ParseError);
}

TEST(PermutationText, RoundTrip) {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 15;
    std::vector<std::uint32_t> images(n);
    std::iota(images.begin(), images.end(), 0U);
    std::shuffle(images.begin(), images.end(), rng);
    const Permutation p(images);
    EXPECT_EQ(io::parse_permutation(io::format_permutation(p), n), p);
  }
}

TEST(GroupJson, RoundTrip) {
  const auto g = io::parse_generators({"(1,2,3)", "(4,5)"}, 6);
  const auto j = io::group_to_json(g);
  EXPECT_EQ(j.dump(), R"j({"degree":6,"generators":["(1,2,3)","(4,5)"]})j");
  const auto back = io::group_from_json(j);
  EXPECT_EQ(back.degree(), 6U);
  EXPECT_EQ(back.generators(), g.generators());
  EXPECT_EQ(io::parse_generators({"(1,2)", "(3,4,5)"}).degree(), 5U);
  EXPECT_THROW(io::group_from_json(nlohmann::json::parse(R"j({"degree":6})j")), sdc::ParseError);
  EXPECT_THROW(io::group_from_json(nlohmann::json::parse(R"j({"degree":2,"generators":["(1,3)"]})j")), sdc::ParseError);
}

TEST(Hex, ConventionAndPadding) {
  EXPECT_EQ(io::to_hex(BitVector::from_string("11110000")), "f0");
  EXPECT_EQ(io::to_hex(BitVector::from_string("101")), "a");
  EXPECT_EQ(io::to_hex(BitVector::from_string("110000001")), "c08");
  EXPECT_EQ(io::from_hex("c08", 9), BitVector::from_string("110000001"));
  EXPECT_THROW(io::from_hex("c09", 9), sdc::ParseError);
  EXPECT_THROW(io::from_hex("c0", 9), sdc::ParseError);
  EXPECT_THROW(io::from_hex("g", 4), sdc::ParseError);
  std::mt19937_64 rng(62);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 40;
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i) v.set(i, rng() & 1U);
    EXPECT_EQ(io::from_hex(io::to_hex(v), n), v);
  }
}

TEST(CodeFormats, RoundTrip) {
  const auto e8 = sdc::codes::e8();
  const auto j = io::code_to_json(e8);
  EXPECT_EQ(j["n"], 8);
  EXPECT_EQ(j["k"], 4);
  EXPECT_EQ(io::code_from_json(j), e8);
  EXPECT_EQ(io::parse_code(j.dump()), e8);
  EXPECT_EQ(io::parse_code(io::format_code_text(e8)), e8);
  EXPECT_EQ(io::parse_code("# e8\n11110000\n00111100\n\n00001111\n10101010\n"), e8);
  EXPECT_EQ(io::parse_code("11110000;00111100;00001111;10101010"), e8);
  EXPECT_EQ(io::parse_code(R"j({"n":4,"rows":["1100","0011"]})j"), BinaryCode::from_rows(4, {"1100", "0011"}));
}

TEST(CodeFormats, Errors) {
  EXPECT_THROW(io::parse_code("110;10"), sdc::ParseError);
  EXPECT_THROW(io::parse_code(""), sdc::ParseError);
  EXPECT_THROW(io::parse_code("{not json"), sdc::ParseError);
  EXPECT_THROW(io::parse_code(R"j({"n":4})j"), sdc::ParseError);
  EXPECT_THROW(io::parse_code(R"j({"n":4,"rows":["110"]})j"), sdc::ParseError);
  EXPECT_THROW(io::parse_code("1102"), sdc::ParseError);
}
