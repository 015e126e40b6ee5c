#pragma once

// Shared catalogue of small permutation groups used across the test suites.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sdc/sdc.hpp"

namespace fixtures {

struct NamedGroup {
  std::string name;
  sdc::PermGroup group;
};

inline sdc::PermGroup make(std::size_t degree, const std::vector<std::string>& gens) { return sdc::io::parse_generators(gens, degree); }

// Q8 = {±1, ±i, ±j, ±k} acting on itself by right multiplication.
// Index 2*u + s encodes sign s (0 = +, 1 = -) and unit u in {1, i, j, k}.
inline sdc::PermGroup quaternion_regular() {
  // unit product table: table[a][b] = {unit, sign}
  static constexpr std::array<std::array<std::array<int, 2>, 4>, 4> table{{
      {{{0, 0}, {1, 0}, {2, 0}, {3, 0}}},
      {{{1, 0}, {0, 1}, {3, 0}, {2, 1}}},
      {{{2, 0}, {3, 1}, {0, 1}, {1, 0}}},
      {{{3, 0}, {2, 0}, {1, 1}, {0, 1}}},
  }};
  auto right_mult = [&](int unit) {
    std::vector<std::uint32_t> images(8);
    for (int x = 0; x < 8; ++x) {
      const int u = x / 2;
      const int s = x % 2;
      const auto& prod = table[u][unit];
      images[x] = static_cast<std::uint32_t>(2 * prod[0] + (s ^ prod[1]));
    }
    return sdc::Permutation(images);
  };
  return sdc::PermGroup(8, {right_mult(1), right_mult(2)});
}

inline sdc::PermGroup aut_e8() { return sdc::automorphism_group_bruteforce(sdc::codes::e8()); }

inline std::vector<NamedGroup> catalogue() {
  using sdc::regular_representation;
  std::vector<NamedGroup> g;
  g.push_back({"trivial_2", make(2, {})});
  g.push_back({"trivial_4", make(4, {})});
  g.push_back({"trivial_6", make(6, {})});
  g.push_back({"trivial_8", make(8, {})});
  g.push_back({"trivial_10", make(10, {})});
  g.push_back({"c2", make(2, {"(1,2)"})});
  g.push_back({"c2_fpf_8", make(8, {"(1,2)(3,4)(5,6)(7,8)"})});
  g.push_back({"c2_double_transposition_8", make(8, {"(1,2)(3,4)"})});
  g.push_back({"c3", make(3, {"(1,2,3)"})});
  g.push_back({"c3_on_6", make(6, {"(1,2,3)(4,5,6)"})});
  g.push_back({"c3_on_8", make(8, {"(1,2,3)"})});
  g.push_back({"c3_on_9", make(9, {"(1,2,3)(4,5,6)(7,8,9)"})});
  g.push_back({"c4", make(4, {"(1,2,3,4)"})});
  g.push_back({"c4_on_8", make(8, {"(1,2,3,4)(5,6,7,8)"})});
  g.push_back({"c5", make(5, {"(1,2,3,4,5)"})});
  g.push_back({"c5_on_10", make(10, {"(1,2,3,4,5)(6,7,8,9,10)"})});
  g.push_back({"c7", make(7, {"(1,2,3,4,5,6,7)"})});
  g.push_back({"c7_on_8", make(8, {"(1,2,3,4,5,6,7)"})});
  g.push_back({"c8", make(8, {"(1,2,3,4,5,6,7,8)"})});
  g.push_back({"klein_regular", make(4, {"(1,2)(3,4)", "(1,3)(2,4)"})});
  g.push_back({"klein_intransitive", make(4, {"(1,2)", "(3,4)"})});
  g.push_back({"d8_on_4", make(4, {"(1,2,3,4)", "(1,3)"})});
  g.push_back({"sym3", make(3, {"(1,2,3)", "(1,2)"})});
  g.push_back({"sym3_regular", regular_representation(make(3, {"(1,2,3)", "(1,2)"}))});
  g.push_back({"alt4", make(4, {"(1,2,3)", "(2,3,4)"})});
  g.push_back({"sym4", make(4, {"(1,2,3,4)", "(1,2)"})});
  g.push_back({"c4xc2_on_6", make(6, {"(1,2,3,4)", "(5,6)"})});
  g.push_back({"c3xc2_mixed_8", make(8, {"(1,2,3)(4,5,6)", "(7,8)"})});
  g.push_back({"q8_regular", quaternion_regular()});
  g.push_back({"d8_regular", regular_representation(make(4, {"(1,2,3,4)", "(1,3)"}))});
  g.push_back({"c2cube_regular", regular_representation(make(6, {"(1,2)", "(3,4)", "(5,6)"}))});
  g.push_back({"c4xc2_regular", regular_representation(make(6, {"(1,2,3,4)", "(5,6)"}))});
  g.push_back({"c2_on_10", make(10, {"(1,2)(3,4)(5,6)(7,8)(9,10)"})});
  g.push_back({"alt8", make(8, {"(1,2,3)", "(2,3,4,5,6,7,8)"})});
  g.push_back({"aut_e8", aut_e8()});
  return g;
}

inline std::vector<NamedGroup> of_degree(std::size_t n) {
  std::vector<NamedGroup> out;
  for (auto& g : catalogue()) {
    if (g.group.degree() == n) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace fixtures
