#pragma once

// Independent checkers and brute-force oracles: the three existence
// conditions, the Dickson invariant on 1-perp / <1>, exhaustive enumeration of
// self-dual codes, automorphism groups by exhaustive search, and the
// group-ring code decision.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sdc/code.hpp"
#include "sdc/construct.hpp"
#include "sdc/error.hpp"
#include "sdc/gf2.hpp"
#include "sdc/gmodule.hpp"
#include "sdc/perm.hpp"

namespace sdc {

struct ConditionReport {
  std::size_t degree = 0;
  bool length_ok = false;        // (a) 8 | n
  bool multiplicities_ok = false;  // (b) every self-dual factor has even multiplicity
  bool alternating_ok = false;   // (c) G <= Alt_n
  FactorTable self_dual_factors;
  std::optional<std::size_t> odd_factor;     // entry of self_dual_factors with odd multiplicity
  std::optional<std::size_t> odd_generator;  // generator with sign -1

  bool all() const noexcept { return length_ok && multiplicities_ok && alternating_ok; }
};

inline ConditionReport check_conditions(const PermGroup& g, std::uint64_t seed = 0) {
  ConditionReport r;
  r.degree = g.degree();
  r.length_ok = g.degree() % 8 == 0;
  for (std::size_t i = 0; i < g.generators().size(); ++i) {
    if (g.generators()[i].sign() != 1) {
      r.odd_generator = i;
      break;
    }
  }
  r.alternating_ok = !r.odd_generator.has_value();
  r.self_dual_factors = self_dual_multiplicities(g, seed);
  for (std::size_t i = 0; i < r.self_dual_factors.entries.size(); ++i) {
    if (r.self_dual_factors.entries[i].multiplicity % 2 != 0) {
      r.odd_factor = i;
      break;
    }
  }
  r.multiplicities_ok = !r.odd_factor.has_value();
  return r;
}

// V = 1-perp / <1> with q(x + <1>) = wt(x)/2 mod 2.
//
// Coordinates: a class is represented by the even-weight vector with last
// coordinate 0; its first n - 2 coordinates determine it (coordinate n - 2 is
// the parity of those).
class QuadraticSpace {
 public:
  explicit QuadraticSpace(std::size_t n) : n_(n) {
    if (n == 0 || n % 8 != 0) throw InvalidArgument("QuadraticSpace: length must be a positive multiple of 8");
  }

  std::size_t length() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return n_ - 2; }

  BitVector coordinates(const BitVector& x) const {
    check(x);
    const bool flip = x.get(n_ - 1);
    BitVector c(n_ - 2);
    for (std::size_t i = 0; i + 2 < n_; ++i) c.set(i, x.get(i) != flip);
    return c;
  }

  BitVector representative(const BitVector& coords) const {
    if (coords.size() != n_ - 2) throw DimensionMismatch("QuadraticSpace: coordinate vector has wrong length");
    BitVector x(n_);
    for (std::size_t i = 0; i + 2 < n_; ++i) x.set(i, coords.get(i));
    x.set(n_ - 2, coords.weight() % 2 != 0);
    return x;
  }

  bool q(const BitVector& x) const {
    check(x);
    return (x.weight() / 2) % 2 != 0;
  }

  // q(x + y) - q(x) - q(y)
  bool polar(const BitVector& x, const BitVector& y) const { return q(x ^ y) != (q(x) != q(y)); }

  // Image in V-coordinates of a code contained in 1-perp, canonical.
  BitMatrix image(const BinaryCode& c) const {
    BitMatrix m(n_ - 2);
    for (const auto& r : c.generators().row_list()) m.append_row(coordinates(r));
    return canonical(m);
  }

 private:
  void check(const BitVector& x) const {
    if (x.size() != n_) throw DimensionMismatch("QuadraticSpace: vector has wrong length");
    if (x.weight() % 2 != 0) throw InvalidArgument("QuadraticSpace: vector has odd weight");
  }

  std::size_t n_;
};

// (-1)^dim(U / (U cap U p)) with U the image of a doubly-even self-dual code.
inline int dickson_invariant(const Permutation& p, const BinaryCode& reference) {
  const std::size_t n = reference.length();
  if (p.degree() != n) throw DimensionMismatch("dickson_invariant: permutation degree differs from code length");
  if (n % 8 != 0 || !is_self_dual(reference) || !is_doubly_even(reference)) {
    throw InvalidArgument("dickson_invariant: reference must be a doubly-even self-dual code of length divisible by 8");
  }
  const QuadraticSpace v(n);
  BitMatrix moved(n);
  for (const auto& r : reference.generators().row_list()) moved.append_row(r.permuted(p.images()));
  const BitMatrix u = v.image(reference);
  const BitMatrix up = v.image(BinaryCode(moved));
  const std::size_t codim = u.rows() - span_intersection(u, up).rows();
  return codim % 2 == 0 ? 1 : -1;
}

inline constexpr std::size_t kDefaultEnumerationLength = 10;
inline constexpr std::size_t kMaxEnumerationLength = 12;

// Every self-dual code of length n, by backtracking over canonical generator
// matrices: a pivot set is fixed first, then rows are filled top-down with
// free entries only on later non-pivot columns, pruning on even weight (or
// weight 0 mod 4) and orthogonality to the rows above.
inline std::vector<BinaryCode> enumerate_self_dual_codes(std::size_t n, bool doubly_even_only = false,
                                                         const std::optional<PermGroup>& invariant_under = std::nullopt,
                                                         std::size_t max_length = kDefaultEnumerationLength) {
  if (max_length > kMaxEnumerationLength) max_length = kMaxEnumerationLength;
  if (n > max_length) throw CapExceeded("enumerate_self_dual_codes: length " + std::to_string(n) + " above cap " + std::to_string(max_length), 0);
  if (invariant_under && invariant_under->degree() != n) throw DimensionMismatch("enumerate_self_dual_codes: group degree differs from length");
  std::vector<BinaryCode> out;
  if (n % 2 != 0) return out;
  const std::size_t k = n / 2;

  std::vector<std::size_t> pivots;
  std::vector<BitVector> rows;
  std::vector<bool> is_pivot(n, false);

  std::function<void(std::size_t)> fill_row = [&](std::size_t r) {
    if (r == k) {
      BinaryCode c(BitMatrix(n, rows));
      if (!invariant_under || is_invariant(c, *invariant_under)) out.push_back(std::move(c));
      return;
    }
    std::vector<std::size_t> free;
    for (std::size_t col = pivots[r] + 1; col < n; ++col) {
      if (!is_pivot[col]) free.push_back(col);
    }
    const std::uint64_t total = std::uint64_t{1} << free.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      BitVector row(n);
      row.set(pivots[r]);
      for (std::size_t t = 0; t < free.size(); ++t) {
        if ((mask >> t) & 1U) row.set(free[t]);
      }
      const std::size_t w = row.weight();
      if (w % (doubly_even_only ? 4 : 2) != 0) continue;
      bool orthogonal = true;
      for (const auto& prev : rows) {
        if (prev.dot(row)) {
          orthogonal = false;
          break;
        }
      }
      if (!orthogonal) continue;
      rows.push_back(std::move(row));
      fill_row(r + 1);
      rows.pop_back();
    }
  };

  std::function<void(std::size_t)> choose_pivots = [&](std::size_t start) {
    if (pivots.size() == k) {
      fill_row(0);
      return;
    }
    for (std::size_t col = start; col + (k - pivots.size()) <= n; ++col) {
      pivots.push_back(col);
      is_pivot[col] = true;
      choose_pivots(col + 1);
      is_pivot[col] = false;
      pivots.pop_back();
    }
  };
  choose_pivots(0);
  return out;
}

// Calls visit(basis) for every k-dimensional subspace of F2^n, basis canonical.
inline void for_each_subspace(std::size_t n, std::size_t k, const std::function<void(const BitMatrix&)>& visit) {
  if (k > n) return;
  std::vector<std::size_t> pivots;
  std::vector<bool> is_pivot(n, false);
  std::vector<BitVector> rows;
  std::function<void(std::size_t)> fill = [&](std::size_t r) {
    if (r == k) {
      visit(BitMatrix(n, rows));
      return;
    }
    std::vector<std::size_t> free;
    for (std::size_t col = pivots[r] + 1; col < n; ++col) {
      if (!is_pivot[col]) free.push_back(col);
    }
    const std::uint64_t total = std::uint64_t{1} << free.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      BitVector row(n);
      row.set(pivots[r]);
      for (std::size_t t = 0; t < free.size(); ++t) {
        if ((mask >> t) & 1U) row.set(free[t]);
      }
      rows.push_back(std::move(row));
      fill(r + 1);
      rows.pop_back();
    }
  };
  std::function<void(std::size_t)> choose = [&](std::size_t start) {
    if (pivots.size() == k) {
      fill(0);
      return;
    }
    for (std::size_t col = start; col + (k - pivots.size()) <= n; ++col) {
      pivots.push_back(col);
      is_pivot[col] = true;
      choose(col + 1);
      is_pivot[col] = false;
      pivots.pop_back();
    }
  };
  choose(0);
}

inline constexpr std::size_t kFullScanLength = 8;
inline constexpr std::size_t kBacktrackLength = 12;

inline PermGroup group_from_elements(std::size_t degree, const std::vector<Permutation>& elements) {
  return PermGroup(degree, reduce_generators(degree, elements, std::max<std::size_t>(elements.size() + 1, 2)));
}

// Every permutation of Sym_n fixing the code, by exhaustive scan.
inline std::vector<Permutation> automorphisms_full_scan(const BinaryCode& c) {
  const std::size_t n = c.length();
  if (n > kFullScanLength) throw CapExceeded("automorphisms_full_scan: length above " + std::to_string(kFullScanLength), 0);
  std::vector<std::uint32_t> images(n);
  std::iota(images.begin(), images.end(), 0U);
  std::vector<Permutation> out;
  do {
    if (is_invariant_under(c, images)) out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

// Every automorphism, by backtracking over coordinate images that preserve
// the weight profile of single coordinates and of coordinate pairs.
inline std::vector<Permutation> automorphisms_backtrack(const BinaryCode& c) {
  const std::size_t n = c.length();
  if (n > kBacktrackLength) throw CapExceeded("automorphisms_backtrack: length above " + std::to_string(kBacktrackLength), 0);
  std::vector<BitVector> words;
  {
    BitVector w(n);
    words.push_back(w);
    const std::uint64_t total = std::uint64_t{1} << c.dimension();
    for (std::uint64_t step = 1; step < total; ++step) {
      w ^= c.generators().row(static_cast<std::size_t>(std::countr_zero(step)));
      words.push_back(w);
    }
  }
  // profile[i][j][w]: codewords of weight w with 1 at both i and j
  std::vector<std::vector<std::vector<std::size_t>>> profile(n, std::vector<std::vector<std::size_t>>(n, std::vector<std::size_t>(n + 1, 0)));
  for (const auto& w : words) {
    const std::size_t wt = w.weight();
    for (std::size_t i = 0; i < n; ++i) {
      if (!w.get(i)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (w.get(j)) ++profile[i][j][wt];
      }
    }
  }
  std::vector<std::uint32_t> images(n);
  std::vector<bool> used(n, false);
  std::vector<Permutation> out;
  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (i == n) {
      if (is_invariant_under(c, images)) out.emplace_back(images);
      return;
    }
    for (std::uint32_t y = 0; y < n; ++y) {
      if (used[y] || profile[y][y] != profile[i][i]) continue;
      bool ok = true;
      for (std::size_t t = 0; t < i && ok; ++t) ok = profile[images[t]][y] == profile[t][i];
      if (!ok) continue;
      used[y] = true;
      images[i] = y;
      assign(i + 1);
      used[y] = false;
    }
  };
  assign(0);
  std::sort(out.begin(), out.end());
  return out;
}

// Aut(C) as generators plus closure. Full scan up to length 8, pruned backtracking up to 12.
inline PermGroup automorphism_group_bruteforce(const BinaryCode& c) {
  const std::size_t n = c.length();
  const auto elems = n <= kFullScanLength ? automorphisms_full_scan(c) : automorphisms_backtrack(c);
  return group_from_elements(n, elems);
}

struct GroupCodeDecision {
  std::uint64_t order = 0;
  std::uint64_t two_part = 0;
  bool sylow2_cyclic = false;
  bool self_dual_exists = false;
  bool type2_exists = false;
  bool cross_validated = false;  // pipeline run on the regular representation
  bool pipeline_self_dual = false;
  bool pipeline_type2 = false;

  bool consistent() const noexcept {
    return !cross_validated || (pipeline_self_dual == self_dual_exists && pipeline_type2 == type2_exists);
  }
};

inline constexpr std::size_t kDefaultCrossValidationOrder = 64;

inline GroupCodeDecision group_code_decision(const PermGroup& g, std::size_t cross_validate_up_to = kDefaultCrossValidationOrder, std::uint64_t seed = 0) {
  GroupCodeDecision d;
  d.order = g.order();
  d.two_part = two_part(d.order);
  d.sylow2_cyclic = sylow2_is_cyclic(g);
  d.self_dual_exists = d.order % 2 == 0;
  d.type2_exists = d.order % 8 == 0 && !d.sylow2_cyclic;
  if (d.order <= cross_validate_up_to) {
    const PermGroup reg = regular_representation(g);
    d.cross_validated = true;
    d.pipeline_self_dual = extend_to_self_dual(reg, BinaryCode(reg.degree()), seed).code.has_value();
    const ConstructionResult r = construct_type2_invariant(reg, seed);
    d.pipeline_type2 = r.found();
  }
  return d;
}

}  // namespace sdc
