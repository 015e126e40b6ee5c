#pragma once

// Binary linear codes held by their canonical (RREF) generator matrix.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "sdc/error.hpp"
#include "sdc/gf2.hpp"

namespace sdc {

class BinaryCode {
 public:
  explicit BinaryCode(std::size_t n = 0) : gens_(n) {}

  // Any spanning set; it is brought into canonical form.
  explicit BinaryCode(const BitMatrix& spanning) : gens_(canonical(spanning)) {}

  static BinaryCode from_rows(std::size_t n, const std::vector<std::string>& rows) {
    return BinaryCode(BitMatrix::from_strings(n, rows));
  }

  static BinaryCode full_space(std::size_t n) { return BinaryCode(BitMatrix::identity(n)); }

  static BinaryCode repetition(std::size_t n) {
    BitMatrix m(n);
    m.append_row(BitVector::ones(n));
    return BinaryCode(m);
  }

  std::size_t length() const noexcept { return gens_.cols(); }
  std::size_t dimension() const noexcept { return gens_.rows(); }
  const BitMatrix& generators() const noexcept { return gens_; }

  bool contains(const BitVector& v) const { return span_contains(gens_, v); }
  bool contains(const BinaryCode& sub) const { return span_contains(gens_, sub.gens_); }

  bool operator==(const BinaryCode&) const = default;
  auto operator<=>(const BinaryCode& o) const { return gens_ <=> o.gens_; }

 private:
  BitMatrix gens_;
};

inline BinaryCode dual(const BinaryCode& c) { return BinaryCode(kernel(c.generators())); }

inline BinaryCode code_sum(const BinaryCode& a, const BinaryCode& b) { return BinaryCode(span_sum(a.generators(), b.generators())); }

inline BinaryCode code_intersection(const BinaryCode& a, const BinaryCode& b) {
  return BinaryCode(span_intersection(a.generators(), b.generators()));
}

inline bool is_self_orthogonal(const BinaryCode& c) {
  const auto& g = c.generators();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    for (std::size_t j = i; j < g.rows(); ++j) {
      if (g.row(i).dot(g.row(j))) return false;
    }
  }
  return true;
}

inline bool is_self_dual(const BinaryCode& c) { return 2 * c.dimension() == c.length() && is_self_orthogonal(c); }

// wt(x + y) = wt(x) + wt(y) - 2 |x & y|, so generator weights and pairwise
// orthogonality decide the property for the whole code.
inline bool is_doubly_even(const BinaryCode& c) {
  const auto& g = c.generators();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (g.row(i).weight() % 4 != 0) return false;
    for (std::size_t j = i + 1; j < g.rows(); ++j) {
      if (g.row(i).dot(g.row(j))) return false;
    }
  }
  return true;
}

// Kernel of x -> wt(x)/2 mod 2, which is linear on a self-orthogonal code.
inline BinaryCode doubly_even_subcode(const BinaryCode& c) {
  if (!is_self_orthogonal(c)) throw InvalidArgument("doubly_even_subcode: code is not self-orthogonal");
  const auto& g = c.generators();
  std::vector<bool> value(g.rows());
  std::size_t pick = g.rows();
  for (std::size_t i = 0; i < g.rows(); ++i) {
    value[i] = (g.row(i).weight() / 2) % 2 != 0;
    if (value[i] && pick == g.rows()) pick = i;
  }
  if (pick == g.rows()) return c;
  BitMatrix sub(c.length());
  for (std::size_t i = 0; i < g.rows(); ++i) {
    if (i == pick) continue;
    sub.append_row(value[i] ? g.row(i) ^ g.row(pick) : g.row(i));
  }
  return BinaryCode(sub);
}

inline constexpr std::size_t kDefaultWeightEnumerationCap = 24;

// Weight -> number of codewords, by Gray-code enumeration of all 2^k words.
inline std::map<std::size_t, std::size_t> weight_distribution(const BinaryCode& c, std::size_t max_dimension = kDefaultWeightEnumerationCap) {
  const std::size_t k = c.dimension();
  if (k > max_dimension || k >= 63) {
    throw CapExceeded("weight_distribution: dimension " + std::to_string(k) + " above cap " + std::to_string(max_dimension), 0);
  }
  std::map<std::size_t, std::size_t> dist;
  BitVector word(c.length());
  dist[0] = 1;
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t step = 1; step < total; ++step) {
    word ^= c.generators().row(static_cast<std::size_t>(std::countr_zero(step)));
    ++dist[word.weight()];
  }
  return dist;
}

// Code mapped into itself by the coordinate permutation i -> images[i].
inline bool is_invariant_under(const BinaryCode& c, std::span<const std::uint32_t> images) {
  SemiEchelon e(c.length());
  for (const auto& r : c.generators().row_list()) e.insert(r);
  for (const auto& r : c.generators().row_list()) {
    if (!e.contains(r.permuted(images))) return false;
  }
  return true;
}

namespace codes {

// Extended Hamming code of length 8.
inline BinaryCode e8() { return BinaryCode::from_rows(8, {"11110000", "00111100", "00001111", "10101010"}); }

// Direct sum of n/2 copies of the repetition code of length 2.
inline BinaryCode i2_power(std::size_t copies) {
  BitMatrix m(2 * copies);
  for (std::size_t i = 0; i < copies; ++i) {
    BitVector r(2 * copies);
    r.set(2 * i);
    r.set(2 * i + 1);
    m.append_row(std::move(r));
  }
  return BinaryCode(m);
}

}  // namespace codes

}  // namespace sdc
