#pragma once

// Polynomials over GF(2) and their factorization, as needed by the module
// splitting code (characteristic polynomials of algebra elements).

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sdc/gf2.hpp"

namespace sdc {

class Poly2 {
 public:
  Poly2() = default;

  static Poly2 monomial(std::size_t degree) {
    Poly2 p;
    p.set_coeff(degree, true);
    return p;
  }
  static Poly2 one() { return monomial(0); }
  static Poly2 x() { return monomial(1); }

  // Bit i of the mask is the coefficient of x^i.
  static Poly2 from_mask(std::uint64_t mask) {
    Poly2 p;
    if (mask != 0) p.words_.push_back(mask);
    return p;
  }

  bool is_zero() const noexcept { return words_.empty(); }
  bool is_one() const noexcept { return words_.size() == 1 && words_[0] == 1; }

  // Degree of the zero polynomial is reported as -1.
  long degree() const noexcept {
    if (words_.empty()) return -1;
    return static_cast<long>((words_.size() - 1) * 64 + 63 - static_cast<std::size_t>(std::countl_zero(words_.back())));
  }

  bool coeff(std::size_t i) const noexcept {
    return i / 64 < words_.size() && ((words_[i / 64] >> (i % 64)) & 1U) != 0;
  }

  void set_coeff(std::size_t i, bool value) {
    if (i / 64 >= words_.size()) {
      if (!value) return;
      words_.resize(i / 64 + 1, 0);
    }
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value) {
      words_[i / 64] |= mask;
    } else {
      words_[i / 64] &= ~mask;
    }
    normalize();
  }

  Poly2& operator+=(const Poly2& o) {
    if (o.words_.size() > words_.size()) words_.resize(o.words_.size(), 0);
    for (std::size_t k = 0; k < o.words_.size(); ++k) words_[k] ^= o.words_[k];
    normalize();
    return *this;
  }
  friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }

  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 out;
    if (a.is_zero() || b.is_zero()) return out;
    out.words_.assign(a.words_.size() + b.words_.size(), 0);
    const long db = b.degree();
    for (long i = 0; i <= a.degree(); ++i) {
      if (!a.coeff(static_cast<std::size_t>(i))) continue;
      // out += b * x^i
      const std::size_t shift_words = static_cast<std::size_t>(i) / 64;
      const std::size_t shift_bits = static_cast<std::size_t>(i) % 64;
      for (std::size_t k = 0; k <= static_cast<std::size_t>(db) / 64; ++k) {
        out.words_[k + shift_words] ^= b.words_[k] << shift_bits;
        if (shift_bits != 0) out.words_[k + shift_words + 1] ^= b.words_[k] >> (64 - shift_bits);
      }
    }
    out.normalize();
    return out;
  }

  // Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<Poly2, Poly2> divmod(const Poly2& d) const {
    if (d.is_zero()) throw InvalidArgument("polynomial division by zero");
    Poly2 r = *this;
    Poly2 q;
    const long dd = d.degree();
    while (r.degree() >= dd) {
      const long shift = r.degree() - dd;
      q.set_coeff(static_cast<std::size_t>(shift), true);
      r += d.shifted(static_cast<std::size_t>(shift));
    }
    return {q, r};
  }
  Poly2 operator%(const Poly2& d) const { return divmod(d).second; }
  Poly2 operator/(const Poly2& d) const { return divmod(d).first; }

  Poly2 shifted(std::size_t by) const {
    Poly2 out;
    if (is_zero()) return out;
    const std::size_t sw = by / 64;
    const std::size_t sb = by % 64;
    out.words_.assign(words_.size() + sw + 1, 0);
    for (std::size_t k = 0; k < words_.size(); ++k) {
      out.words_[k + sw] ^= words_[k] << sb;
      if (sb != 0) out.words_[k + sw + 1] ^= words_[k] >> (64 - sb);
    }
    out.normalize();
    return out;
  }

  Poly2 derivative() const {
    Poly2 out;
    for (long i = 1; i <= degree(); i += 2) {
      if (coeff(static_cast<std::size_t>(i))) out.set_coeff(static_cast<std::size_t>(i - 1), true);
    }
    return out;
  }

  // Square root of a polynomial whose odd coefficients all vanish.
  Poly2 sqrt_of_square() const {
    Poly2 out;
    for (long i = 0; i <= degree(); ++i) {
      if (!coeff(static_cast<std::size_t>(i))) continue;
      if (i % 2 != 0) throw InvalidArgument("sqrt_of_square: polynomial is not a square");
      out.set_coeff(static_cast<std::size_t>(i / 2), true);
    }
    return out;
  }

  bool operator==(const Poly2&) const = default;
  std::strong_ordering operator<=>(const Poly2& o) const {
    if (auto c = degree() <=> o.degree(); c != 0) return c;
    for (std::size_t k = words_.size(); k-- > 0;) {
      if (auto c = words_[k] <=> o.words_[k]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  // Coefficient string, highest degree first, e.g. "1011" for x^3 + x + 1.
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (long i = degree(); i >= 0; --i) s += coeff(static_cast<std::size_t>(i)) ? '1' : '0';
    return s;
  }

 private:
  void normalize() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  std::vector<std::uint64_t> words_;
};

inline Poly2 gcd(Poly2 a, Poly2 b) {
  while (!b.is_zero()) {
    Poly2 r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Poly2 mulmod(const Poly2& a, const Poly2& b, const Poly2& m) { return (a * b) % m; }

// p(A) by Horner's rule.
inline BitMatrix evaluate(const Poly2& p, const BitMatrix& a) {
  const std::size_t n = a.rows();
  BitMatrix acc(n, n);
  for (long i = p.degree(); i >= 0; --i) {
    acc = acc * a;
    if (p.coeff(static_cast<std::size_t>(i))) acc = acc + BitMatrix::identity(n);
  }
  return acc;
}

struct PolyFactor {
  Poly2 factor;
  int multiplicity = 0;
  auto operator<=>(const PolyFactor&) const = default;
};

namespace detail {

inline void squarefree_decompose(const Poly2& f, int scale, std::vector<PolyFactor>& out) {
  if (f.degree() < 1) return;
  const Poly2 df = f.derivative();
  if (df.is_zero()) {
    squarefree_decompose(f.sqrt_of_square(), scale * 2, out);
    return;
  }
  Poly2 c = gcd(f, df);
  Poly2 w = f / c;
  int i = 1;
  while (!w.is_one()) {
    Poly2 y = gcd(w, c);
    Poly2 z = w / y;
    if (!z.is_one()) out.push_back({z, i * scale});
    ++i;
    w = y;
    c = c / y;
  }
  if (!c.is_one()) squarefree_decompose(c.sqrt_of_square(), scale * 2, out);
}

// Splits a squarefree f into products of irreducibles grouped by degree.
inline std::vector<std::pair<Poly2, long>> distinct_degree(Poly2 f) {
  std::vector<std::pair<Poly2, long>> out;
  Poly2 h = Poly2::x() % f;
  long i = 1;
  while (f.degree() >= 2 * i) {
    h = mulmod(h, h, f);
    Poly2 g = gcd(h + Poly2::x(), f);
    if (!g.is_one()) {
      out.emplace_back(g, i);
      f = f / g;
      h = h % f;
    }
    ++i;
  }
  if (f.degree() >= 1) out.emplace_back(f, f.degree());
  return out;
}

inline void equal_degree(const Poly2& g, long d, std::mt19937_64& rng, std::vector<Poly2>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const long n = g.degree();
  for (;;) {
    Poly2 a;
    for (long i = 0; i < n; ++i) a.set_coeff(static_cast<std::size_t>(i), (rng() & 1U) != 0);
    if (a.degree() < 1) continue;
    // Trace map a + a^2 + ... + a^(2^(d-1)) modulo g.
    Poly2 t = a;
    Poly2 sq = a;
    for (long k = 1; k < d; ++k) {
      sq = mulmod(sq, sq, g);
      t += sq;
    }
    Poly2 h = gcd(g, t);
    if (h.degree() > 0 && h.degree() < n) {
      equal_degree(h, d, rng, out);
      equal_degree(g / h, d, rng, out);
      return;
    }
  }
}

}  // namespace detail

// Factorization into monic irreducibles with multiplicities, sorted by
// (degree, coefficients).
inline std::vector<PolyFactor> factor(const Poly2& f) {
  if (f.is_zero()) throw InvalidArgument("factor: zero polynomial");
  std::vector<PolyFactor> squarefree;
  detail::squarefree_decompose(f, 1, squarefree);
  std::mt19937_64 rng(0x5dc0f2a1ULL);
  std::vector<PolyFactor> out;
  for (const auto& [part, mult] : squarefree) {
    for (const auto& [block, d] : detail::distinct_degree(part)) {
      std::vector<Poly2> irr;
      detail::equal_degree(block, d, rng, irr);
      for (auto& p : irr) out.push_back({std::move(p), mult});
    }
  }
  std::sort(out.begin(), out.end());
  // The same irreducible may surface from different squarefree layers.
  std::vector<PolyFactor> merged;
  for (auto& pf : out) {
    if (!merged.empty() && merged.back().factor == pf.factor) {
      merged.back().multiplicity += pf.multiplicity;
    } else {
      merged.push_back(std::move(pf));
    }
  }
  return merged;
}

// Characteristic polynomial via relative minimal polynomials of Krylov blocks.
inline Poly2 charpoly(const BitMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("charpoly of a non-square matrix");
  const std::size_t n = a.rows();
  SemiEchelon echelon(n, n + 1);
  Poly2 result = Poly2::one();
  for (std::size_t start = 0; start < n && echelon.rank() < n; ++start) {
    BitVector v = BitVector::unit(n, start);
    if (echelon.contains(v)) continue;
    echelon.clear_tags();
    BitVector cur = v;
    for (std::size_t k = 0;; ++k) {
      BitVector residual = cur;
      BitVector tag = echelon.reduce(residual);
      tag.flip(k);
      if (residual.is_zero()) {
        Poly2 rel;
        for (std::size_t i = 0; i <= k; ++i) rel.set_coeff(i, tag.get(i));
        result = result * rel;
        break;
      }
      echelon.insert(cur, BitVector::unit(n + 1, k));
      cur = cur * a;
    }
  }
  return result;
}

}  // namespace sdc
