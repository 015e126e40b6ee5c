#pragma once

// Bit-packed linear algebra over the field with two elements.
//
// Vectors are row vectors; a matrix acts on the right (v * A). Coordinate i
// of a vector lives in bit i % 64 of word i / 64, and padding bits past the
// length are always zero.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdc/error.hpp"

namespace sdc {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length) : length_(length), words_((length + kWordBits - 1) / kWordBits, 0) {}

  // Parses a 0/1 string; coordinate 0 is the first character.
  static BitVector from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        v.set(i);
      } else if (bits[i] != '0') {
        throw ParseError("bit string may contain only '0' and '1': '" + std::string(bits) + "'");
      }
    }
    return v;
  }

  static BitVector unit(std::size_t length, std::size_t i) {
    BitVector v(length);
    v.set(i);
    return v;
  }

  static BitVector ones(std::size_t length) {
    BitVector v(length);
    for (auto& w : v.words_) w = ~Word{0};
    v.trim();
    return v;
  }

  std::size_t size() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }

  bool get(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  bool operator[](std::size_t i) const noexcept { return get(i); }

  void set(std::size_t i, bool value = true) noexcept {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  BitVector& operator^=(const BitVector& other) {
    check_same_length(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
    return *this;
  }
  BitVector& operator&=(const BitVector& other) {
    check_same_length(other);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

  std::size_t weight() const noexcept {
    std::size_t w = 0;
    for (Word x : words_) w += static_cast<std::size_t>(std::popcount(x));
    return w;
  }

  // Number of coordinates set in both vectors.
  std::size_t overlap(const BitVector& other) const {
    check_same_length(other);
    std::size_t w = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) w += static_cast<std::size_t>(std::popcount(words_[k] & other.words_[k]));
    return w;
  }

  // Standard inner product b(x, y) = sum x_i y_i.
  bool dot(const BitVector& other) const { return (overlap(other) & 1U) != 0; }

  bool is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word x) { return x == 0; });
  }

  std::optional<std::size_t> first_set() const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if (words_[k] != 0) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[k]));
    }
    return std::nullopt;
  }

  std::string to_string() const {
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> words() noexcept { return words_; }

  bool operator==(const BitVector&) const = default;

  // Lexicographic order of the 0/1 strings (coordinate 0 most significant).
  std::strong_ordering operator<=>(const BitVector& other) const {
    if (length_ != other.length_) return length_ <=> other.length_;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      const Word diff = words_[k] ^ other.words_[k];
      if (diff != 0) {
        const Word bit = diff & (~diff + 1);
        return (words_[k] & bit) != 0 ? std::strong_ordering::greater : std::strong_ordering::less;
      }
    }
    return std::strong_ordering::equal;
  }

  // Returns the vector with coordinate i moved to position perm[i].
  BitVector permuted(std::span<const std::uint32_t> images) const {
    if (images.size() != length_) throw DimensionMismatch("permutation degree differs from vector length");
    BitVector out(length_);
    for (std::size_t k = 0; k < words_.size(); ++k) {
      Word w = words_[k];
      while (w != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(w));
        out.set(images[k * kWordBits + bit]);
        w &= w - 1;
      }
    }
    return out;
  }

  std::size_t hash() const noexcept {
    std::size_t h = length_ * 0x9e3779b97f4a7c15ULL;
    for (Word x : words_) h ^= std::hash<Word>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }

 private:
  void check_same_length(const BitVector& other) const {
    if (other.length_ != length_) throw DimensionMismatch("bit vectors of different lengths");
  }
  void trim() noexcept {
    if (length_ % kWordBits != 0 && !words_.empty()) words_.back() &= (Word{1} << (length_ % kWordBits)) - 1;
  }

  std::size_t length_ = 0;
  std::vector<Word> words_;
};

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const noexcept { return v.hash(); }
};

class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}
  explicit BitMatrix(std::size_t cols) : cols_(cols) {}
  BitMatrix(std::size_t cols, std::vector<BitVector> rows) : cols_(cols), rows_(std::move(rows)) {
    for (const auto& r : rows_) {
      if (r.size() != cols_) throw DimensionMismatch("matrix rows must all have length " + std::to_string(cols_));
    }
  }

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].set(i);
    return m;
  }

  static BitMatrix from_strings(std::size_t cols, const std::vector<std::string>& rows) {
    BitMatrix m(cols);
    for (const auto& s : rows) m.append_row(BitVector::from_string(s));
    return m;
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_.empty(); }

  const BitVector& row(std::size_t i) const { return rows_[i]; }
  BitVector& row(std::size_t i) { return rows_[i]; }
  const std::vector<BitVector>& row_list() const noexcept { return rows_; }

  bool get(std::size_t i, std::size_t j) const { return rows_[i].get(j); }
  void set(std::size_t i, std::size_t j, bool value = true) { rows_[i].set(j, value); }

  void append_row(BitVector r) {
    if (r.size() != cols_) throw DimensionMismatch("appended row has length " + std::to_string(r.size()) + ", expected " + std::to_string(cols_));
    rows_.push_back(std::move(r));
  }

  bool is_zero() const noexcept {
    return std::all_of(rows_.begin(), rows_.end(), [](const BitVector& r) { return r.is_zero(); });
  }

  BitMatrix transpose() const {
    BitMatrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (rows_[i].get(j)) t.rows_[j].set(i);
      }
    }
    return t;
  }

  bool operator==(const BitMatrix&) const = default;
  auto operator<=>(const BitMatrix& other) const {
    if (auto c = cols_ <=> other.cols_; c != 0) return c;
    return rows_ <=> other.rows_;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& r : rows_) {
      s += r.to_string();
      s += '\n';
    }
    return s;
  }

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

// v * A
inline BitVector operator*(const BitVector& v, const BitMatrix& a) {
  if (v.size() != a.rows()) throw DimensionMismatch("vector-matrix product: length " + std::to_string(v.size()) + " vs " + std::to_string(a.rows()) + " rows");
  BitVector out(a.cols());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.get(i)) out ^= a.row(i);
  }
  return out;
}

inline BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product: inner dimensions differ");
  BitMatrix out(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) out.append_row(a.row(i) * b);
  return out;
}

inline BitMatrix operator+(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix sum: shapes differ");
  BitMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) out.row(i) ^= b.row(i);
  return out;
}

// Incrementally built semi-echelon basis. Each stored row is reduced against
// all earlier rows, so reducing in insertion order is exact. Rows may carry a
// tag vector that records which combination of inserted vectors they are.
class SemiEchelon {
 public:
  explicit SemiEchelon(std::size_t cols, std::size_t tag_bits = 0) : cols_(cols), tag_bits_(tag_bits) {}

  std::size_t cols() const noexcept { return cols_; }
  std::size_t rank() const noexcept { return rows_.size(); }

  // Reduces v in place; returns the accumulated tag of the rows used.
  BitVector reduce(BitVector& v) const {
    BitVector tag(tag_bits_);
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (v.get(pivots_[k])) {
        v ^= rows_[k];
        if (tag_bits_ != 0) tag ^= tags_[k];
      }
    }
    return tag;
  }

  bool contains(BitVector v) const {
    reduce(v);
    return v.is_zero();
  }

  // Inserts v (with the given tag); returns false if v was already in the span.
  bool insert(BitVector v, BitVector tag = {}) {
    if (tag_bits_ != 0 && tag.size() != tag_bits_) tag = BitVector(tag_bits_);
    BitVector used = reduce(v);
    const auto pivot = v.first_set();
    if (!pivot) return false;
    rows_.push_back(std::move(v));
    pivots_.push_back(*pivot);
    if (tag_bits_ != 0) tags_.push_back(tag ^ used);
    return true;
  }

  // Zeroes every tag; subsequent rows start a fresh combination record.
  void clear_tags() {
    for (auto& t : tags_) t = BitVector(tag_bits_);
  }

  const std::vector<BitVector>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  BitMatrix matrix() const { return BitMatrix(cols_, rows_); }

 private:
  std::size_t cols_;
  std::size_t tag_bits_;
  std::vector<BitVector> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<BitVector> tags_;
};

struct RrefResult {
  BitMatrix matrix;  // canonical: reduced row echelon form, no zero rows
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

inline RrefResult rref(const BitMatrix& m) {
  std::vector<BitVector> rows = m.row_list();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < rows.size(); ++col) {
    std::size_t sel = r;
    while (sel < rows.size() && !rows[sel].get(col)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i].get(col)) rows[i] ^= rows[r];
    }
    pivots.push_back(col);
    ++r;
  }
  rows.resize(r);
  return RrefResult{BitMatrix(m.cols(), std::move(rows)), r, std::move(pivots)};
}

inline BitMatrix canonical(const BitMatrix& m) { return rref(m).matrix; }

inline std::size_t rank(const BitMatrix& m) {
  SemiEchelon e(m.cols());
  for (const auto& r : m.row_list()) e.insert(r);
  return e.rank();
}

// Basis (canonical) of { v : m * v^T = 0 }.
inline BitMatrix kernel(const BitMatrix& m) {
  const RrefResult r = rref(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : r.pivots) is_pivot[p] = true;
  BitMatrix out(n);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    BitVector v(n);
    v.set(free);
    for (std::size_t k = 0; k < r.rank; ++k) {
      if (r.matrix.get(k, free)) v.set(r.pivots[k]);
    }
    out.append_row(std::move(v));
  }
  return canonical(out);
}

inline std::optional<BitMatrix> inverse(const BitMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  BitMatrix aug(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    BitVector r(2 * n);
    for (std::size_t j = 0; j < n; ++j) r.set(j, a.get(i, j));
    r.set(n + i);
    aug.append_row(std::move(r));
  }
  const RrefResult red = rref(aug);
  if (red.rank < n || (n > 0 && red.pivots[n - 1] != n - 1)) return std::nullopt;
  BitMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv.set(i, j, red.matrix.get(i, n + j));
  }
  return inv;
}

inline bool is_invertible(const BitMatrix& a) { return a.rows() == a.cols() && rank(a) == a.rows(); }

struct LinearSolution {
  BitVector particular;  // one solution
  BitMatrix homogeneous;  // basis of the solutions of the homogeneous system
};

// Solves a * x^T = t^T, i.e. row_i(a) . x = t_i for every row i.
inline std::optional<LinearSolution> solve_linear(const BitMatrix& a, const BitVector& target) {
  if (target.size() != a.rows()) {
    throw DimensionMismatch("solve_linear: target has length " + std::to_string(target.size()) + ", system has " + std::to_string(a.rows()) + " equations");
  }
  const std::size_t n = a.cols();
  BitMatrix aug(n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BitVector r(n + 1);
    for (std::size_t j = 0; j < n; ++j) r.set(j, a.get(i, j));
    r.set(n, target.get(i));
    aug.append_row(std::move(r));
  }
  const RrefResult red = rref(aug);
  if (!red.pivots.empty() && red.pivots.back() == n) return std::nullopt;
  BitVector x(n);
  for (std::size_t k = 0; k < red.rank; ++k) {
    if (red.matrix.get(k, n)) x.set(red.pivots[k]);
  }
  return LinearSolution{std::move(x), kernel(a)};
}

// One solve per row of targets.
inline std::vector<std::optional<LinearSolution>> solve_linear(const BitMatrix& a, const BitMatrix& targets) {
  std::vector<std::optional<LinearSolution>> out;
  out.reserve(targets.rows());
  for (const auto& t : targets.row_list()) out.push_back(solve_linear(a, t));
  return out;
}

inline void require_same_cols(const BitMatrix& a, const BitMatrix& b, const char* what) {
  if (a.cols() != b.cols()) throw DimensionMismatch(std::string(what) + ": row spaces live in different ambient dimensions");
}

inline BitMatrix span_sum(const BitMatrix& a, const BitMatrix& b) {
  require_same_cols(a, b, "span_sum");
  BitMatrix all = a;
  for (const auto& r : b.row_list()) all.append_row(r);
  return canonical(all);
}

// Zassenhaus: reduce [a | a ; b | 0]; rows with vanishing left half span the intersection.
inline BitMatrix span_intersection(const BitMatrix& a, const BitMatrix& b) {
  require_same_cols(a, b, "span_intersection");
  const std::size_t n = a.cols();
  BitMatrix z(2 * n);
  for (const auto& r : a.row_list()) {
    BitVector row(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
      if (r.get(j)) {
        row.set(j);
        row.set(n + j);
      }
    }
    z.append_row(std::move(row));
  }
  for (const auto& r : b.row_list()) {
    BitVector row(2 * n);
    for (std::size_t j = 0; j < n; ++j) row.set(j, r.get(j));
    z.append_row(std::move(row));
  }
  const RrefResult red = rref(z);
  BitMatrix out(n);
  for (std::size_t k = 0; k < red.rank; ++k) {
    if (red.pivots[k] < n) continue;
    BitVector v(n);
    for (std::size_t j = 0; j < n; ++j) v.set(j, red.matrix.get(k, n + j));
    out.append_row(std::move(v));
  }
  return canonical(out);
}

// Row space of b is contained in the row space of a.
inline bool span_contains(const BitMatrix& a, const BitMatrix& b) {
  require_same_cols(a, b, "span_contains");
  SemiEchelon e(a.cols());
  for (const auto& r : a.row_list()) e.insert(r);
  return std::all_of(b.row_list().begin(), b.row_list().end(), [&](const BitVector& r) { return e.contains(r); });
}

inline bool span_contains(const BitMatrix& a, const BitVector& v) {
  if (v.size() != a.cols()) throw DimensionMismatch("span_contains: vector length differs");
  SemiEchelon e(a.cols());
  for (const auto& r : a.row_list()) e.insert(r);
  return e.contains(v);
}

// Expresses vectors of span(basis) as coordinate vectors w.r.t. that basis.
class SpanCoordinates {
 public:
  explicit SpanCoordinates(const BitMatrix& basis) : echelon_(basis.cols(), basis.rows()), dim_(basis.rows()) {
    for (std::size_t i = 0; i < basis.rows(); ++i) {
      if (!echelon_.insert(basis.row(i), BitVector::unit(dim_, i))) throw InvalidArgument("SpanCoordinates: basis rows are linearly dependent");
    }
  }

  std::size_t dim() const noexcept { return dim_; }

  std::optional<BitVector> coordinates(BitVector v) const {
    BitVector tag = echelon_.reduce(v);
    if (!v.is_zero()) return std::nullopt;
    return tag;
  }

 private:
  SemiEchelon echelon_;
  std::size_t dim_;
};

}  // namespace sdc
