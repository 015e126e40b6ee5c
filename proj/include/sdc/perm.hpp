#pragma once

// Permutations and finitely generated permutation groups with an explicit,
// lazily computed element closure.
//
// Points are 0-based internally. Permutations act on the right: the image of
// point i under p is p(i), and (p * q)(i) = q(p(i)), i.e. first p, then q.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sdc/error.hpp"

namespace sdc {

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::size_t degree) : images_(degree) { std::iota(images_.begin(), images_.end(), 0U); }

  explicit Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto x : images_) {
      if (x >= images_.size() || seen[x]) throw InvalidArgument("permutation images are not a bijection");
      seen[x] = true;
    }
  }

  static Permutation identity(std::size_t degree) { return Permutation(degree); }

  // Disjoint or overlapping cycles, 0-based points, composed left to right.
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<std::uint32_t>>& cycles) {
    Permutation p(degree);
    for (const auto& cyc : cycles) {
      Permutation c(degree);
      std::vector<bool> seen(degree, false);
      for (std::size_t k = 0; k < cyc.size(); ++k) {
        if (cyc[k] >= degree) throw InvalidArgument("cycle point " + std::to_string(cyc[k] + 1) + " exceeds degree " + std::to_string(degree));
        if (seen[cyc[k]]) throw InvalidArgument("cycle repeats point " + std::to_string(cyc[k] + 1));
        seen[cyc[k]] = true;
        c.images_[cyc[k]] = cyc[(k + 1) % cyc.size()];
      }
      p = p * c;
    }
    return p;
  }

  std::size_t degree() const noexcept { return images_.size(); }
  std::uint32_t operator()(std::size_t i) const { return images_[i]; }
  const std::vector<std::uint32_t>& images() const noexcept { return images_; }

  friend Permutation operator*(const Permutation& p, const Permutation& q) {
    if (p.degree() != q.degree()) throw DimensionMismatch("composing permutations of different degree");
    Permutation r;
    r.images_.resize(p.degree());
    for (std::size_t i = 0; i < p.degree(); ++i) r.images_[i] = q.images_[p.images_[i]];
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.images_.resize(degree());
    for (std::size_t i = 0; i < degree(); ++i) r.images_[images_[i]] = static_cast<std::uint32_t>(i);
    return r;
  }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (images_[i] != i) return false;
    }
    return true;
  }

  // Cycles of length >= 2, each starting at its smallest point.
  std::vector<std::vector<std::uint32_t>> cycles() const {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<bool> seen(degree(), false);
    for (std::uint32_t i = 0; i < degree(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      std::vector<std::uint32_t> cyc;
      for (std::uint32_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        cyc.push_back(j);
      }
      out.push_back(std::move(cyc));
    }
    return out;
  }

  std::size_t cycle_count() const {
    std::size_t count = 0;
    std::vector<bool> seen(degree(), false);
    for (std::uint32_t i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      ++count;
      for (std::uint32_t j = i; !seen[j]; j = images_[j]) seen[j] = true;
    }
    return count;
  }

  // (-1)^(n - number of cycles)
  int sign() const { return (degree() - cycle_count()) % 2 == 0 ? 1 : -1; }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (const auto& c : cycles()) o = std::lcm(o, static_cast<std::uint64_t>(c.size()));
    return o;
  }

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

  std::size_t hash() const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : images_) {
      h ^= x;
      h *= 0x100000001b3ULL;
    }
    return h;
  }

 private:
  std::vector<std::uint32_t> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept { return p.hash(); }
};

inline int sign(const Permutation& p) { return p.sign(); }

inline constexpr std::size_t kDefaultClosureCap = std::size_t{1} << 20;

class PermGroup {
 public:
  PermGroup() : PermGroup(0, {}) {}

  PermGroup(std::size_t degree, std::vector<Permutation> generators, std::size_t cap = kDefaultClosureCap)
      : degree_(degree), generators_(std::move(generators)), cap_(cap), cache_(std::make_shared<Cache>()) {
    if (cap_ == 0) throw InvalidArgument("closure cap must be positive");
    for (const auto& g : generators_) {
      if (g.degree() != degree_) throw DimensionMismatch("generator degree " + std::to_string(g.degree()) + " differs from group degree " + std::to_string(degree_));
    }
  }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  std::size_t cap() const noexcept { return cap_; }

  PermGroup with_cap(std::size_t cap) const { return PermGroup(degree_, generators_, cap); }

  // Breadth-first closure from the identity; deterministic given generator order.
  const std::vector<Permutation>& elements() const {
    std::call_once(cache_->once, [this] { fill_closure(); });
    return cache_->elements;
  }

  std::size_t order() const { return elements().size(); }

  std::optional<std::size_t> index_of(const Permutation& p) const {
    elements();
    auto it = cache_->index.find(p);
    if (it == cache_->index.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const Permutation& p) const { return index_of(p).has_value(); }

 private:
  struct Cache {
    std::once_flag once;
    std::vector<Permutation> elements;
    std::unordered_map<Permutation, std::size_t, PermutationHash> index;
  };

  void fill_closure() const {
    std::vector<Permutation> elems;
    std::unordered_map<Permutation, std::size_t, PermutationHash> index;
    elems.push_back(Permutation::identity(degree_));
    index.emplace(elems.back(), 0);
    for (std::size_t k = 0; k < elems.size(); ++k) {
      for (const auto& g : generators_) {
        Permutation next = elems[k] * g;
        if (index.contains(next)) continue;
        if (elems.size() >= cap_) throw CapExceeded("group closure", elems.size());
        index.emplace(next, elems.size());
        elems.push_back(std::move(next));
      }
    }
    cache_->elements = std::move(elems);
    cache_->index = std::move(index);
  }

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::size_t cap_;
  std::shared_ptr<Cache> cache_;
};

inline bool is_in_alternating(const PermGroup& g) {
  return std::all_of(g.generators().begin(), g.generators().end(), [](const Permutation& p) { return p.sign() == 1; });
}

// Orbits sorted ascending internally, ordered by their smallest point.
inline std::vector<std::vector<std::uint32_t>> orbits(const PermGroup& g) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<bool> seen(g.degree(), false);
  for (std::uint32_t start = 0; start < g.degree(); ++start) {
    if (seen[start]) continue;
    std::vector<std::uint32_t> orb{start};
    seen[start] = true;
    for (std::size_t k = 0; k < orb.size(); ++k) {
      for (const auto& s : g.generators()) {
        const auto y = s(orb[k]);
        if (!seen[y]) {
          seen[y] = true;
          orb.push_back(y);
        }
      }
    }
    std::sort(orb.begin(), orb.end());
    out.push_back(std::move(orb));
  }
  return out;
}

// Drops generators already in the closure of the ones kept before them.
inline std::vector<Permutation> reduce_generators(std::size_t degree, const std::vector<Permutation>& candidates, std::size_t cap) {
  std::vector<Permutation> kept;
  PermGroup current(degree, {}, cap);
  for (const auto& c : candidates) {
    if (c.is_identity() || current.contains(c)) continue;
    kept.push_back(c);
    current = PermGroup(degree, kept, cap);
  }
  return kept;
}

// Point stabilizer from Schreier generators u_y * s * u_{y^s}^{-1}.
inline PermGroup stabilizer(const PermGroup& g, std::uint32_t x) {
  if (x >= g.degree()) throw InvalidArgument("stabilizer: point out of range");
  std::unordered_map<std::uint32_t, Permutation> transversal;
  std::vector<std::uint32_t> orbit{x};
  transversal.emplace(x, Permutation::identity(g.degree()));
  for (std::size_t k = 0; k < orbit.size(); ++k) {
    const auto y = orbit[k];
    for (const auto& s : g.generators()) {
      const auto z = s(y);
      if (!transversal.contains(z)) {
        transversal.emplace(z, transversal.at(y) * s);
        orbit.push_back(z);
      }
    }
  }
  std::vector<Permutation> schreier;
  std::unordered_set<Permutation, PermutationHash> seen;
  for (auto y : orbit) {
    for (const auto& s : g.generators()) {
      Permutation h = transversal.at(y) * s * transversal.at(s(y)).inverse();
      if (!h.is_identity() && seen.insert(h).second) schreier.push_back(std::move(h));
    }
  }
  std::sort(schreier.begin(), schreier.end());
  return PermGroup(g.degree(), reduce_generators(g.degree(), schreier, g.cap()), g.cap());
}

// Elements of g normalizing the subgroup h (h given with its closure).
inline std::vector<Permutation> normalizer_elements(const PermGroup& g, const PermGroup& h) {
  std::vector<Permutation> out;
  for (const auto& e : g.elements()) {
    const Permutation inv = e.inverse();
    bool normalizes = true;
    for (const auto& s : h.generators()) {
      if (!h.contains(inv * s * e)) {
        normalizes = false;
        break;
      }
    }
    if (normalizes) out.push_back(e);
  }
  return out;
}

// e^{-1} a e = b as subgroups for some e in g.
inline bool subgroups_conjugate(const PermGroup& g, const PermGroup& a, const PermGroup& b) {
  if (a.order() != b.order()) return false;
  for (const auto& e : g.elements()) {
    const Permutation inv = e.inverse();
    bool maps = true;
    for (const auto& s : a.generators()) {
      if (!b.contains(inv * s * e)) {
        maps = false;
        break;
      }
    }
    if (maps) return true;
  }
  return false;
}

struct OrbitRecord {
  std::uint32_t representative = 0;  // smallest point of the orbit
  std::vector<std::uint32_t> points;
  std::size_t stabilizer_order = 0;
  std::size_t conjugate_orbits = 0;  // m: orbits whose stabilizers are conjugate to this one's
  std::size_t normalizer_index = 0;  // n: [N_G(H) : H]
};

inline std::vector<OrbitRecord> normalizer_index_data(const PermGroup& g) {
  const auto orbs = orbits(g);
  std::vector<PermGroup> stabs;
  std::vector<OrbitRecord> out;
  for (const auto& orb : orbs) {
    stabs.push_back(stabilizer(g, orb.front()));
    OrbitRecord rec;
    rec.representative = orb.front();
    rec.points = orb;
    rec.stabilizer_order = stabs.back().order();
    rec.normalizer_index = normalizer_elements(g, stabs.back()).size() / rec.stabilizer_order;
    out.push_back(std::move(rec));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (i == j || subgroups_conjugate(g, stabs[i], stabs[j])) ++out[i].conjugate_orbits;
    }
  }
  return out;
}

// Right regular action h -> h * s on the closure, points in closure order.
inline PermGroup regular_representation(const PermGroup& g) {
  const auto& elems = g.elements();
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) {
    std::vector<std::uint32_t> images(elems.size());
    for (std::size_t k = 0; k < elems.size(); ++k) images[k] = static_cast<std::uint32_t>(*g.index_of(elems[k] * s));
    gens.emplace_back(std::move(images));
  }
  return PermGroup(elems.size(), std::move(gens), g.cap());
}

inline std::uint64_t two_part(std::uint64_t order) { return order & (~order + 1); }

// A Sylow 2-subgroup is cyclic iff some element has order equal to the 2-part of |G|.
inline bool sylow2_is_cyclic(const PermGroup& g) {
  const std::uint64_t target = two_part(g.order());
  return std::any_of(g.elements().begin(), g.elements().end(), [&](const Permutation& p) { return two_part(p.order()) == target; });
}

}  // namespace sdc
