#pragma once

// Constructions of G-invariant self-dual and doubly-even self-dual codes.
//
//  * orbit_pair_code: weight-2 generators pairing points along orbits, when
//    every orbit class has n_i * m_i even.
//  * extend_to_self_dual: grows an invariant self-orthogonal code by lifting
//    isotropic simple submodules of M-perp / M until M is self-dual.
//  * doubly_even_fix: replaces a singly-even invariant self-dual code by one of
//    the two doubly-even neighbours between X0 and X0-perp.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdc/code.hpp"
#include "sdc/error.hpp"
#include "sdc/gf2.hpp"
#include "sdc/gmodule.hpp"
#include "sdc/perm.hpp"

namespace sdc {

inline bool is_invariant(const BinaryCode& c, const PermGroup& g) {
  if (c.length() != g.degree()) throw DimensionMismatch("code length differs from group degree");
  for (const auto& p : g.generators()) {
    if (!is_invariant_under(c, p.images())) return false;
  }
  return true;
}

namespace detail {

// The G-map on the orbit of x sending x to y (requires Stab(x) <= Stab(y)).
inline std::vector<std::int64_t> equivariant_map(const PermGroup& g, std::uint32_t x, std::uint32_t y) {
  std::vector<std::int64_t> image(g.degree(), -1);
  image[x] = y;
  std::vector<std::uint32_t> queue{x};
  for (std::size_t k = 0; k < queue.size(); ++k) {
    const auto p = queue[k];
    for (const auto& s : g.generators()) {
      const auto q = s(p);
      const auto target = static_cast<std::int64_t>(s(static_cast<std::size_t>(image[p])));
      if (image[q] < 0) {
        image[q] = target;
        queue.push_back(q);
      } else if (image[q] != target) {
        throw Error("equivariant_map: stabilizer condition violated");
      }
    }
  }
  return image;
}

inline BitVector pair_vector(std::size_t n, std::size_t a, std::size_t b) {
  BitVector v(n);
  v.set(a);
  v.set(b);
  return v;
}

}  // namespace detail

// Self-dual invariant code from orbit pairing, or nullopt when some orbit
// class has n_i * m_i odd.
inline std::optional<BinaryCode> orbit_pair_code(const PermGroup& g) {
  const std::size_t n = g.degree();
  const auto orbs = orbits(g);
  std::vector<PermGroup> stabs;
  std::vector<std::size_t> index;
  for (const auto& orb : orbs) {
    stabs.push_back(stabilizer(g, orb.front()));
    index.push_back(normalizer_elements(g, stabs.back()).size() / stabs.back().order());
  }
  // Classes of orbits with conjugate stabilizers, in order of first member.
  std::vector<std::vector<std::size_t>> classes;
  std::vector<bool> placed(orbs.size(), false);
  for (std::size_t i = 0; i < orbs.size(); ++i) {
    if (placed[i]) continue;
    classes.push_back({i});
    placed[i] = true;
    for (std::size_t j = i + 1; j < orbs.size(); ++j) {
      if (!placed[j] && subgroups_conjugate(g, stabs[i], stabs[j])) {
        classes.back().push_back(j);
        placed[j] = true;
      }
    }
  }
  for (const auto& cls : classes) {
    if ((cls.size() * index[cls.front()]) % 2 != 0) return std::nullopt;
  }

  BitMatrix gens(n);
  for (const auto& cls : classes) {
    if (cls.size() % 2 == 0) {
      for (std::size_t k = 0; k < cls.size(); k += 2) {
        const auto& from = orbs[cls[k]];
        const auto& to = orbs[cls[k + 1]];
        const PermGroup& h = stabs[cls[k]];
        // A point of the partner orbit whose stabilizer is exactly H.
        std::optional<std::uint32_t> partner;
        for (auto y : to) {
          bool fixed = true;
          for (const auto& s : h.generators()) fixed = fixed && s(y) == y;
          if (fixed) {
            partner = y;
            break;
          }
        }
        if (!partner) throw Error("orbit_pair_code: no partner point with matching stabilizer");
        const auto beta = detail::equivariant_map(g, from.front(), *partner);
        for (auto p : from) gens.append_row(detail::pair_vector(n, p, static_cast<std::size_t>(beta[p])));
      }
    } else {
      for (auto i : cls) {
        const auto x = orbs[i].front();
        const PermGroup& h = stabs[i];
        std::optional<Permutation> eta;
        for (const auto& e : normalizer_elements(g, h)) {
          if (!h.contains(e) && h.contains(e * e)) {
            eta = e;
            break;
          }
        }
        if (!eta) return std::nullopt;
        const auto tau = detail::equivariant_map(g, x, (*eta)(x));
        for (auto p : orbs[i]) {
          if (static_cast<std::int64_t>(p) < tau[p]) gens.append_row(detail::pair_vector(n, p, static_cast<std::size_t>(tau[p])));
        }
      }
    }
  }
  BinaryCode c(gens);
  if (!is_self_dual(c) || !is_invariant(c, g)) throw Error("orbit_pair_code: constructed code failed verification");
  return c;
}

// A self-dual simple factor with odd multiplicity: what blocks a self-dual
// invariant code.
struct MultiplicityWitness {
  GModule factor;
  std::size_t multiplicity_in_natural = 0;
  std::size_t multiplicity_in_quotient = 0;
};

struct ExtensionResult {
  std::optional<BinaryCode> code;
  std::optional<MultiplicityWitness> witness;
  std::vector<std::size_t> dimension_trace;  // dim M at the start of each round
};

namespace detail {

struct IsotropicSearch {
  const std::vector<BitVector>& reps;  // coset representatives of M-perp / M
  std::size_t length;

  // Ambient vectors sum_j f[r][j] reps[j], one per row of f.
  std::vector<BitVector> lift(const BitMatrix& f) const {
    std::vector<BitVector> out;
    for (const auto& row : f.row_list()) {
      BitVector v(length);
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (row.get(j)) v ^= reps[j];
      }
      out.push_back(std::move(v));
    }
    return out;
  }

  static bool totally_isotropic(const std::vector<BitVector>& vs) {
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t j = i; j < vs.size(); ++j) {
        if (vs[i].dot(vs[j])) return false;
      }
    }
    return true;
  }

  // A nonzero f in span(basis) whose image is totally isotropic. The image
  // form lies in a space of dimension `forms`, so a subspace of Hom of
  // dimension 2 * forms + 1 always contains one (Chevalley-Warning).
  std::optional<std::vector<BitVector>> find(const std::vector<BitMatrix>& basis, std::size_t forms) const {
    const std::size_t use = std::min(basis.size(), 2 * forms + 1);
    if (use == 0) return std::nullopt;
    BitMatrix f = basis[0] + basis[0];
    const std::uint64_t total = std::uint64_t{1} << use;
    for (std::uint64_t step = 1; step < total; ++step) {
      f = f + basis[static_cast<std::size_t>(std::countr_zero(step))];
      auto vs = lift(f);
      if (totally_isotropic(vs)) return vs;
    }
    return std::nullopt;
  }
};

}  // namespace detail

inline ExtensionResult extend_to_self_dual(const PermGroup& g, const BinaryCode& seed_code, std::uint64_t seed = 0) {
  const std::size_t n = g.degree();
  if (seed_code.length() != n) throw InvalidArgument("extend_to_self_dual: seed code length differs from group degree");
  if (!is_self_orthogonal(seed_code)) throw InvalidArgument("extend_to_self_dual: seed code is not self-orthogonal");
  if (!is_invariant(seed_code, g)) throw InvalidArgument("extend_to_self_dual: seed code is not G-invariant");

  const FactorTable types = composition_series(natural_module(g), seed).table;
  std::vector<std::size_t> form_dims;
  for (const auto& e : types.entries) form_dims.push_back(e.self_dual ? symmetric_invariant_forms(e.factor).size() : 0);

  ExtensionResult result;
  BinaryCode m = seed_code;
  for (;;) {
    result.dimension_trace.push_back(m.dimension());
    const BinaryCode perp = dual(m);
    if (perp.dimension() == m.dimension()) {
      result.code = m;
      return result;
    }
    // Coset representatives of perp / m and the induced action on them.
    SemiEchelon span_m(n);
    for (const auto& r : m.generators().row_list()) span_m.insert(r);
    std::vector<BitVector> reps;
    for (const auto& r : perp.generators().row_list()) {
      if (span_m.insert(r)) reps.push_back(r);
    }
    BitMatrix combined(n, reps);
    for (const auto& r : m.generators().row_list()) combined.append_row(r);
    const SpanCoordinates coords(combined);
    const std::size_t q = reps.size();
    std::vector<BitMatrix> acts;
    for (const auto& p : g.generators()) {
      BitMatrix act(q);
      for (const auto& r : reps) {
        const BitVector c = *coords.coordinates(r.permuted(p.images()));
        BitVector head(q);
        for (std::size_t j = 0; j < q; ++j) head.set(j, c.get(j));
        act.append_row(std::move(head));
      }
      acts.push_back(std::move(act));
    }
    const GModule quotient(q, std::move(acts));

    const detail::IsotropicSearch search{reps, n};
    std::optional<std::vector<BitVector>> found;
    for (std::size_t t = 0; t < types.entries.size() && !found; ++t) {
      found = search.find(intertwiners(types.entries[t].factor, quotient), form_dims[t]);
    }
    if (!found) {
      const FactorTable qt = composition_series(quotient, seed).table;
      for (const auto& e : qt.entries) {
        if (!e.self_dual || e.multiplicity % 2 == 0) continue;
        MultiplicityWitness w;
        w.factor = e.factor;
        w.multiplicity_in_quotient = e.multiplicity;
        if (auto idx = types.find(e.factor)) w.multiplicity_in_natural = types.entries[*idx].multiplicity;
        result.witness = std::move(w);
        return result;
      }
      throw Error("extend_to_self_dual: no isotropic submodule and no odd self-dual factor in M-perp/M");
    }
    BitMatrix grown = m.generators();
    for (auto& v : *found) grown.append_row(std::move(v));
    m = BinaryCode(grown);
  }
}

struct DoublyEvenFix {
  BinaryCode code;
  std::optional<BinaryCode> neighbor;  // the other doubly-even code between X0 and X0-perp
};

inline DoublyEvenFix doubly_even_fix(const PermGroup& g, const BinaryCode& x) {
  const std::size_t n = g.degree();
  if (x.length() != n) throw InvalidArgument("doubly_even_fix: code length differs from group degree");
  if (n % 8 != 0) throw InvalidArgument("doubly_even_fix: length is not a multiple of 8");
  if (!is_self_dual(x)) throw InvalidArgument("doubly_even_fix: code is not self-dual");
  if (!is_invariant(x, g)) throw InvalidArgument("doubly_even_fix: code is not G-invariant");
  if (!is_in_alternating(g)) throw InvalidArgument("doubly_even_fix: group is not contained in the alternating group");
  if (is_doubly_even(x)) return {x, std::nullopt};

  const BinaryCode x0 = doubly_even_subcode(x);
  const BinaryCode x0_perp = dual(x0);
  std::optional<BitVector> a;
  for (const auto& r : x.generators().row_list()) {
    if (r.weight() % 4 == 2) {
      a = r;
      break;
    }
  }
  std::optional<BitVector> w;
  for (const auto& r : x0_perp.generators().row_list()) {
    if (!x.contains(r)) {
      w = r;
      break;
    }
  }
  if (!a || !w) throw Error("doubly_even_fix: X0-perp / X0 is not two-dimensional");
  auto neighbour = [&](const BitVector& v) {
    BitMatrix m = x0.generators();
    m.append_row(v);
    return BinaryCode(m);
  };
  BinaryCode c1 = neighbour(*w);
  BinaryCode c2 = neighbour(*w ^ *a);
  if (c2 < c1) std::swap(c1, c2);
  for (const auto* c : {&c1, &c2}) {
    if (!is_self_dual(*c) || !is_doubly_even(*c) || !is_invariant(*c, g)) throw Error("doubly_even_fix: neighbour code failed verification");
  }
  return {c1, c2};
}

enum class FailedCondition { kLength, kMultiplicity, kAlternating };

inline const char* condition_tag(FailedCondition c) {
  switch (c) {
    case FailedCondition::kLength:
      return "A_LENGTH";
    case FailedCondition::kMultiplicity:
      return "B_MULTIPLICITY";
    case FailedCondition::kAlternating:
      return "C_ALTERNATING";
  }
  return "?";
}

struct Certificate {
  FailedCondition condition = FailedCondition::kLength;
  std::size_t degree = 0;
  std::optional<std::size_t> odd_generator;  // index into the generator list
  std::optional<MultiplicityWitness> factor;
};

enum class SelfDualRoute { kOrbitPairing, kExtension };

struct ConstructionResult {
  std::optional<BinaryCode> code;
  std::optional<BinaryCode> neighbor;
  std::optional<BinaryCode> self_dual_code;  // invariant self-dual code before the doubly-even step
  std::optional<SelfDualRoute> route;
  std::optional<Certificate> certificate;

  bool found() const noexcept { return code.has_value(); }
};

// Self-dual G-invariant code by orbit pairing when applicable, else by extension.
inline std::pair<std::optional<BinaryCode>, SelfDualRoute> self_dual_invariant_code(const PermGroup& g, std::uint64_t seed = 0) {
  if (auto c = orbit_pair_code(g)) return {*c, SelfDualRoute::kOrbitPairing};
  auto ext = extend_to_self_dual(g, BinaryCode(g.degree()), seed);
  return {ext.code, SelfDualRoute::kExtension};
}

inline ConstructionResult construct_type2_invariant(const PermGroup& g, std::uint64_t seed = 0) {
  ConstructionResult result;
  const std::size_t n = g.degree();
  if (n % 8 != 0) {
    result.certificate = Certificate{FailedCondition::kLength, n, std::nullopt, std::nullopt};
    return result;
  }
  for (std::size_t i = 0; i < g.generators().size(); ++i) {
    if (g.generators()[i].sign() != 1) {
      result.certificate = Certificate{FailedCondition::kAlternating, n, i, std::nullopt};
      return result;
    }
  }
  const FactorTable all = composition_series(natural_module(g), seed).table;
  for (const auto& e : all.entries) {
    if (e.self_dual && e.multiplicity % 2 != 0) {
      result.certificate = Certificate{FailedCondition::kMultiplicity, n, std::nullopt, MultiplicityWitness{e.factor, e.multiplicity, 0}};
      return result;
    }
  }
  auto [x, route] = self_dual_invariant_code(g, seed);
  if (!x) throw Error("construct_type2_invariant: no self-dual invariant code although every self-dual factor has even multiplicity");
  DoublyEvenFix fix = doubly_even_fix(g, *x);
  result.self_dual_code = *x;
  result.route = route;
  result.code = fix.code;
  result.neighbor = fix.neighbor;
  return result;
}

}  // namespace sdc
