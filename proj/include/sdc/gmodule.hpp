#pragma once

// F2G-modules given by one action matrix per group generator (right action,
// v -> v * A). Submodules are found by spinning; composition series come from
// a Meataxe-style splitter using Norton's irreducibility criterion.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sdc/error.hpp"
#include "sdc/gf2.hpp"
#include "sdc/perm.hpp"
#include "sdc/poly.hpp"

namespace sdc {

class GModule {
 public:
  GModule() = default;
  GModule(std::size_t dim, std::vector<BitMatrix> actions) : dim_(dim), actions_(std::move(actions)) {
    for (const auto& a : actions_) {
      if (a.rows() != dim_ || a.cols() != dim_) throw DimensionMismatch("module action matrix is not " + std::to_string(dim_) + "x" + std::to_string(dim_));
      if (!is_invertible(a)) throw InvalidArgument("module action matrix is singular");
    }
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t generator_count() const noexcept { return actions_.size(); }
  const std::vector<BitMatrix>& actions() const noexcept { return actions_; }
  const BitMatrix& action(std::size_t g) const { return actions_[g]; }

  bool operator==(const GModule&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<BitMatrix> actions_;
};

// e_i * P = e_{p(i)}
inline BitMatrix permutation_matrix(const Permutation& p) {
  BitMatrix m(p.degree(), p.degree());
  for (std::size_t i = 0; i < p.degree(); ++i) m.set(i, p(i));
  return m;
}

inline GModule natural_module(const PermGroup& g) {
  std::vector<BitMatrix> acts;
  for (const auto& p : g.generators()) acts.push_back(permutation_matrix(p));
  return GModule(g.degree(), std::move(acts));
}

inline GModule transposed_module(const GModule& m) {
  std::vector<BitMatrix> acts;
  for (const auto& a : m.actions()) acts.push_back(a.transpose());
  return GModule(m.dim(), std::move(acts));
}

// Contragredient action: inverse transposes.
inline GModule dual_module(const GModule& m) {
  std::vector<BitMatrix> acts;
  for (const auto& a : m.actions()) acts.push_back(inverse(a)->transpose());
  return GModule(m.dim(), std::move(acts));
}

inline BitMatrix block_diagonal(const BitMatrix& a, const BitMatrix& b) {
  const std::size_t n = a.cols() + b.cols();
  BitMatrix out(n);
  for (const auto& r : a.row_list()) {
    BitVector v(n);
    for (std::size_t j = 0; j < a.cols(); ++j) v.set(j, r.get(j));
    out.append_row(std::move(v));
  }
  for (const auto& r : b.row_list()) {
    BitVector v(n);
    for (std::size_t j = 0; j < b.cols(); ++j) v.set(a.cols() + j, r.get(j));
    out.append_row(std::move(v));
  }
  return out;
}

inline GModule direct_sum(const GModule& a, const GModule& b) {
  if (a.generator_count() != b.generator_count()) throw InvalidArgument("direct_sum: modules over different generator sets");
  std::vector<BitMatrix> acts;
  for (std::size_t g = 0; g < a.generator_count(); ++g) acts.push_back(block_diagonal(a.action(g), b.action(g)));
  return GModule(a.dim() + b.dim(), std::move(acts));
}

// Smallest invariant subspace containing the seed rows, canonical basis.
inline BitMatrix spin(const GModule& m, const BitMatrix& seeds) {
  if (seeds.cols() != m.dim()) throw DimensionMismatch("spin: seed length differs from module dimension");
  SemiEchelon echelon(m.dim());
  std::vector<BitVector> queue;
  for (const auto& s : seeds.row_list()) {
    if (echelon.insert(s)) queue.push_back(echelon.rows().back());
  }
  for (std::size_t k = 0; k < queue.size(); ++k) {
    for (const auto& a : m.actions()) {
      if (echelon.insert(queue[k] * a)) queue.push_back(echelon.rows().back());
    }
  }
  return canonical(echelon.matrix());
}

inline BitMatrix spin(const GModule& m, const BitVector& seed) {
  BitMatrix s(m.dim());
  s.append_row(seed);
  return spin(m, s);
}

inline bool is_invariant_subspace(const GModule& m, const BitMatrix& w) {
  SemiEchelon e(m.dim());
  for (const auto& r : w.row_list()) e.insert(r);
  for (const auto& r : w.row_list()) {
    for (const auto& a : m.actions()) {
      if (!e.contains(r * a)) return false;
    }
  }
  return true;
}

// Action on an invariant subspace, in the coordinates of the given basis.
inline GModule restrict_module(const GModule& m, const BitMatrix& basis) {
  const SpanCoordinates coords(basis);
  std::vector<BitMatrix> acts;
  for (const auto& a : m.actions()) {
    BitMatrix act(basis.rows());
    for (const auto& r : basis.row_list()) {
      auto c = coords.coordinates(r * a);
      if (!c) throw InvalidArgument("restrict_module: subspace is not invariant");
      act.append_row(std::move(*c));
    }
    acts.push_back(std::move(act));
  }
  return GModule(basis.rows(), std::move(acts));
}

// M / W for a canonical W: cosets are represented by the unit vectors on the
// non-pivot columns of W.
struct QuotientModule {
  GModule module;
  BitMatrix kernel_basis;                 // W, canonical
  std::vector<std::size_t> free_columns;  // coordinate j of the quotient is ambient column free_columns[j]

  BitVector reduce(BitVector v) const {
    for (std::size_t k = 0; k < kernel_basis.rows(); ++k) {
      if (v.get(pivots[k])) v ^= kernel_basis.row(k);
    }
    return v;
  }

  BitVector project(const BitVector& v) const {
    const BitVector r = reduce(v);
    BitVector out(free_columns.size());
    for (std::size_t j = 0; j < free_columns.size(); ++j) out.set(j, r.get(free_columns[j]));
    return out;
  }

  BitVector coset_representative(const BitVector& q) const {
    BitVector v(kernel_basis.cols());
    for (std::size_t j = 0; j < free_columns.size(); ++j) {
      if (q.get(j)) v.set(free_columns[j]);
    }
    return v;
  }

  // Full preimage of a subspace of the quotient.
  BitMatrix lift(const BitMatrix& sub) const {
    BitMatrix out = kernel_basis;
    for (const auto& r : sub.row_list()) out.append_row(coset_representative(r));
    return canonical(out);
  }

  std::vector<std::size_t> pivots;
};

inline QuotientModule quotient_module(const GModule& m, const BitMatrix& sub) {
  QuotientModule q;
  const RrefResult r = rref(sub);
  q.kernel_basis = r.matrix;
  q.pivots = r.pivots;
  std::vector<bool> is_pivot(m.dim(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    if (!is_pivot[j]) q.free_columns.push_back(j);
  }
  std::vector<BitMatrix> acts;
  for (const auto& a : m.actions()) {
    BitMatrix act(q.free_columns.size());
    for (auto col : q.free_columns) act.append_row(q.project(a.row(col)));
    acts.push_back(std::move(act));
  }
  q.module = GModule(q.free_columns.size(), std::move(acts));
  return q;
}

namespace detail {

inline std::optional<BitMatrix> proper_spin(const GModule& m, const BitVector& v) {
  BitMatrix s = spin(m, v);
  if (s.rows() < m.dim()) return s;
  return std::nullopt;
}

inline BitVector combination(const BitMatrix& basis, std::uint64_t mask) {
  BitVector v(basis.cols());
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    if (i < 64 && ((mask >> i) & 1U) != 0) v ^= basis.row(i);
  }
  return v;
}

inline constexpr std::size_t kExhaustiveKernelDim = 10;
inline constexpr std::size_t kRandomProbes = 12;
inline constexpr std::size_t kMaxSplitAttempts = 2000;

}  // namespace detail

// A proper nonzero submodule (canonical basis), or nullopt when the module is
// irreducible. The nullopt answer is certified by Norton's criterion: for a
// singular algebra element S, the module is irreducible iff every nonzero
// vector of ker S spins to the module and every nonzero vector of ker S^T
// spins to the dual.
inline std::optional<BitMatrix> find_proper_submodule(const GModule& m, std::mt19937_64& rng) {
  const std::size_t d = m.dim();
  if (d <= 1) return std::nullopt;
  const GModule transposed = transposed_module(m);

  auto dual_hit = [&](const BitVector& w) -> std::optional<BitMatrix> {
    if (auto s = detail::proper_spin(transposed, w)) return kernel(*s);
    return std::nullopt;
  };

  std::vector<BitMatrix> words = m.actions();
  const std::size_t max_words = 2 * m.generator_count() + 10;
  for (std::size_t attempt = 0; attempt < detail::kMaxSplitAttempts; ++attempt) {
    if (!words.empty() && words.size() < max_words) {
      words.push_back(words[rng() % words.size()] * words[rng() % words.size()]);
    }
    BitMatrix theta(d, d);
    for (const auto& w : words) {
      if (rng() & 1U) theta = theta + w;
    }
    if (words.empty() || (rng() & 1U)) theta = theta + BitMatrix::identity(d);
    if (theta.is_zero()) continue;

    for (const auto& pf : factor(charpoly(theta))) {
      const BitMatrix singular = evaluate(pf.factor, theta);
      const BitMatrix null_right = kernel(singular.transpose());  // v * S = 0
      const BitMatrix null_left = kernel(singular);               // w * S^T = 0
      const auto k = null_right.rows();
      if (k == static_cast<std::size_t>(pf.factor.degree())) {
        // ker S is a simple F2[theta]-module, so one vector of each decides.
        if (auto s = detail::proper_spin(m, null_right.row(0))) return s;
        if (auto s = dual_hit(null_left.row(0))) return s;
        return std::nullopt;
      }
      if (k <= detail::kExhaustiveKernelDim) {
        const std::uint64_t total = std::uint64_t{1} << k;
        for (std::uint64_t mask = 1; mask < total; ++mask) {
          if (auto s = detail::proper_spin(m, detail::combination(null_right, mask))) return s;
        }
        for (std::uint64_t mask = 1; mask < total; ++mask) {
          if (auto s = dual_hit(detail::combination(null_left, mask))) return s;
        }
        return std::nullopt;
      }
      for (std::size_t probe = 0; probe < detail::kRandomProbes; ++probe) {
        BitVector v = detail::combination(null_right, rng());
        for (std::size_t i = 64; i < k; ++i) {
          if (rng() & 1U) v ^= null_right.row(i);
        }
        if (!v.is_zero()) {
          if (auto s = detail::proper_spin(m, v)) return s;
        }
        BitVector w = detail::combination(null_left, rng());
        for (std::size_t i = 64; i < k; ++i) {
          if (rng() & 1U) w ^= null_left.row(i);
        }
        if (!w.is_zero()) {
          if (auto s = dual_hit(w)) return s;
        }
      }
    }
  }
  throw Error("find_proper_submodule: no decision after " + std::to_string(detail::kMaxSplitAttempts) + " random algebra elements");
}

inline bool is_simple(const GModule& m, std::uint64_t seed = 0) {
  if (m.dim() == 0) return false;
  std::mt19937_64 rng(seed);
  return !find_proper_submodule(m, rng).has_value();
}

// Basis of Hom_G(S, T): matrices X (dim S x dim T) with A_S X = X A_T.
inline std::vector<BitMatrix> intertwiners(const GModule& s, const GModule& t) {
  if (s.generator_count() != t.generator_count()) {
    throw InvalidArgument("intertwiners: modules have different generator counts (" + std::to_string(s.generator_count()) + " vs " + std::to_string(t.generator_count()) + ")");
  }
  const std::size_t ds = s.dim();
  const std::size_t dt = t.dim();
  const std::size_t unknowns = ds * dt;
  if (unknowns == 0) return {};
  SemiEchelon equations(unknowns);
  for (std::size_t g = 0; g < s.generator_count(); ++g) {
    const BitMatrix& as = s.action(g);
    const BitMatrix& at = t.action(g);
    const BitMatrix att = at.transpose();
    for (std::size_t r = 0; r < ds; ++r) {
      for (std::size_t c = 0; c < dt; ++c) {
        BitVector eq(unknowns);
        for (std::size_t k = 0; k < ds; ++k) {
          if (as.get(r, k)) eq.flip(k * dt + c);
        }
        for (std::size_t k = 0; k < dt; ++k) {
          if (att.get(c, k)) eq.flip(r * dt + k);
        }
        equations.insert(std::move(eq));
      }
    }
  }
  const BitMatrix sol = kernel(equations.matrix());
  std::vector<BitMatrix> out;
  for (const auto& v : sol.row_list()) {
    BitMatrix x(ds, dt);
    for (std::size_t i = 0; i < ds; ++i) {
      for (std::size_t j = 0; j < dt; ++j) x.set(i, j, v.get(i * dt + j));
    }
    out.push_back(std::move(x));
  }
  return out;
}

inline constexpr std::size_t kMaxIsomorphismSearchDim = 20;

// For simple modules any nonzero intertwiner is invertible (Schur), so the
// basis scan decides. Otherwise all combinations are tried, up to a cap.
inline std::optional<BitMatrix> isomorphism(const GModule& s, const GModule& t) {
  if (s.generator_count() != t.generator_count()) throw InvalidArgument("are_isomorphic: modules over different groups (generator count mismatch)");
  if (s.dim() != t.dim()) return std::nullopt;
  if (s.dim() == 0) return BitMatrix(0, 0);
  const auto hom = intertwiners(s, t);
  for (const auto& x : hom) {
    if (is_invertible(x)) return x;
  }
  if (hom.size() <= 1) return std::nullopt;
  if (hom.size() > kMaxIsomorphismSearchDim) {
    throw CapExceeded("isomorphism: Hom space of dimension " + std::to_string(hom.size()) + " above search cap", 0);
  }
  BitMatrix x(s.dim(), t.dim());
  for (std::uint64_t step = 1; step < (std::uint64_t{1} << hom.size()); ++step) {
    x = x + hom[static_cast<std::size_t>(std::countr_zero(step))];
    if (is_invertible(x)) return x;
  }
  return std::nullopt;
}

inline bool are_isomorphic(const GModule& s, const GModule& t) { return isomorphism(s, t).has_value(); }

// Basis of the symmetric Gram matrices F with A F A^T = F for every generator.
inline std::vector<BitMatrix> symmetric_invariant_forms(const GModule& s) {
  const std::size_t d = s.dim();
  std::vector<std::size_t> base(d + 1, 0);  // index of (i, j), i <= j
  for (std::size_t i = 0; i < d; ++i) base[i + 1] = base[i] + (d - i);
  auto var = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return base[i] + (j - i);
  };
  const std::size_t unknowns = base[d];
  if (unknowns == 0) return {};
  SemiEchelon equations(unknowns);
  for (const auto& a : s.actions()) {
    for (std::size_t r = 0; r < d; ++r) {
      for (std::size_t c = r; c < d; ++c) {
        // (A F A^T)_{rc} + F_{rc} = sum_{k,l} A_rk A_cl F_kl + F_rc
        BitVector eq(unknowns);
        for (std::size_t k = 0; k < d; ++k) {
          if (!a.get(r, k)) continue;
          for (std::size_t l = 0; l < d; ++l) {
            if (a.get(c, l)) eq.flip(var(k, l));
          }
        }
        eq.flip(var(r, c));
        equations.insert(std::move(eq));
      }
    }
  }
  const BitMatrix sol = kernel(equations.matrix());
  std::vector<BitMatrix> out;
  for (const auto& v : sol.row_list()) {
    BitMatrix f(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) f.set(i, j, v.get(var(i, j)));
    }
    out.push_back(std::move(f));
  }
  return out;
}

// A nondegenerate symmetric invariant form on a self-dual simple module: the
// first invertible element met when scanning the canonical solution basis
// from its lexicographically smallest vector upwards, then sums of pairs.
inline BitMatrix invariant_symmetric_form(const GModule& s) {
  const auto forms = symmetric_invariant_forms(s);
  for (auto it = forms.rbegin(); it != forms.rend(); ++it) {
    if (is_invertible(*it)) return *it;
  }
  for (std::size_t i = forms.size(); i-- > 0;) {
    for (std::size_t j = i; j-- > 0;) {
      BitMatrix f = forms[i] + forms[j];
      if (is_invertible(f)) return f;
    }
  }
  throw InvalidArgument("invariant_symmetric_form: no nondegenerate symmetric invariant form (module not self-dual or not simple)");
}

inline bool is_self_dual_simple(const GModule& s, std::uint64_t seed = 0) {
  if (!is_simple(s, seed)) throw InvalidArgument("is_self_dual_simple: module is not simple");
  return are_isomorphic(s, dual_module(s));
}

struct ModuleFingerprint {
  std::size_t dim = 0;
  std::vector<Poly2> charpolys;
  bool operator==(const ModuleFingerprint&) const = default;
};

inline ModuleFingerprint fingerprint(const GModule& m) {
  ModuleFingerprint f{m.dim(), {}};
  for (const auto& a : m.actions()) f.charpolys.push_back(charpoly(a));
  return f;
}

struct FactorEntry {
  GModule factor;  // representative: first occurrence along the series
  std::size_t multiplicity = 0;
  bool self_dual = false;
  std::size_t dim = 0;
};

struct FactorTable {
  std::vector<FactorEntry> entries;

  std::size_t total_dim() const {
    std::size_t s = 0;
    for (const auto& e : entries) s += e.dim * e.multiplicity;
    return s;
  }

  // Index of the entry isomorphic to m, if any.
  std::optional<std::size_t> find(const GModule& m) const {
    const auto fp = fingerprint(m);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].dim == m.dim() && fingerprint(entries[i].factor) == fp && are_isomorphic(entries[i].factor, m)) return i;
    }
    return std::nullopt;
  }
};

struct CompositionSeries {
  std::vector<BitMatrix> chain;         // N_0 = 0 < N_1 < ... < N_k = whole module, canonical
  std::vector<GModule> factors;         // N_i / N_{i-1}, i = 1..k
  std::vector<std::size_t> factor_class;  // entry of `table` for each factor
  FactorTable table;
};

namespace detail {

// Chain N_1 < ... < N_k (N_0 = 0 implied) in the coordinates of m.
inline void refine_series(const GModule& m, std::mt19937_64& rng, std::vector<BitMatrix>& chain, std::vector<GModule>& factors) {
  chain.clear();
  factors.clear();
  if (m.dim() == 0) return;
  auto sub = find_proper_submodule(m, rng);
  if (!sub) {
    chain.push_back(BitMatrix::identity(m.dim()));
    factors.push_back(m);
    return;
  }
  const GModule lower = restrict_module(m, *sub);
  const QuotientModule upper = quotient_module(m, *sub);
  std::vector<BitMatrix> lower_chain;
  std::vector<GModule> lower_factors;
  refine_series(lower, rng, lower_chain, lower_factors);
  std::vector<BitMatrix> upper_chain;
  std::vector<GModule> upper_factors;
  refine_series(upper.module, rng, upper_chain, upper_factors);
  for (const auto& c : lower_chain) chain.push_back(canonical(c * *sub));
  for (const auto& c : upper_chain) chain.push_back(upper.lift(c));
  factors = std::move(lower_factors);
  for (auto& f : upper_factors) factors.push_back(std::move(f));
}

}  // namespace detail

inline FactorTable tabulate_factors(const std::vector<GModule>& factors, std::vector<std::size_t>* classes = nullptr) {
  FactorTable table;
  std::vector<ModuleFingerprint> prints;
  for (const auto& f : factors) {
    const auto fp = fingerprint(f);
    std::optional<std::size_t> hit;
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
      if (prints[i] == fp && are_isomorphic(table.entries[i].factor, f)) {
        hit = i;
        break;
      }
    }
    if (!hit) {
      FactorEntry e;
      e.factor = f;
      e.dim = f.dim();
      e.self_dual = are_isomorphic(f, dual_module(f));
      table.entries.push_back(std::move(e));
      prints.push_back(fp);
      hit = table.entries.size() - 1;
    }
    ++table.entries[*hit].multiplicity;
    if (classes != nullptr) classes->push_back(*hit);
  }
  return table;
}

inline CompositionSeries composition_series(const GModule& m, std::uint64_t seed = 0) {
  std::mt19937_64 rng(seed);
  CompositionSeries cs;
  std::vector<BitMatrix> chain;
  detail::refine_series(m, rng, chain, cs.factors);
  cs.chain.push_back(BitMatrix(m.dim()));
  for (auto& c : chain) cs.chain.push_back(std::move(c));
  cs.table = tabulate_factors(cs.factors, &cs.factor_class);
  return cs;
}

// Same multiset of isomorphism classes with multiplicities.
inline bool same_factor_multiset(const FactorTable& a, const FactorTable& b) {
  if (a.entries.size() != b.entries.size()) return false;
  std::vector<bool> used(b.entries.size(), false);
  for (const auto& e : a.entries) {
    bool matched = false;
    for (std::size_t j = 0; j < b.entries.size(); ++j) {
      if (used[j] || b.entries[j].multiplicity != e.multiplicity || b.entries[j].dim != e.dim) continue;
      if (e.factor.generator_count() != b.entries[j].factor.generator_count()) continue;
      if (are_isomorphic(e.factor, b.entries[j].factor)) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

inline FactorTable self_dual_multiplicities(const PermGroup& g, std::uint64_t seed = 0) {
  FactorTable all = composition_series(natural_module(g), seed).table;
  FactorTable out;
  for (auto& e : all.entries) {
    if (e.self_dual) out.entries.push_back(std::move(e));
  }
  return out;
}

}  // namespace sdc
