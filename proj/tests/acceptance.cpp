// Acceptance gate: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "sdc/sdc.hpp"

namespace {

using namespace sdc;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& msg) {
  if (o.pass) o.detail = msg;
  o.pass = false;
}

std::vector<Permutation> all_permutations(std::size_t n) {
  std::vector<std::uint32_t> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<std::uint32_t>(i);
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

// Every automorphism of every doubly-even self-dual code of length 8 is even.
Outcome automorphisms_are_even() {
  Outcome o;
  const auto codes = enumerate_self_dual_codes(8, true);
  const auto perms = all_permutations(8);
  std::size_t total = 0;
  for (const auto& c : codes) {
    if (!is_self_dual(c) || !is_doubly_even(c)) fail(o, "enumeration returned a code that is not Type II");
    std::size_t count = 0;
    for (const auto& p : perms) {
      if (!is_invariant_under(c, p.images())) continue;
      ++count;
      if (p.sign() != 1) fail(o, "odd automorphism " + io::format_permutation(p));
    }
    total += count;
  }
  if (codes.empty()) fail(o, "no codes enumerated");
  std::ostringstream d;
  d << codes.size() << " codes, " << total << " automorphisms scanned over " << perms.size() << " permutations";
  if (o.pass) o.detail = d.str();
  return o;
}

// dickson_invariant agrees with the sign.
Outcome dickson_equals_sign() {
  Outcome o;
  const BinaryCode e8 = codes::e8();
  std::size_t checked = 0;
  for (const auto& p : all_permutations(8)) {
    ++checked;
    const int d = dickson_invariant(p, e8);
    if (d != p.sign()) fail(o, "n=8 mismatch at " + io::format_permutation(p));
  }
  std::mt19937_64 rng(20240611);
  for (std::size_t n : {16U, 24U}) {
    const auto ref = construct_type2_invariant(PermGroup(n, {}), 0);
    if (!ref.found()) {
      fail(o, "no reference code at n=" + std::to_string(n));
      continue;
    }
    std::vector<std::uint32_t> images(n);
    for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<std::uint32_t>(i);
    for (int trial = 0; trial < 10000; ++trial) {
      std::shuffle(images.begin(), images.end(), rng);
      const Permutation p(images);
      ++checked;
      const int d = dickson_invariant(p, *ref.code);
      if (d != p.sign()) fail(o, "n=" + std::to_string(n) + " mismatch at " + io::format_permutation(p));
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " permutations";
  return o;
}

// Even multiplicity of self-dual factors <=> a self-dual invariant code exists.
Outcome multiplicity_criterion() {
  Outcome o;
  const auto groups = fixtures::catalogue();
  std::size_t with_code = 0;
  for (const auto& [name, g] : groups) {
    if (g.degree() > 10) continue;
    const auto table = self_dual_multiplicities(g, 0);
    bool even = true;
    for (const auto& e : table.entries) even = even && e.multiplicity % 2 == 0;
    const auto codes = enumerate_self_dual_codes(g.degree(), false, g);
    if (even != !codes.empty()) fail(o, name + ": multiplicities even=" + std::to_string(even) + " but oracle found " + std::to_string(codes.size()));
    if (!codes.empty()) ++with_code;
  }
  if (o.pass) o.detail = std::to_string(groups.size()) + " groups, " + std::to_string(with_code) + " admit a self-dual invariant code";
  return o;
}

// Degree-8 fixtures: construction succeeds exactly when the oracle finds a code.
Outcome construction_matches_oracle() {
  Outcome o;
  const auto groups = fixtures::of_degree(8);
  std::size_t built = 0;
  for (const auto& [name, g] : groups) {
    const auto oracle = enumerate_self_dual_codes(8, true, g);
    const auto r = construct_type2_invariant(g, 0);
    if (r.found() != !oracle.empty()) fail(o, name + ": construction " + (r.found() ? "found" : "did not find") + " a code, oracle count " + std::to_string(oracle.size()));
    if (r.found()) {
      ++built;
      const BinaryCode& c = *r.code;
      if (!is_self_dual(c) || !is_doubly_even(c) || !is_invariant(c, g)) fail(o, name + ": returned code fails verification");
      bool listed = false;
      for (const auto& x : oracle) listed = listed || x == c;
      if (!listed) fail(o, name + ": returned code missing from oracle list");
    }
  }
  if (o.pass) o.detail = std::to_string(groups.size()) + " groups, " + std::to_string(built) + " codes built and verified";
  return o;
}

// Group ring codes: Type II exists iff 8 | |G| and the Sylow 2-subgroup is not cyclic.
Outcome group_ring_truth_table() {
  Outcome o;
  struct Row {
    std::string name;
    PermGroup g;
    bool type2;
  };
  const auto mk = fixtures::make;
  std::vector<Row> rows{
      {"C2", mk(2, {"(1,2)"}), false},
      {"C3", mk(3, {"(1,2,3)"}), false},
      {"C4", mk(4, {"(1,2,3,4)"}), false},
      {"C8", mk(8, {"(1,2,3,4,5,6,7,8)"}), false},
      {"C4xC2", mk(6, {"(1,2,3,4)", "(5,6)"}), true},
      {"C2^3", mk(6, {"(1,2)", "(3,4)", "(5,6)"}), true},
      {"D8", mk(4, {"(1,2,3,4)", "(1,3)"}), true},
      {"Q8", fixtures::quaternion_regular(), true},
      {"Sym3", mk(3, {"(1,2,3)", "(1,2)"}), false},
      {"Sym4", mk(4, {"(1,2,3,4)", "(1,2)"}), true},
      {"C24", mk(11, {"(1,2,3,4,5,6,7,8)(9,10,11)"}), false},
  };
  std::size_t validated = 0;
  for (const auto& r : rows) {
    const auto d = group_code_decision(r.g, 32, 0);
    if (d.type2_exists != r.type2) fail(o, r.name + ": type2_exists=" + std::to_string(d.type2_exists));
    if (d.order <= 32 && !d.cross_validated) fail(o, r.name + ": not cross-validated");
    if (!d.consistent()) fail(o, r.name + ": pipeline disagrees with the criterion");
    if (d.cross_validated && d.pipeline_type2 != r.type2) fail(o, r.name + ": pipeline type2=" + std::to_string(d.pipeline_type2));
    if (d.cross_validated) ++validated;
  }
  if (o.pass) o.detail = std::to_string(rows.size()) + " groups, " + std::to_string(validated) + " cross-validated on the regular representation";
  return o;
}

// k orthogonal copies of the 2-dimensional simple C3-module: an invariant
// X = X-perp exists iff k is even. Realised as the even-weight vectors of
// C3 acting on k disjoint triples.
Outcome c3_copies_parity() {
  Outcome o;
  std::ostringstream d;
  for (std::size_t k = 1; k <= 4; ++k) {
    const std::size_t n = 3 * k;
    std::vector<std::uint32_t> images(n);
    for (std::size_t t = 0; t < k; ++t) {
      images[3 * t] = static_cast<std::uint32_t>(3 * t + 1);
      images[3 * t + 1] = static_cast<std::uint32_t>(3 * t + 2);
      images[3 * t + 2] = static_cast<std::uint32_t>(3 * t);
    }
    const Permutation g(images);
    // basis of W: e_{3t} + e_{3t+1}, e_{3t+1} + e_{3t+2}
    BitMatrix w(n);
    for (std::size_t t = 0; t < k; ++t) {
      BitVector a(n), b(n);
      a.set(3 * t);
      a.set(3 * t + 1);
      b.set(3 * t + 1);
      b.set(3 * t + 2);
      w.append_row(a);
      w.append_row(b);
    }
    if (k == 1) {
      const GModule s = restrict_module(natural_module(PermGroup(3, {g})), w);
      if (!is_simple(s) || !is_self_dual_simple(s)) fail(o, "the 2-dimensional C3-module is not simple self-dual");
    }
    std::size_t found = 0;
    for_each_subspace(2 * k, k, [&](const BitMatrix& coords) {
      BitMatrix x = coords * w;
      bool ok = true;
      for (std::size_t i = 0; ok && i < x.rows(); ++i) {
        for (std::size_t j = i; ok && j < x.rows(); ++j) ok = !x.row(i).dot(x.row(j));
      }
      if (!ok) return;
      const BitMatrix xs = canonical(x);
      for (std::size_t i = 0; ok && i < xs.rows(); ++i) ok = span_contains(xs, xs.row(i).permuted(g.images()));
      if (ok) ++found;
    });
    const bool expected = k % 2 == 0;
    if ((found > 0) != expected) fail(o, "k=" + std::to_string(k) + ": found " + std::to_string(found));
    d << (k > 1 ? ", " : "") << "k=" << k << ":" << found;
  }
  if (o.pass) o.detail = d.str();
  return o;
}

// Composition factors do not depend on the seed.
Outcome seed_independence() {
  Outcome o;
  const auto groups = fixtures::catalogue();
  for (const auto& [name, g] : groups) {
    const GModule m = natural_module(g);
    const auto base = composition_series(m, 0).table;
    if (base.total_dim() != m.dim()) fail(o, name + ": factor dimensions do not add up");
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      if (!same_factor_multiset(base, composition_series(m, seed * 0x9e3779b97f4a7c15ULL).table)) fail(o, name + ": seed " + std::to_string(seed) + " differs");
    }
  }
  if (o.pass) o.detail = std::to_string(groups.size()) + " natural modules x 21 seeds";
  return o;
}

// No doubly-even self-dual code of length 2, 4, 6 or 10.
Outcome no_short_type2() {
  Outcome o;
  for (std::size_t n : {2U, 4U, 6U, 10U}) {
    const auto all = enumerate_self_dual_codes(n, false);
    if (all.empty()) fail(o, "oracle found no self-dual code at n=" + std::to_string(n));
    const auto type2 = enumerate_self_dual_codes(n, true);
    if (!type2.empty()) fail(o, "Type II code at n=" + std::to_string(n));
  }
  if (o.pass) o.detail = "n in {2,4,6,10}: none";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 automorphisms of Type II codes of length 8 are even", automorphisms_are_even},
      {"2 Dickson invariant equals sign", dickson_equals_sign},
      {"3 self-dual factor multiplicities decide self-dual invariant codes", multiplicity_criterion},
      {"4 construction at n=8 matches the exhaustive oracle", construction_matches_oracle},
      {"5 group ring Type II truth table", group_ring_truth_table},
      {"6 copies of the simple C3-module need even count", c3_copies_parity},
      {"7 composition factors are seed independent", seed_independence},
      {"8 no Type II codes at n=2,4,6,10", no_short_type2},
  };
  int failures = 0;
  for (const auto& [title, fn] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %s: %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", title.c_str(), r.detail.c_str(), secs);
    std::fflush(stdout);
    if (!r.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
