#pragma once

// Command-line front end. parse_job turns argv into a JobSpec; run executes it
// and returns the JSON report with the process exit status:
//   0 success / true verdict, 1 impossible / false verdict,
//   2 input error, 3 cap exceeded.

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sdc/code.hpp"
#include "sdc/construct.hpp"
#include "sdc/error.hpp"
#include "sdc/gmodule.hpp"
#include "sdc/io.hpp"
#include "sdc/perm.hpp"
#include "sdc/verify.hpp"

namespace sdc::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitCap = 3;
inline constexpr int kSchemaVersion = 1;

struct JobSpec {
  std::string command;
  std::vector<std::string> group;  // generator strings, JSON descriptors or @files
  std::optional<std::size_t> degree;
  std::optional<std::string> code;  // rows, JSON or @file
  std::optional<std::string> perm;
  std::optional<std::size_t> n;
  bool doubly_even = false;
  bool both = false;
  std::uint64_t seed = 0;
  std::size_t closure_cap = kDefaultClosureCap;
  std::size_t enumeration_cap = kDefaultEnumerationLength;
  std::size_t cross_validate_up_to = kDefaultCrossValidationOrder;
};

struct Report {
  json body;
  int status = kExitOk;
};

inline std::size_t closure_cap_from_env() {
  const char* env = std::getenv("SDC_CLOSURE_CAP");
  if (env == nullptr || *env == '\0') return kDefaultClosureCap;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) throw ParseError("SDC_CLOSURE_CAP must be a positive integer");
  return static_cast<std::size_t>(v);
}

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string resolve(const std::string& value) { return !value.empty() && value.front() == '@' ? read_file(value.substr(1)) : value; }

inline PermGroup load_group(const JobSpec& job) {
  std::vector<std::string> gens;
  std::optional<std::size_t> degree = job.degree;
  for (const auto& raw : job.group) {
    const std::string text = resolve(raw);
    const auto t = io::detail::trim(text);
    if (!t.empty() && t.front() == '{') {
      json j;
      try {
        j = json::parse(t);
      } catch (const json::exception& e) {
        throw ParseError(std::string("invalid group JSON: ") + e.what());
      }
      const PermGroup g = io::group_from_json(j);
      if (degree && *degree != g.degree()) throw ParseError("group descriptor degree disagrees with --degree");
      degree = g.degree();
      for (const auto& p : g.generators()) gens.push_back(io::format_permutation(p));
      continue;
    }
    std::string cur;
    for (char ch : text) {
      if (ch == ';' || ch == '\n') {
        if (!io::detail::trim(cur).empty()) gens.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    if (!io::detail::trim(cur).empty()) gens.push_back(cur);
  }
  if (gens.empty() && !degree) throw ParseError("a group needs generators or --degree");
  return io::parse_generators(gens, degree, job.closure_cap);
}

inline BinaryCode load_code(const JobSpec& job) {
  if (!job.code) throw ParseError("this command needs --code");
  return io::parse_code(resolve(*job.code));
}

inline json module_to_json(const GModule& m) {
  json acts = json::array();
  for (const auto& a : m.actions()) {
    json rows = json::array();
    for (const auto& r : a.row_list()) rows.push_back(r.to_string());
    acts.push_back(rows);
  }
  return json{{"dim", m.dim()}, {"actions", acts}};
}

inline json factor_table_to_json(const FactorTable& t) {
  json out = json::array();
  for (const auto& e : t.entries) out.push_back(json{{"dim", e.dim}, {"multiplicity", e.multiplicity}, {"self_dual", e.self_dual}});
  return out;
}

inline json echo(const JobSpec& job) {
  json in{{"seed", job.seed}};
  if (!job.group.empty()) in["group"] = job.group;
  if (job.degree) in["degree"] = *job.degree;
  if (job.code) in["code"] = *job.code;
  if (job.perm) in["perm"] = *job.perm;
  if (job.n) in["n"] = *job.n;
  if (job.doubly_even) in["doubly_even"] = true;
  if (job.both) in["both"] = true;
  return in;
}

inline Report run_check(const JobSpec& job, json body) {
  const PermGroup g = load_group(job);
  const ConditionReport r = check_conditions(g, job.seed);
  body["group"] = io::group_to_json(g);
  body["conditions"] = json{{"a", r.length_ok}, {"b", r.multiplicities_ok}, {"c", r.alternating_ok}};
  json ev{{"degree", r.degree}, {"self_dual_factors", factor_table_to_json(r.self_dual_factors)}};
  if (r.odd_generator) ev["odd_generator"] = io::format_permutation(g.generators()[*r.odd_generator]);
  if (r.odd_factor) ev["odd_factor"] = module_to_json(r.self_dual_factors.entries[*r.odd_factor].factor);
  body["evidence"] = ev;
  return {body, r.all() ? kExitOk : kExitFalse};
}

inline Report run_construct(const JobSpec& job, json body) {
  const PermGroup g = load_group(job);
  const ConstructionResult r = construct_type2_invariant(g, job.seed);
  body["group"] = io::group_to_json(g);
  if (r.found()) {
    body["outcome"] = "code";
    body["code"] = io::code_to_json(*r.code);
    body["route"] = *r.route == SelfDualRoute::kOrbitPairing ? "orbit_pairing" : "extension";
    body["self_dual_code"] = io::code_to_json(*r.self_dual_code);
    if (job.both) body["neighbor"] = r.neighbor ? io::code_to_json(*r.neighbor) : json(nullptr);
    body["verified"] = json{{"self_dual", is_self_dual(*r.code)}, {"doubly_even", is_doubly_even(*r.code)}, {"invariant", is_invariant(*r.code, g)}};
    return {body, kExitOk};
  }
  const Certificate& c = *r.certificate;
  json cert{{"condition", condition_tag(c.condition)}, {"degree", c.degree}};
  if (c.odd_generator) cert["odd_generator"] = io::format_permutation(g.generators()[*c.odd_generator]);
  if (c.factor) {
    cert["factor"] = module_to_json(c.factor->factor);
    cert["multiplicity"] = c.factor->multiplicity_in_natural;
  }
  body["outcome"] = "impossible";
  body["certificate"] = cert;
  return {body, kExitFalse};
}

inline Report run_group_code(const JobSpec& job, json body) {
  const PermGroup g = load_group(job);
  const GroupCodeDecision d = group_code_decision(g, job.cross_validate_up_to, job.seed);
  body["group"] = io::group_to_json(g);
  body["self_dual"] = d.self_dual_exists;
  body["type2"] = d.type2_exists;
  body["evidence"] = json{{"order", d.order},
                          {"two_part", d.two_part},
                          {"sylow2_cyclic", d.sylow2_cyclic},
                          {"cross_validated", d.cross_validated},
                          {"pipeline_self_dual", d.pipeline_self_dual},
                          {"pipeline_type2", d.pipeline_type2},
                          {"consistent", d.consistent()}};
  if (!d.consistent()) throw Error("group-code: criterion and construction pipeline disagree");
  return {body, d.type2_exists ? kExitOk : kExitFalse};
}

inline Report run_dickson(const JobSpec& job, json body) {
  if (!job.perm) throw ParseError("dickson needs --perm");
  const auto parsed = io::parse_permutation_text(*job.perm);
  std::optional<BinaryCode> ref;
  if (job.code) ref = load_code(job);
  std::size_t n = ref ? ref->length() : job.n.value_or(job.degree.value_or(parsed.min_degree));
  if (!ref) {
    const auto r = construct_type2_invariant(PermGroup(n, {}), job.seed);
    if (!r.found()) throw InvalidArgument("dickson: no doubly-even self-dual reference code of length " + std::to_string(n));
    ref = *r.code;
  }
  const Permutation p = io::build_permutation(parsed, n);
  const int d = dickson_invariant(p, *ref);
  body["reference"] = io::code_to_json(*ref);
  body["dickson"] = d;
  body["sign"] = p.sign();
  return {body, kExitOk};
}

inline Report run_enumerate(const JobSpec& job, json body) {
  if (!job.n && job.group.empty()) throw ParseError("enumerate needs --n or --group");
  std::optional<PermGroup> g;
  if (!job.group.empty()) g = load_group(job);
  const std::size_t n = job.n.value_or(g ? g->degree() : 0);
  const auto codes = enumerate_self_dual_codes(n, job.doubly_even, g, job.enumeration_cap);
  json list = json::array();
  for (const auto& c : codes) list.push_back(io::code_to_json(c));
  body["count"] = codes.size();
  body["codes"] = list;
  return {body, codes.empty() ? kExitFalse : kExitOk};
}

inline Report run_aut(const JobSpec& job, json body) {
  const BinaryCode c = load_code(job);
  const PermGroup a = automorphism_group_bruteforce(c);
  body["code"] = io::code_to_json(c);
  body["group"] = io::group_to_json(a);
  body["order"] = a.order();
  body["in_alternating"] = is_in_alternating(a);
  return {body, kExitOk};
}

inline Report run_verify_code(const JobSpec& job, json body) {
  const BinaryCode c = load_code(job);
  json checks{{"self_orthogonal", is_self_orthogonal(c)}, {"self_dual", is_self_dual(c)}, {"doubly_even", is_doubly_even(c)}};
  bool invariant = true;
  if (!job.group.empty()) {
    const PermGroup g = load_group(job);
    if (g.degree() != c.length()) throw ParseError("group degree differs from code length");
    invariant = is_invariant(c, g);
    checks["invariant"] = invariant;
  }
  body["code"] = io::code_to_json(c);
  body["checks"] = checks;
  const bool ok = is_self_dual(c) && is_doubly_even(c) && invariant;
  body["valid"] = ok;
  return {body, ok ? kExitOk : kExitFalse};
}

}  // namespace detail

inline Report run(const JobSpec& job) {
  json body{{"schema", kSchemaVersion}, {"command", job.command}, {"input", detail::echo(job)}};
  try {
    if (job.closure_cap == 0) throw ParseError("closure cap must be positive");
    if (job.command == "check") return detail::run_check(job, body);
    if (job.command == "construct") return detail::run_construct(job, body);
    if (job.command == "group-code") return detail::run_group_code(job, body);
    if (job.command == "dickson") return detail::run_dickson(job, body);
    if (job.command == "enumerate") return detail::run_enumerate(job, body);
    if (job.command == "aut") return detail::run_aut(job, body);
    if (job.command == "verify-code") return detail::run_verify_code(job, body);
    throw ParseError("unknown command '" + job.command + "'");
  } catch (const CapExceeded& e) {
    body["error"] = json{{"kind", "cap_exceeded"}, {"message", e.what()}, {"partial", e.partial()}};
    return {body, kExitCap};
  } catch (const ParseError& e) {
    body["error"] = json{{"kind", "parse"}, {"message", e.what()}};
    return {body, kExitInput};
  } catch (const InvalidArgument& e) {
    body["error"] = json{{"kind", "invalid_input"}, {"message", e.what()}};
    return {body, kExitInput};
  } catch (const DimensionMismatch& e) {
    body["error"] = json{{"kind", "invalid_input"}, {"message", e.what()}};
    return {body, kExitInput};
  }
}

// Parses argv; on --help or a usage error returns the exit status to use.
struct ParseOutcome {
  std::optional<JobSpec> job;
  int status = kExitOk;
  std::string message;
};

inline ParseOutcome parse_job(int argc, const char* const* argv) {
  CLI::App app{"Invariant self-dual and doubly-even self-dual binary codes for permutation groups", "sdc"};
  app.require_subcommand(1);
  JobSpec job;
  try {
    job.closure_cap = closure_cap_from_env();
  } catch (const ParseError& e) {
    return {std::nullopt, kExitInput, e.what()};
  }

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", job.seed, "Randomness seed for module splitting");
    sub->add_option("--cap", job.closure_cap, "Group closure cap (default from SDC_CLOSURE_CAP or 2^20)");
  };
  auto add_group = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--group,-g", job.group, "Generators: cycle or one-line notation, ';'-separated, JSON descriptor, or @file");
    if (required) opt->required();
    sub->add_option("--degree,-d", job.degree, "Group degree (default: largest moved point)");
  };

  auto* check = app.add_subcommand("check", "Report the three existence conditions for a Type II invariant code");
  add_group(check, false);
  add_common(check);
  auto* construct = app.add_subcommand("construct", "Construct a G-invariant doubly-even self-dual code or a certificate");
  add_group(construct, false);
  add_common(construct);
  construct->add_flag("--both", job.both, "Also report the second doubly-even neighbour");
  auto* group_code = app.add_subcommand("group-code", "Decide self-dual and Type II group ring codes for a finite group");
  add_group(group_code, true);
  add_common(group_code);
  group_code->add_option("--cross-validate", job.cross_validate_up_to, "Run the pipeline on the regular representation up to this group order");
  auto* dickson = app.add_subcommand("dickson", "Dickson invariant of a coordinate permutation");
  dickson->add_option("--perm,-p", job.perm, "Permutation")->required();
  dickson->add_option("--code,-c", job.code, "Doubly-even self-dual reference code (default: constructed)");
  dickson->add_option("--n", job.n, "Length when no reference code is given");
  add_common(dickson);
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate all self-dual codes of a small length");
  enumerate->add_option("--n", job.n, "Length");
  enumerate->add_flag("--doubly-even", job.doubly_even, "Keep doubly-even codes only");
  add_group(enumerate, false);
  enumerate->add_option("--max-length", job.enumeration_cap, "Enumeration length cap (at most 12)");
  add_common(enumerate);
  auto* aut = app.add_subcommand("aut", "Automorphism group of a short code by exhaustive search");
  aut->add_option("--code,-c", job.code, "Code")->required();
  add_common(aut);
  auto* verify = app.add_subcommand("verify-code", "Re-check a claimed code: self-dual, doubly-even, invariant");
  verify->add_option("--code,-c", job.code, "Code")->required();
  add_group(verify, false);
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    return {std::nullopt, kExitOk, app.help()};
  } catch (const CLI::ParseError& e) {
    return {std::nullopt, kExitInput, e.what()};
  }
  for (auto* sub : app.get_subcommands()) job.command = sub->get_name();
  return {job, kExitOk, {}};
}

}  // namespace sdc::cli
