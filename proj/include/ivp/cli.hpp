#pragma once

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ivp/expression.hpp"
#include "ivp/families.hpp"
#include "ivp/fixdiv.hpp"
#include "ivp/irred.hpp"
#include "ivp/powfact.hpp"
#include "ivp/serialize.hpp"

namespace ivp::cli {

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2, kResourceError = 3 };

/// Settings shared by all verbs; every key can come from a config file.
struct Settings {
  bool json = false;
  unsigned threads = 1;
  unsigned max_slots = 16;
  unsigned kmax = kDefaultMaxDepth;
  bool assert_irreducible = false;
  std::uint64_t max_candidates = 2'000'000;
  // Verb parameters.
  unsigned power = 2;
  unsigned N = 3;
  unsigned k = 2;
  // 0 selects the family default.
  unsigned p = 0, n = 0, q = 0, m = 0, s = 2, t = 2, distinct = 0;
};

/// Flat "key = value" lines; '#' starts a comment.
inline std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError(path + ":" + std::to_string(lineno) + ": expected key = value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

inline void apply_config(const std::map<std::string, std::string>& kv, Settings& s) {
  auto num = [](const std::string& key, const std::string& v) -> std::uint64_t {
    try {
      std::size_t used = 0;
      const auto x = std::stoull(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw InputError("config key " + key + " needs a natural number, got '" + v + "'");
    }
  };
  auto boolean = [](const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw InputError("config key " + key + " needs true/false, got '" + v + "'");
  };
  const std::map<std::string, unsigned*> u{{"threads", &s.threads}, {"max_slots", &s.max_slots}, {"kmax", &s.kmax},
                                           {"power", &s.power},     {"N", &s.N},                 {"k", &s.k},
                                           {"p", &s.p},             {"n", &s.n},                 {"q", &s.q},
                                           {"m", &s.m},             {"s", &s.s},                 {"t", &s.t},
                                           {"distinct", &s.distinct}};
  for (const auto& [key, v] : kv) {
    if (auto it = u.find(key); it != u.end())
      *it->second = static_cast<unsigned>(num(key, v));
    else if (key == "max_candidates")
      s.max_candidates = num(key, v);
    else if (key == "json")
      s.json = boolean(key, v);
    else if (key == "assert_irreducible")
      s.assert_irreducible = boolean(key, v);
    else
      throw InputError("unknown config key '" + key + "'");
  }
}

/// Output of one verb: the human text, the JSON result, an exit code.
struct Report {
  std::string verb;
  Json input = Json::object();
  Json result = Json::object();
  Json certificates = Json::object();
  std::ostringstream text;
  int code = kOk;
};

namespace detail {

inline std::string bracketed(const Factorization& f) {
  std::string s;
  for (const auto& p : f.parts) s += (s.empty() ? "" : " ") + ("[" + format_expression(p) + "]");
  return s;
}

inline void list_factorizations(Report& r, const std::vector<Factorization>& facs, const std::string& what) {
  r.text << facs.size() << " factorization" << (facs.size() == 1 ? "" : "s") << " of " << what << "\n";
  for (const auto& f : facs)
    r.text << "  length " << f.length() << ", type " << to_string(type_of(f)) << ": " << bracketed(f) << "\n";
  std::vector<std::size_t> lengths;
  for (const auto& f : facs) lengths.push_back(f.length());
  r.result["count"] = facs.size();
  r.result["lengths"] = lengths;
  r.result["factorizations"] = to_json(facs);
}

inline std::vector<unsigned> subset_counts(const FactoredIVP& f, const std::vector<std::string>& polys) {
  std::vector<unsigned> c(f.factors().size(), 0);
  for (const auto& s : polys) {
    const auto raw = parse_raw_expression(s);
    if (raw.factors.size() != 1 || raw.denom != 1) throw InputError("subset member '" + s + "' must be one polynomial");
    const IntPoly g = primitive_part(raw.factors[0]);
    c[ivp::detail::factor_index(f, g)] += 1;
  }
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] > f.factors()[i].mult) throw InputError("subset uses " + to_string(f.factors()[i].poly) + " too often");
  return c;
}

}  // namespace detail

class Runner {
 public:
  explicit Runner(Settings s) : s_(std::move(s)) {}

  CanonicalizeOptions canon() {
    CanonicalizeOptions o;
    o.assert_irreducible = s_.assert_irreducible;
    o.warnings = &warnings_;
    return o;
  }
  EnumerateOptions enum_opt() const { return {s_.max_slots, s_.kmax, s_.threads}; }
  SearchBounds bounds() const {
    SearchBounds b;
    b.max_candidates = s_.max_candidates;
    b.max_depth = s_.kmax;
    b.enumeration_slots = s_.max_slots;
    return b;
  }
  const std::vector<std::string>& warnings() const { return warnings_; }

  FactoredIVP element(Report& r, const std::string& expr) {
    r.input["expr"] = expr;
    FactoredIVP f = parse_expression(expr, canon());
    r.input["canonical"] = format_expression(f);
    r.certificates = certificates_json(f);
    return f;
  }

  void fixdiv(Report& r, const std::string& expr) {
    r.input["expr"] = expr;
    const auto raw = parse_raw_expression(expr);
    if (raw.factors.empty()) throw InputError("empty expression");
    const std::vector<unsigned> ones(raw.factors.size(), 1);
    const Integer d = fixed_divisor_product(raw.factors, ones, s_.kmax);
    r.result["fixdiv"] = d.str();
    r.text << d << "\n";
  }

  void member(Report& r, const std::string& expr) {
    const auto f = element(r, expr);
    const Integer d = fixed_divisor(f);
    const bool ok = d % f.denom() == 0;
    r.result = {{"member", ok}, {"numerator_fixdiv", d.str()}, {"denominator", f.denom().str()}};
    r.text << (ok ? "member" : "not a member") << " (fixdiv = " << d << ", denominator = " << f.denom() << ")\n";
    r.code = ok ? kOk : kNegative;
  }

  void irreducible(Report& r, const std::string& expr) {
    const auto f = element(r, expr);
    const auto rep = is_irreducible_intz(f, {s_.max_slots, s_.kmax});
    r.result = to_json(rep);
    switch (rep.verdict) {
      case IrredVerdict::Irreducible:
        r.text << "irreducible (fixdiv = " << rep.numerator_fixdiv << ")\n";
        break;
      case IrredVerdict::Reducible:
        if (rep.split)
          r.text << "reducible: [" << format_expression(rep.split->first) << "] [" << format_expression(rep.split->second)
                 << "]\n";
        else
          r.text << "reducible: " << rep.reason << "\n";
        r.code = kNegative;
        break;
      case IrredVerdict::NotMember:
        r.text << rep.reason << "\n";
        r.code = kNegative;
        break;
      case IrredVerdict::Inconclusive:
        throw ResourceError(rep.reason);
    }
  }

  void factorize(Report& r, const std::string& expr, unsigned power) {
    const auto f0 = element(r, expr);
    if (power == 0) throw InputError("power must be positive");
    const FactoredIVP f = f0.pow(power);
    if (power > 1) r.input["power"] = power;
    const Integer d = fixed_divisor(f);
    if (d % f.denom() != 0) {
      r.result = {{"member", false}, {"numerator_fixdiv", d.str()}};
      r.text << "not a member (fixdiv = " << d << ")\n";
      r.code = kNegative;
      return;
    }
    const auto facs = enumerate_factorizations(f.with_sign(1), enum_opt());
    if (f.sign() < 0) {
      r.result["unit"] = -1;
      r.text << "unit -1 times:\n";
    }
    list_factorizations_(r, facs, power > 1 ? "(" + format_expression(f0) + ")^" + std::to_string(power)
                                            : format_expression(f0));
  }

  void absirr(Report& r, const std::string& expr, unsigned N) {
    const auto f = element(r, expr);
    r.input["N"] = N;
    const auto w = find_nonabs_witness(f, N, enum_opt());
    if (w) {
      r.result = {{"absolutely_irreducible_up_to_N", false},
                  {"power", w->power},
                  {"factorization_count", w->factorization_count},
                  {"witness", to_json(w->factorization)}};
      r.text << "not absolutely irreducible: f^" << w->power << " = " << detail::bracketed(w->factorization) << "\n";
      r.code = kNegative;
    } else {
      r.result = {{"absolutely_irreducible_up_to_N", true}};
      r.text << "absolutely irreducible up to N = " << N << " (not a proof)\n";
    }
  }

  void construct(Report& r, const std::string& family) {
    r.input["family"] = family;
    const auto b = bounds();
    auto dflt = [](unsigned v, unsigned d) { return v == 0 ? d : v; };
    FamilyInstance inst;
    if (family == "type1") {
      const unsigned n = dflt(s_.n, 2);
      inst = construct_type1({dflt(s_.p, 3), n, dflt(s_.distinct, std::min(2U, n)), {}, b});
    } else if (family == "type1cd") {
      const unsigned n = dflt(s_.n, 2);
      inst = construct_type1_cd({dflt(s_.p, 3), n, dflt(s_.distinct, std::min(2U, n)), b});
    } else if (family == "mixed_q") {
      inst = construct_mixed_q({dflt(s_.p, 5), dflt(s_.q, 3), dflt(s_.n, 6), b});
    } else if (family == "two_prime") {
      inst = construct_two_prime({dflt(s_.p, 5), dflt(s_.q, 3), dflt(s_.n, 2), dflt(s_.m, 2), b});
    } else if (family == "type2") {
      inst = construct_type2({dflt(s_.p, 3), dflt(s_.n, 2), dflt(s_.m, 1), s_.distinct, b});
    } else if (family == "overlap") {
      const auto o = construct_overlap(dflt(s_.p, 5), b);
      r.input["p"] = dflt(s_.p, 5);
      Json G = Json::array();
      for (const auto& g : o.replacement.replacements) G.push_back(to_string(g));
      Json checks = Json::array();
      for (const auto& c : o.checks) checks.push_back(to_json(c));
      r.result = {{"family", "overlap"},
                  {"roots", ivp::detail::join(o.roots)},
                  {"modulus", o.replacement.modulus.str()},
                  {"G", G},
                  {"e_single", o.e_single},
                  {"e_pair", o.e_pair},
                  {"e_triple", o.e_triple},
                  {"element", to_json(o.f)},
                  {"displayed_power", 2},
                  {"displayed", to_json(o.displayed)},
                  {"checks", checks}};
      r.certificates = certificates_json(o.f);
      r.text << "f = " << format_expression(o.f) << "\n";
      for (std::size_t i = 0; i < G.size(); ++i) r.text << "G_" << i + 1 << " = " << G[i].get<std::string>() << "\n";
      r.text << "f^2 = " << detail::bracketed(o.displayed) << "\n";
      for (const auto& c : o.checks) r.text << "  check " << c.name << ": " << (c.passed ? "ok" : "FAILED") << "\n";
      return;
    } else {
      throw InputError("unknown family '" + family + "' (type1, type1cd, mixed_q, two_prime, type2, overlap)");
    }
    for (const auto& [k, v] : inst.params) r.input[k] = v;
    r.result = to_json(inst);
    r.certificates = certificates_json(inst.f);
    r.text << "f = " << format_expression(inst.f) << "\n";
    for (const auto& [k, v] : inst.params) r.text << "  " << k << " = " << v << "\n";
    if (inst.displayed) r.text << "f^" << inst.displayed_power << " = " << detail::bracketed(*inst.displayed) << "\n";
    for (const auto& c : inst.checks)
      r.text << "  check " << c.name << ": " << (c.passed ? "ok" : "FAILED") << (c.detail.empty() ? "" : " (" + c.detail + ")")
             << "\n";
  }

  void lemma(Report& r, const std::string& kind, const std::string& expr, const std::vector<std::string>& J,
             const std::vector<std::string>& J1, const std::vector<std::string>& J2) {
    const auto f = element(r, expr);
    r.input["kind"] = kind;
    if (kind == "interchangeable") {
      const auto pairs = find_interchangeable(f, s_.max_slots);
      Json arr = Json::array();
      for (const auto& p : pairs) arr.push_back(to_json(p, f));
      r.result = {{"pairs", arr}};
      r.text << pairs.size() << " interchangeable pair" << (pairs.size() == 1 ? "" : "s") << "\n";
      for (const auto& p : arr)
        r.text << "  J1 = " << p["J1"].dump() << ", J2 = " << p["J2"].dump()
               << (p["element_disjoint"].get<bool>() ? " (element-disjoint)" : "") << "\n";
      r.code = pairs.empty() ? kNegative : kOk;
      return;
    }
    LemmaApplication app;
    if (kind == "type1") {
      InterchangeablePair pair;
      if (J1.empty() && J2.empty()) {
        const auto pairs = find_interchangeable(f, s_.max_slots);
        auto it = std::find_if(pairs.begin(), pairs.end(), [](const auto& p) { return p.element_disjoint; });
        if (it == pairs.end()) {
          r.result = {{"applicable", false}};
          r.text << "no element-disjoint interchangeable pair\n";
          r.code = kNegative;
          return;
        }
        pair = *it;
      } else {
        pair.J1 = detail::subset_counts(f, J1);
        pair.J2 = detail::subset_counts(f, J2);
      }
      app = apply_lemma_type1(f, pair, s_.k);
    } else if (kind == "type2") {
      app = apply_lemma_type2(f, detail::subset_counts(f, J));
    } else if (kind == "type2i") {
      app = apply_lemma_type2i(f, detail::subset_counts(f, J));
    } else {
      throw InputError("unknown lemma kind '" + kind + "' (interchangeable, type1, type2, type2i)");
    }
    r.result = to_json(app);
    r.text << "f^" << app.power << " = " << detail::bracketed(app.factorization) << "\n";
    for (const auto& [k, v] : app.data) r.text << "  " << k << " = " << v << "\n";
    r.text << (app.essentially_different ? "essentially different from f^" : "same as f^") << app.power << "\n";
    r.code = app.essentially_different ? kOk : kNegative;
  }

  void pattern(Report& r) {
    PatternParams prm{s_.p ? s_.p : 3, s_.n ? s_.n : 2, s_.s, s_.t, s_.distinct, bounds()};
    const auto inst = construct_pattern(prm);
    r.input = {{"p", prm.p}, {"n", prm.n}, {"s", prm.s}, {"t", prm.t}};
    r.certificates = certificates_json(inst.G);
    auto triples = enumerate_pattern_triples(inst);
    std::vector<Factorization> from_triples;
    for (const auto& t : triples) from_triples.push_back(t.factorization);
    std::sort(from_triples.begin(), from_triples.end());
    from_triples.erase(std::unique(from_triples.begin(), from_triples.end()), from_triples.end());
    const auto all = enumerate_factorizations(inst.G, enum_opt());
    const bool equal = all == from_triples;
    r.result = {{"G", to_json(inst.G)},
                {"triples", triples.size()},
                {"factorizations", to_json(all)},
                {"bijection", equal}};
    r.text << "G = " << format_expression(inst.G) << "\n";
    r.text << triples.size() << " triples, " << all.size() << " factorizations; sets "
           << (equal ? "agree" : "DIFFER") << "\n";
    for (const auto& t : triples) {
      r.text << "  B = {";
      for (std::size_t i = 0; i < t.triple.blocks.size(); ++i) {
        r.text << (i ? "," : "") << "{";
        for (std::size_t j = 0; j < t.triple.blocks[i].size(); ++j) r.text << (j ? "," : "") << t.triple.blocks[i][j] + 1;
        r.text << "}";
      }
      r.text << "}: " << detail::bracketed(t.factorization) << "\n";
    }
    r.code = equal ? kOk : kNegative;
  }

  void selftest(Report& r) {
    struct Case {
      std::string name;
      std::function<bool()> run;
    };
    const std::vector<Case> cases{
        {"fixdiv x(x^2+3) = 2", [] { return fixed_divisor(parse_expression("x*(x^2+3)")) == 2; }},
        {"fixdiv x(x-1)(x-2) = 6", [] { return fixed_divisor(parse_expression("x*(x-1)*(x-2)")) == 6; }},
        {"x(x^2+3)/2 squared has 2 factorizations",
         [] { return enumerate_factorizations(parse_expression("x*(x^2+3)/2").pow(2)).size() == 2; }},
        {"(x-3)(x^3-17)(x^3-19)/3 squared has lengths 2 and 3",
         [] {
           const auto l = length_spectrum(parse_expression("(x-3)*(x^3-17)*(x^3-19)/3").pow(2));
           return std::count(l.begin(), l.end(), 2) > 0 && std::count(l.begin(), l.end(), 3) > 0;
         }},
        {"x-3 absolutely irreducible up to 5", [] { return !find_nonabs_witness(parse_expression("x-3"), 5); }},
    };
    Json arr = Json::array();
    bool all = true;
    for (const auto& c : cases) {
      bool ok = false;
      try {
        ok = c.run();
      } catch (const std::exception&) {
        ok = false;
      }
      all = all && ok;
      arr.push_back({{"name", c.name}, {"passed", ok}});
      r.text << (ok ? "PASS " : "FAIL ") << c.name << "\n";
    }
    r.result = {{"cases", arr}, {"passed", all}};
    r.code = all ? kOk : kNegative;
  }

 private:
  void list_factorizations_(Report& r, const std::vector<Factorization>& facs, const std::string& what) {
    detail::list_factorizations(r, facs, what);
  }

  Settings s_;
  std::vector<std::string> warnings_;
};

/// Full command-line entry point; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Settings st;
  // The config file supplies defaults; explicit flags parsed below override it.
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string a = argv[i];
      if (a == "--config" && i + 1 < argc)
        apply_config(read_config(argv[i + 1]), st);
      else if (a.rfind("--config=", 0) == 0)
        apply_config(read_config(a.substr(9)), st);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  CLI::App app{"Factorization in the ring of integer-valued polynomials"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value file of defaults");
  app.add_flag("--json", st.json, "emit JSON (schema ivp-factor/1)");
  app.add_option("--threads", st.threads, "worker threads for enumeration")->check(CLI::Range(1U, 256U));
  app.add_option("--max-slots", st.max_slots, "cap on factor slots for combinatorial searches");
  app.add_option("--kmax", st.kmax, "maximum p-adic depth for valuation searches");
  app.add_flag("--assert-irreducible", st.assert_irreducible, "accept uncertified factors as irreducible");
  app.add_option("--max-candidates", st.max_candidates, "candidate budget for prime and root searches");

  std::string expr, family, kind;
  std::vector<std::string> J, J1, J2;
  auto* c_fixdiv = app.add_subcommand("fixdiv", "fixed divisor of a polynomial product");
  c_fixdiv->add_option("expr", expr, "element, e.g. x*(x^2+3)/2")->required();
  auto* c_member = app.add_subcommand("member", "membership in Int(Z)");
  c_member->add_option("expr", expr, "element, e.g. x*(x^2+3)/2")->required();
  auto* c_irr = app.add_subcommand("irreducible", "irreducibility in Int(Z)");
  c_irr->add_option("expr", expr, "element, e.g. x*(x^2+3)/2")->required();
  auto* c_fac = app.add_subcommand("factorize", "all factorizations of an element");
  c_fac->add_option("expr", expr, "element, e.g. x*(x^2+3)/2")->required();
  auto* c_pow = app.add_subcommand("power", "all factorizations of a power f^n");
  c_pow->add_option("-n", st.power, "exponent");
  c_pow->add_option("expr", expr, "element, e.g. x*(x^2+3)/2")->required();
  auto* c_abs = app.add_subcommand("absirr", "search n <= N for a non-trivial factorization of f^n");
  c_abs->add_option("-N", st.N, "largest power tried");
  c_abs->add_option("expr", expr, "element, e.g. x*(x^2+3)/2")->required();
  auto* c_con = app.add_subcommand("construct", "generate a family instance with self-checks");
  c_con->add_option("family", family, "type1, type1cd, mixed_q, two_prime, type2, overlap")->required();
  auto* c_lem = app.add_subcommand("lemma", "apply a non-absolute-irreducibility criterion");
  c_lem->add_option("kind", kind, "interchangeable, type1, type2, type2i")->required();
  c_lem->add_option("expr", expr, "element, e.g. x*(x^2+3)/2")->required();
  c_lem->add_option("--J", J, "factor in the subset J (repeatable)");
  c_lem->add_option("--J1", J1, "factor in J1 (repeatable)");
  c_lem->add_option("--J2", J2, "factor in J2 (repeatable)");
  c_lem->add_option("-k", st.k, "power for the interchange lemma");
  auto* c_pat = app.add_subcommand("pattern", "pattern triples versus enumeration");
  auto* c_self = app.add_subcommand("selftest", "run the built-in checks");
  for (auto* c : {c_con, c_pat}) {
    c->add_option("--p", st.p, "odd prime p (0 = family default)");
    c->add_option("--n", st.n, "exponent n of the denominator (0 = family default)");
    c->add_option("--distinct", st.distinct, "number of distinct roots a_i (0 = family default)");
  }
  c_con->add_option("--q", st.q, "second prime q for mixed_q and two_prime (0 = default)");
  c_con->add_option("--m", st.m, "exponent m for two_prime and type2 (0 = default)");
  c_pat->add_option("--s", st.s, "number of factors c_i");
  c_pat->add_option("--t", st.t, "number of factors d_j");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  Runner runner(st);
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (c_fixdiv->parsed()) {
      r.verb = "fixdiv";
      runner.fixdiv(r, expr);
    } else if (c_member->parsed()) {
      r.verb = "member";
      runner.member(r, expr);
    } else if (c_irr->parsed()) {
      r.verb = "irreducible";
      runner.irreducible(r, expr);
    } else if (c_fac->parsed()) {
      r.verb = "factorize";
      runner.factorize(r, expr, 1);
    } else if (c_pow->parsed()) {
      r.verb = "power";
      runner.factorize(r, expr, st.power);
    } else if (c_abs->parsed()) {
      r.verb = "absirr";
      runner.absirr(r, expr, st.N);
    } else if (c_con->parsed()) {
      r.verb = "construct";
      runner.construct(r, family);
    } else if (c_lem->parsed()) {
      r.verb = "lemma";
      runner.lemma(r, kind, expr, J, J1, J2);
    } else if (c_pat->parsed()) {
      r.verb = "pattern";
      runner.pattern(r);
    } else if (c_self->parsed()) {
      r.verb = "selftest";
      runner.selftest(r);
    }
  } catch (const ParseError& e) {
    r.code = kInputError;
    r.result = {{"error", "syntax"}, {"message", e.what()}, {"offset", e.offset()}};
    r.text.str("");
    r.text << "error: " << e.what() << "\n";
  } catch (const ReducibleFactorError& e) {
    r.code = kInputError;
    r.result = {{"error", "reducible_factor"}, {"message", e.what()}, {"left", e.left()}, {"right", e.right()}};
    r.text.str("");
    r.text << "error: " << e.what() << "\n";
  } catch (const InputError& e) {
    r.code = kInputError;
    r.result = {{"error", "input"}, {"message", e.what()}};
    r.text.str("");
    r.text << "error: " << e.what() << "\n";
  } catch (const ResourceError& e) {
    r.code = kResourceError;
    r.result = {{"error", "resource"}, {"message", e.what()}};
    r.text.str("");
    r.text << "error (resource limit): " << e.what() << "\n";
  } catch (const HypothesisError& e) {
    r.code = kNegative;
    r.result = {{"error", "hypothesis"}, {"message", e.what()}};
    r.text.str("");
    r.text << "hypothesis failed: " << e.what() << "\n";
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (st.json) {
    Json j{{"schema", kSchema},
           {"verb", r.verb},
           {"input", r.input},
           {"result", r.result},
           {"certificates", r.certificates},
           {"timings", {{"total_ms", ms}}}};
    if (!runner.warnings().empty()) j["warnings"] = runner.warnings();
    j["exit_code"] = r.code;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& w : runner.warnings()) err << "warning: " << w << "\n";
    (r.code == kInputError || r.code == kResourceError ? err : out) << r.text.str();
  }
  return r.code;
}

}  // namespace ivp::cli
