#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "ivp/expression.hpp"
#include "ivp/factored.hpp"
#include "ivp/families.hpp"
#include "ivp/fixdiv.hpp"
#include "ivp/irred.hpp"
#include "ivp/powfact.hpp"

// JSON forms for schema "ivp-factor/1". Integers are decimal strings so that
// values beyond 64 bits survive any reader.

namespace ivp {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "ivp-factor/1";

inline Json to_json(const IrredCertificate& c) {
  Json j{{"method", to_string(c.method)}};
  if (c.method == CertMethod::Eisenstein || c.method == CertMethod::ModPIrreducible) j["prime"] = c.prime.str();
  if (c.method == CertMethod::Eisenstein) j["shift"] = c.shift.str();
  return j;
}

inline Json to_json(const FactoredIVP& f) {
  Json factors = Json::array();
  for (const auto& fac : f.factors())
    factors.push_back({{"poly", to_string(fac.poly)}, {"multiplicity", fac.mult}});
  return {{"expr", format_expression(f)},
          {"sign", f.sign()},
          {"denominator", f.denom().str()},
          {"degree", f.degree()},
          {"factors", factors}};
}

/// Certificates of the distinct factors, keyed by polynomial.
inline Json certificates_json(const FactoredIVP& f) {
  Json j = Json::object();
  for (const auto& fac : f.factors()) j[to_string(fac.poly)] = to_json(fac.cert);
  return j;
}

inline Json to_json(const Factorization& fac) {
  Json parts = Json::array();
  for (const auto& p : fac.parts) parts.push_back(format_expression(p));
  return {{"length", fac.length()}, {"type", type_of(fac).partition.blocks}, {"parts", parts}};
}

inline Json to_json(const std::vector<Factorization>& facs) {
  Json arr = Json::array();
  for (const auto& f : facs) arr.push_back(to_json(f));
  return arr;
}

inline Json to_json(const IntZIrredReport& r) {
  Json j{{"verdict", to_string(r.verdict)},
         {"sign_is_unit", r.sign_is_unit},
         {"denominator_equals_fixdiv", r.denom_equals_fixdiv},
         {"numerator_fixdiv", r.numerator_fixdiv.str()},
         {"splits_examined", r.splits_examined},
         {"reason", r.reason}};
  if (r.split) j["split"] = {format_expression(r.split->first), format_expression(r.split->second)};
  if (r.constant_split) j["constant_factor"] = r.constant_split->str();
  return j;
}

inline Json to_json(const FamilyCheck& c) {
  Json j{{"name", c.name}, {"passed", c.passed}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

inline Json to_json(const FamilyInstance& inst) {
  Json params = Json::object();
  for (const auto& [k, v] : inst.params) params[k] = v;
  Json checks = Json::array();
  for (const auto& c : inst.checks) checks.push_back(to_json(c));
  Json j{{"family", inst.family}, {"params", params}, {"element", to_json(inst.f)}, {"checks", checks}};
  if (inst.displayed) {
    j["displayed_power"] = inst.displayed_power;
    j["displayed"] = to_json(*inst.displayed);
  }
  return j;
}

inline Json to_json(const InterchangeablePair& p, const FactoredIVP& f) {
  auto names = [&](const std::vector<unsigned>& J) {
    Json a = Json::array();
    for (std::size_t i = 0; i < J.size(); ++i)
      for (unsigned k = 0; k < J[i]; ++k) a.push_back(to_string(f.factors()[i].poly));
    return a;
  };
  return {{"J1", names(p.J1)},
          {"J2", names(p.J2)},
          {"fixdiv_left", p.fixdiv_left.str()},
          {"fixdiv_right", p.fixdiv_right.str()},
          {"b", p.b.str()},
          {"element_disjoint", p.element_disjoint}};
}

inline Json to_json(const LemmaApplication& a) {
  Json display = Json::array();
  for (const auto& d : a.display) display.push_back(format_expression(d));
  Json data = Json::object();
  for (const auto& [k, v] : a.data) data[k] = v;
  return {{"power", a.power},
          {"display", display},
          {"factorization", to_json(a.factorization)},
          {"essentially_different", a.essentially_different},
          {"data", data}};
}

/// Parses the "expr" field back (the other fields are derived).
inline FactoredIVP factored_from_json(const Json& j, const CanonicalizeOptions& opt = {}) {
  if (!j.contains("expr") || !j["expr"].is_string()) throw InputError("JSON element needs an \"expr\" string");
  return parse_expression(j["expr"].get<std::string>(), opt);
}

}  // namespace ivp
