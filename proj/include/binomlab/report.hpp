#pragma once

#include <json.hpp>
#include <sstream>
#include <string>

#include "binomlab/criteria.hpp"
#include "binomlab/verifier.hpp"

namespace binomlab {

inline constexpr const char* kVersion = "0.1.0";

// Fixed flat schema shared by every suite; absent parameters stay empty.
inline constexpr const char* kRecordCsvHeader = "location,p,f,k,s,i,lhs,rhs,modulus,pass";

using json = nlohmann::json;

inline json to_json(const CongruenceRecord& r) {
  json j;
  j["location"] = to_string(r.location);
  if (r.p) j["p"] = *r.p;
  if (r.f) j["f"] = *r.f;
  if (r.k) j["k"] = *r.k;
  if (r.s) j["s"] = *r.s;
  if (r.i) j["i"] = *r.i;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["modulus"] = r.modulus;
  if (r.status == CheckStatus::not_applicable)
    j["pass"] = nullptr;
  else
    j["pass"] = r.status == CheckStatus::pass;
  return j;
}

inline CongruenceRecord record_from_json(const json& j) {
  CongruenceRecord r;
  std::string loc = j.at("location");
  for (Eq e : {Eq::eq1, Eq::eq2, Eq::eq3, Eq::eq6, Eq::eq7, Eq::eq9, Eq::eq10, Eq::eq11,
               Eq::eq12, Eq::eq14, Eq::eq16, Eq::eq17, Eq::eq21})
    if (loc == to_string(e)) r.location = e;
  auto opt = [&](const char* key, std::optional<i64>& slot) {
    if (j.contains(key)) slot = j.at(key).get<i64>();
  };
  opt("p", r.p);
  opt("f", r.f);
  opt("k", r.k);
  opt("s", r.s);
  opt("i", r.i);
  r.lhs = j.at("lhs");
  r.rhs = j.at("rhs");
  r.modulus = j.at("modulus");
  if (j.at("pass").is_null())
    r.status = CheckStatus::not_applicable;
  else
    r.status = j.at("pass").get<bool>() ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

inline json to_json(const SuiteReport& rep) {
  json j;
  j["grid"] = rep.grid;
  j["totals"] = {{"checked", rep.totals.checked},
                 {"passed", rep.totals.passed},
                 {"failed", rep.totals.failed},
                 {"skipped", rep.totals.skipped}};
  if (rep.violations) j["violations"] = rep.violations;
  j["records"] = json::array();
  for (const auto& r : rep.records) j["records"].push_back(to_json(r));
  return j;
}

inline std::string to_csv_row(const CongruenceRecord& r) {
  auto cell = [](const std::optional<i64>& v) { return v ? std::to_string(*v) : std::string(); };
  std::string pass = r.status == CheckStatus::not_applicable
                         ? "na"
                         : (r.status == CheckStatus::pass ? "true" : "false");
  std::ostringstream os;
  os << to_string(r.location) << ',' << cell(r.p) << ',' << cell(r.f) << ',' << cell(r.k) << ','
     << cell(r.s) << ',' << cell(r.i) << ',' << r.lhs << ',' << r.rhs << ',' << r.modulus << ','
     << pass;
  return os.str();
}

inline std::string to_csv(const SuiteReport& rep) {
  std::ostringstream os;
  os << kRecordCsvHeader << '\n';
  for (const auto& r : rep.records) os << to_csv_row(r) << '\n';
  return os.str();
}

inline json to_json(const CriterionVerdict& v) {
  json j;
  j["holds"] = v.holds;
  j["checked_count"] = v.checked_count;
  if (v.first_failure) {
    j["first_failure"] = {{"index", v.first_failure->index},
                          {"lhs", v.first_failure->lhs},
                          {"rhs", v.first_failure->rhs},
                          {"modulus", v.first_failure->modulus}};
  }
  return j;
}

inline json to_json(const ClassificationResult& c) {
  json j;
  j["verdict"] = to_json(c.verdict);
  j["q_is_prime"] = c.q_is_prime;
  if (c.exponent_f) j["exponent_f"] = *c.exponent_f;
  return j;
}

}  // namespace binomlab
