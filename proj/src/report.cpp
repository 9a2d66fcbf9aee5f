#include "rado/report.hpp"

#include <chrono>
#include <ctime>

namespace rado {

using nlohmann::json;

json to_json(const SolverStats& s) {
  return {{"conflicts", s.conflicts}, {"decisions", s.decisions}, {"propagations", s.propagations},
          {"restarts", s.restarts}, {"seconds", s.seconds}};
}

json to_json(const InfinityJustification& j) {
  json out = {{"rule", to_string(j.rule)}, {"k", j.k}, {"detail", j.detail}};
  if (j.prime) out["prime"] = j.prime;
  return out;
}

InfinityJustification justification_from_json(const json& j) {
  InfinityJustification out;
  auto rule = rule_from_string(j.at("rule").get<std::string>());
  if (!rule) throw std::invalid_argument("unknown justification rule");
  out.rule = *rule;
  out.k = j.at("k").get<int>();
  out.prime = j.value("prime", std::int64_t{0});
  out.detail = j.value("detail", std::string());
  return out;
}

json to_json(const UpperBound& b) {
  json out = {{"bound", b.bound}, {"rule", to_string(b.rule)}, {"detail", b.detail}};
  if (b.prime) out["prime"] = b.prime;
  if (b.k) out["k"] = b.k;
  return out;
}

json search_result_json(const LinearEquation& eq, int k, const SearchOutcome& o) {
  json j;
  j["equation"] = eq.to_string();
  j["coefficients"] = std::vector<std::int64_t>(eq.coeffs().begin(), eq.coeffs().end());
  j["k"] = k;
  j["status"] = to_string(o.kind);
  if (o.kind == SearchOutcome::Kind::Finite) j["value"] = o.value;
  if (o.justification) j["justification"] = to_json(*o.justification);
  if (o.kind != SearchOutcome::Kind::Infinite) {
    j["bracket"] = {{"lo", o.bracket_lo}};
    if (o.bracket_hi) j["bracket"]["hi"] = *o.bracket_hi;
  }
  if (o.upper_certificate) {
    const auto& u = *o.upper_certificate;
    j["unsat_certificate"] = {{"n", u.n},
                              {"fingerprint", u.fingerprint},
                              {"optional_clauses", u.opts.optional},
                              {"symmetry_clauses", u.opts.symmetry},
                              {"backend", u.backend},
                              {"stats", to_json(u.stats)}};
  }
  json probes = json::array();
  SolverStats total;
  for (const auto& p : o.probes) {
    probes.push_back({{"n", p.n}, {"verdict", to_string(p.verdict)}, {"seconds", p.seconds},
                      {"conflicts", p.conflicts}});
    total.conflicts += p.conflicts;
  }
  j["probes"] = probes;
  j["stats"] = {{"seconds", o.seconds}, {"probes", o.probes.size()}, {"conflicts", total.conflicts}};
  return j;
}

json dor_result_json(const LinearEquation& eq, const DorResult& r) {
  json j;
  j["equation"] = eq.to_string();
  j["coefficients"] = std::vector<std::int64_t>(eq.coeffs().begin(), eq.coeffs().end());
  j["status"] = to_string(r.kind);
  if (r.kind == DorResult::Kind::Exact) j["value"] = r.value;
  if (r.kind == DorResult::Kind::Interval) {
    j["lo"] = r.lo;
    j["hi"] = r.hi ? json(*r.hi) : json(nullptr);
  }
  j["S"] = r.S;
  json bounds = json::array();
  for (const auto& b : r.bounds) bounds.push_back(to_json(b));
  j["upper_bounds"] = bounds;
  json steps = json::array();
  for (const auto& s : r.derivation) steps.push_back({{"rule", s.rule}, {"detail", s.detail}});
  j["derivation"] = steps;
  json comps = json::array();
  for (const auto& [k, o] : r.computations) comps.push_back(search_result_json(eq, k, o));
  j["computations"] = comps;
  return j;
}

json instantiation_json(const ParametricFamily& fam, const InstantiationReport& r) {
  json j;
  json vals = json::object();
  for (std::size_t i = 0; i < r.values.size() && i < fam.params.size(); ++i) vals[fam.params[i]] = r.values[i];
  j["values"] = vals;
  j["ok"] = r.ok;
  j["bound"] = r.bound;
  j["failures"] = r.failures;
  if (!r.atom_values.empty()) {
    auto [lo, hi] = std::minmax_element(r.atom_values.begin(), r.atom_values.end());
    j["atom_range"] = {*lo, *hi};
  }
  return j;
}

json RunManifest::to_json() const {
  json arts = json::array();
  for (const auto& a : artifacts) arts.push_back({{"role", a.role}, {"path", a.path}, {"sha256", a.sha256}});
  return {{"command", command},   {"parameters", parameters}, {"backend", backend},
          {"artifacts", arts},    {"started", started},       {"finished", finished},
          {"outcome", outcome},   {"outcome_digest", outcome_digest}};
}

std::string utc_timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace rado
