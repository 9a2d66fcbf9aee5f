#include "rado/search.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>

namespace rado {

std::string to_string(InfinityJustification::Rule r) {
  switch (r) {
    case InfinityJustification::Rule::LogColoringI: return "log-coloring-i";
    case InfinityJustification::Rule::LogColoringII: return "log-coloring-ii";
    case InfinityJustification::Rule::ValuationsModK: return "valuations-mod-k";
    case InfinityJustification::Rule::NotTwoRegular: return "not-2-regular";
  }
  return "?";
}

std::optional<InfinityJustification::Rule> rule_from_string(const std::string& s) {
  using R = InfinityJustification::Rule;
  for (R r : {R::LogColoringI, R::LogColoringII, R::ValuationsModK, R::NotTwoRegular})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

std::string to_string(SearchOutcome::Kind k) {
  switch (k) {
    case SearchOutcome::Kind::Finite: return "finite";
    case SearchOutcome::Kind::Infinite: return "infinite";
    case SearchOutcome::Kind::Unknown: return "unknown";
  }
  return "?";
}

namespace {

bool mixed_signs(const LinearEquation& eq) {
  bool pos = false, neg = false;
  for (auto c : eq.coeffs()) (c > 0 ? pos : neg) = true;
  return pos && neg;
}

bool valuations_distinct_mod(const LinearEquation& eq, std::int64_t p, int k) {
  std::set<int> seen;
  for (auto c : eq.coeffs())
    if (!seen.insert(padic_valuation(c, p) % k).second) return false;
  return true;
}

std::string join_valuations(const LinearEquation& eq, std::int64_t p) {
  std::string s;
  for (auto c : eq.coeffs()) {
    if (!s.empty()) s += ",";
    s += std::to_string(padic_valuation(c, p));
  }
  return s;
}

}  // namespace

std::optional<InfinityJustification> detect_infinity(const LinearEquation& eq, int k,
                                                     std::int64_t prime_bound) {
  using R = InfinityJustification::Rule;
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (!mixed_signs(eq))
    return InfinityJustification{R::NotTwoRegular, k, 0, "all coefficients share a sign"};
  if (k < 2) return std::nullopt;
  if (auto form = one_sided_form(eq)) {
    std::string s = "S=" + std::to_string(form->sum()) + " a_1=" + std::to_string(form->lhs.front()) +
                    " a_m=" + std::to_string(form->rhs);
    if (log_hypothesis_holds(*form, k, LogVariant::I))
      return InfinityJustification{R::LogColoringI, k, 0, s + ": S*a_m^(k-2) <= a_1^(k-1)"};
    if (log_hypothesis_holds(*form, k, LogVariant::II))
      return InfinityJustification{R::LogColoringII, k, 0, s + ": S^(k-1) <= a_1*a_m^(k-2)"};
  }
  for (auto p : primes_up_to(prime_bound))
    if (valuations_distinct_mod(eq, p, k))
      return InfinityJustification{R::ValuationsModK, k, p,
                                   "v_" + std::to_string(p) + " = " + join_valuations(eq, p)};
  return std::nullopt;
}

bool justification_holds(const LinearEquation& eq, const InfinityJustification& j) {
  using R = InfinityJustification::Rule;
  if (j.k < 1) return false;
  switch (j.rule) {
    case R::NotTwoRegular: return !mixed_signs(eq);
    case R::LogColoringI:
    case R::LogColoringII: {
      auto form = one_sided_form(eq);
      if (!form || j.k < 2) return false;
      return log_hypothesis_holds(*form, j.k, j.rule == R::LogColoringI ? LogVariant::I : LogVariant::II);
    }
    case R::ValuationsModK:
      return is_prime(j.prime) && valuations_distinct_mod(eq, j.prime, j.k);
  }
  return false;
}

Coloring justification_coloring(const LinearEquation& eq, const InfinityJustification& j,
                                std::int64_t n) {
  using R = InfinityJustification::Rule;
  if (!justification_holds(eq, j)) throw std::invalid_argument("justification does not hold");
  switch (j.rule) {
    case R::NotTwoRegular: return Coloring(j.k, std::vector<int>(static_cast<std::size_t>(n), 1));
    case R::LogColoringI: return logd_coloring(eq, j.k, LogVariant::I, n);
    case R::LogColoringII: return logd_coloring(eq, j.k, LogVariant::II, n);
    case R::ValuationsModK: return vp_modk_coloring(j.prime, j.k, n);
  }
  throw std::logic_error("unreachable");
}

namespace {

using Clock = std::chrono::steady_clock;

class Prober {
public:
  Prober(const LinearEquation& eq, int k, const SearchConfig& cfg, SearchOutcome& out)
      : eq_(eq), k_(k), cfg_(cfg), out_(out), start_(Clock::now()) {
    opts_.optional = cfg.optional;
    opts_.symmetry = cfg.symmetry && k >= 3;
  }

  const EncodeOptions& opts() const { return opts_; }

  double remaining() const {
    return cfg_.budget_seconds - std::chrono::duration<double>(Clock::now() - start_).count();
  }
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  RadoFormula build(std::int64_t n) const { return build_formula(eq_, n, k_, opts_); }

  SolverVerdict run(const RadoFormula& f) {
    SolverVerdict v;
    double left = remaining();
    if (left > 0) {
      BackendConfig b = cfg_.backend;
      b.budget_seconds = std::min(b.budget_seconds, left);
      v = solve(f.cnf, b);
    }
    out_.probes.push_back(Probe{f.n, v.status, v.stats.seconds, v.stats.conflicts});
    return v;
  }

private:
  const LinearEquation& eq_;
  int k_;
  const SearchConfig& cfg_;
  SearchOutcome& out_;
  EncodeOptions opts_;
  Clock::time_point start_;
};

}  // namespace

SearchOutcome rado_number(const LinearEquation& eq, int k, const SearchConfig& cfg) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (cfg.growth < 2) throw std::invalid_argument("growth must be at least 2");
  SearchOutcome out;
  Prober prober(eq, k, cfg, out);

  if (auto j = detect_infinity(eq, k)) {
    out.kind = SearchOutcome::Kind::Infinite;
    out.justification = std::move(j);
    out.seconds = prober.elapsed();
    return out;
  }

  std::int64_t lo = 0;
  Coloring lo_coloring(k, {});
  std::optional<RadoFormula> base;  // smallest unsatisfiable formula so far
  UpperCertificate upper;

  auto record_sat = [&](const RadoFormula& f, const SolverVerdict& v) {
    lo = f.n;
    lo_coloring = decode_model(*v.model, f.n, k);
  };
  auto record_unsat = [&](RadoFormula f, const SolverVerdict& v) {
    upper.n = f.n;
    upper.opts = f.opts;
    upper.fingerprint = canonical_fingerprint(f.cnf);
    upper.backend = v.backend;
    upper.stats = v.stats;
    base = std::move(f);
  };
  auto give_up = [&]() {
    out.kind = SearchOutcome::Kind::Unknown;
    out.bracket_lo = lo;
    out.lower_certificate = lo_coloring;
    if (base) {
      out.bracket_hi = base->n;
      out.upper_certificate = upper;
    }
    out.seconds = prober.elapsed();
    return out;
  };

  // Bracket.
  if (cfg.lower0 >= 1) {
    RadoFormula f = prober.build(cfg.lower0);
    SolverVerdict v = prober.run(f);
    if (v.status == Verdict::Unknown) return give_up();
    if (v.status == Verdict::Sat)
      record_sat(f, v);
    else
      record_unsat(std::move(f), v);
  }
  std::int64_t n = std::max(cfg.upper0, lo + 1);
  while (!base) {
    if (n > cfg.max_n) return give_up();
    RadoFormula f = prober.build(n);
    SolverVerdict v = prober.run(f);
    if (v.status == Verdict::Unknown) return give_up();
    if (v.status == Verdict::Sat) {
      record_sat(f, v);
      n *= cfg.growth;
    } else {
      record_unsat(std::move(f), v);
    }
  }

  // Binary search on truncations; clause generation happened once above.
  while (base->n - lo > 1) {
    std::int64_t mid = lo + (base->n - lo) / 2;
    RadoFormula f = truncate(*base, mid);
    SolverVerdict v = prober.run(f);
    if (v.status == Verdict::Unknown) return give_up();
    if (v.status == Verdict::Sat)
      record_sat(f, v);
    else
      record_unsat(std::move(f), v);
  }

  out.kind = SearchOutcome::Kind::Finite;
  out.value = base->n;
  out.bracket_lo = lo;
  out.bracket_hi = base->n;
  out.lower_certificate = lo_coloring;
  out.upper_certificate = upper;
  out.seconds = prober.elapsed();
  return out;
}

bool certificates_sound(const LinearEquation& eq, int k, const SearchOutcome& o) {
  if (o.kind != SearchOutcome::Kind::Finite) return false;
  if (!o.lower_certificate || !o.upper_certificate) return false;
  const Coloring& c = *o.lower_certificate;
  if (c.size() != o.value - 1 || c.colors() != k) return false;
  for (int x : c.assignment())
    if (x < 1 || x > k) return false;
  if (!is_valid(verify_coloring(eq, c))) return false;
  const UpperCertificate& u = *o.upper_certificate;
  if (u.n != o.value) return false;
  return canonical_fingerprint(build_formula(eq, u.n, k, u.opts).cnf) == u.fingerprint;
}

TableValue TableValue::parse(const std::string& s) {
  TableValue v;
  if (s == "inf" || s == "∞") {
    v.kind = Kind::Infinite;
    return v;
  }
  std::string digits = s;
  if (!s.empty() && s[0] == '>') {
    v.kind = Kind::LowerBound;
    digits = s.substr(1);
  }
  std::size_t used = 0;
  v.value = std::stoll(digits, &used);
  if (used != digits.size() || v.value < 1) throw std::invalid_argument("bad table value: " + s);
  return v;
}

std::string TableValue::to_string() const {
  switch (kind) {
    case Kind::Infinite: return "inf";
    case Kind::LowerBound: return ">" + std::to_string(value);
    case Kind::Finite: break;
  }
  return std::to_string(value);
}

LinearEquation family_equation(const std::string& family, std::int64_t a, std::int64_t b,
                               std::int64_t c) {
  if (family == "diff") return make_diff(a, b);
  if (family == "sum") return make_sum(a, b);
  if (family == "abc") return make_abc(a, b, c);
  throw std::invalid_argument("unknown family: " + family);
}

TableCheckReport check_table_entry(const std::string& family, std::int64_t a, std::int64_t b,
                                   std::int64_t c, int k, const TableValue& expected,
                                   const SearchConfig& cfg) {
  TableCheckReport r;
  LinearEquation eq = family_equation(family, a, b, c);
  if (expected.kind == TableValue::Kind::LowerBound) {
    r.skipped = true;
    r.pass = true;
    r.message = "lower bound only";
    return r;
  }
  r.outcome = rado_number(eq, k, cfg);
  const SearchOutcome& o = r.outcome;
  if (expected.kind == TableValue::Kind::Infinite) {
    r.pass = o.kind == SearchOutcome::Kind::Infinite;
    r.message = r.pass ? "inf via " + to_string(o.justification->rule)
                       : "expected inf, got " + to_string(o.kind) +
                             (o.kind == SearchOutcome::Kind::Finite ? " " + std::to_string(o.value) : "");
    return r;
  }
  if (o.kind == SearchOutcome::Kind::Finite) {
    r.pass = o.value == expected.value;
    r.message = "computed " + std::to_string(o.value) + ", expected " + std::to_string(expected.value);
  } else if (o.kind == SearchOutcome::Kind::Infinite) {
    r.message = "expected " + std::to_string(expected.value) + ", got inf via " +
                to_string(o.justification->rule);
  } else {
    r.message = "budget exhausted in bracket [" + std::to_string(o.bracket_lo) + ", " +
                (o.bracket_hi ? std::to_string(*o.bracket_hi) : std::string("?")) + "]";
  }
  return r;
}

}  // namespace rado
