#include "rado/dor.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "rado/coloring.hpp"

namespace rado {

using boost::multiprecision::cpp_int;

std::string to_string(BoundRule r) {
  switch (r) {
    case BoundRule::LogColoringI: return "log-coloring-i";
    case BoundRule::LogColoringII: return "log-coloring-ii";
    case BoundRule::DistinctValuations: return "distinct-valuations";
    case BoundRule::ValuationsModK: return "valuations-mod-k";
    case BoundRule::UniquePrimeProduct: return "unique-prime-product";
    case BoundRule::TwoPrimesProduct: return "two-primes-product";
    case BoundRule::SumFamily: return "sum-family";
  }
  return "?";
}

std::string to_string(DorResult::Kind k) {
  switch (k) {
    case DorResult::Kind::Infinite: return "infinite";
    case DorResult::Kind::Exact: return "exact";
    case DorResult::Kind::Interval: return "interval";
  }
  return "?";
}

namespace {

std::vector<int> valuations(const LinearEquation& eq, std::int64_t p) {
  std::vector<int> v;
  for (auto c : eq.coeffs()) v.push_back(padic_valuation(c, p));
  return v;
}

bool distinct_mod(const std::vector<int>& v, int k) {
  std::set<int> s;
  for (int x : v)
    if (!s.insert(k ? x % k : x).second) return false;
  return true;
}

std::string list(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

bool is_power_of_two_ratio(std::int64_t a, std::int64_t b) {
  // a/b == 2^j for some integer j
  while (a % 2 == 0 && b % 2 == 0) a /= 2, b /= 2;
  while (a % 2 == 0) a /= 2;
  while (b % 2 == 0) b /= 2;
  return a == b;
}

// a(x+y) = bz up to sides and order: two equal coefficients of one sign
// and one of the other.
std::optional<std::pair<std::int64_t, std::int64_t>> sum_family(const LinearEquation& eq) {
  if (eq.arity() != 3) return std::nullopt;
  auto form = one_sided_form(eq);
  if (!form || form->lhs.size() != 2 || form->lhs[0] != form->lhs[1]) return std::nullopt;
  return std::make_pair(form->lhs[0], form->rhs);
}

}  // namespace

std::vector<UpperBound> dor_upper_bounds(const LinearEquation& eq, int k_cap,
                                         std::int64_t prime_bound) {
  std::vector<UpperBound> out;
  if (auto form = one_sided_form(eq)) {
    for (LogVariant v : {LogVariant::I, LogVariant::II}) {
      for (int k = 2; k <= k_cap; ++k) {
        if (!log_hypothesis_holds(*form, k, v)) continue;
        bool one = v == LogVariant::I;
        out.push_back({k - 1, one ? BoundRule::LogColoringI : BoundRule::LogColoringII, 0, k,
                       "S=" + std::to_string(form->sum()) + " a_1=" + std::to_string(form->lhs.front()) +
                           " a_m=" + std::to_string(form->rhs) + " k=" + std::to_string(k)});
        break;
      }
    }
  }
  for (auto p : primes_up_to(prime_bound)) {
    auto v = valuations(eq, p);
    if (std::all_of(v.begin(), v.end(), [](int x) { return x == 0; })) continue;
    if (eq.arity() == 3 && distinct_mod(v, 0))
      out.push_back({3, BoundRule::DistinctValuations, p, 4,
                     "v_" + std::to_string(p) + " = " + list(v)});
    for (int k = 2; k <= k_cap; ++k) {
      if (!distinct_mod(v, k)) continue;
      out.push_back({k - 1, BoundRule::ValuationsModK, p, k,
                     "v_" + std::to_string(p) + " = " + list(v) + " distinct mod " + std::to_string(k)});
      break;
    }
  }
  if (eq.arity() == 3 && !is_regular(eq)) {
    for (ProductCase pc : {ProductCase::UniquePrime, ProductCase::TwoPrimes}) {
      auto h = find_product_hypothesis(eq, pc, prime_bound);
      if (!h) continue;
      int bound = h->even_order() ? 3 : 5;
      out.push_back({bound,
                     pc == ProductCase::UniquePrime ? BoundRule::UniquePrimeProduct
                                                    : BoundRule::TwoPrimesProduct,
                     h->p, bound + 1,
                     "p=" + std::to_string(h->p) + " modulus=" + std::to_string(h->modulus) +
                         " g=" + std::to_string(h->multiplier) + " ord=" + std::to_string(h->order)});
    }
  }
  if (auto ab = sum_family(eq); ab && !is_power_of_two_ratio(ab->first, ab->second))
    out.push_back({3, BoundRule::SumFamily, 0, 4,
                   "a=" + std::to_string(ab->first) + " b=" + std::to_string(ab->second) +
                       ", a/b not a power of 2"});
  std::stable_sort(out.begin(), out.end(),
                   [](const UpperBound& x, const UpperBound& y) { return x.bound < y.bound; });
  return out;
}

DorResult compute_dor(const LinearEquation& eq, const DorConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  if (eq.arity() < 3) throw std::invalid_argument("degree of regularity needs at least 3 variables");
  auto start = Clock::now();
  DorResult r;
  if (auto form = one_sided_form(eq))
    r.S = form->sum();
  else
    for (auto c : eq.coeffs())
      if (c > 0) r.S += c;

  if (is_regular(eq)) {
    r.kind = DorResult::Kind::Infinite;
    r.derivation.push_back({"regular", "a nonempty subset of coefficients sums to zero"});
    return r;
  }
  if (!is_two_regular(eq)) {
    r.kind = DorResult::Kind::Exact;
    r.derivation.push_back({"no-solutions", "all coefficients share a sign"});
    return r;
  }
  r.lo = 2;
  r.derivation.push_back({"2-regular", "coefficients of both signs"});

  r.bounds = dor_upper_bounds(eq, cfg.k_cap);
  if (!r.bounds.empty()) {
    const UpperBound& best = r.bounds.front();
    r.hi = best.bound;
    r.derivation.push_back({"upper-bound " + to_string(best.rule),
                            "dor <= " + std::to_string(best.bound) + ": " + best.detail});
  }

  int top = r.hi ? *r.hi : cfg.max_colors;
  for (int k = r.lo + 1; k <= top; ++k) {
    double left = cfg.budget_seconds - std::chrono::duration<double>(Clock::now() - start).count();
    if (left <= 0) break;
    SearchConfig sc = cfg.search;
    sc.budget_seconds = std::min(sc.budget_seconds, left);
    SearchOutcome o = rado_number(eq, k, sc);
    r.computations.emplace_back(k, o);
    if (o.kind == SearchOutcome::Kind::Finite) {
      r.lo = k;
      r.derivation.push_back({"finite R_" + std::to_string(k), "R_" + std::to_string(k) + " = " +
                                                                   std::to_string(o.value)});
      continue;
    }
    if (o.kind == SearchOutcome::Kind::Infinite) {
      // The bound scan above covers every detect_infinity rule, so this only
      // happens past k_cap.
      r.hi = k - 1;
      r.derivation.push_back({"infinite R_" + std::to_string(k), to_string(o.justification->rule)});
    } else {
      r.derivation.push_back({"unknown R_" + std::to_string(k), "budget exhausted"});
    }
    break;
  }

  if (r.hi && r.lo >= *r.hi) {
    r.kind = DorResult::Kind::Exact;
    r.value = r.lo;
  } else {
    r.kind = DorResult::Kind::Interval;
  }
  return r;
}

LinearEquation non_regular_sum_equation(int m, int k) {
  if (m < 3 || k < 3) throw std::invalid_argument("need m >= 3 and k >= 3");
  cpp_int target = boost::multiprecision::pow(cpp_int(m - 1), k - 1);
  // smallest c with c^(k-2) >= target; c <= (m-1)^2 since k-1 <= 2(k-2)
  std::int64_t lo = 1, hi = static_cast<std::int64_t>(m - 1) * (m - 1);
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo) / 2;
    if (boost::multiprecision::pow(cpp_int(mid), k - 2) >= target)
      hi = mid;
    else
      lo = mid + 1;
  }
  std::vector<std::int64_t> coeffs(static_cast<std::size_t>(m - 1), 1);
  coeffs.push_back(-lo);
  std::string display;
  for (int i = 1; i < m; ++i) display += (i > 1 ? "+" : "") + std::string("x") + std::to_string(i);
  display += "=" + std::to_string(lo) + "x" + std::to_string(m);
  LinearEquation eq(coeffs, display);
  auto form = one_sided_form(eq);
  if (!form || !log_hypothesis_holds(*form, k, LogVariant::II))
    throw std::logic_error("constructed equation misses the log-coloring hypothesis");
  return eq;
}

}  // namespace rado
