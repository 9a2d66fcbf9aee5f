#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rado/equation.hpp"
#include "rado/search.hpp"

namespace rado {

enum class BoundRule {
  LogColoringI,        // S * a_m^(k-2) <= a_1^(k-1)
  LogColoringII,       // S^(k-1) <= a_1 * a_m^(k-2)
  DistinctValuations,  // some v_p pairwise distinct, 3 variables
  ValuationsModK,      // some v_p pairwise distinct mod k
  UniquePrimeProduct,  // 0 = v_p(a) = v_p(b) = v_p(a+b) < v_p(c)
  TwoPrimesProduct,    // 0 = v_p(a) < v_p(b) = v_p(c) = v_p(b+c)
  SumFamily,           // a(x+y) = bz with a/b not a power of two
};

std::string to_string(BoundRule r);

/// dor(E) <= bound.
struct UpperBound {
  int bound = 0;
  BoundRule rule = BoundRule::LogColoringI;
  std::int64_t prime = 0;
  int k = 0;  // the color count the rule refutes (bound + 1) where relevant
  std::string detail;
};

/// Every applicable rule. Log colorings are scanned for k = 2..k_cap and
/// valuation rules over primes p <= prime_bound. For each rule (and prime)
/// only the smallest bound is listed.
std::vector<UpperBound> dor_upper_bounds(const LinearEquation& eq, int k_cap = 12,
                                         std::int64_t prime_bound = 100);

struct DorStep {
  std::string rule;
  std::string detail;
};

struct DorConfig {
  double budget_seconds = 3600.0;
  int k_cap = 12;
  /// Without any upper-bound rule, R_k is attempted up to this many colors.
  int max_colors = 3;
  SearchConfig search;
};

struct DorResult {
  enum class Kind { Infinite, Exact, Interval };
  Kind kind = Kind::Interval;
  int value = 0;              // Exact
  int lo = 0;                 // largest k with a finite R_k found
  std::optional<int> hi;      // best upper bound, none when no rule applies
  std::int64_t S = 0;         // positive-side coefficient sum
  std::vector<UpperBound> bounds;
  std::vector<DorStep> derivation;
  /// (k, R_k outcome) for every Rado number computed.
  std::vector<std::pair<int, SearchOutcome>> computations;
};

std::string to_string(DorResult::Kind k);

/// Regular -> infinite. Otherwise 2-regularity gives the starting lower
/// bound, rules give the upper bound, and finite R_k computations for
/// ascending k close the gap. Budget exhaustion yields an interval.
DorResult compute_dor(const LinearEquation& eq, const DorConfig& cfg = {});

/// x_1 + ... + x_{m-1} = c x_m with c the least integer satisfying
/// c^(k-2) >= (m-1)^(k-1), which is not k-regular.
LinearEquation non_regular_sum_equation(int m, int k);

}  // namespace rado
