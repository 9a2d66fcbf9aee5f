#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rado/cnf.hpp"
#include "rado/polynomial.hpp"

namespace rado {

/// A family of equations sum c_i(params) x_i = 0 with a claimed upper
/// bound f(params) on R_k over a domain given by linear constraints g >= 0.
struct ParametricFamily {
  std::string name;
  std::vector<std::string> params;        // one or two names
  std::vector<Polynomial> coefficients;   // template c_i
  std::vector<Polynomial> constraints;    // each g(params) >= 0
  std::vector<std::string> side_conditions;  // recorded, not enforced
  Polynomial bound;                       // f
  int k = 3;
  std::vector<Polynomial> S0, G0;
  int max_iterations = 3;

  /// For A(x - y) = Bz templates: (A, B). Throws otherwise.
  std::pair<Polynomial, Polynomial> difference_template() const;
  /// Smallest parameter value allowed by the linear constraints
  /// (univariate families only).
  std::int64_t lower_limit() const;
  bool in_domain(std::span<const std::int64_t> values) const;
  std::string format(const Polynomial& p) const { return p.to_string(params); }
};

/// Reads the JSON family description (see data/families/).
ParametricFamily family_from_json(const std::string& text);
std::string family_to_json(const ParametricFamily& fam);

enum class BoundStatus { Verified, Unverified };

/// Decides 1 <= p <= f on the family domain.
///
/// One parameter: exact over the integers (root bound plus a finite scan).
/// Two parameters: searches a certificate writing p - 1 and f - p as
/// nonnegative combinations of products of the constraint polynomials;
/// sound, incomplete. Results are cached per polynomial.
class BoundChecker {
public:
  explicit BoundChecker(const ParametricFamily& fam);

  BoundStatus check(const Polynomial& p);
  bool verified(const Polynomial& p) { return check(p) == BoundStatus::Verified; }
  /// g >= 0 on the domain, by the same method.
  bool nonnegative(const Polynomial& g);

  std::size_t cache_size() const { return cache_.size(); }

private:
  bool nonnegative_univariate(const Polynomial& g) const;
  bool nonnegative_bivariate(const Polynomial& g) const;
  bool sampled_negative(const Polynomial& g) const;

  const ParametricFamily& fam_;
  bool univariate_;
  std::int64_t lo_ = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> samples_;
  std::unordered_map<Polynomial, bool, PolynomialHash> cache_;
};

BoundStatus bounded_integer_polynomial(const Polynomial& p, const ParametricFamily& fam);

struct SymbolicSolutions {
  std::vector<Polynomial> S;
  /// Tuples (x, y, z) as indices into S.
  std::vector<std::vector<std::size_t>> C;
};

/// The gap-growing search for A(x - y) = Bz templates: differences
/// divisible by B feed the gap set G, S grows by p +- Bq for gaps q, and
/// every pair (p, q) gives the candidate solution (p, p - Bq, Aq). Each
/// loop runs over a snapshot of the sets taken when it starts.
SymbolicSolutions find_polynomials(const ParametricFamily& fam, const std::vector<Polynomial>& S0,
                                   const std::vector<Polynomial>& G0, int max_iterations);

struct ParametricFormula {
  int k = 0;
  std::vector<Polynomial> atoms;
  std::vector<std::vector<std::size_t>> tuples;
  CnfFormula cnf;
  std::size_t positive_count = 0, negative_count = 0, optional_count = 0;
  /// Atom j, color i (1-based) -> j * k + i.
  int var(std::size_t atom, int color) const { return static_cast<int>(atom) * k + color; }
};

/// Pos_{k,S} and Neg_{k,C} and Opt_{k,S}, in that order. Throws
/// std::invalid_argument for tuples off S or failing the template identity.
ParametricFormula build_parametric_formula(const ParametricFamily& fam, int k,
                                           const std::vector<Polynomial>& S,
                                           const std::vector<std::vector<Polynomial>>& C);
ParametricFormula build_parametric_formula(const ParametricFamily& fam, int k,
                                           const SymbolicSolutions& sol);

struct InstantiationReport {
  bool ok = false;
  std::vector<std::int64_t> values;
  std::int64_t bound = 0;  // f(values): R_k <= bound when the formula is unsatisfiable
  std::vector<std::int64_t> atom_values;
  std::vector<std::string> failures;
};

/// Evaluates every atom at the given parameters, checks 1 <= atom <= f and
/// that every tuple becomes a solution of the instantiated equation.
InstantiationReport instantiate_and_check(const ParametricFormula& pf, const ParametricFamily& fam,
                                          std::span<const std::int64_t> values);

/// The ground image of the parametric formula in the variables of
/// F_n^k with n = f(values): atom j becomes integer atom_values[j].
/// Requires a passing report.
CnfFormula ground_formula(const ParametricFormula& pf, const InstantiationReport& report);

/// The ground negative clauses only, literals sorted and deduplicated.
std::vector<std::vector<int>> ground_negative_clauses(const ParametricFormula& pf,
                                                      const InstantiationReport& report);

}  // namespace rado
