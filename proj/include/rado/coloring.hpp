#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "rado/equation.hpp"

namespace rado {

/// Total map [1..n] -> [1..k].
class Coloring {
public:
  Coloring() = default;
  Coloring(int k, std::vector<int> colors);

  std::int64_t size() const { return static_cast<std::int64_t>(colors_.size()); }
  int colors() const { return k_; }
  /// Color of integer j, 1-based on both sides.
  int operator()(std::int64_t j) const { return colors_[static_cast<std::size_t>(j - 1)]; }
  const std::vector<int>& assignment() const { return colors_; }

  /// Number of distinct colors that actually occur.
  int used_colors() const;

  friend bool operator==(const Coloring&, const Coloring&) = default;

private:
  int k_ = 0;
  std::vector<int> colors_;
};

struct Witness {
  SolutionTuple tuple;
  int color = 0;
};

struct Valid {};

using VerifyResult = std::variant<Valid, Witness>;

inline bool is_valid(const VerifyResult& r) { return std::holds_alternative<Valid>(r); }

/// First monochromatic solution in enumeration order, or Valid.
VerifyResult verify_coloring(const LinearEquation& eq, const Coloring& coloring);

/// color(i) = v_a(i) mod k (+1). Requires n <= a^k - 1.
Coloring va_coloring(std::int64_t a, int k, std::int64_t n);

/// Three-coloring of [1 .. a^3 + (a-1)^2 - 1] avoiding a(x-y) = (a-1)z.
Coloring chi_aminus1_coloring(std::int64_t a);
/// The raw three-case class (0, 1 or 2) of i.
int chi_aminus1_class(std::int64_t a, std::int64_t i);

enum class LogVariant { I, II };

/// a_1 x_1 + ... + a_{m-1} x_{m-1} = a_m x_m with all a_i > 0 and
/// a_1 <= ... <= a_{m-1}.
struct OneSidedForm {
  std::vector<std::int64_t> lhs;  // sorted ascending
  std::int64_t rhs = 0;
  std::int64_t sum() const;
};

/// Normalizes an equation with exactly one coefficient of minority sign.
std::optional<OneSidedForm> one_sided_form(const LinearEquation& eq);

/// Log-coloring hypotheses in exact integer arithmetic.
///   I:  S * a_m^{k-2} <= a_1^{k-1}
///   II: S^{k-1} <= a_1 * a_m^{k-2}
bool log_hypothesis_holds(const OneSidedForm& form, int k, LogVariant variant);

/// Restriction to [1..n] of chi(n) = ceil(log_d n) mod k with
/// d = (S/a_m)^{1/(k-1)} (I) or d = (a_1/a_m)^{1/(k-1)} (II). Exact
/// integer comparisons only. Throws std::invalid_argument naming the failed
/// inequality when the hypothesis does not hold.
Coloring logd_coloring(const LinearEquation& eq, int k, LogVariant variant,
                       std::int64_t n);

/// color(i) = v_p(i) mod k (+1).
Coloring vp_modk_coloring(std::int64_t p, int k, std::int64_t n);

/// Functional graph of y -> g*y on residues 1..modulus-1 with a proper
/// coloring that is minimal per cycle (2 colors for even cycles, 3 for odd).
struct CycleGraph {
  std::int64_t modulus = 0;
  std::int64_t multiplier = 0;
  std::vector<int> vertex_colors;  // index r-1 for residue r, colors 1..3

  static CycleGraph build(std::int64_t modulus, std::int64_t multiplier);
  int color(std::int64_t residue) const { return vertex_colors[static_cast<std::size_t>(residue - 1)]; }
  int palette() const;
  bool is_proper() const;
};

/// Multiplicative order of g modulo m (g a unit).
std::int64_t multiplicative_order(std::int64_t g, std::int64_t m);
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

enum class ProductCase { UniquePrime, TwoPrimes };

/// Parameters of an applicable product coloring for ax + by + cz = 0.
/// `pair` are the two coefficients whose quotient defines g; `single` is
/// the remaining one.
struct ProductHypothesis {
  ProductCase which = ProductCase::UniquePrime;
  std::int64_t p = 0;
  int r = 0;
  std::int64_t modulus = 0;     // p^r
  std::int64_t multiplier = 0;  // g
  std::int64_t order = 0;       // ord(g) in (Z/p^r)^*
  std::int64_t pair_first = 0, pair_second = 0, single = 0;
  bool even_order() const { return order % 2 == 0; }
  /// 4 when the order is even, otherwise 6.
  int colors() const { return even_order() ? 4 : 6; }
};

/// Searches primes p <= prime_bound over all role assignments.
/// Prefers an even-order instance when one exists.
std::optional<ProductHypothesis> find_product_hypothesis(
    const LinearEquation& eq, ProductCase which, std::int64_t prime_bound = 100);

/// Product coloring C = (C_1, C_2) of [1..n] for the given hypothesis.
Coloring product_coloring(const ProductHypothesis& h, std::int64_t n);

/// Thrown when no prime satisfies the hypothesis.
struct NotApplicable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Convenience: hypothesis search followed by the coloring. Throws
/// NotApplicable when no prime fits the hypothesis or the equation is regular.
Coloring product_coloring_unique_prime(const LinearEquation& eq,
                                       ProductCase which, std::int64_t n);

/// {"n": int, "k": int, "colors": [...]}
std::string coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const std::string& text);

}  // namespace rado
