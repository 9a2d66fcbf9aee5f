#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rado {

/// Homogeneous linear equation  c_1 x_1 + ... + c_m x_m = 0  with nonzero
/// integer coefficients and m >= 2.
///
/// The coefficients are kept exactly as given. Non-coprime instances are not
/// reduced because their Rado numbers differ from the reduced equation; the
/// gcd is exposed so callers can flag them.
class LinearEquation {
public:
  explicit LinearEquation(std::vector<std::int64_t> coeffs,
                          std::string display = {});

  std::span<const std::int64_t> coeffs() const { return coeffs_; }
  std::size_t arity() const { return coeffs_.size(); }
  std::int64_t coeff(std::size_t i) const { return coeffs_[i]; }
  std::int64_t gcd() const { return gcd_; }
  bool coprime() const { return gcd_ == 1; }

  /// Human-readable rendering. Uses the display form it was parsed from when
  /// available, otherwise a generic "c1*x1 + ... = 0" form.
  std::string to_string() const;

  /// Raw "c1,c2,...,cm" rendering; re-parseable.
  std::string coeff_list() const;

  /// Evaluates sum c_i v_i.
  std::int64_t evaluate(std::span<const std::int64_t> values) const;

  friend bool operator==(const LinearEquation& a, const LinearEquation& b) {
    return a.coeffs_ == b.coeffs_;
  }

private:
  std::vector<std::int64_t> coeffs_;
  std::string display_;
  std::int64_t gcd_ = 1;
};

/// Builds ax + by = cz as coefficients (a, b, -c).
LinearEquation make_abc(std::int64_t a, std::int64_t b, std::int64_t c);
/// a(x - y) = bz.
LinearEquation make_diff(std::int64_t a, std::int64_t b);
/// a(x + y) = bz.
LinearEquation make_sum(std::int64_t a, std::int64_t b);

/// Accepts "x+y=z", "3(x-y)=2z", "2x+3y=5z", "x1+x2+x3=9x4" style input or a
/// raw coefficient list "1,1,-4". Throws std::invalid_argument on syntax
/// errors, zero coefficients and fewer than two variables.
LinearEquation parse_equation(std::string_view text);

using SolutionTuple = std::vector<std::int64_t>;

/// Visitor receives each solution as a span of m positive values. Returning
/// false stops the enumeration.
using SolutionVisitor = std::function<bool(std::span<const std::int64_t>)>;

/// Enumerates all solutions with every coordinate in [1, n].
///
/// Order is colexicographic in the free variables x_1..x_{m-1}: x_{m-1}
/// varies slowest and x_1 fastest; x_m is solved in closed form. The
/// optional [outer_lo, outer_hi] range restricts the slowest free variable
/// so callers can split the stream across workers.
void enumerate_solutions(const LinearEquation& eq, std::int64_t n,
                         const SolutionVisitor& visit,
                         std::int64_t outer_lo = 1,
                         std::optional<std::int64_t> outer_hi = std::nullopt);

std::vector<SolutionTuple> collect_solutions(const LinearEquation& eq,
                                             std::int64_t n);

/// Number of solutions in [1, n]^m.
std::size_t count_solutions(const LinearEquation& eq, std::int64_t n);

/// Rado's criterion: some nonempty subset of coefficients sums to zero.
/// Throws std::domain_error for m > 30.
bool is_regular(const LinearEquation& eq);

/// Rado's 2-regularity criterion for m >= 3: mixed signs.
/// Throws std::domain_error for m < 3.
bool is_two_regular(const LinearEquation& eq);

/// Largest e with base^e | x. Works for any base >= 2 (prime or not).
/// Throws std::domain_error for x == 0.
int valuation(std::int64_t x, std::int64_t base);

/// p-adic valuation; p must be prime.
int padic_valuation(std::int64_t x, std::int64_t p);

bool is_prime(std::int64_t p);
std::vector<std::int64_t> primes_up_to(std::int64_t bound);

}  // namespace rado
