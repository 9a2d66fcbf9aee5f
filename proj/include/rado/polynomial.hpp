#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rado {

/// Integer polynomial in at most two parameters (a, b), stored densely as
/// coefficients of a^i b^j with i, j <= kMaxDegree. Equal polynomials have
/// identical storage, so == and hashing are structural.
///
/// Arithmetic is overflow-checked and throws std::overflow_error; results
/// exceeding the degree cap throw std::domain_error.
class Polynomial {
public:
  static constexpr int kMaxDegree = 6;
  static constexpr int kStride = kMaxDegree + 1;

  Polynomial() { c_.fill(0); }
  static Polynomial constant(std::int64_t c);
  /// The parameter with index 0 (a) or 1 (b).
  static Polynomial param(int index);
  static Polynomial monomial(std::int64_t c, int i, int j);

  std::int64_t coeff(int i, int j) const { return c_[static_cast<std::size_t>(i * kStride + j)]; }
  bool is_zero() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(int param) const;
  /// True when b does not occur.
  bool univariate() const { return degree_in(1) <= 0; }

  /// Lex leading term (highest power of a, then of b). Zero has none.
  std::pair<int, int> leading_monomial() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  /// Exact quotient in Z[a,b] if d divides *this, else false.
  bool divide_exact(const Polynomial& d, Polynomial& quotient) const;

  /// Exact evaluation; throws std::overflow_error past 64 bits.
  std::int64_t evaluate(std::int64_t a, std::int64_t b = 0) const;

  /// "a^3+a^2-2*a+1" style using the given parameter names.
  std::string to_string(std::span<const std::string> names) const;
  std::string to_string() const;

  std::size_t hash() const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
  std::int64_t& at(int i, int j) { return c_[static_cast<std::size_t>(i * kStride + j)]; }
  std::array<std::int64_t, kStride * kStride> c_;
};

/// Parses sums of products of integers, parameter names, parenthesized
/// subexpressions and nonnegative integer powers. Juxtaposition multiplies
/// ("2a", "a(b+1)"). Throws std::invalid_argument on syntax errors or
/// unknown names.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names);

struct PolynomialHash {
  std::size_t operator()(const Polynomial& p) const { return p.hash(); }
};

}  // namespace rado
