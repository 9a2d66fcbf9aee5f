#include "rado/equation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace rado {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return -floor_div(-a, b);
}

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Returns (g, s) with s*a == g (mod m), g = gcd(a, m).
std::pair<std::int64_t, std::int64_t> inverse_part(std::int64_t a,
                                                   std::int64_t m) {
  std::int64_t old_r = mod_pos(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  return {old_r, old_s};
}

class EquationParser {
public:
  explicit EquationParser(std::string_view text) : text_(text) {}

  LinearEquation parse() {
    parse_side(+1);
    expect('=');
    parse_side(-1);
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    std::vector<std::int64_t> coeffs;
    for (const auto& name : order_) {
      std::int64_t c = coeffs_.at(name);
      if (c == 0) fail("variable '" + name + "' has zero coefficient");
      coeffs.push_back(c);
    }
    if (coeffs.size() < 2) fail("need at least two variables");
    return LinearEquation(std::move(coeffs), std::string(text_));
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("cannot parse equation '" +
                                std::string(text_) + "': " + msg);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::optional<std::int64_t> number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (start == pos_) return std::nullopt;
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() &&
        std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void add(const std::string& name, std::int64_t c) {
    if (!coeffs_.count(name)) order_.push_back(name);
    coeffs_[name] += c;
  }

  // side := term { ('+'|'-') term }
  void parse_side(std::int64_t sign) {
    bool first = true;
    for (;;) {
      std::int64_t s = sign;
      if (peek('+')) {
        ++pos_;
      } else if (peek('-')) {
        ++pos_;
        s = -s;
      } else if (!first) {
        return;
      }
      parse_term(s);
      first = false;
    }
  }

  // term := [int] ['*'] ( identifier | '(' inner ')' )
  void parse_term(std::int64_t sign) {
    std::int64_t factor = number().value_or(1);
    if (peek('*')) ++pos_;
    if (peek('(')) {
      ++pos_;
      bool first = true;
      for (;;) {
        std::int64_t s = sign * factor;
        if (peek('+')) {
          ++pos_;
        } else if (peek('-')) {
          ++pos_;
          s = -s;
        } else if (!first) {
          break;
        }
        std::int64_t inner = number().value_or(1);
        if (peek('*')) ++pos_;
        std::string name = identifier();
        if (name.empty()) fail("expected variable inside parentheses");
        add(name, s * inner);
        first = false;
      }
      expect(')');
      return;
    }
    std::string name = identifier();
    if (name.empty()) fail("expected variable");
    add(name, sign * factor);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::map<std::string, std::int64_t> coeffs_;
  std::vector<std::string> order_;
};

bool looks_like_list(std::string_view text) {
  return !text.empty() &&
         std::all_of(text.begin(), text.end(), [](char c) {
           return std::isdigit(static_cast<unsigned char>(c)) || c == ',' ||
                  c == '-' || c == '+' || std::isspace(static_cast<unsigned char>(c));
         }) &&
         text.find(',') != std::string_view::npos;
}

}  // namespace

LinearEquation::LinearEquation(std::vector<std::int64_t> coeffs,
                               std::string display)
    : coeffs_(std::move(coeffs)), display_(std::move(display)) {
  if (coeffs_.size() < 2)
    throw std::invalid_argument("equation needs at least two variables");
  std::int64_t g = 0;
  for (auto c : coeffs_) {
    if (c == 0) throw std::invalid_argument("zero coefficient in equation");
    g = std::gcd(g, c < 0 ? -c : c);
  }
  gcd_ = g;
}

std::string LinearEquation::to_string() const {
  if (!display_.empty()) return display_;
  std::ostringstream out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    std::int64_t c = coeffs_[i];
    if (i > 0) out << (c < 0 ? " - " : " + ");
    else if (c < 0) out << "-";
    std::int64_t a = c < 0 ? -c : c;
    if (a != 1) out << a << "*";
    out << "x" << (i + 1);
  }
  out << " = 0";
  return out.str();
}

std::string LinearEquation::coeff_list() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out << ",";
    out << coeffs_[i];
  }
  return out.str();
}

std::int64_t LinearEquation::evaluate(
    std::span<const std::int64_t> values) const {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) s += coeffs_[i] * values[i];
  return s;
}

LinearEquation make_abc(std::int64_t a, std::int64_t b, std::int64_t c) {
  std::ostringstream d;
  d << a << "x+" << b << "y=" << c << "z";
  return LinearEquation({a, b, -c}, d.str());
}

LinearEquation make_diff(std::int64_t a, std::int64_t b) {
  std::ostringstream d;
  d << a << "(x-y)=" << b << "z";
  return LinearEquation({a, -a, -b}, d.str());
}

LinearEquation make_sum(std::int64_t a, std::int64_t b) {
  std::ostringstream d;
  d << a << "(x+y)=" << b << "z";
  return LinearEquation({a, a, -b}, d.str());
}

LinearEquation parse_equation(std::string_view text) {
  if (looks_like_list(text)) {
    std::vector<std::int64_t> coeffs;
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
      try {
        std::size_t used = 0;
        coeffs.push_back(std::stoll(item, &used));
        while (used < item.size() &&
               std::isspace(static_cast<unsigned char>(item[used])))
          ++used;
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::logic_error&) {
        throw std::invalid_argument("bad coefficient '" + item + "'");
      }
    }
    return LinearEquation(std::move(coeffs));
  }
  return EquationParser(text).parse();
}

void enumerate_solutions(const LinearEquation& eq, std::int64_t n,
                         const SolutionVisitor& visit, std::int64_t outer_lo,
                         std::optional<std::int64_t> outer_hi) {
  if (n < 1) return;
  const std::size_t m = eq.arity();
  const auto c = eq.coeffs();
  const std::int64_t c_first = c[0];
  const std::int64_t c_last = c[m - 1];
  const std::int64_t modulus = c_last < 0 ? -c_last : c_last;
  const std::int64_t hi_outer = std::min(n, outer_hi.value_or(n));
  const std::int64_t lo_outer = std::max<std::int64_t>(1, outer_lo);
  if (lo_outer > hi_outer) return;

  // x_m = -(c_1 x_1 + R) / c_m must lie in [1, n]; with T := -c_1 x_1 - R,
  // T ranges over [t_lo, t_hi] and must be divisible by c_m.
  const std::int64_t t_lo = c_last > 0 ? c_last : n * c_last;
  const std::int64_t t_hi = c_last > 0 ? n * c_last : c_last;
  const auto [g, inv] = inverse_part(c_first, modulus);
  const std::int64_t step = modulus / g;

  std::vector<std::int64_t> values(m, 1);
  // Middle free variables x_2 .. x_{m-1} (indices 1 .. m-2).
  const std::size_t middle = m >= 3 ? m - 2 : 0;
  if (middle > 0) values[m - 2] = lo_outer;

  for (;;) {
    std::int64_t rest = 0;
    for (std::size_t i = 1; i + 1 < m; ++i) rest += c[i] * values[i];

    // Range of x_1 from -c_1 x_1 in [t_lo + R, t_hi + R].
    std::int64_t lo = 1, hi = n;
    if (middle == 0) {
      lo = lo_outer;
      hi = hi_outer;
    }
    const std::int64_t a_lo = t_lo + rest, a_hi = t_hi + rest;
    if (-c_first > 0) {
      lo = std::max(lo, ceil_div(a_lo, -c_first));
      hi = std::min(hi, floor_div(a_hi, -c_first));
    } else {
      lo = std::max(lo, ceil_div(a_hi, -c_first));
      hi = std::min(hi, floor_div(a_lo, -c_first));
    }
    // Congruence c_1 x_1 == -R (mod |c_m|).
    const std::int64_t target = mod_pos(-rest, modulus);
    if (lo <= hi && target % g == 0) {
      const std::int64_t base =
          mod_pos((target / g) * inv, step);  // x_1 == base (mod step)
      std::int64_t x1 = lo + mod_pos(base - lo, step);
      for (; x1 <= hi; x1 += step) {
        values[0] = x1;
        values[m - 1] = -(c_first * x1 + rest) / c_last;
        if (!visit(values)) return;
      }
    }

    // Advance the odometer over x_2 .. x_{m-1}, x_2 fastest.
    std::size_t i = 1;
    for (; i + 1 < m; ++i) {
      std::int64_t limit = (i == m - 2) ? hi_outer : n;
      if (values[i] < limit) {
        ++values[i];
        break;
      }
      values[i] = 1;
    }
    if (i + 1 >= m) return;
  }
}

std::vector<SolutionTuple> collect_solutions(const LinearEquation& eq,
                                             std::int64_t n) {
  std::vector<SolutionTuple> out;
  enumerate_solutions(eq, n, [&](std::span<const std::int64_t> s) {
    out.emplace_back(s.begin(), s.end());
    return true;
  });
  return out;
}

std::size_t count_solutions(const LinearEquation& eq, std::int64_t n) {
  std::size_t count = 0;
  enumerate_solutions(eq, n, [&](std::span<const std::int64_t>) {
    ++count;
    return true;
  });
  return count;
}

bool is_regular(const LinearEquation& eq) {
  if (eq.arity() > 30)
    throw std::domain_error("subset scan unsupported for more than 30 terms");
  std::unordered_set<std::int64_t> sums;
  for (auto c : eq.coeffs()) {
    std::vector<std::int64_t> fresh{c};
    for (auto s : sums) fresh.push_back(s + c);
    for (auto s : fresh) {
      if (s == 0) return true;
      sums.insert(s);
    }
  }
  return false;
}

bool is_two_regular(const LinearEquation& eq) {
  if (eq.arity() < 3)
    throw std::domain_error("2-regularity criterion needs at least 3 terms");
  bool pos = false, neg = false;
  for (auto c : eq.coeffs()) (c > 0 ? pos : neg) = true;
  return pos && neg;
}

int valuation(std::int64_t x, std::int64_t base) {
  if (x == 0) throw std::domain_error("valuation of zero is undefined");
  if (base < 2) throw std::domain_error("valuation base must be >= 2");
  int e = 0;
  while (x % base == 0) {
    x /= base;
    ++e;
  }
  return e;
}

int padic_valuation(std::int64_t x, std::int64_t p) {
  if (!is_prime(p)) throw std::domain_error("p-adic valuation needs prime p");
  return valuation(x, p);
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p <= bound; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

}  // namespace rado
