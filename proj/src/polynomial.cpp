#include "rado/polynomial.hpp"

#include <cctype>
#include <stdexcept>

namespace rado {

namespace {

std::int64_t add(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("polynomial coefficient overflow");
  return r;
}

std::int64_t mul(std::int64_t x, std::int64_t y) {
  std::int64_t r;
  if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("polynomial coefficient overflow");
  return r;
}

constexpr int D = Polynomial::kMaxDegree;

}  // namespace

Polynomial Polynomial::constant(std::int64_t c) { return monomial(c, 0, 0); }

Polynomial Polynomial::param(int index) {
  if (index < 0 || index > 1) throw std::invalid_argument("at most two parameters");
  return index == 0 ? monomial(1, 1, 0) : monomial(1, 0, 1);
}

Polynomial Polynomial::monomial(std::int64_t c, int i, int j) {
  if (i < 0 || j < 0 || i > D || j > D) throw std::domain_error("polynomial degree cap exceeded");
  Polynomial p;
  p.at(i, j) = c;
  return p;
}

bool Polynomial::is_zero() const {
  for (auto x : c_)
    if (x) return false;
  return true;
}

int Polynomial::degree() const {
  int d = -1;
  for (int i = 0; i <= D; ++i)
    for (int j = 0; j <= D; ++j)
      if (coeff(i, j) && i + j > d) d = i + j;
  return d;
}

int Polynomial::degree_in(int param) const {
  int d = -1;
  for (int i = 0; i <= D; ++i)
    for (int j = 0; j <= D; ++j)
      if (coeff(i, j)) d = std::max(d, param == 0 ? i : j);
  return d;
}

std::pair<int, int> Polynomial::leading_monomial() const {
  for (int i = D; i >= 0; --i)
    for (int j = D; j >= 0; --j)
      if (coeff(i, j)) return {i, j};
  return {-1, -1};
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r;
  for (std::size_t t = 0; t < c_.size(); ++t) r.c_[t] = add(c_[t], o.c_[t]);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
  Polynomial r;
  for (std::size_t t = 0; t < c_.size(); ++t) r.c_[t] = mul(c_[t], -1);
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (int i = 0; i <= D; ++i)
    for (int j = 0; j <= D; ++j) {
      std::int64_t x = coeff(i, j);
      if (!x) continue;
      for (int u = 0; u <= D; ++u)
        for (int v = 0; v <= D; ++v) {
          std::int64_t y = o.coeff(u, v);
          if (!y) continue;
          if (i + u > D || j + v > D) throw std::domain_error("polynomial degree cap exceeded");
          r.at(i + u, j + v) = add(r.coeff(i + u, j + v), mul(x, y));
        }
    }
  return r;
}

bool Polynomial::divide_exact(const Polynomial& d, Polynomial& quotient) const {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  auto [da, db] = d.leading_monomial();
  std::int64_t lc = d.coeff(da, db);
  Polynomial rem = *this;
  Polynomial q;
  // Lex leading terms strictly decrease, so this terminates.
  while (!rem.is_zero()) {
    auto [ra, rb] = rem.leading_monomial();
    if (ra < da || rb < db) return false;
    std::int64_t c = rem.coeff(ra, rb);
    if (c % lc) return false;
    Polynomial t = monomial(c / lc, ra - da, rb - db);
    q += t;
    rem -= t * d;
  }
  quotient = q;
  return true;
}

std::int64_t Polynomial::evaluate(std::int64_t a, std::int64_t b) const {
  __int128 total = 0;
  const __int128 lim = static_cast<__int128>(INT64_MAX);
  __int128 pa = 1;
  for (int i = 0; i <= D; ++i) {
    __int128 pb = 1;
    for (int j = 0; j <= D; ++j) {
      if (coeff(i, j)) {
        __int128 term = pa * pb;
        if (term > lim || term < -lim) throw std::overflow_error("evaluation overflow");
        term *= coeff(i, j);
        total += term;
        if (total > lim || total < -lim) throw std::overflow_error("evaluation overflow");
      }
      if (j < D) {
        pb *= b;
        if (pb > lim || pb < -lim) pb = pb > 0 ? lim + 1 : -lim - 1;
      }
    }
    if (i < D) {
      pa *= a;
      if (pa > lim || pa < -lim) pa = pa > 0 ? lim + 1 : -lim - 1;
    }
  }
  return static_cast<std::int64_t>(total);
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  if (is_zero()) return "0";
  auto name = [&](int idx) { return idx < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(idx)] : std::string(idx ? "b" : "a"); };
  std::string s;
  for (int i = D; i >= 0; --i)
    for (int j = D; j >= 0; --j) {
      std::int64_t c = coeff(i, j);
      if (!c) continue;
      std::string vars;
      auto power = [&](int idx, int e) {
        if (!e) return;
        if (!vars.empty()) vars += "*";
        vars += name(idx);
        if (e > 1) vars += "^" + std::to_string(e);
      };
      power(0, i);
      power(1, j);
      std::uint64_t mag = c < 0 ? 0 - static_cast<std::uint64_t>(c) : static_cast<std::uint64_t>(c);
      if (c < 0)
        s += "-";
      else if (!s.empty())
        s += "+";
      if (vars.empty())
        s += std::to_string(mag);
      else if (mag == 1)
        s += vars;
      else
        s += std::to_string(mag) + "*" + vars;
    }
  return s;
}

std::string Polynomial::to_string() const {
  static const std::string names[2] = {"a", "b"};
  return to_string(names);
}

std::size_t Polynomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto x : c_) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

namespace {

class Parser {
public:
  Parser(std::string_view s, std::span<const std::string> names) : s_(s), names_(names) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("polynomial parse error at " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  Polynomial expr() {
    Polynomial p;
    bool first = true;
    for (;;) {
      bool neg = false;
      if (eat('-'))
        neg = true;
      else if (!eat('+') && !first)
        break;
      Polynomial t = term();
      p = neg ? p - t : p + t;
      first = false;
    }
    return p;
  }

  Polynomial term() {
    Polynomial p = power();
    for (;;) {
      if (eat('*'))
        p = p * power();
      else if (starts_factor())
        p = p * power();
      else
        return p;
    }
  }

  Polynomial power() {
    Polynomial base = atom();
    if (!eat('^')) return base;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
    Polynomial r = Polynomial::constant(1);
    for (int i = 0; i < e; ++i) r = r * base;
    return r;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Polynomial::constant(std::stoll(std::string(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string id(s_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == id) return Polynomial::param(static_cast<int>(i));
      pos_ = start;
      fail("unknown parameter '" + id + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names) {
  if (names.size() > 2) throw std::invalid_argument("at most two parameters");
  return Parser(text, names).parse();
}

}  // namespace rado
