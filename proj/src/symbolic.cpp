#include "rado/symbolic.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace rado {

using boost::multiprecision::cpp_rational;
using nlohmann::json;

std::pair<Polynomial, Polynomial> ParametricFamily::difference_template() const {
  if (coefficients.size() != 3 || coefficients[1] != -coefficients[0])
    throw std::invalid_argument(name + ": not of the form A(x-y) = Bz");
  return {coefficients[0], -coefficients[2]};
}

std::int64_t ParametricFamily::lower_limit() const {
  if (params.size() != 1) throw std::invalid_argument("lower_limit needs one parameter");
  std::int64_t lo = INT64_MIN;
  for (const auto& g : constraints) {
    if (g.degree() != 1) throw std::invalid_argument(name + ": constraints must be linear");
    std::int64_t c1 = g.coeff(1, 0), c0 = g.coeff(0, 0);
    if (c1 <= 0) throw std::invalid_argument(name + ": constraint must bound the parameter below");
    // c1*a + c0 >= 0  <=>  a >= ceil(-c0 / c1)
    std::int64_t num = -c0;
    std::int64_t q = num / c1;
    if (num % c1 != 0 && num > 0) ++q;
    lo = std::max(lo, q);
  }
  if (lo == INT64_MIN) throw std::invalid_argument(name + ": parameter is unbounded below");
  return lo;
}

bool ParametricFamily::in_domain(std::span<const std::int64_t> values) const {
  if (values.size() != params.size()) return false;
  std::int64_t a = values[0], b = values.size() > 1 ? values[1] : 0;
  for (const auto& g : constraints)
    if (g.evaluate(a, b) < 0) return false;
  return true;
}

ParametricFamily family_from_json(const std::string& text) {
  json j = json::parse(text);
  ParametricFamily f;
  f.name = j.value("name", std::string());
  f.params = j.at("params").get<std::vector<std::string>>();
  if (f.params.empty() || f.params.size() > 2) throw std::invalid_argument("one or two parameters");
  auto poly = [&](const json& s) { return parse_polynomial(s.get<std::string>(), f.params); };
  auto polys = [&](const char* key) {
    std::vector<Polynomial> v;
    if (j.contains(key))
      for (const auto& s : j.at(key)) v.push_back(poly(s));
    return v;
  };
  f.coefficients = polys("coefficients");
  f.constraints = polys("constraints");
  if (j.contains("side_conditions")) f.side_conditions = j["side_conditions"].get<std::vector<std::string>>();
  f.bound = poly(j.at("bound"));
  f.k = j.value("k", 3);
  f.S0 = polys("S0");
  f.G0 = polys("G0");
  f.max_iterations = j.value("max_iterations", 3);
  return f;
}

std::string family_to_json(const ParametricFamily& f) {
  auto strs = [&](const std::vector<Polynomial>& v) {
    json a = json::array();
    for (const auto& p : v) a.push_back(f.format(p));
    return a;
  };
  json j;
  j["name"] = f.name;
  j["params"] = f.params;
  j["coefficients"] = strs(f.coefficients);
  j["constraints"] = strs(f.constraints);
  j["side_conditions"] = f.side_conditions;
  j["bound"] = f.format(f.bound);
  j["k"] = f.k;
  j["S0"] = strs(f.S0);
  j["G0"] = strs(f.G0);
  j["max_iterations"] = f.max_iterations;
  return j.dump(2);
}

namespace {

// Is c a nonnegative combination of the columns of A? Phase one of the
// simplex method with Bland's rule, in exact rationals.
bool nonnegative_combination(std::vector<std::vector<cpp_rational>> A, std::vector<cpp_rational> c) {
  const std::size_t m = A.size();
  const std::size_t n = m ? A[0].size() : 0;
  for (std::size_t i = 0; i < m; ++i)
    if (c[i] < 0) {
      for (auto& x : A[i]) x = -x;
      c[i] = -c[i];
    }
  // Tableau columns: n structural, m artificial, then rhs.
  const std::size_t W = n + m + 1;
  std::vector<std::vector<cpp_rational>> T(m, std::vector<cpp_rational>(W));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1;
    T[i][W - 1] = c[i];
    basis[i] = n + i;
  }
  // Reduced costs of minimizing the artificial sum.
  std::vector<cpp_rational> r(W);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < W; ++j)
      if (j < n || j == W - 1) r[j] -= T[i][j];
  for (;;) {
    std::size_t enter = W;
    for (std::size_t j = 0; j + 1 < W; ++j)
      if (r[j] < 0) {
        enter = j;
        break;
      }
    if (enter == W) break;
    std::size_t leave = m;
    cpp_rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      cpp_rational ratio = T[i][W - 1] / T[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen in phase one
    cpp_rational piv = T[leave][enter];
    for (auto& x : T[leave]) x /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      cpp_rational f = T[i][enter];
      for (std::size_t j = 0; j < W; ++j) T[i][j] -= f * T[leave][j];
    }
    cpp_rational f = r[enter];
    for (std::size_t j = 0; j < W; ++j) r[j] -= f * T[leave][j];
    basis[leave] = enter;
  }
  return r[W - 1] == 0;
}

}  // namespace

BoundChecker::BoundChecker(const ParametricFamily& fam) : fam_(fam), univariate_(fam.params.size() == 1) {
  if (fam.params.empty() || fam.params.size() > 2)
    throw std::invalid_argument("bound checks support one or two parameters");
  if (univariate_) {
    lo_ = fam.lower_limit();
  } else {
    for (const auto& g : fam.constraints)
      if (g.degree() > 1) throw std::invalid_argument(fam.name + ": constraints must be linear");
    // Small points first: that is where the bounds are tight.
    for (std::int64_t s = 0; s <= 120; ++s)
      for (std::int64_t a = 0; a <= s; ++a) {
        std::int64_t v[2] = {a, s - a};
        if (fam.in_domain(v)) samples_.emplace_back(v[0], v[1]);
      }
    for (std::int64_t a : {200, 1000, 100000})
      for (std::int64_t b : {std::int64_t{1}, a / 2, a - 2, a}) {
        std::int64_t v[2] = {a, b};
        if (fam.in_domain(v)) samples_.emplace_back(a, b);
      }
  }
}

BoundStatus BoundChecker::check(const Polynomial& p) {
  auto it = cache_.find(p);
  if (it != cache_.end()) return it->second ? BoundStatus::Verified : BoundStatus::Unverified;
  bool ok = nonnegative(p - Polynomial::constant(1)) && nonnegative(fam_.bound - p);
  cache_.emplace(p, ok);
  return ok ? BoundStatus::Verified : BoundStatus::Unverified;
}

bool BoundChecker::nonnegative(const Polynomial& g) {
  try {
    return univariate_ ? nonnegative_univariate(g) : nonnegative_bivariate(g);
  } catch (const std::overflow_error&) {
    return false;
  }
}

bool BoundChecker::nonnegative_univariate(const Polynomial& g) const {
  if (!g.univariate()) return false;
  int n = g.degree_in(0);
  if (n < 0) return true;
  if (g.evaluate(lo_) < 0) return false;
  std::int64_t lead = g.coeff(n, 0);
  if (n == 0) return lead >= 0;
  if (lead < 0) return false;
  // Every root has modulus at most 1 + max |c_i / c_n|; past that the sign
  // is the leading sign.
  std::int64_t mx = 0;
  for (int i = 0; i < n; ++i) mx = std::max<std::int64_t>(mx, g.coeff(i, 0) < 0 ? -g.coeff(i, 0) : g.coeff(i, 0));
  std::int64_t M = 1 + (mx + lead - 1) / lead;
  if (M - lo_ > 2'000'000) return false;
  for (std::int64_t a = lo_; a <= M; ++a)
    if (g.evaluate(a) < 0) return false;
  return true;
}

bool BoundChecker::sampled_negative(const Polynomial& g) const {
  for (auto [a, b] : samples_)
    if (g.evaluate(a, b) < 0) return true;
  return false;
}

bool BoundChecker::nonnegative_bivariate(const Polynomial& g) const {
  if (g.is_zero()) return true;
  if (sampled_negative(g)) return false;
  const int D = std::max(2, g.degree());
  const auto& gens = fam_.constraints;
  // All products of the generators of total degree <= D.
  std::vector<Polynomial> prods;
  std::vector<int> e(gens.size(), 0);
  std::function<void(std::size_t, int, Polynomial)> rec = [&](std::size_t i, int left, Polynomial acc) {
    if (i == gens.size()) {
      prods.push_back(acc);
      return;
    }
    Polynomial cur = acc;
    for (int t = 0; t <= left; ++t) {
      rec(i + 1, left - t, cur);
      if (t < left) cur = cur * gens[i];
    }
  };
  rec(0, D, Polynomial::constant(1));
  std::vector<std::pair<int, int>> monos;
  for (int i = 0; i <= D; ++i)
    for (int j = 0; i + j <= D; ++j) monos.emplace_back(i, j);
  std::vector<std::vector<cpp_rational>> A(monos.size(), std::vector<cpp_rational>(prods.size()));
  std::vector<cpp_rational> c(monos.size());
  for (std::size_t r = 0; r < monos.size(); ++r) {
    auto [i, j] = monos[r];
    c[r] = g.coeff(i, j);
    for (std::size_t q = 0; q < prods.size(); ++q) A[r][q] = prods[q].coeff(i, j);
  }
  return nonnegative_combination(std::move(A), std::move(c));
}

BoundStatus bounded_integer_polynomial(const Polynomial& p, const ParametricFamily& fam) {
  BoundChecker checker(fam);
  return checker.check(p);
}

namespace {

class OrderedSet {
public:
  bool insert(const Polynomial& p) {
    if (!index_.emplace(p, items_.size()).second) return false;
    items_.push_back(p);
    return true;
  }
  std::size_t index_of(const Polynomial& p) const { return index_.at(p); }
  const std::vector<Polynomial>& items() const { return items_; }

private:
  std::vector<Polynomial> items_;
  std::unordered_map<Polynomial, std::size_t, PolynomialHash> index_;
};

}  // namespace

namespace {

// Values at a handful of domain points. A candidate that leaves [1, f] at
// any of them cannot pass the exact check, so most pairs are rejected
// without building a polynomial.
class PointFilter {
public:
  explicit PointFilter(const ParametricFamily& fam) {
    std::vector<std::array<std::int64_t, 2>> cand;
    if (fam.params.size() == 1) {
      std::int64_t lo = fam.lower_limit();
      for (std::int64_t d : {0, 1, 2, 7, 60, 900}) cand.push_back({lo + d, 0});
    } else {
      for (std::int64_t a : {16, 17, 23, 60, 300, 1000})
        for (std::int64_t b : {std::int64_t{1}, std::int64_t{2}, a / 3, a / 2 + 1, a - 3, a - 2})
          cand.push_back({a, b});
    }
    for (auto pt : cand)
      if (fam.in_domain(std::span<const std::int64_t>(pt.data(), fam.params.size()))) pts_.push_back(pt);
    f_ = eval(fam.bound);
  }

  std::size_t size() const { return pts_.size(); }
  std::vector<std::int64_t> eval(const Polynomial& p) const {
    std::vector<std::int64_t> v;
    for (auto [a, b] : pts_) v.push_back(p.evaluate(a, b));
    return v;
  }
  bool in_range(std::int64_t v, std::size_t i) const { return v >= 1 && v <= f_[i]; }

private:
  std::vector<std::array<std::int64_t, 2>> pts_;
  std::vector<std::int64_t> f_;
};

class Pool {
public:
  explicit Pool(const PointFilter& pf) : pf_(pf) {}
  bool insert(const Polynomial& p) {
    if (!set_.insert(p)) return false;
    vals_.push_back(pf_.eval(p));
    return true;
  }
  const std::vector<Polynomial>& items() const { return set_.items(); }
  const std::vector<std::int64_t>& vals(std::size_t i) const { return vals_[i]; }
  std::size_t index_of(const Polynomial& p) const { return set_.index_of(p); }

private:
  const PointFilter& pf_;
  OrderedSet set_;
  std::vector<std::vector<std::int64_t>> vals_;
};

}  // namespace

SymbolicSolutions find_polynomials(const ParametricFamily& fam, const std::vector<Polynomial>& S0,
                                   const std::vector<Polynomial>& G0, int max_iterations) {
  auto [A, B] = fam.difference_template();
  BoundChecker bounded(fam);
  PointFilter filter(fam);
  const std::size_t P = filter.size();
  const std::vector<std::int64_t> Av = filter.eval(A), Bv = filter.eval(B);
  for (std::size_t i = 0; i < P; ++i)
    if (Bv[i] == 0) throw std::invalid_argument(fam.name + ": coefficient vanishes on the domain");
  Pool S(filter), G(filter);
  for (const auto& p : S0) S.insert(p);
  for (const auto& p : G0) G.insert(p);

  for (int it = 0; it < max_iterations; ++it) {
    const std::size_t ns = S.items().size();
    for (std::size_t x = 0; x < ns; ++x)
      for (std::size_t y = 0; y < ns; ++y) {
        const auto &pv = S.vals(x), &qv = S.vals(y);
        bool ok = true;
        for (std::size_t i = 0; ok && i < P; ++i) {
          std::int64_t d = pv[i] - qv[i];
          ok = d % Bv[i] == 0 && filter.in_range(d / Bv[i], i);
        }
        if (!ok) continue;
        Polynomial r;
        if ((S.items()[x] - S.items()[y]).divide_exact(B, r) && bounded.verified(r)) G.insert(r);
      }
    const std::size_t ns2 = S.items().size(), ng = G.items().size();
    for (std::size_t x = 0; x < ns2; ++x)
      for (std::size_t y = 0; y < ng; ++y) {
        const auto &pv = S.vals(x), &qv = G.vals(y);
        bool up_ok = true, down_ok = true;
        for (std::size_t i = 0; i < P && (up_ok || down_ok); ++i) {
          std::int64_t bq = Bv[i] * qv[i];
          up_ok = up_ok && filter.in_range(pv[i] + bq, i);
          down_ok = down_ok && filter.in_range(pv[i] - bq, i);
        }
        if (!up_ok && !down_ok) continue;
        Polynomial bq = B * G.items()[y];
        const Polynomial p = S.items()[x];
        if (up_ok && bounded.verified(p + bq)) S.insert(p + bq);
        if (down_ok && bounded.verified(p - bq)) S.insert(p - bq);
      }
  }

  std::vector<std::array<Polynomial, 3>> found;
  const std::size_t ns = S.items().size();
  for (std::size_t y = 0; y < ns; ++y) {
    const auto& qv = S.vals(y);
    bool zok = true;
    for (std::size_t i = 0; zok && i < P; ++i) zok = filter.in_range(Av[i] * qv[i], i);
    if (!zok) continue;
    const Polynomial q = S.items()[y];
    Polynomial z = A * q;
    if (!bounded.verified(z)) continue;
    Polynomial bq = B * q;
    for (std::size_t x = 0; x < ns; ++x) {
      const auto& pv = S.vals(x);
      bool ok = true;
      for (std::size_t i = 0; ok && i < P; ++i) ok = filter.in_range(pv[i] - Bv[i] * qv[i], i);
      if (!ok) continue;
      const Polynomial& p = S.items()[x];
      Polynomial yv = p - bq;
      if (!bounded.verified(p) || !bounded.verified(yv)) continue;
      found.push_back({p, yv, z});
    }
  }
  SymbolicSolutions out;
  std::set<std::array<std::size_t, 3>> seen;
  for (const auto& t : found)
    for (const auto& x : t) S.insert(x);
  for (const auto& t : found) {
    std::array<std::size_t, 3> idx{S.index_of(t[0]), S.index_of(t[1]), S.index_of(t[2])};
    if (!seen.insert(idx).second) continue;
    if (A * (t[0] - t[1]) != B * t[2]) throw std::logic_error("constructed tuple fails the template");
    out.C.push_back({idx[0], idx[1], idx[2]});
  }
  out.S = S.items();
  return out;
}

ParametricFormula build_parametric_formula(const ParametricFamily& fam, int k,
                                           const std::vector<Polynomial>& S,
                                           const std::vector<std::vector<Polynomial>>& C) {
  std::unordered_map<Polynomial, std::size_t, PolynomialHash> index;
  for (std::size_t i = 0; i < S.size(); ++i)
    if (!index.emplace(S[i], i).second) throw std::invalid_argument("duplicate atom " + fam.format(S[i]));
  SymbolicSolutions sol;
  sol.S = S;
  for (const auto& t : C) {
    std::vector<std::size_t> idx;
    for (const auto& x : t) {
      auto it = index.find(x);
      if (it == index.end()) throw std::invalid_argument("tuple entry not in S: " + fam.format(x));
      idx.push_back(it->second);
    }
    sol.C.push_back(std::move(idx));
  }
  return build_parametric_formula(fam, k, sol);
}

ParametricFormula build_parametric_formula(const ParametricFamily& fam, int k,
                                           const SymbolicSolutions& sol) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  ParametricFormula pf;
  pf.k = k;
  pf.atoms = sol.S;
  pf.tuples = sol.C;
  const std::size_t m = fam.coefficients.size();
  for (const auto& t : sol.C) {
    if (t.size() != m) throw std::invalid_argument("tuple arity does not match the template");
    Polynomial sum;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i] >= sol.S.size()) throw std::invalid_argument("tuple index off S");
      sum += fam.coefficients[i] * sol.S[t[i]];
    }
    if (!sum.is_zero()) throw std::invalid_argument("tuple fails the template identity");
  }
  const std::size_t n = sol.S.size();
  pf.cnf = CnfFormula(static_cast<int>(n) * k);
  std::vector<int> cl;
  for (std::size_t j = 0; j < n; ++j) {
    cl.clear();
    for (int i = 1; i <= k; ++i) cl.push_back(pf.var(j, i));
    pf.cnf.add_clause(cl);
  }
  pf.positive_count = n;
  for (int i = 1; i <= k; ++i)
    for (const auto& t : sol.C) {
      cl.clear();
      for (auto j : t) cl.push_back(-pf.var(j, i));
      cl.resize(dedup_literals(cl));
      pf.cnf.add_clause(cl);
      ++pf.negative_count;
    }
  for (std::size_t j = 0; j < n; ++j)
    for (int i1 = 1; i1 <= k; ++i1)
      for (int i2 = i1 + 1; i2 <= k; ++i2) {
        pf.cnf.add_clause({-pf.var(j, i1), -pf.var(j, i2)});
        ++pf.optional_count;
      }
  return pf;
}

InstantiationReport instantiate_and_check(const ParametricFormula& pf, const ParametricFamily& fam,
                                          std::span<const std::int64_t> values) {
  InstantiationReport r;
  r.values.assign(values.begin(), values.end());
  if (!fam.in_domain(values)) {
    r.failures.push_back("parameters outside the family domain");
    return r;
  }
  std::int64_t a = values[0], b = values.size() > 1 ? values[1] : 0;
  try {
    r.bound = fam.bound.evaluate(a, b);
    for (const auto& p : pf.atoms) {
      std::int64_t v = p.evaluate(a, b);
      r.atom_values.push_back(v);
      if (v < 1 || v > r.bound)
        r.failures.push_back("atom " + fam.format(p) + " = " + std::to_string(v) + " outside [1, " +
                             std::to_string(r.bound) + "]");
    }
    std::vector<std::int64_t> coeffs;
    for (const auto& c : fam.coefficients) coeffs.push_back(c.evaluate(a, b));
    for (const auto& t : pf.tuples) {
      __int128 sum = 0;
      for (std::size_t i = 0; i < t.size(); ++i) sum += static_cast<__int128>(coeffs[i]) * r.atom_values[t[i]];
      if (sum != 0) {
        std::string s;
        for (auto j : t) s += (s.empty() ? "" : ", ") + fam.format(pf.atoms[j]);
        r.failures.push_back("tuple (" + s + ") is not a solution");
      }
    }
  } catch (const std::overflow_error& e) {
    r.failures.push_back(e.what());
  }
  r.ok = r.failures.empty();
  return r;
}

CnfFormula ground_formula(const ParametricFormula& pf, const InstantiationReport& report) {
  if (!report.ok) throw std::invalid_argument("instantiation failed");
  const int k = pf.k;
  CnfFormula out(static_cast<int>(report.bound) * k);
  std::vector<int> cl;
  for (std::size_t c = 0; c < pf.cnf.clause_count(); ++c) {
    cl.clear();
    for (int lit : pf.cnf.clause(c)) {
      int v = std::abs(lit) - 1;
      std::size_t atom = static_cast<std::size_t>(v / k);
      int color = v % k + 1;
      int g = static_cast<int>((report.atom_values[atom] - 1) * k + color);
      cl.push_back(lit < 0 ? -g : g);
    }
    cl.resize(dedup_literals(cl));
    out.add_clause(cl);
  }
  return out;
}

std::vector<std::vector<int>> ground_negative_clauses(const ParametricFormula& pf,
                                                      const InstantiationReport& report) {
  CnfFormula g = ground_formula(pf, report);
  std::vector<std::vector<int>> out;
  for (std::size_t c = pf.positive_count; c < pf.positive_count + pf.negative_count; ++c) {
    auto s = g.clause(c);
    std::vector<int> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace rado
