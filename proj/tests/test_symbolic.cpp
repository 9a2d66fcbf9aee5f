#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "rado/encoder.hpp"
#include "rado/solver.hpp"
#include "rado/symbolic.hpp"

using namespace rado;

namespace {

ParametricFamily load(const std::string& name) {
  std::ifstream in(std::string(RADO_DATA_DIR) + "/families/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return family_from_json(ss.str());
}

const std::vector<std::string> kA = {"a"};
const std::vector<std::string> kAB = {"a", "b"};

Polynomial P(const std::string& s, const std::vector<std::string>& names = kA) { return parse_polynomial(s, names); }

bool identity_holds(const ParametricFamily& fam, const std::vector<Polynomial>& t) {
  Polynomial s;
  for (std::size_t i = 0; i < t.size(); ++i) s += fam.coefficients[i] * t[i];
  return s.is_zero();
}

}  // namespace

TEST_SUITE("polynomial") {

TEST_CASE("parse and print") {
  CHECK(P("a^3+(a-1)^2").to_string(kA) == "a^3+a^2-2*a+1");
  CHECK(P("2a(a+1)") == P("2*a^2+2*a"));
  CHECK(P("-(a-1)") == P("1-a"));
  CHECK(P("0").is_zero());
  CHECK(P("a*b-b", kAB).to_string(kAB) == "a*b-b");
  CHECK(parse_polynomial(P("a^2-3b+7", kAB).to_string(kAB), kAB) == P("a^2-3b+7", kAB));
  CHECK_THROWS_AS(P("a+"), std::invalid_argument);
  CHECK_THROWS_AS(P("c"), std::invalid_argument);
  CHECK_THROWS_AS(P("a^7"), std::domain_error);
}

TEST_CASE("degrees and division") {
  Polynomial p = P("a^3-a^2-a-1");
  CHECK(p.degree() == 3);
  CHECK(p.univariate());
  CHECK(P("a^2*b", kAB).degree() == 3);
  CHECK(P("a^2*b", kAB).degree_in(1) == 1);
  CHECK(Polynomial().degree() == -1);
  Polynomial q;
  CHECK(P("a^2-1").divide_exact(P("a-1"), q));
  CHECK(q == P("a+1"));
  CHECK_FALSE(P("a^2+1").divide_exact(P("a-1"), q));
  CHECK(P("a^2*b-b^3", kAB).divide_exact(P("a-b", kAB), q));
  CHECK(q == P("a*b+b^2", kAB));
  CHECK_FALSE(P("2a+1").divide_exact(P("2"), q));
}

TEST_CASE("evaluation") {
  CHECK(P("a^3-a^2-a-1").evaluate(10) == 889);
  CHECK(P("a^3+(a-1)^2").evaluate(16) == 4321);
  CHECK(P("a*b-b", kAB).evaluate(5, 3) == 12);
  CHECK_THROWS_AS(P("a^6").evaluate(std::int64_t(1) << 12), std::overflow_error);
}

TEST_CASE("ring laws and evaluation homomorphism") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-9, 9), deg(0, 3);
  std::uniform_int_distribution<std::int64_t> val(-12, 12);
  auto random_poly = [&] {
    Polynomial p;
    for (int t = 0; t < 4; ++t) p += Polynomial::monomial(coef(rng), deg(rng), deg(rng));
    return p;
  };
  for (int i = 0; i < 1000; ++i) {
    Polynomial p = random_poly(), q = random_poly();
    std::int64_t a = val(rng), b = val(rng);
    CHECK((p + q) - q == p);
    CHECK(p + q == q + p);
    CHECK(p * q == q * p);
    CHECK(parse_polynomial(p.to_string(kAB), kAB) == p);
    CHECK((p + q).evaluate(a, b) == p.evaluate(a, b) + q.evaluate(a, b));
    CHECK((p - q).evaluate(a, b) == p.evaluate(a, b) - q.evaluate(a, b));
    CHECK((p * q).evaluate(a, b) == p.evaluate(a, b) * q.evaluate(a, b));
    Polynomial quotient;
    if (!q.is_zero()) {
      REQUIRE((p * q).divide_exact(q, quotient));
      CHECK(quotient == p);
    }
  }
}

}

TEST_SUITE("symbolic") {

TEST_CASE("family files load") {
  ParametricFamily one = load("x_minus_y_eq_m_minus_2_z.json");
  CHECK(one.params == std::vector<std::string>{"m"});
  CHECK(one.lower_limit() == 3);
  CHECK(family_from_json(family_to_json(one)).bound == one.bound);
  ParametricFamily two = load("a_x_minus_y_eq_a_minus_1_z.json");
  CHECK(two.lower_limit() == 16);
  auto [A, B] = two.difference_template();
  CHECK(A == P("a"));
  CHECK(B == P("a-1"));
  ParametricFamily three = load("a_x_minus_y_eq_b_z.json");
  CHECK(three.params.size() == 2);
  std::vector<std::int64_t> in{20, 7}, out{20, 19};
  CHECK(three.in_domain(in));
  CHECK_FALSE(three.in_domain(out));
}

TEST_CASE("univariate bound checks") {
  ParametricFamily one = load("x_minus_y_eq_m_minus_2_z.json");
  const std::vector<std::string> m = {"m"};
  CHECK(bounded_integer_polynomial(parse_polynomial("m^2-m-1", m), one) == BoundStatus::Verified);
  CHECK(bounded_integer_polynomial(one.bound, one) == BoundStatus::Verified);
  CHECK(bounded_integer_polynomial(parse_polynomial("-m+1", m), one) == BoundStatus::Unverified);
  CHECK(bounded_integer_polynomial(parse_polynomial("m^3", m), one) == BoundStatus::Unverified);
  // m - 3 is 0 at the domain edge
  CHECK(bounded_integer_polynomial(parse_polynomial("m-3", m), one) == BoundStatus::Unverified);
  CHECK(bounded_integer_polynomial(parse_polynomial("m-2", m), one) == BoundStatus::Verified);
  // dips below 1 only at m = 5
  CHECK(bounded_integer_polynomial(parse_polynomial("(m-5)^2", m), one) == BoundStatus::Unverified);
  CHECK(bounded_integer_polynomial(parse_polynomial("(m-5)^2+1", m), one) == BoundStatus::Verified);
  BoundChecker bc(one);
  bc.check(parse_polynomial("m", m));
  bc.check(parse_polynomial("m", m));
  CHECK(bc.cache_size() == 1);
}

TEST_CASE("univariate checks agree with a direct scan") {
  ParametricFamily one = load("x_minus_y_eq_m_minus_2_z.json");
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-6, 6), d(0, 3);
  BoundChecker bc(one);
  int verified = 0;
  for (int t = 0; t < 300; ++t) {
    Polynomial p;
    for (int i = 0; i < 3; ++i) p += Polynomial::monomial(c(rng), d(rng), 0);
    bool ok = true;
    for (std::int64_t v = 3; v <= 3000 && ok; ++v) {
      std::int64_t x = p.evaluate(v), f = one.bound.evaluate(v);
      ok = x >= 1 && x <= f;
    }
    if (bc.verified(p)) {
      CHECK(ok);
      ++verified;
    } else {
      // the univariate procedure is exact, so a scan that passes far out means it holds
      CHECK_FALSE(ok);
    }
  }
  CHECK(verified > 10);
}

TEST_CASE("bivariate checks are sound on samples") {
  ParametricFamily three = load("a_x_minus_y_eq_b_z.json");
  BoundChecker bc(three);
  std::vector<std::string> cands = {"1", "b", "a-b", "a", "a^2", "a^3", "a*b", "a^2-b", "a^2+b", "a^3-a*b",
                                    "a-1-b", "a-2-b", "b-1", "a^3+1", "a^2*b", "a^2*b-a", "2a-b", "a^3-b",
                                    "a*b-b", "b^2", "a-b^2", "a^3-b^3"};
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::int64_t> av(16, 400);
  int verified = 0;
  for (const auto& s : cands) {
    Polynomial p = P(s, kAB);
    if (!bc.verified(p)) continue;
    ++verified;
    for (int t = 0; t < 10000; ++t) {
      std::int64_t a = av(rng);
      std::int64_t b = std::uniform_int_distribution<std::int64_t>(1, a - 2)(rng);
      std::int64_t x = p.evaluate(a, b);
      CHECK((x >= 1 && x <= three.bound.evaluate(a, b)));
      if (x < 1 || x > three.bound.evaluate(a, b)) break;
    }
  }
  CHECK(verified >= 10);
  CHECK_FALSE(bc.verified(P("a^3+1", kAB)));
  CHECK(bc.verified(P("a-1-b", kAB)));
  CHECK_FALSE(bc.verified(P("a-2-b", kAB)));
  CHECK(bc.nonnegative(P("a-2-b", kAB)));
}

TEST_CASE("find polynomials, tiny case") {
  ParametricFamily two = load("a_x_minus_y_eq_a_minus_1_z.json");
  SymbolicSolutions sol = find_polynomials(two, {P("1"), P("a")}, {P("1")}, 0);
  bool found = false;
  for (const auto& t : sol.C)
    found = found || (sol.S[t[0]] == P("a") && sol.S[t[1]] == P("1") && sol.S[t[2]] == P("a"));
  CHECK(found);

  ParametricFormula pf = build_parametric_formula(two, 1, {P("1"), P("a")}, {{P("a"), P("1"), P("a")}});
  CHECK(pf.positive_count == 2);
  CHECK(pf.negative_count == 1);
  CHECK(pf.optional_count == 0);
  REQUIRE(pf.cnf.clause_count() == 3);
  CHECK(pf.cnf.clause(2).size() == 2);

  CHECK_THROWS_AS(build_parametric_formula(two, 1, {P("1"), P("a")}, {{P("a"), P("a"), P("a")}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_parametric_formula(two, 1, {P("1"), P("a")}, {{P("a"), P("1"), P("a+1")}}),
                  std::invalid_argument);
}

TEST_CASE("find polynomials with the seeds, no growth") {
  ParametricFamily two = load("a_x_minus_y_eq_a_minus_1_z.json");
  SymbolicSolutions sol = find_polynomials(two, two.S0, two.G0, 0);
  CHECK_FALSE(sol.C.empty());
  BoundChecker bc(two);
  for (const auto& t : sol.C) {
    std::vector<Polynomial> tuple;
    for (auto i : t) tuple.push_back(sol.S[i]);
    CHECK(identity_holds(two, tuple));
  }
  for (const auto& p : sol.S) CHECK(bc.verified(p));
  std::set<std::string> distinct;
  for (const auto& p : sol.S) distinct.insert(p.to_string(kA));
  CHECK(distinct.size() == sol.S.size());
}

TEST_CASE("x-y=(m-2)z family end to end") {
  ParametricFamily one = load("x_minus_y_eq_m_minus_2_z.json");
  SymbolicSolutions sol = find_polynomials(one, one.S0, one.G0, one.max_iterations);
  for (const auto& t : sol.C) {
    std::vector<Polynomial> tuple;
    for (auto i : t) tuple.push_back(sol.S[i]);
    CHECK(identity_holds(one, tuple));
  }
  ParametricFormula pf = build_parametric_formula(one, 3, sol);
  CHECK(pf.positive_count == sol.S.size());
  CHECK(solve(pf.cnf, BackendConfig::internal()).status == Verdict::Unsat);

  std::vector<std::int64_t> ten{10};
  InstantiationReport r = instantiate_and_check(pf, one, ten);
  CHECK(r.ok);
  CHECK(r.bound == 889);
  for (auto v : r.atom_values) CHECK((v >= 1 && v <= 889));

  // subformula argument: every ground clause is a clause of the concrete formula
  for (std::int64_t m : {10, 16}) {
    std::vector<std::int64_t> vals{m};
    InstantiationReport rep = instantiate_and_check(pf, one, vals);
    REQUIRE(rep.ok);
    RadoFormula concrete = build_formula(make_diff(1, m - 2), rep.bound, 3);
    std::set<std::vector<int>> have;
    for (std::size_t i = 0; i < concrete.cnf.clause_count(); ++i) {
      auto c = concrete.cnf.clause(i);
      std::vector<int> v(c.begin(), c.end());
      std::sort(v.begin(), v.end());
      have.insert(v);
    }
    CnfFormula ground = ground_formula(pf, rep);
    std::size_t missing = 0;
    for (std::size_t i = 0; i < ground.clause_count(); ++i) {
      auto c = ground.clause(i);
      std::vector<int> v(c.begin(), c.end());
      std::sort(v.begin(), v.end());
      v.erase(std::unique(v.begin(), v.end()), v.end());
      missing += !have.count(v);
    }
    CHECK(missing == 0);
    CHECK(solve(ground, BackendConfig::internal()).status == Verdict::Unsat);
  }

  std::vector<std::int64_t> two{2};
  CHECK_FALSE(instantiate_and_check(pf, one, two).ok);
}

TEST_CASE("instantiation catches atoms out of range") {
  ParametricFamily two = load("a_x_minus_y_eq_a_minus_1_z.json");
  ParametricFormula pf = build_parametric_formula(two, 3, {P("1"), P("a"), P("a^3+a^2")}, {});
  std::vector<std::int64_t> v{16};
  InstantiationReport r = instantiate_and_check(pf, two, v);
  CHECK_FALSE(r.ok);
  REQUIRE_FALSE(r.failures.empty());
  CHECK(r.failures[0].find("a^3+a^2") != std::string::npos);

  ParametricFormula fine = build_parametric_formula(two, 3, {P("1"), P("a")}, {});
  InstantiationReport ok = instantiate_and_check(fine, two, v);
  CHECK(ok.ok);
  CHECK(ok.bound == 4321);
}

}
