#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "rado/encoder.hpp"
#include "rado/solver.hpp"

using namespace rado;

namespace {

std::vector<std::vector<int>> clauses(const CnfFormula& f) {
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < f.clause_count(); ++i) {
    auto c = f.clause(i);
    out.emplace_back(c.begin(), c.end());
  }
  return out;
}

std::multiset<std::vector<int>> sorted_clauses(const CnfFormula& f) {
  std::multiset<std::vector<int>> out;
  for (auto c : clauses(f)) {
    std::sort(c.begin(), c.end());
    out.insert(c);
  }
  return out;
}

bool is_sat(const CnfFormula& f) { return solve(f, BackendConfig::internal()).status == Verdict::Sat; }

const std::vector<std::vector<std::int64_t>> kSuite = {{1, 1, -1}, {1, -1, -2}, {2, 1, -3}, {1, 2, -4}};

}  // namespace

TEST_SUITE("encoder") {

TEST_CASE("clause groups for x+y=z, n=4, k=3") {
  RadoFormula f = build_formula(parse_equation("x+y=z"), 4, 3);
  CHECK(f.cnf.var_count() == 12);
  CHECK(f.cnf.clause_count() == 34);
  CHECK(f.solution_count == 6);
  auto cl = clauses(f.cnf);
  CHECK(cl[0] == std::vector<int>{1, 2, 3});
  CHECK(cl[3] == std::vector<int>{10, 11, 12});
  // (1,1,2) colored 1: v_1^1 and v_2^1 after duplicate removal
  CHECK(cl[4] == std::vector<int>{-1, -4});
  CHECK(cl[22] == std::vector<int>{-1, -2});
  std::string text = to_dimacs(f.cnf);
  CHECK(text.rfind("p cnf 12 34\n", 0) == 0);
}

TEST_CASE("small formulas") {
  RadoFormula a = build_formula(parse_equation("x+y=z"), 1, 1);
  CHECK(a.cnf.clause_count() == 1);
  RadoFormula b = build_formula(parse_equation("x-y=5z"), 7, 1, {.optional = false});
  CHECK(b.cnf.clause_count() == 9);
  for (std::size_t i = 0; i < b.cnf.clause_count(); ++i)
    CHECK(std::set<int>(b.cnf.clause(i).begin(), b.cnf.clause(i).end()).size() == b.cnf.clause(i).size());
}

TEST_CASE("variable map") {
  VarMap m{5, 3};
  std::set<int> seen;
  for (std::int64_t j = 1; j <= 5; ++j)
    for (int i = 1; i <= 3; ++i) {
      int v = m.var(j, i);
      CHECK(m.integer_of(v) == j);
      CHECK(m.color_of(v) == i);
      seen.insert(v);
    }
  CHECK(seen.size() == 15);
  CHECK(*seen.begin() == 1);
  CHECK(*seen.rbegin() == 15);
}

TEST_CASE("symmetry clauses") {
  auto s = symmetry_clauses(parse_equation("x+y=z"), 5, 3);
  REQUIRE(s.size() == 2);
  CHECK(s[0] == std::vector<int>{VarMap{5, 3}.var(1, 1)});
  CHECK(s[1] == std::vector<int>{VarMap{5, 3}.var(2, 2)});
  CHECK(symmetry_clauses(parse_equation("x+y=z"), 1, 3).empty());
  auto anchor = symmetry_anchor(parse_equation("x-y=2z"), 5);
  REQUIRE(anchor);
  CHECK(anchor->first == 1);
  CHECK(anchor->second == 3);
  CHECK(symmetry_clauses(parse_equation("x-y=2z"), 5, 4).size() > 2);
}

TEST_CASE("truncation") {
  LinearEquation e = parse_equation("x+y=z");
  RadoFormula f4 = build_formula(e, 4, 3);
  RadoFormula t = truncate(f4, 3);
  CHECK(sorted_clauses(t.cnf) == sorted_clauses(build_formula(e, 3, 3).cnf));
  CHECK_THROWS(truncate(f4, 4));

  // dropped clauses are exactly those mentioning some j > m
  RadoFormula big = build_formula(parse_equation("2x+y=3z"), 30, 3, {.optional = true, .symmetry = true});
  for (std::int64_t m : {5, 17, 29}) {
    std::size_t mentioning = 0;
    for (std::size_t i = 0; i < big.symmetry_begin; ++i) {
      bool hit = false;
      for (int l : big.cnf.clause(i)) hit = hit || big.vars().integer_of(std::abs(l)) > m;
      mentioning += hit;
    }
    RadoFormula tm = truncate(big, m);
    CHECK(tm.symmetry_begin == big.symmetry_begin - mentioning);
    CHECK(sorted_clauses(tm.cnf) ==
          sorted_clauses(build_formula(big.eq, m, 3, {.optional = true, .symmetry = true}).cnf));
  }

  RadoFormula f43 = build_formula(parse_equation("x-y=2z"), 43, 3);
  CHECK(is_sat(truncate(f43, 42).cnf));
  CHECK_FALSE(is_sat(f43.cnf));
}

TEST_CASE("dimacs round trip and streaming") {
  for (const auto& c : kSuite) {
    LinearEquation e(c);
    for (bool opt : {false, true})
      for (bool sym : {false, true}) {
        RadoFormula f = build_formula(e, 25, 3, {.optional = opt, .symmetry = sym});
        std::vector<std::string> comments = {"test"};
        std::string text = to_dimacs(f.cnf, comments);
        CHECK(parse_dimacs(text) == f.cnf);
        std::ostringstream os;
        write_formula_streaming(e, 25, 3, {.optional = opt, .symmetry = sym}, os, comments);
        CHECK(os.str() == text);
      }
  }
  CHECK_THROWS(parse_dimacs("p cnf 2 2\n1 2 0\n"));
  CHECK_THROWS(parse_dimacs("p cnf 2 1\n1 3 0\n"));
  CHECK_THROWS(parse_dimacs("1 2 0\n"));
}

TEST_CASE("fingerprint ignores clause order") {
  CnfFormula a(3), b(3);
  a.add_clause({1, 2});
  a.add_clause({-3});
  b.add_clause({-3});
  b.add_clause({2, 1});
  CHECK(canonical_fingerprint(a) == canonical_fingerprint(b));
  b.add_clause({3, 1});
  CHECK(canonical_fingerprint(a) != canonical_fingerprint(b));
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("decode") {
  Model m(13, -1);
  for (int v : {1, 5, 9, 12}) m[v] = 1;
  Coloring c = decode_model(m, 4, 3);
  CHECK(c.assignment() == std::vector<int>{1, 2, 3, 3});
  Model back = encode_coloring(c);
  REQUIRE(back.size() == m.size());
  CHECK(std::equal(back.begin() + 1, back.end(), m.begin() + 1));
  Model partial(13, 0);
  CHECK_THROWS_AS(decode_model(partial, 4, 3), std::invalid_argument);
  Model none(13, -1);
  CHECK_THROWS_AS(decode_model(none, 4, 3), std::invalid_argument);
}

TEST_CASE("encoding matches brute-force colorability") {
  for (const auto& c : kSuite)
    for (int k = 1; k <= 3; ++k)
      for (std::int64_t n = 1; n <= 12; ++n) {
        LinearEquation e(c);
        RadoFormula f = build_formula(e, n, k);
        SolverVerdict v = solve(f.cnf, BackendConfig::internal());
        bool want = oracle::colorable(c, n, k);
        CHECK((v.status == Verdict::Sat) == want);
        if (v.model) CHECK(is_valid(verify_coloring(e, decode_model(*v.model, n, k))));
      }
}

TEST_CASE("optional clauses and symmetry do not change satisfiability") {
  for (const auto& c : kSuite)
    for (int k = 1; k <= 3; ++k)
      for (std::int64_t n = 1; n <= 10; ++n) {
        LinearEquation e(c);
        bool base = oracle::colorable(c, n, k);
        CHECK(is_sat(build_formula(e, n, k, {.optional = false}).cnf) == base);
        CHECK(is_sat(build_formula(e, n, k, {.optional = false, .symmetry = true}).cnf) == base);
        CHECK(is_sat(build_formula(e, n, k, {.optional = true, .symmetry = true}).cnf) == base);
        // small enough for a truth table
        if (n * k <= 18) {
          RadoFormula s = build_formula(e, n, k, {.optional = true, .symmetry = true});
          CHECK(oracle::satisfiable(s.cnf.var_count(), clauses(s.cnf)) == base);
        }
      }
}

TEST_CASE("symmetry with first-use ordering keeps satisfiability for k=4") {
  // R_4(x+y=z) = 45: colorable at 44 only
  LinearEquation e = parse_equation("x+y=z");
  CHECK(is_sat(build_formula(e, 44, 4, {.optional = true, .symmetry = true}).cnf));
  for (std::int64_t n = 5; n <= 12; ++n)
    CHECK(is_sat(build_formula(parse_equation("x-y=2z"), n, 4, {.optional = false, .symmetry = true}).cnf) ==
          oracle::colorable({1, -1, -2}, n, 4));
}

TEST_CASE("unsatisfiability is monotone in n") {
  for (const auto& c : kSuite) {
    LinearEquation e(c);
    bool unsat_seen = false;
    for (std::int64_t n = 1; n <= 40; ++n) {
      bool s = is_sat(build_formula(e, n, 2).cnf);
      if (unsat_seen) CHECK_FALSE(s);
      unsat_seen = unsat_seen || !s;
    }
    CHECK(unsat_seen);
  }
}

}
