// One line per acceptance criterion. Exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "oracle.hpp"
#include "rado/dor.hpp"
#include "rado/encoder.hpp"
#include "rado/search.hpp"
#include "rado/solver.hpp"
#include "rado/symbolic.hpp"

using namespace rado;
using Clock = std::chrono::steady_clock;

namespace {

// time limits, seconds
constexpr double kSchurLimit = 5;
constexpr double kDiffLimit = 60;
constexpr double kCubeLimit = 120;
constexpr double kSumLimit = 60;
constexpr double kFourColorLimit = 600;
constexpr double kDorSlowLimit = 1800;
constexpr double kDorFastLimit = 120;
constexpr double kFamilyUnsatLimit = 60;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Check {
  bool ok = true;
  std::string notes;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!notes.empty()) notes += "; ";
      notes += what;
    }
  }
};

int failures = 0;

void run(int id, const std::string& title, const std::function<void(Check&)>& body) {
  auto t0 = Clock::now();
  Check c;
  try {
    body(c);
  } catch (const std::exception& e) {
    c.require(false, std::string("exception: ") + e.what());
  }
  std::printf("criterion %2d: %s  %-58s %8.2fs%s%s\n", id, c.ok ? "PASS" : "FAIL", title.c_str(), since(t0),
              c.notes.empty() ? "" : "  ", c.notes.c_str());
  std::fflush(stdout);
  failures += !c.ok;
}

// Timed R_k with certificate re-check.
void expect_finite(Check& c, const LinearEquation& eq, int k, std::int64_t want, double limit,
                   const SearchConfig& cfg = {}) {
  auto t0 = Clock::now();
  SearchOutcome o = rado_number(eq, k, cfg);
  double s = since(t0);
  std::string tag = eq.to_string() + " k=" + std::to_string(k);
  if (o.kind != SearchOutcome::Kind::Finite) {
    c.require(false, tag + " not finite");
    return;
  }
  c.require(o.value == want, tag + " gave " + std::to_string(o.value));
  c.require(s < limit, tag + " took " + std::to_string(s) + "s");
  c.require(certificates_sound(eq, k, o), tag + " certificates");
}

bool scan_valid3(const LinearEquation& eq, const Coloring& col) {
  return is_valid(verify_coloring(eq, col));
}

bool is_sat(const CnfFormula& f) { return solve(f, BackendConfig::internal()).status == Verdict::Sat; }

std::set<std::vector<int>> sorted_clause_set(const CnfFormula& f, std::size_t begin, std::size_t end) {
  std::set<std::vector<int>> out;
  for (std::size_t i = begin; i < end; ++i) {
    auto c = f.clause(i);
    std::vector<int> v(c.begin(), c.end());
    std::sort(v.begin(), v.end());
    out.insert(v);
  }
  return out;
}

std::multiset<std::vector<int>> clause_multiset(const CnfFormula& f) {
  std::multiset<std::vector<int>> out;
  for (std::size_t i = 0; i < f.clause_count(); ++i) {
    auto c = f.clause(i);
    std::vector<int> v(c.begin(), c.end());
    std::sort(v.begin(), v.end());
    out.insert(v);
  }
  return out;
}

// Parametric UNSAT plus atom certification for a univariate family.
struct FamilyRun {
  ParametricFamily fam;
  SymbolicSolutions sol;
  ParametricFormula pf;
  double unsat_seconds = 0;
  bool unsat = false;
  bool atoms_certified = false;
};

FamilyRun run_family(const std::string& file) {
  FamilyRun r;
  r.fam = family_from_json(read_file(std::string(RADO_DATA_DIR) + "/families/" + file));
  r.sol = find_polynomials(r.fam, r.fam.S0, r.fam.G0, r.fam.max_iterations);
  r.pf = build_parametric_formula(r.fam, r.fam.k, r.sol);
  BoundChecker bc(r.fam);
  r.atoms_certified = true;
  for (const auto& p : r.pf.atoms) r.atoms_certified = r.atoms_certified && bc.verified(p);
  auto t0 = Clock::now();
  r.unsat = solve(r.pf.cnf, BackendConfig::internal()).status == Verdict::Unsat;
  r.unsat_seconds = since(t0);
  return r;
}

const std::vector<std::vector<std::int64_t>> kSuite = {{1, 1, -1}, {1, -1, -2}, {2, 1, -3}, {1, 2, -4}};

}  // namespace

int main() {
  run(1, "R_3(x+y=z)=14 under 5s, R_2(x+y=z)=5", [](Check& c) {
    LinearEquation e = parse_equation("x+y=z");
    expect_finite(c, e, 3, 14, kSchurLimit);
    expect_finite(c, e, 2, 5, kSchurLimit);
    c.require(oracle::rado({1, 1, -1}, 2, 10) == 5, "brute force R_2");
  });

  run(2, "R_3(x-y=bz)=43,94,173,286 for b=2..5", [](Check& c) {
    for (std::int64_t b = 2; b <= 5; ++b) {
      std::int64_t m = b + 2, f = m * m * m - m * m - m - 1;
      expect_finite(c, make_diff(1, b), 3, f, kDiffLimit);
    }
  });

  run(3, "R_3(a(x-y)=z)=27,64,125 with the v_a coloring", [](Check& c) {
    for (std::int64_t a = 3; a <= 5; ++a) {
      LinearEquation eq = make_diff(a, 1);
      expect_finite(c, eq, 3, a * a * a, kCubeLimit);
      c.require(scan_valid3(eq, va_coloring(a, 3, a * a * a - 1)), "v_a coloring a=" + std::to_string(a));
    }
  });

  run(4, "R_3(2(x+y)=3z)=54, x+y=4z and 4(x+y)=z infinite", [](Check& c) {
    expect_finite(c, make_sum(2, 3), 3, 54, kSumLimit);
    struct Inf {
      LinearEquation eq;
      InfinityJustification::Rule rule;
    };
    for (const auto& [eq, rule] : {Inf{make_sum(1, 4), InfinityJustification::Rule::LogColoringII},
                                   Inf{make_sum(4, 1), InfinityJustification::Rule::LogColoringI}}) {
      auto t0 = Clock::now();
      SearchOutcome o = rado_number(eq, 3);
      c.require(since(t0) < kSumLimit, eq.to_string() + " slow");
      c.require(o.kind == SearchOutcome::Kind::Infinite && o.justification && o.justification->rule == rule,
                eq.to_string() + " justification");
      if (o.justification) {
        c.require(justification_holds(eq, *o.justification), eq.to_string() + " hypothesis");
        c.require(scan_valid3(eq, justification_coloring(eq, *o.justification, 10000)),
                  eq.to_string() + " coloring");
      }
    }
  });

  run(5, "R_4(x-y=z)=45 with symmetry breaking", [](Check& c) {
    SearchConfig cfg;
    cfg.symmetry = true;
    expect_finite(c, parse_equation("x-y=z"), 4, 45, kFourColorLimit, cfg);
  });

  run(6, "dor grid, 125 cells", [](Check& c) {
    auto doc = nlohmann::json::parse(read_file(std::string(RADO_DATA_DIR) + "/tables.json"));
    int cells = 0, matched = 0;
    for (const auto& t : doc["tables"]) {
      if (t["kind"] != "dor") continue;
      std::int64_t cc = t["c"];
      for (const auto& cell : t["cells"]) {
        std::int64_t a = cell["a"], b = cell["b"];
        LinearEquation eq = make_abc(a, b, cc);
        TableValue want = TableValue::parse(cell["value"]);
        auto t0 = Clock::now();
        DorResult r = compute_dor(eq);
        double s = since(t0);
        ++cells;
        bool slow_ok = false;
        for (const auto& [k, o] : r.computations)
          slow_ok = slow_ok || (o.kind == SearchOutcome::Kind::Finite && o.value > 300);
        c.require(s < (slow_ok ? kDorSlowLimit : kDorFastLimit), eq.to_string() + " took " + std::to_string(s));
        bool ok = want.kind == TableValue::Kind::Infinite ? r.kind == DorResult::Kind::Infinite
                                                           : r.kind == DorResult::Kind::Exact && r.value == want.value;
        if (ok) ++matched;
        else c.require(false, eq.to_string() + " expected " + want.to_string());
      }
    }
    c.require(cells == 125, "cell count " + std::to_string(cells));
    c.notes = std::to_string(matched) + "/" + std::to_string(cells) + " cells" + (c.notes.empty() ? "" : "; " + c.notes);
  });

  run(7, "x-y=(m-2)z family: UNSAT, atoms certified, m=10 ground check", [](Check& c) {
    FamilyRun r = run_family("x_minus_y_eq_m_minus_2_z.json");
    c.require(r.unsat, "parametric formula satisfiable");
    c.require(r.unsat_seconds < kFamilyUnsatLimit, "UNSAT slow");
    c.require(r.atoms_certified, "uncertified atom");
    std::vector<std::int64_t> ten{10};
    InstantiationReport rep = instantiate_and_check(r.pf, r.fam, ten);
    c.require(rep.ok && rep.bound == 889, "instantiation at m=10");
    if (!rep.ok) return;
    RadoFormula concrete = build_formula(make_diff(1, 8), 889, 3);
    std::size_t neg_begin = static_cast<std::size_t>(concrete.n);
    std::size_t neg_end = neg_begin + static_cast<std::size_t>(concrete.k) * concrete.solution_count;
    auto negatives = sorted_clause_set(concrete.cnf, neg_begin, neg_end);
    std::size_t missing = 0;
    auto ground = ground_negative_clauses(r.pf, rep);
    for (const auto& g : ground) missing += !negatives.count(g);
    c.require(missing == 0, std::to_string(missing) + " ground clauses not in F_889");
    c.require(!is_sat(concrete.cnf), "F_889 satisfiable");
    c.notes = "|S|=" + std::to_string(r.sol.S.size()) + " |C|=" + std::to_string(r.sol.C.size()) +
              (c.notes.empty() ? "" : "; " + c.notes);
  });

  run(8, "a(x-y)=(a-1)z family: UNSAT, atoms certified, chi coloring a=3..8", [](Check& c) {
    FamilyRun r = run_family("a_x_minus_y_eq_a_minus_1_z.json");
    c.require(r.fam.max_iterations == 3, "iterations");
    c.require(r.unsat, "parametric formula satisfiable");
    c.require(r.atoms_certified, "uncertified atom");
    for (std::int64_t a = 3; a <= 8; ++a) {
      Coloring col = chi_aminus1_coloring(a);
      c.require(col.size() == a * a * a + (a - 1) * (a - 1) - 1, "chi domain a=" + std::to_string(a));
      c.require(scan_valid3(make_diff(a, a - 1), col), "chi coloring a=" + std::to_string(a));
    }
    c.notes = "|S|=" + std::to_string(r.sol.S.size()) + " |C|=" + std::to_string(r.sol.C.size()) +
              (c.notes.empty() ? "" : "; " + c.notes);
  });

  run(9, "encoding oracle equivalence, n<=12, k<=3", [](Check& c) {
    int agree = 0, total = 0;
    for (const auto& co : kSuite)
      for (int k = 1; k <= 3; ++k)
        for (std::int64_t n = 1; n <= 12; ++n) {
          ++total;
          agree += is_sat(build_formula(LinearEquation(co), n, k).cnf) == oracle::colorable(co, n, k);
        }
    c.require(agree == total, std::to_string(total - agree) + " disagreements");
    c.notes = std::to_string(agree) + "/" + std::to_string(total) + (c.notes.empty() ? "" : "; " + c.notes);
  });

  run(10, "properties: truncation, optional, symmetry, decode, monotone", [](Check& c) {
    for (const auto& co : kSuite) {
      LinearEquation eq(co);
      for (int k = 1; k <= 3; ++k) {
        RadoFormula big = build_formula(eq, 20, k, {.optional = true, .symmetry = true});
        for (std::int64_t m = 1; m < 20; ++m)
          c.require(clause_multiset(truncate(big, m).cnf) ==
                        clause_multiset(build_formula(eq, m, k, {.optional = true, .symmetry = true}).cnf),
                    "truncation " + eq.to_string());
        bool unsat_seen = false;
        for (std::int64_t n = 1; n <= 10; ++n) {
          bool base = oracle::colorable(co, n, k);
          c.require(is_sat(build_formula(eq, n, k, {.optional = false}).cnf) == base, "optional flag");
          c.require(is_sat(build_formula(eq, n, k, {.optional = true, .symmetry = true}).cnf) == base, "symmetry");
          SolverVerdict v = solve(build_formula(eq, n, k).cnf, BackendConfig::internal());
          if (v.model) c.require(is_valid(verify_coloring(eq, decode_model(*v.model, n, k))), "decode");
          bool s = v.status == Verdict::Sat;
          if (unsat_seen) c.require(!s, "monotone");
          unsat_seen = unsat_seen || !s;
        }
      }
    }
  });

  std::printf("%d criteria failed\n", failures);
  return failures;
}
