#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rado/coloring.hpp"
#include "rado/encoder.hpp"
#include "rado/equation.hpp"
#include "rado/solver.hpp"

namespace rado {

/// Why R_k(E) is infinite. Every rule names a coloring of all positive
/// integers that avoids monochromatic solutions.
struct InfinityJustification {
  enum class Rule { LogColoringI, LogColoringII, ValuationsModK, NotTwoRegular };
  Rule rule = Rule::NotTwoRegular;
  int k = 0;
  std::int64_t prime = 0;  // ValuationsModK only
  std::string detail;
};

std::string to_string(InfinityJustification::Rule r);
std::optional<InfinityJustification::Rule> rule_from_string(const std::string& s);

/// Tries the log-colorings (both hypotheses), distinct valuations mod k
/// for primes p <= prime_bound, and Rado's 2-regularity criterion.
std::optional<InfinityJustification> detect_infinity(const LinearEquation& eq, int k,
                                                     std::int64_t prime_bound = 100);

/// Recomputes the precondition of a stored justification.
bool justification_holds(const LinearEquation& eq, const InfinityJustification& j);

/// Finite restriction to [1..n] of the coloring behind a justification.
/// NotTwoRegular uses the constant coloring (no positive solutions exist).
Coloring justification_coloring(const LinearEquation& eq, const InfinityJustification& j,
                                std::int64_t n);

struct SearchConfig {
  std::int64_t lower0 = 4;
  std::int64_t upper0 = 64;
  std::int64_t growth = 4;
  std::int64_t max_n = 1 << 20;
  double budget_seconds = 3600.0;
  BackendConfig backend;
  /// Symmetry clauses on probes for k >= 3.
  bool symmetry = true;
  bool optional = true;
};

struct Probe {
  std::int64_t n = 0;
  Verdict verdict = Verdict::Unknown;
  double seconds = 0.0;
  std::uint64_t conflicts = 0;
};

struct UpperCertificate {
  std::int64_t n = 0;
  EncodeOptions opts;
  std::string fingerprint;  // canonical_fingerprint of F_n^k(E) as solved
  std::string backend;
  SolverStats stats;
};

struct SearchOutcome {
  enum class Kind { Finite, Infinite, Unknown };
  Kind kind = Kind::Unknown;
  std::int64_t value = 0;  // Finite
  std::optional<InfinityJustification> justification;
  /// Avoiding coloring of [1..value-1] (Finite) or of the best lower
  /// bracket end (Unknown).
  std::optional<Coloring> lower_certificate;
  std::optional<UpperCertificate> upper_certificate;
  std::int64_t bracket_lo = 0;                // F_lo satisfiable
  std::optional<std::int64_t> bracket_hi;     // F_hi unsatisfiable
  std::vector<Probe> probes;
  double seconds = 0.0;
};

std::string to_string(SearchOutcome::Kind k);

/// R_k(E): infinity detection, then bracketing by repeated growth from
/// upper0, then binary search on truncations of the smallest
/// unsatisfiable formula found.
SearchOutcome rado_number(const LinearEquation& eq, int k, const SearchConfig& cfg = {});

/// Re-checks a Finite outcome: the coloring avoids E on [1..v-1] and the
/// fingerprint matches a fresh build of F_v^k(E).
bool certificates_sound(const LinearEquation& eq, int k, const SearchOutcome& outcome);

/// Expected value of a table cell: finite, infinite, or a lower bound only.
struct TableValue {
  enum class Kind { Finite, Infinite, LowerBound };
  Kind kind = Kind::Finite;
  std::int64_t value = 0;
  static TableValue parse(const std::string& s);
  std::string to_string() const;
};

struct TableCheckReport {
  bool pass = false;
  bool skipped = false;
  std::string message;
  SearchOutcome outcome;
};

/// Family ids: "diff" a(x-y)=bz, "sum" a(x+y)=bz, "abc" ax+by=cz.
LinearEquation family_equation(const std::string& family, std::int64_t a, std::int64_t b,
                               std::int64_t c = 0);

/// Recomputes one cell and compares. Infinite cells pass only with a
/// justification that re-checks; lower-bound-only cells are skipped.
TableCheckReport check_table_entry(const std::string& family, std::int64_t a, std::int64_t b,
                                   std::int64_t c, int k, const TableValue& expected,
                                   const SearchConfig& cfg = {});

}  // namespace rado
