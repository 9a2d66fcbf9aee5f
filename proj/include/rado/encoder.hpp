#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rado/cnf.hpp"
#include "rado/coloring.hpp"
#include "rado/equation.hpp"

namespace rado {

/// v_j^i  <->  (j - 1) * k + i  for j in [1..n], i in [1..k].
struct VarMap {
  std::int64_t n = 0;
  int k = 0;

  int var(std::int64_t j, int i) const { return static_cast<int>((j - 1) * k + i); }
  std::int64_t integer_of(int v) const { return (v - 1) / k + 1; }
  int color_of(int v) const { return (v - 1) % k + 1; }
  int var_count() const { return static_cast<int>(n * k); }
};

struct EncodeOptions {
  bool optional = true;
  bool symmetry = false;
};

/// F_n^k(E) together with what it encodes.
///
/// Clause order: positive clauses by integer, negative clauses grouped by
/// color and then in solution enumeration order, optional clauses by
/// integer and color pair, symmetry-breaking clauses last.
struct RadoFormula {
  LinearEquation eq;
  std::int64_t n = 0;
  int k = 0;
  EncodeOptions opts;
  CnfFormula cnf;
  /// Index of the first symmetry-breaking clause (== clause_count() when none).
  std::size_t symmetry_begin = 0;
  std::size_t solution_count = 0;

  VarMap vars() const { return VarMap{n, k}; }
};

RadoFormula build_formula(const LinearEquation& eq, std::int64_t n, int k,
                          EncodeOptions opts = {});

/// Unit clauses pinning the first solution with exactly two equal
/// coordinates: the repeated integer gets color 1, the other color 2. For
/// k > 3, colors 4..k additionally obey first-use order: j may take color
/// i only if some j' < j has color i - 1. Empty when k < 2, the equation
/// is not 3-variable, or no such solution lies in [1..n].
std::vector<std::vector<int>> symmetry_clauses(const LinearEquation& eq,
                                               std::int64_t n, int k);

/// The integers pinned by symmetry_clauses, if any: (repeated, other).
std::optional<std::pair<std::int64_t, std::int64_t>> symmetry_anchor(
    const LinearEquation& eq, std::int64_t n);

/// Drops every clause mentioning an integer j > m. Symmetry clauses are
/// regenerated for [1..m] so the result equals build_formula(eq, m, ...).
RadoFormula truncate(const RadoFormula& f, std::int64_t m);

/// Streams F_n^k(E) as DIMACS without materializing the clause list. Counts
/// are computed in a dry run first so the header is exact. Output is byte
/// identical to write_dimacs(build_formula(...)).
void write_formula_streaming(const LinearEquation& eq, std::int64_t n, int k,
                             EncodeOptions opts, std::ostream& out,
                             std::span<const std::string> comments = {});

/// Model indexed by variable id (index 0 unused): +1 true, -1 false, 0 unset.
using Model = std::vector<signed char>;

/// Integer j gets the least color i with v_j^i true. Throws
/// std::invalid_argument for partial models or integers with no color.
Coloring decode_model(const Model& model, std::int64_t n, int k);

/// Inverse of decode for a proper coloring: exactly one true variable per
/// integer.
Model encode_coloring(const Coloring& c);

bool model_satisfies(const CnfFormula& f, const Model& model);

}  // namespace rado
