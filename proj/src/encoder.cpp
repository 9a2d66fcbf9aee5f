#include "rado/encoder.hpp"

#include <algorithm>
#include <climits>
#include <ostream>
#include <stdexcept>

namespace rado {

namespace {

void check_sizes(std::int64_t n, int k) {
  if (n < 1) throw std::invalid_argument("formula needs n >= 1");
  if (k < 1) throw std::invalid_argument("formula needs k >= 1");
  if (n > INT_MAX / k) throw std::overflow_error("variable id range overflows");
}

// Calls emit(clause) for each clause in canonical order.
template <class Emit>
std::size_t generate(const LinearEquation& eq, std::int64_t n, int k, EncodeOptions opts,
                     const std::vector<std::int64_t>& flat_solutions, Emit&& emit) {
  const VarMap vm{n, k};
  const std::size_t m = eq.arity();
  std::vector<int> clause;
  clause.reserve(std::max<std::size_t>(m, static_cast<std::size_t>(k)));

  for (std::int64_t j = 1; j <= n; ++j) {
    clause.clear();
    for (int i = 1; i <= k; ++i) clause.push_back(vm.var(j, i));
    emit(std::span<const int>(clause));
  }
  for (int i = 1; i <= k; ++i) {
    for (std::size_t s = 0; s < flat_solutions.size(); s += m) {
      clause.clear();
      for (std::size_t t = 0; t < m; ++t) clause.push_back(-vm.var(flat_solutions[s + t], i));
      clause.resize(dedup_literals(clause));
      emit(std::span<const int>(clause));
    }
  }
  if (opts.optional) {
    for (std::int64_t j = 1; j <= n; ++j)
      for (int i1 = 1; i1 <= k; ++i1)
        for (int i2 = i1 + 1; i2 <= k; ++i2) {
          int c[2] = {-vm.var(j, i1), -vm.var(j, i2)};
          emit(std::span<const int>(c, 2));
        }
  }
  std::size_t before_symmetry = 0;
  if (opts.symmetry) {
    for (const auto& c : symmetry_clauses(eq, n, k)) {
      emit(std::span<const int>(c));
      ++before_symmetry;
    }
  }
  return before_symmetry;
}

std::vector<std::int64_t> flat_solutions(const LinearEquation& eq, std::int64_t n) {
  std::vector<std::int64_t> flat;
  enumerate_solutions(eq, n, [&](std::span<const std::int64_t> s) {
    flat.insert(flat.end(), s.begin(), s.end());
    return true;
  });
  return flat;
}

}  // namespace

std::optional<std::pair<std::int64_t, std::int64_t>> symmetry_anchor(
    const LinearEquation& eq, std::int64_t n) {
  if (eq.arity() != 3 || n < 1) return std::nullopt;
  std::optional<std::pair<std::int64_t, std::int64_t>> anchor;
  enumerate_solutions(eq, n, [&](std::span<const std::int64_t> s) {
    const std::int64_t x = s[0], y = s[1], z = s[2];
    if (x == y && y != z) anchor = {x, z};
    else if (x == z && z != y) anchor = {x, y};
    else if (y == z && z != x) anchor = {y, x};
    return !anchor.has_value();
  });
  return anchor;
}

std::vector<std::vector<int>> symmetry_clauses(const LinearEquation& eq, std::int64_t n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 2) return out;
  auto anchor = symmetry_anchor(eq, n);
  if (!anchor) return out;
  const VarMap vm{n, k};
  out.push_back({vm.var(anchor->first, 1)});
  out.push_back({vm.var(anchor->second, 2)});
  for (int i = 4; i <= k; ++i) {
    for (std::int64_t j = 1; j <= n; ++j) {
      std::vector<int> c{-vm.var(j, i)};
      for (std::int64_t jp = 1; jp < j; ++jp) c.push_back(vm.var(jp, i - 1));
      out.push_back(std::move(c));
    }
  }
  return out;
}

RadoFormula build_formula(const LinearEquation& eq, std::int64_t n, int k, EncodeOptions opts) {
  check_sizes(n, k);
  RadoFormula f{eq, n, k, opts, CnfFormula(static_cast<int>(n * k)), 0, 0};
  const auto flat = flat_solutions(eq, n);
  f.solution_count = flat.size() / eq.arity();
  const std::size_t pos = static_cast<std::size_t>(n);
  const std::size_t opt = opts.optional ? static_cast<std::size_t>(n) * k * (k - 1) / 2 : 0;
  f.cnf.reserve(pos + opt + f.solution_count * k,
                pos * k + 2 * opt + flat.size() * k);
  std::size_t sym = generate(eq, n, k, opts, flat,
                             [&](std::span<const int> c) { f.cnf.add_clause(c); });
  f.symmetry_begin = f.cnf.clause_count() - sym;
  return f;
}

RadoFormula truncate(const RadoFormula& f, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("truncate needs m >= 1");
  if (m >= f.n) throw std::invalid_argument("truncate needs m < n");
  RadoFormula out{f.eq, m, f.k, f.opts, CnfFormula(static_cast<int>(m * f.k)), 0, 0};
  const int limit = static_cast<int>(m * f.k);
  for (std::size_t i = 0; i < f.symmetry_begin; ++i) {
    auto c = f.cnf.clause(i);
    bool keep = std::all_of(c.begin(), c.end(), [&](int l) { return std::abs(l) <= limit; });
    if (keep) out.cnf.add_clause(c);
  }
  out.solution_count = count_solutions(f.eq, m);
  out.symmetry_begin = out.cnf.clause_count();
  if (f.opts.symmetry)
    for (const auto& c : symmetry_clauses(f.eq, m, f.k)) out.cnf.add_clause(c);
  return out;
}

void write_formula_streaming(const LinearEquation& eq, std::int64_t n, int k,
                             EncodeOptions opts, std::ostream& out,
                             std::span<const std::string> comments) {
  check_sizes(n, k);
  const std::size_t solutions = count_solutions(eq, n);
  std::size_t clauses = static_cast<std::size_t>(n) + solutions * k;
  if (opts.optional) clauses += static_cast<std::size_t>(n) * k * (k - 1) / 2;
  const auto sym = opts.symmetry ? symmetry_clauses(eq, n, k) : std::vector<std::vector<int>>{};
  clauses += sym.size();
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p cnf " << n * k << ' ' << clauses << '\n';

  const VarMap vm{n, k};
  auto put = [&](std::span<const int> c) {
    for (int l : c) out << l << ' ';
    out << "0\n";
  };
  std::vector<int> clause;
  for (std::int64_t j = 1; j <= n; ++j) {
    clause.clear();
    for (int i = 1; i <= k; ++i) clause.push_back(vm.var(j, i));
    put(clause);
  }
  for (int i = 1; i <= k; ++i) {
    enumerate_solutions(eq, n, [&](std::span<const std::int64_t> s) {
      clause.clear();
      for (auto v : s) clause.push_back(-vm.var(v, i));
      clause.resize(dedup_literals(clause));
      put(clause);
      return true;
    });
  }
  if (opts.optional)
    for (std::int64_t j = 1; j <= n; ++j)
      for (int i1 = 1; i1 <= k; ++i1)
        for (int i2 = i1 + 1; i2 <= k; ++i2) out << -vm.var(j, i1) << ' ' << -vm.var(j, i2) << " 0\n";
  for (const auto& c : sym) put(c);
}

Coloring decode_model(const Model& model, std::int64_t n, int k) {
  const VarMap vm{n, k};
  if (static_cast<std::int64_t>(model.size()) < vm.var_count() + 1)
    throw std::invalid_argument("model does not cover every variable");
  std::vector<int> colors(static_cast<std::size_t>(n), 0);
  for (std::int64_t j = 1; j <= n; ++j) {
    for (int i = 1; i <= k; ++i) {
      signed char v = model[static_cast<std::size_t>(vm.var(j, i))];
      if (v == 0) throw std::invalid_argument("partial model");
      if (v > 0 && colors[static_cast<std::size_t>(j - 1)] == 0)
        colors[static_cast<std::size_t>(j - 1)] = i;
    }
    if (colors[static_cast<std::size_t>(j - 1)] == 0)
      throw std::invalid_argument("integer " + std::to_string(j) + " has no color in model");
  }
  return Coloring(k, std::move(colors));
}

Model encode_coloring(const Coloring& c) {
  const VarMap vm{c.size(), c.colors()};
  Model m(static_cast<std::size_t>(vm.var_count()) + 1, -1);
  m[0] = 0;
  for (std::int64_t j = 1; j <= c.size(); ++j) m[static_cast<std::size_t>(vm.var(j, c(j)))] = 1;
  return m;
}

bool model_satisfies(const CnfFormula& f, const Model& model) {
  for (std::size_t i = 0; i < f.clause_count(); ++i) {
    bool sat = false;
    for (int l : f.clause(i)) {
      std::size_t v = static_cast<std::size_t>(std::abs(l));
      if (v < model.size() && model[v] != 0 && ((model[v] > 0) == (l > 0))) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

}  // namespace rado
