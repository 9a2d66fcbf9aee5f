#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rado/cdcl.hpp"
#include "rado/cnf.hpp"
#include "rado/encoder.hpp"

namespace rado {

enum class Verdict { Sat, Unsat, Unknown };

std::string to_string(Verdict v);

struct SolverStats {
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
  double seconds = 0.0;
};

struct SolverVerdict {
  Verdict status = Verdict::Unknown;
  std::optional<Model> model;  // present iff Sat; revalidated
  SolverStats stats;
  std::string backend;  // "internal" or "external:<path>"
};

struct BackendConfig {
  enum class Kind { Internal, External };
  Kind kind = Kind::Internal;
  std::string path;               // external executable
  std::vector<std::string> args;  // passed before the CNF file name
  double budget_seconds = 3600.0;
  std::uint64_t seed = 0;

  static BackendConfig internal(double budget = 3600.0) {
    BackendConfig c;
    c.budget_seconds = budget;
    return c;
  }
  static BackendConfig external(std::string path, std::vector<std::string> args = {},
                                double budget = 3600.0) {
    BackendConfig c;
    c.kind = Kind::External;
    c.path = std::move(path);
    c.args = std::move(args);
    c.budget_seconds = budget;
    return c;
  }
  /// "internal" or "external:PATH".
  static BackendConfig parse(const std::string& spec, double budget);
  std::string id() const { return kind == Kind::Internal ? "internal" : "external:" + path; }
};

/// The external process exited without a status line.
struct BackendFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The external process printed something that is not solver output.
struct BackendParseError : std::runtime_error {
  BackendParseError(const std::string& what, std::string raw)
      : std::runtime_error(what), raw_output(std::move(raw)) {}
  std::string raw_output;
};

/// Thrown if a backend returns a model that falsifies some clause.
struct ModelValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SolverVerdict solve(const CnfFormula& f, const BackendConfig& cfg);

/// Runs `path args... file.cnf` and parses "s " / "v " lines.
SolverVerdict solve_external(const CnfFormula& f, const std::string& path,
                             const std::vector<std::string>& args,
                             double budget_seconds = 3600.0);

/// Parses SAT-competition style output for a formula with `num_vars`
/// variables. Throws BackendParseError when no status line is present or a
/// line cannot be understood.
SolverVerdict parse_competition_output(const std::string& output, int num_vars);

/// Renders a verdict in SAT-competition style ("s ..." and "v ... 0").
std::string format_competition_output(const SolverVerdict& v);

}  // namespace rado
