#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace rado {

/// Flat clause database. Literals are nonzero signed DIMACS ids.
class CnfFormula {
public:
  CnfFormula() = default;
  explicit CnfFormula(int var_count) : var_count_(var_count) {}

  int var_count() const { return var_count_; }
  void set_var_count(int n) { var_count_ = n; }
  std::size_t clause_count() const { return starts_.size(); }
  std::size_t literal_count() const { return lits_.size(); }

  std::span<const int> clause(std::size_t i) const {
    std::size_t b = starts_[i];
    std::size_t e = i + 1 < starts_.size() ? starts_[i + 1] : lits_.size();
    return {lits_.data() + b, e - b};
  }

  /// Appends a clause verbatim. Rejects empty clauses and out-of-range ids.
  void add_clause(std::span<const int> lits);
  void add_clause(std::initializer_list<int> lits) {
    add_clause(std::span<const int>(lits.begin(), lits.size()));
  }
  void reserve(std::size_t clauses, std::size_t lits) {
    starts_.reserve(clauses);
    lits_.reserve(lits);
  }
  void append(const CnfFormula& other);

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

private:
  int var_count_ = 0;
  std::vector<int> lits_;
  std::vector<std::size_t> starts_;
};

/// Removes repeated literals in place, keeping first occurrences. Returns
/// the new length.
std::size_t dedup_literals(std::span<int> lits);

/// DIMACS writer: optional "c " comment lines, "p cnf V C" header, one
/// clause per line terminated by " 0".
void write_dimacs(const CnfFormula& f, std::ostream& out,
                  std::span<const std::string> comments = {});
std::string to_dimacs(const CnfFormula& f,
                      std::span<const std::string> comments = {});

/// Reads DIMACS CNF. Throws std::runtime_error on malformed input or when
/// the clause count disagrees with the header.
CnfFormula read_dimacs(std::istream& in);
CnfFormula parse_dimacs(const std::string& text);

/// Hex SHA-256 of the formula with literals sorted inside each clause and
/// clauses sorted, so the fingerprint ignores clause order.
std::string canonical_fingerprint(const CnfFormula& f);

/// Hex SHA-256 of arbitrary bytes.
std::string sha256_hex(std::string_view bytes);

}  // namespace rado
