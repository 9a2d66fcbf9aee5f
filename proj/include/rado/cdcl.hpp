#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rado::sat {

enum class Status { Sat, Unsat, Unknown };

struct Stats {
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
  std::uint64_t reductions = 0;
  std::uint64_t learnt_literals = 0;
};

struct Limits {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::optional<std::uint64_t> max_conflicts;
};

/// Conflict-driven clause learning solver: two watched literals with
/// blockers, VSIDS branching over a binary heap, phase saving, Luby
/// restarts, first-UIP learning with recursive minimization, and
/// LBD-based learnt clause reduction.
///
/// Single-threaded; one instance owns all of its state.
class Solver {
public:
  explicit Solver(int num_vars, std::uint64_t seed = 0);

  /// DIMACS literals. Returns false once the formula is known UNSAT.
  bool add_clause(std::span<const int> lits);

  Status solve(const Limits& limits = {});

  /// Value of DIMACS variable v after Sat: +1 / -1.
  signed char model_value(int v) const { return model_[static_cast<std::size_t>(v)]; }
  const std::vector<signed char>& model() const { return model_; }
  const Stats& stats() const { return stats_; }
  int num_vars() const { return num_vars_; }

private:
  using Lit = std::uint32_t;  // 2 * var + sign, var 0-based
  using CRef = std::uint32_t;
  static constexpr CRef kNoReason = 0xffffffffu;
  static constexpr CRef kLearntBit = 0x80000000u;
  static constexpr int kHeader = 3;  // size, flags(lbd<<2 | deleted<<1 | learnt), activity

  struct Watcher {
    CRef cref;
    Lit blocker;
  };

  static Lit mk(int var, bool neg) { return static_cast<Lit>(2 * var + (neg ? 1 : 0)); }
  static int var_of(Lit l) { return static_cast<int>(l >> 1); }
  static Lit neg(Lit l) { return l ^ 1u; }
  signed char value(Lit l) const {
    signed char v = assigns_[static_cast<std::size_t>(var_of(l))];
    return (l & 1u) ? static_cast<signed char>(-v) : v;
  }

  std::uint32_t* clause_mem(CRef c) {
    return (c & kLearntBit) ? &learnt_mem_[c & ~kLearntBit] : &orig_mem_[c];
  }
  const std::uint32_t* clause_mem(CRef c) const {
    return (c & kLearntBit) ? &learnt_mem_[c & ~kLearntBit] : &orig_mem_[c];
  }
  std::uint32_t clause_size(CRef c) const { return clause_mem(c)[0]; }
  Lit* clause_lits(CRef c) { return clause_mem(c) + kHeader; }
  std::uint32_t clause_lbd(CRef c) const { return clause_mem(c)[1] >> 2; }
  float& clause_activity(CRef c) { return *reinterpret_cast<float*>(clause_mem(c) + 2); }

  CRef alloc_clause(std::span<const Lit> lits, bool learnt, std::uint32_t lbd);
  void attach(CRef c);
  bool locked(CRef c) const;

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  void enqueue(Lit l, CRef reason);
  CRef propagate();
  void analyze(CRef confl, std::vector<Lit>& out, int& backtrack_level, std::uint32_t& lbd);
  bool lit_redundant(Lit p, std::uint32_t abstract_levels);
  std::uint32_t abstract_level(int v) const { return 1u << (level_[static_cast<std::size_t>(v)] & 31); }
  void cancel_until(int level);
  std::optional<Lit> pick_branch();
  void reduce_db();
  void relocate_learnts();

  void var_bump(int v);
  void var_decay() { var_inc_ /= var_decay_; }
  void clause_bump(CRef c);
  void clause_decay() { cla_inc_ /= cla_decay_; }

  // Binary max-heap over variables keyed by activity.
  void heap_insert(int v);
  int heap_pop();
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  bool heap_less(int a, int b) const { return activity_[static_cast<std::size_t>(a)] > activity_[static_cast<std::size_t>(b)]; }

  static double luby(double y, int x);

  int num_vars_;
  bool ok_ = true;
  std::vector<std::uint32_t> orig_mem_;
  std::vector<std::uint32_t> learnt_mem_;
  std::vector<CRef> learnts_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<signed char> assigns_;
  std::vector<signed char> polarity_;  // saved phase: 1 means negative
  std::vector<int> level_;
  std::vector<CRef> reason_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double var_decay_ = 0.95;
  double cla_inc_ = 1.0;
  double cla_decay_ = 0.999;
  std::vector<int> heap_;
  std::vector<int> heap_index_;

  std::vector<char> seen_;
  std::vector<Lit> analyze_stack_;
  std::vector<Lit> analyze_toclear_;
  std::vector<int> lbd_stamp_;
  int lbd_counter_ = 0;

  std::uint64_t next_reduce_ = 2000;
  std::uint64_t reduce_increment_ = 300;

  std::vector<signed char> model_;
  Stats stats_;
};

}  // namespace rado::sat
