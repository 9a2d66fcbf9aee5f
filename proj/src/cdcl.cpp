#include "rado/cdcl.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

namespace rado::sat {

Solver::Solver(int num_vars, std::uint64_t seed)
    : num_vars_(num_vars),
      watches_(2 * static_cast<std::size_t>(num_vars)),
      assigns_(static_cast<std::size_t>(num_vars), 0),
      polarity_(static_cast<std::size_t>(num_vars), 1),
      level_(static_cast<std::size_t>(num_vars), 0),
      reason_(static_cast<std::size_t>(num_vars), kNoReason),
      activity_(static_cast<std::size_t>(num_vars), 0.0),
      heap_index_(static_cast<std::size_t>(num_vars), -1),
      seen_(static_cast<std::size_t>(num_vars), 0),
      lbd_stamp_(static_cast<std::size_t>(num_vars) + 1, 0) {
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(0.0, 1e-5);
    for (auto& a : activity_) a = jitter(rng);
  }
  for (int v = 0; v < num_vars; ++v) heap_insert(v);
}

Solver::CRef Solver::alloc_clause(std::span<const Lit> lits, bool learnt, std::uint32_t lbd) {
  auto& mem = learnt ? learnt_mem_ : orig_mem_;
  const std::size_t at = mem.size();
  if (at + kHeader + lits.size() >= kLearntBit) throw std::length_error("clause arena exhausted");
  mem.push_back(static_cast<std::uint32_t>(lits.size()));
  mem.push_back((lbd << 2) | (learnt ? 1u : 0u));
  mem.push_back(0);
  mem.insert(mem.end(), lits.begin(), lits.end());
  return static_cast<CRef>(at) | (learnt ? kLearntBit : 0u);
}

void Solver::attach(CRef c) {
  Lit* lits = clause_lits(c);
  watches_[lits[0]].push_back({c, lits[1]});
  watches_[lits[1]].push_back({c, lits[0]});
}

bool Solver::locked(CRef c) const {
  const Lit first = clause_mem(c)[kHeader];
  return reason_[static_cast<std::size_t>(var_of(first))] == c && value(first) == 1;
}

bool Solver::add_clause(std::span<const int> dimacs) {
  if (!ok_) return false;
  cancel_until(0);
  std::vector<Lit> lits;
  lits.reserve(dimacs.size());
  for (int l : dimacs) {
    int v = std::abs(l) - 1;
    if (v < 0 || v >= num_vars_) throw std::out_of_range("literal outside solver variable range");
    lits.push_back(mk(v, l < 0));
  }
  std::sort(lits.begin(), lits.end());
  std::size_t j = 0;
  Lit prev = ~0u;
  for (Lit l : lits) {
    if (value(l) == 1 || l == neg(prev)) return true;  // satisfied or tautology
    if (value(l) != -1 && l != prev) lits[j++] = prev = l;
  }
  lits.resize(j);
  if (lits.empty()) return ok_ = false;
  if (lits.size() == 1) {
    enqueue(lits[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return ok_;
  }
  attach(alloc_clause(lits, false, 0));
  return true;
}

void Solver::enqueue(Lit l, CRef reason) {
  const auto v = static_cast<std::size_t>(var_of(l));
  assigns_[v] = (l & 1u) ? -1 : 1;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

Solver::CRef Solver::propagate() {
  CRef confl = kNoReason;
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit false_lit = neg(p);
    auto& ws = watches_[false_lit];
    ++stats_.propagations;
    std::size_t i = 0, j = 0;
    const std::size_t end = ws.size();
    while (i < end) {
      const Watcher w = ws[i];
      if (value(w.blocker) == 1) {
        ws[j++] = w;
        ++i;
        continue;
      }
      const CRef c = w.cref;
      Lit* lits = clause_lits(c);
      const std::uint32_t sz = clause_size(c);
      if (lits[0] == false_lit) {
        lits[0] = lits[1];
        lits[1] = false_lit;
      }
      ++i;
      const Lit first = lits[0];
      const Watcher nw{c, first};
      if (first != w.blocker && value(first) == 1) {
        ws[j++] = nw;
        continue;
      }
      bool moved = false;
      for (std::uint32_t k = 2; k < sz; ++k) {
        if (value(lits[k]) != -1) {
          lits[1] = lits[k];
          lits[k] = false_lit;
          watches_[lits[1]].push_back(nw);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = nw;
      if (value(first) == -1) {
        confl = c;
        qhead_ = trail_.size();
        while (i < end) ws[j++] = ws[i++];
      } else {
        enqueue(first, c);
      }
    }
    ws.resize(j);
    if (confl != kNoReason) break;
  }
  return confl;
}

void Solver::analyze(CRef confl, std::vector<Lit>& out, int& backtrack_level, std::uint32_t& lbd) {
  int path = 0;
  Lit p = ~0u;
  out.clear();
  out.push_back(0);
  std::size_t index = trail_.size();
  do {
    if (confl & kLearntBit) clause_bump(confl);
    const Lit* lits = clause_lits(confl);
    const std::uint32_t sz = clause_size(confl);
    for (std::uint32_t j = (p == ~0u ? 0 : 1); j < sz; ++j) {
      const Lit q = lits[j];
      const auto v = static_cast<std::size_t>(var_of(q));
      if (!seen_[v] && level_[v] > 0) {
        var_bump(static_cast<int>(v));
        seen_[v] = 1;
        if (level_[v] >= decision_level()) ++path;
        else out.push_back(q);
      }
    }
    do {
      --index;
    } while (!seen_[static_cast<std::size_t>(var_of(trail_[index]))]);
    p = trail_[index];
    confl = reason_[static_cast<std::size_t>(var_of(p))];
    seen_[static_cast<std::size_t>(var_of(p))] = 0;
    --path;
  } while (path > 0);
  out[0] = neg(p);

  analyze_toclear_.assign(out.begin(), out.end());
  std::uint32_t abstract = 0;
  for (std::size_t i = 1; i < out.size(); ++i) abstract |= abstract_level(var_of(out[i]));
  std::size_t j = 1;
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (reason_[static_cast<std::size_t>(var_of(out[i]))] == kNoReason || !lit_redundant(out[i], abstract))
      out[j++] = out[i];
  }
  out.resize(j);
  for (Lit l : analyze_toclear_) seen_[static_cast<std::size_t>(var_of(l))] = 0;

  if (out.size() == 1) {
    backtrack_level = 0;
  } else {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < out.size(); ++i)
      if (level_[static_cast<std::size_t>(var_of(out[i]))] > level_[static_cast<std::size_t>(var_of(out[max_i]))])
        max_i = i;
    std::swap(out[1], out[max_i]);
    backtrack_level = level_[static_cast<std::size_t>(var_of(out[1]))];
  }

  ++lbd_counter_;
  lbd = 0;
  for (Lit l : out) {
    int lv = level_[static_cast<std::size_t>(var_of(l))];
    if (lbd_stamp_[static_cast<std::size_t>(lv)] != lbd_counter_) {
      lbd_stamp_[static_cast<std::size_t>(lv)] = lbd_counter_;
      ++lbd;
    }
  }
  stats_.learnt_literals += out.size();
}

bool Solver::lit_redundant(Lit p, std::uint32_t abstract_levels) {
  analyze_stack_.clear();
  analyze_stack_.push_back(p);
  const std::size_t top = analyze_toclear_.size();
  while (!analyze_stack_.empty()) {
    const Lit q = analyze_stack_.back();
    analyze_stack_.pop_back();
    const CRef c = reason_[static_cast<std::size_t>(var_of(q))];
    const Lit* lits = clause_lits(c);
    const std::uint32_t sz = clause_size(c);
    for (std::uint32_t i = 1; i < sz; ++i) {
      const Lit l = lits[i];
      const auto v = static_cast<std::size_t>(var_of(l));
      if (!seen_[v] && level_[v] > 0) {
        if (reason_[v] != kNoReason && (abstract_level(static_cast<int>(v)) & abstract_levels) != 0) {
          seen_[v] = 1;
          analyze_stack_.push_back(l);
          analyze_toclear_.push_back(l);
        } else {
          for (std::size_t j = top; j < analyze_toclear_.size(); ++j)
            seen_[static_cast<std::size_t>(var_of(analyze_toclear_[j]))] = 0;
          analyze_toclear_.resize(top);
          return false;
        }
      }
    }
  }
  return true;
}

void Solver::cancel_until(int level) {
  if (decision_level() <= level) return;
  const std::size_t stop = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(level)]);
  for (std::size_t c = trail_.size(); c-- > stop;) {
    const Lit l = trail_[c];
    const auto v = static_cast<std::size_t>(var_of(l));
    assigns_[v] = 0;
    reason_[v] = kNoReason;
    polarity_[v] = static_cast<signed char>(l & 1u);
    if (heap_index_[v] < 0) heap_insert(static_cast<int>(v));
  }
  trail_.resize(stop);
  qhead_ = stop;
  trail_lim_.resize(static_cast<std::size_t>(level));
}

std::optional<Solver::Lit> Solver::pick_branch() {
  while (!heap_.empty()) {
    int v = heap_pop();
    if (assigns_[static_cast<std::size_t>(v)] == 0) return mk(v, polarity_[static_cast<std::size_t>(v)] != 0);
  }
  return std::nullopt;
}

void Solver::var_bump(int v) {
  auto& a = activity_[static_cast<std::size_t>(v)];
  a += var_inc_;
  if (a > 1e100) {
    for (auto& x : activity_) x *= 1e-100;
    var_inc_ *= 1e-100;
  }
  int pos = heap_index_[static_cast<std::size_t>(v)];
  if (pos >= 0) heap_up(static_cast<std::size_t>(pos));
}

void Solver::clause_bump(CRef c) {
  float& a = clause_activity(c);
  a += static_cast<float>(cla_inc_);
  if (a > 1e20f) {
    for (CRef l : learnts_) clause_activity(l) *= 1e-20f;
    cla_inc_ *= 1e-20;
  }
}

void Solver::heap_insert(int v) {
  heap_index_[static_cast<std::size_t>(v)] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

int Solver::heap_pop() {
  int top = heap_.front();
  heap_.front() = heap_.back();
  heap_index_[static_cast<std::size_t>(heap_.front())] = 0;
  heap_.pop_back();
  heap_index_[static_cast<std::size_t>(top)] = -1;
  if (!heap_.empty()) heap_down(0);
  return top;
}

void Solver::heap_up(std::size_t i) {
  int v = heap_[i];
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_index_[static_cast<std::size_t>(heap_[i])] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_index_[static_cast<std::size_t>(v)] = static_cast<int>(i);
}

void Solver::heap_down(std::size_t i) {
  int v = heap_[i];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_index_[static_cast<std::size_t>(heap_[i])] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_index_[static_cast<std::size_t>(v)] = static_cast<int>(i);
}

void Solver::reduce_db() {
  ++stats_.reductions;
  std::vector<CRef> candidates;
  for (CRef c : learnts_)
    if (clause_lbd(c) > 2 && clause_size(c) > 2 && !locked(c)) candidates.push_back(c);
  std::sort(candidates.begin(), candidates.end(), [this](CRef a, CRef b) {
    std::uint32_t la = clause_lbd(a), lb = clause_lbd(b);
    if (la != lb) return la > lb;
    return clause_activity(a) < clause_activity(b);
  });
  const std::size_t remove = candidates.size() / 2;
  for (std::size_t i = 0; i < remove; ++i) clause_mem(candidates[i])[1] |= 2u;
  relocate_learnts();
}

void Solver::relocate_learnts() {
  std::vector<std::uint32_t> fresh;
  fresh.reserve(learnt_mem_.size());
  std::vector<CRef> kept;
  kept.reserve(learnts_.size());
  for (CRef c : learnts_) {
    std::uint32_t* old = clause_mem(c);
    if (old[1] & 2u) continue;
    const std::size_t at = fresh.size();
    fresh.insert(fresh.end(), old, old + kHeader + old[0]);
    old[2] = static_cast<std::uint32_t>(at);  // forwarding address
    kept.push_back(static_cast<CRef>(at) | kLearntBit);
  }
  auto forward = [this](CRef c) { return kLearntBit | learnt_mem_[(c & ~kLearntBit) + 2]; };
  for (auto& ws : watches_) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      Watcher w = ws[i];
      if (w.cref & kLearntBit) {
        if (learnt_mem_[(w.cref & ~kLearntBit) + 1] & 2u) continue;
        w.cref = forward(w.cref);
      }
      ws[j++] = w;
    }
    ws.resize(j);
  }
  for (Lit l : trail_) {
    CRef& r = reason_[static_cast<std::size_t>(var_of(l))];
    if (r != kNoReason && (r & kLearntBit)) r = forward(r);
  }
  learnt_mem_.swap(fresh);
  learnts_.swap(kept);
}

double Solver::luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

Status Solver::solve(const Limits& limits) {
  model_.clear();
  if (!ok_) return Status::Unsat;
  cancel_until(0);
  if (propagate() != kNoReason) {
    ok_ = false;
    return Status::Unsat;
  }
  auto out_of_budget = [&]() {
    if (limits.max_conflicts && stats_.conflicts >= *limits.max_conflicts) return true;
    return limits.deadline && std::chrono::steady_clock::now() >= *limits.deadline;
  };

  std::vector<Lit> learnt;
  int restarts = 0;
  for (;;) {
    const auto budget = static_cast<std::uint64_t>(luby(2.0, restarts++) * 100.0);
    std::uint64_t local = 0;
    for (;;) {
      const CRef confl = propagate();
      if (confl != kNoReason) {
        ++stats_.conflicts;
        ++local;
        if (decision_level() == 0) {
          ok_ = false;
          return Status::Unsat;
        }
        int bt = 0;
        std::uint32_t lbd = 0;
        analyze(confl, learnt, bt, lbd);
        cancel_until(bt);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          CRef c = alloc_clause(learnt, true, lbd);
          learnts_.push_back(c);
          attach(c);
          clause_bump(c);
          enqueue(learnt[0], c);
        }
        var_decay();
        clause_decay();
        if ((stats_.conflicts & 63u) == 0 && out_of_budget()) {
          cancel_until(0);
          return Status::Unknown;
        }
        continue;
      }
      if (local >= budget) {
        ++stats_.restarts;
        cancel_until(0);
        break;
      }
      if (stats_.conflicts >= next_reduce_) {
        next_reduce_ = stats_.conflicts + 2000 + reduce_increment_ * stats_.reductions;
        reduce_db();
      }
      auto next = pick_branch();
      if (!next) {
        model_.assign(static_cast<std::size_t>(num_vars_) + 1, -1);
        model_[0] = 0;
        for (int v = 0; v < num_vars_; ++v)
          model_[static_cast<std::size_t>(v) + 1] = assigns_[static_cast<std::size_t>(v)] > 0 ? 1 : -1;
        return Status::Sat;
      }
      ++stats_.decisions;
      if ((stats_.decisions & 1023u) == 0 && out_of_budget()) {
        cancel_until(0);
        return Status::Unknown;
      }
      trail_lim_.push_back(static_cast<int>(trail_.size()));
      enqueue(*next, kNoReason);
    }
  }
}

}  // namespace rado::sat
