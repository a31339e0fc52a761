#include "sat.hpp"

#include <algorithm>

namespace tmb::sat {

void Solver::add_clause(std::vector<Lit> lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (size_t i = 0; i + 1 < lits.size(); ++i)
    if (lits[i] == negate(lits[i + 1])) return;  // tautology
  if (lits.empty()) {
    contradiction_ = true;
    return;
  }
  clauses_.push_back(std::move(lits));
}

bool Solver::enqueue(Lit l) {
  int v = var_of(l);
  int8_t want = sign_of(l) ? kFalse : kTrue;
  if (value_[v] != kUndef) return value_[v] == want;
  value_[v] = want;
  trail_.push_back(l);
  return true;
}

bool Solver::propagate() {
  while (qhead_ < trail_.size()) {
    Lit assigned = trail_[qhead_++];
    Lit falsified = negate(assigned);
    std::vector<int>& watch = watchers_[falsified];
    size_t keep = 0;
    for (size_t wi = 0; wi < watch.size(); ++wi) {
      int ci = watch[wi];
      std::vector<Lit>& cl = clauses_[ci];
      // Keep the falsified literal in slot 1.
      if (cl[0] == falsified) std::swap(cl[0], cl[1]);
      auto lit_value = [&](Lit l) -> int8_t {
        int8_t v = value_[var_of(l)];
        if (v == kUndef) return kUndef;
        bool is_true = (v == kTrue) != sign_of(l);
        return is_true ? kTrue : kFalse;
      };
      if (lit_value(cl[0]) == kTrue) {
        watch[keep++] = ci;
        continue;
      }
      bool moved = false;
      for (size_t k = 2; k < cl.size(); ++k) {
        if (lit_value(cl[k]) != kFalse) {
          std::swap(cl[1], cl[k]);
          watchers_[cl[1]].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      // Clause is unit on cl[0] (or conflicting).
      watch[keep++] = ci;
      if (!enqueue(cl[0])) {
        for (size_t rest = wi + 1; rest < watch.size(); ++rest) watch[keep++] = watch[rest];
        watch.resize(keep);
        return false;
      }
    }
    watch.resize(keep);
  }
  return true;
}

void Solver::undo_to(size_t trail_size) {
  while (trail_.size() > trail_size) {
    value_[var_of(trail_.back())] = kUndef;
    trail_.pop_back();
  }
  qhead_ = trail_size;
}

std::optional<std::vector<bool>> Solver::solve() {
  if (contradiction_) return std::nullopt;
  value_.assign(nvars_, kUndef);
  trail_.clear();
  qhead_ = 0;
  watchers_.assign(2 * nvars_, {});

  // Units enqueue immediately; longer clauses watch their first two literals.
  for (size_t ci = 0; ci < clauses_.size(); ++ci) {
    std::vector<Lit>& cl = clauses_[ci];
    if (cl.size() == 1) {
      if (!enqueue(cl[0])) return std::nullopt;
    } else {
      watchers_[cl[0]].push_back(static_cast<int>(ci));
      watchers_[cl[1]].push_back(static_cast<int>(ci));
    }
  }

  struct Level {
    int var;
    bool flipped;
    size_t trail_size;
  };
  std::vector<Level> levels;

  if (!propagate()) return std::nullopt;
  size_t next_decision = 0;
  while (true) {
    // Lowest-index unassigned decision variable.
    while (next_decision < decision_order_.size() &&
           value_[decision_order_[next_decision]] != kUndef)
      ++next_decision;
    if (next_decision == decision_order_.size()) {
      std::vector<bool> out(nvars_, false);
      for (int v = 0; v < nvars_; ++v) out[v] = value_[v] == kTrue;
      return out;
    }
    int v = decision_order_[next_decision];
    levels.push_back({v, false, trail_.size()});
    enqueue(neg(v));
    while (!propagate()) {
      while (!levels.empty() && levels.back().flipped) {
        undo_to(levels.back().trail_size);
        levels.pop_back();
      }
      if (levels.empty()) return std::nullopt;
      undo_to(levels.back().trail_size);
      levels.back().flipped = true;
      enqueue(pos(levels.back().var));
    }
    // Decisions below the backtrack point may have been undone.
    next_decision = 0;
  }
}

}  // namespace tmb::sat
