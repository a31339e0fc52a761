#pragma once

// Minimal DPLL solver used by the model builder: two watched literals, unit
// propagation, chronological backtracking, no clause learning. Decisions
// follow a caller-supplied variable order, false branch first, so the first
// model found is the lexicographically least satisfying assignment over the
// decision variables. Clauses may be added between solve() calls.

#include <cstdint>
#include <optional>
#include <vector>

namespace tmb::sat {

using Lit = int;  // positive literal of var v (0-based): 2*v, negative: 2*v+1

inline Lit pos(int var) { return 2 * var; }
inline Lit neg(int var) { return 2 * var + 1; }
inline Lit negate(Lit l) { return l ^ 1; }
inline int var_of(Lit l) { return l >> 1; }
inline bool sign_of(Lit l) { return l & 1; }  // true when negative

class Solver {
 public:
  int new_var() { return nvars_++; }
  int num_vars() const { return nvars_; }

  // Empty clause marks the instance unsatisfiable.
  void add_clause(std::vector<Lit> lits);

  // Variables decided in this order, false first; all other variables must be
  // derivable by propagation once the decision variables are assigned.
  void set_decision_order(std::vector<int> vars) { decision_order_ = std::move(vars); }

  // Returns the full assignment (indexed by var) or nullopt when unsat.
  std::optional<std::vector<bool>> solve();

 private:
  enum : int8_t { kUndef = 0, kTrue = 1, kFalse = -1 };

  bool enqueue(Lit l);
  bool propagate();
  void undo_to(size_t trail_size);

  int nvars_ = 0;
  bool contradiction_ = false;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watchers_;  // literal -> clause indices
  std::vector<int8_t> value_;               // per var
  std::vector<Lit> trail_;
  size_t qhead_ = 0;
  std::vector<int> decision_order_;
};

}  // namespace tmb::sat
