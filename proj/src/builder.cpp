#include "tmb/builder.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sat.hpp"

namespace tmb {

namespace {

// ---------------------------------------------------------------------------
// First-order signature extracted from the input formulas.

struct FolSignature {
  // Sorted by (arity, name): unary predicates are decided before binary ones.
  std::vector<std::pair<std::string, int>> relations;
  std::vector<std::string> constants;  // name order
};

void scan_terms(const std::vector<FolTerm>& ts, std::set<std::string>& consts) {
  for (const auto& t : ts)
    if (t.kind == FolTerm::Kind::Const) consts.insert(t.name);
}

void scan(const FolFormula& f, std::set<std::pair<int, std::string>>& rels,
          std::set<std::string>& consts) {
  switch (f.kind()) {
    case FolKind::Atom: {
      int arity = static_cast<int>(f.args().size());
      if (arity < 1 || arity > 2)
        throw Error("model search supports only unary and binary predicates; '" +
                    f.pred() + "' has arity " + std::to_string(arity));
      rels.insert({arity, f.pred()});
      scan_terms(f.args(), consts);
      return;
    }
    case FolKind::Eq:
      scan_terms({f.lhs(), f.rhs()}, consts);
      return;
    case FolKind::Quant:
      scan(f.body(), rels, consts);
      return;
    default:
      for (const auto& ch : f.children()) scan(ch, rels, consts);
      return;
  }
}

FolSignature collect_signature(const std::vector<NamedFormula>& axioms,
                               const FolFormula& goal) {
  std::set<std::pair<int, std::string>> rels;
  std::set<std::string> consts;
  for (const auto& a : axioms) scan(a.formula, rels, consts);
  scan(goal, rels, consts);
  std::set<std::string> seen;
  for (const auto& [arity, name] : rels)
    if (!seen.insert(name).second)
      throw TypeError("predicate '" + name + "' is used with two different arities");
  FolSignature sig;
  for (const auto& [arity, name] : rels) sig.relations.emplace_back(name, arity);
  sig.constants.assign(consts.begin(), consts.end());
  return sig;
}

// ---------------------------------------------------------------------------
// Grounding to a propositional expression tree.

struct PExpr {
  enum class Kind { True, False, Lit, And, Or } kind;
  sat::Lit lit = 0;
  std::vector<PExpr> kids;

  static PExpr constant(bool b) { return {b ? Kind::True : Kind::False, 0, {}}; }
  static PExpr literal(sat::Lit l) { return {Kind::Lit, l, {}}; }
};

PExpr make_nary(PExpr::Kind kind, std::vector<PExpr> kids) {
  const bool is_and = kind == PExpr::Kind::And;
  std::vector<PExpr> flat;
  for (auto& k : kids) {
    if (k.kind == (is_and ? PExpr::Kind::True : PExpr::Kind::False)) continue;
    if (k.kind == (is_and ? PExpr::Kind::False : PExpr::Kind::True))
      return PExpr::constant(!is_and);
    if (k.kind == kind) {
      for (auto& g : k.kids) flat.push_back(std::move(g));
    } else {
      flat.push_back(std::move(k));
    }
  }
  if (flat.empty()) return PExpr::constant(is_and);
  if (flat.size() == 1) return std::move(flat.front());
  return {kind, 0, std::move(flat)};
}

PExpr negate_expr(PExpr e) {
  switch (e.kind) {
    case PExpr::Kind::True: return PExpr::constant(false);
    case PExpr::Kind::False: return PExpr::constant(true);
    case PExpr::Kind::Lit: return PExpr::literal(sat::negate(e.lit));
    case PExpr::Kind::And:
    case PExpr::Kind::Or: {
      std::vector<PExpr> kids;
      kids.reserve(e.kids.size());
      for (auto& k : e.kids) kids.push_back(negate_expr(std::move(k)));
      return make_nary(e.kind == PExpr::Kind::And ? PExpr::Kind::Or : PExpr::Kind::And,
                       std::move(kids));
    }
  }
  throw Error("unreachable");
}

// Atom variables laid out per relation in signature order, tuples
// lexicographic; these are exactly the solver's decision variables.
struct AtomTable {
  int domain_size = 0;
  std::map<std::pair<std::string, int>, int> base;  // (name, arity) -> first var
  int total = 0;

  AtomTable(const FolSignature& sig, int n) : domain_size(n) {
    for (const auto& [name, arity] : sig.relations) {
      base[{name, arity}] = total;
      total += arity == 1 ? n : n * n;
    }
  }
  int var(const std::string& name, const std::vector<int>& tuple) const {
    auto it = base.find({name, static_cast<int>(tuple.size())});
    if (it == base.end()) throw Error("unknown relation '" + name + "' during grounding");
    int idx = tuple.size() == 1 ? tuple[0] : tuple[0] * domain_size + tuple[1];
    return it->second + idx;
  }
};

class Grounder {
 public:
  Grounder(const AtomTable& atoms, const std::map<std::string, int>& placement)
      : atoms_(atoms), placement_(placement) {}

  PExpr ground(const FolFormula& f) {
    switch (f.kind()) {
      case FolKind::Atom: {
        std::vector<int> tuple;
        tuple.reserve(f.args().size());
        for (const auto& a : f.args()) tuple.push_back(element(a));
        return PExpr::literal(sat::pos(atoms_.var(f.pred(), tuple)));
      }
      case FolKind::Eq:
        return PExpr::constant(element(f.lhs()) == element(f.rhs()));
      case FolKind::Not:
        return negate_expr(ground(f.children()[0]));
      case FolKind::And:
      case FolKind::Or: {
        std::vector<PExpr> kids;
        kids.reserve(f.children().size());
        for (const auto& ch : f.children()) kids.push_back(ground(ch));
        return make_nary(f.kind() == FolKind::And ? PExpr::Kind::And : PExpr::Kind::Or,
                         std::move(kids));
      }
      case FolKind::Implies: {
        PExpr a = negate_expr(ground(f.children()[0]));
        PExpr b = ground(f.children()[1]);
        std::vector<PExpr> kids;
        kids.push_back(std::move(a));
        kids.push_back(std::move(b));
        return make_nary(PExpr::Kind::Or, std::move(kids));
      }
      case FolKind::Quant: {
        std::vector<PExpr> kids;
        kids.reserve(atoms_.domain_size);
        auto saved = env_.find(f.var()) != env_.end() ? std::optional<int>(env_[f.var()])
                                                      : std::nullopt;
        for (int d = 0; d < atoms_.domain_size; ++d) {
          env_[f.var()] = d;
          kids.push_back(ground(f.body()));
        }
        if (saved) env_[f.var()] = *saved; else env_.erase(f.var());
        return make_nary(f.is_forall() ? PExpr::Kind::And : PExpr::Kind::Or,
                         std::move(kids));
      }
    }
    throw Error("unreachable");
  }

 private:
  int element(const FolTerm& t) {
    if (t.kind == FolTerm::Kind::Var) {
      auto it = env_.find(t.name);
      if (it == env_.end())
        throw TypeError("free variable '" + t.name + "' in formula given to the builder");
      return it->second;
    }
    auto it = placement_.find(t.name);
    if (it == placement_.end()) throw Error("constant '" + t.name + "' missing a placement");
    return it->second;
  }

  const AtomTable& atoms_;
  const std::map<std::string, int>& placement_;
  std::map<std::string, int> env_;
};

// Polarity-free Tseitin: gates carry full biconditional clauses so every gate
// is forced by propagation once the atom variables are assigned.
class Encoder {
 public:
  explicit Encoder(sat::Solver& solver) : solver_(solver) {}

  void assert_true(const PExpr& e) {
    switch (e.kind) {
      case PExpr::Kind::True: return;
      case PExpr::Kind::False: solver_.add_clause({}); return;
      case PExpr::Kind::Lit: solver_.add_clause({e.lit}); return;
      case PExpr::Kind::And:
        for (const auto& k : e.kids) assert_true(k);
        return;
      case PExpr::Kind::Or: {
        std::vector<sat::Lit> clause;
        clause.reserve(e.kids.size());
        for (const auto& k : e.kids) clause.push_back(to_lit(k));
        solver_.add_clause(std::move(clause));
        return;
      }
    }
  }

 private:
  sat::Lit to_lit(const PExpr& e) {
    switch (e.kind) {
      case PExpr::Kind::Lit: return e.lit;
      case PExpr::Kind::And:
      case PExpr::Kind::Or: {
        int g = solver_.new_var();
        std::vector<sat::Lit> lits;
        lits.reserve(e.kids.size());
        for (const auto& k : e.kids) lits.push_back(to_lit(k));
        if (e.kind == PExpr::Kind::And) {
          std::vector<sat::Lit> long_clause{sat::pos(g)};
          for (sat::Lit l : lits) {
            solver_.add_clause({sat::neg(g), l});
            long_clause.push_back(sat::negate(l));
          }
          solver_.add_clause(std::move(long_clause));
        } else {
          std::vector<sat::Lit> long_clause{sat::neg(g)};
          for (sat::Lit l : lits) {
            solver_.add_clause({sat::pos(g), sat::negate(l)});
            long_clause.push_back(l);
          }
          solver_.add_clause(std::move(long_clause));
        }
        return sat::pos(g);
      }
      default:
        // Constants are simplified away by make_nary.
        throw Error("constant subexpression reached the encoder");
    }
  }

  sat::Solver& solver_;
};

// ---------------------------------------------------------------------------
// Canonical constant placements: the first constant takes d1 and each later
// constant either reuses an already-used element or takes the next fresh one.
// Every isomorphism class of models has a representative of this form.

void placements_rec(const std::vector<std::string>& names, int n, size_t i, int used,
                    std::map<std::string, int>& current,
                    std::vector<std::map<std::string, int>>& out) {
  if (i == names.size()) {
    out.push_back(current);
    return;
  }
  int limit = std::min(n - 1, used);
  for (int e = 0; e <= limit; ++e) {
    current[names[i]] = e;
    placements_rec(names, n, i + 1, std::max(used, e + 1), current, out);
  }
  current.erase(names[i]);
}

std::vector<std::map<std::string, int>> canonical_placements(
    const std::vector<std::string>& names, int n) {
  std::vector<std::map<std::string, int>> out;
  std::map<std::string, int> current;
  placements_rec(names, n, 0, 0, current, out);
  return out;
}

Model assignment_to_model(const FolSignature& sig, const AtomTable& atoms,
                          const std::map<std::string, int>& placement, int n,
                          const std::vector<bool>& assignment) {
  Model m(n);
  for (const auto& [name, e] : placement) m.set_constant(name, e);
  for (const auto& [name, arity] : sig.relations) {
    m.declare_relation(name, arity);
    if (arity == 1) {
      for (int d = 0; d < n; ++d)
        if (assignment[atoms.var(name, {d})]) m.add_tuple(name, {d});
    } else {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (assignment[atoms.var(name, {a, b})]) m.add_tuple(name, {a, b});
    }
  }
  return m;
}

// Enumerates the extension-minimal models for one placement: the solver's
// first model is the lexicographically least assignment, hence subset-minimal;
// blocking all supersets of each found model yields exactly the minimal ones.
std::vector<Model> minimal_models_for_placement(const FolSignature& sig, int n,
                                                const std::map<std::string, int>& placement,
                                                const std::vector<NamedFormula>& axioms,
                                                const FolFormula& goal) {
  AtomTable atoms(sig, n);
  sat::Solver solver;
  for (int v = 0; v < atoms.total; ++v) solver.new_var();
  std::vector<int> order(atoms.total);
  for (int v = 0; v < atoms.total; ++v) order[v] = v;
  solver.set_decision_order(std::move(order));

  Grounder grounder(atoms, placement);
  Encoder encoder(solver);
  for (const auto& a : axioms) encoder.assert_true(grounder.ground(a.formula));
  encoder.assert_true(grounder.ground(goal));

  std::vector<Model> out;
  while (auto assignment = solver.solve()) {
    out.push_back(assignment_to_model(sig, atoms, placement, n, *assignment));
    std::vector<sat::Lit> blocking;
    for (int v = 0; v < atoms.total; ++v)
      if ((*assignment)[v]) blocking.push_back(sat::neg(v));
    if (blocking.empty()) break;  // the empty model admits no proper submodel
    solver.add_clause(std::move(blocking));
  }
  return out;
}

std::vector<Model> minimal_models_at_size(const std::vector<NamedFormula>& axioms,
                                          const FolFormula& goal, const FolSignature& sig,
                                          int n) {
  std::vector<Model> out;
  for (const auto& placement : canonical_placements(sig.constants, n)) {
    auto models = minimal_models_for_placement(sig, n, placement, axioms, goal);
    out.insert(out.end(), models.begin(), models.end());
  }
  return out;
}

}  // namespace

std::optional<Model> build_minimal(const std::vector<NamedFormula>& axioms,
                                   const FolFormula& goal, int max_size) {
  if (max_size < 1) throw Error("max_size must be at least 1");
  if (!free_variables(goal).empty())
    throw TypeError("goal formula is not closed");
  FolSignature sig = collect_signature(axioms, goal);
  for (int n = 1; n <= max_size; ++n) {
    std::optional<Model> best;
    size_t best_inst = 0;
    for (const auto& m : minimal_models_at_size(axioms, goal, sig, n)) {
      size_t inst = m.extension("instantaneous", 1).size();
      if (!best || inst < best_inst) {
        best = m;
        best_inst = inst;
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

std::vector<Model> build_all_minimal(const std::vector<NamedFormula>& axioms,
                                     const FolFormula& goal, int max_size) {
  if (max_size < 1) throw Error("max_size must be at least 1");
  if (!free_variables(goal).empty())
    throw TypeError("goal formula is not closed");
  FolSignature sig = collect_signature(axioms, goal);
  for (int n = 1; n <= max_size; ++n) {
    std::vector<Model> found = minimal_models_at_size(axioms, goal, sig, n);
    if (found.empty()) continue;
    std::vector<Model> unique;
    for (const auto& m : found) {
      bool dup = false;
      for (const auto& u : unique)
        if (isomorphic(m, u)) {
          dup = true;
          break;
        }
      if (!dup) unique.push_back(m);
    }
    std::sort(unique.begin(), unique.end(), [](const Model& a, const Model& b) {
      return print_model(a) < print_model(b);
    });
    return unique;
  }
  return {};
}

}  // namespace tmb
