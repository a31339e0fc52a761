#pragma once

// Untyped first-order formulas with equality (no function symbols), the
// type-relativizing translation from beta-normal higher-order terms, and a
// textual syntax with exact round-trip printing.

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tmb/hol.hpp"

namespace tmb {

// A first-order term is a variable or an individual constant.
struct FolTerm {
  enum class Kind { Var, Const };
  Kind kind;
  std::string name;

  static FolTerm var(std::string n) { return {Kind::Var, std::move(n)}; }
  static FolTerm constant(std::string n) { return {Kind::Const, std::move(n)}; }
  bool operator==(const FolTerm& rhs) const = default;
};

enum class FolKind { Atom, Eq, Not, And, Or, Implies, Quant };

class FolFormula {
 public:
  static FolFormula atom(std::string pred, std::vector<FolTerm> args);
  static FolFormula eq(FolTerm lhs, FolTerm rhs);
  static FolFormula negation(FolFormula f);
  // Flatten nested conjunctions/disjunctions; a single operand is returned
  // as-is.
  static FolFormula conj(std::vector<FolFormula> fs);
  static FolFormula disj(std::vector<FolFormula> fs);
  static FolFormula implies(FolFormula antecedent, FolFormula consequent);
  static FolFormula forall(std::string var, FolFormula body);
  static FolFormula exists(std::string var, FolFormula body);

  FolKind kind() const;
  const std::string& pred() const;              // Atom
  const std::vector<FolTerm>& args() const;     // Atom
  const FolTerm& lhs() const;                   // Eq
  const FolTerm& rhs() const;                   // Eq
  const std::vector<FolFormula>& children() const;  // Not/And/Or/Implies sub formulas
  bool is_forall() const;                       // Quant
  const std::string& var() const;               // Quant
  const FolFormula& body() const;               // Quant

  bool operator==(const FolFormula& rhs) const;
  bool operator!=(const FolFormula& rhs) const { return !(*this == rhs); }

 private:
  struct Node;
  explicit FolFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// A formula paired with a diagnostic name (axiom name, "goal", ...).
struct NamedFormula {
  std::string name;
  FolFormula formula;
};

// Relativizing translation: every typed quantifier over a base type becomes
// an untyped quantifier guarded by the unary predicate named after the type;
// connectives, atoms and equality pass through. Throws TypeError for
// quantification over function types or bool, residual abstractions, and any
// other non-first-order residue.
FolFormula translate(const Term& term, const Signature& sig);

std::set<std::string> free_variables(const FolFormula& f);

bool alpha_equal(const FolFormula& a, const FolFormula& b);

// Textual syntax: `all A. f`, `exists A. f`, `&`, `|`, `->`, `~`, `A = B`,
// atoms `pred(a, b)`. Identifiers bound by an enclosing quantifier are
// variables, all others are constants. print_fol(parse_fol(s)) is the
// canonical form; printing then parsing is the identity.
std::string print_fol(const FolFormula& f);
FolFormula parse_fol(std::string_view text);

}  // namespace tmb
