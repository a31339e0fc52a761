#pragma once

// Typed higher-order terms over the base types entity, time, event, kind and
// bool, with type checking, capture-avoiding beta reduction and a textual
// surface syntax. This is the construction calculus the semantic lexicon is
// written in; it is not a proof system.

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tmb/errors.hpp"

namespace tmb {

enum class BaseType { Entity, Time, Event, Kind, Bool };

const char* to_string(BaseType b);
std::optional<BaseType> base_type_from_name(std::string_view name);

// Simple types: a base type or a right-nested function type. Immutable value
// type; structural equality.
class SemType {
 public:
  static SemType base(BaseType b);
  static SemType function(SemType domain, SemType codomain);

  bool is_base() const;
  bool is_function() const;
  BaseType base_tag() const;          // requires is_base()
  const SemType& domain() const;      // requires is_function()
  const SemType& codomain() const;    // requires is_function()

  // Uncurried view: argument types in order plus the final base result.
  // A base type has no arguments.
  std::vector<SemType> argument_types() const;
  SemType result_type() const;

  bool operator==(const SemType& rhs) const;
  bool operator!=(const SemType& rhs) const { return !(*this == rhs); }

  std::string str() const;  // e.g. (entity->bool)->bool

 private:
  struct Node;
  explicit SemType(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

SemType parse_sem_type(std::string_view text);

enum class TermKind { Var, Const, App, Lam, Quant, Conn, Atom, Eq };
enum class Quantifier { Forall, Exists };
enum class Connective { And, Or, Implies, Not };

// Immutable term tree with value semantics (nodes shared, never mutated).
// Atoms are predicate constants applied to a full argument list; they are
// kept distinct from curried applications so the first-order translation can
// pattern-match them directly.
class Term {
 public:
  static Term var(std::string name, SemType type);
  static Term constant(std::string name, SemType type);
  static Term app(Term fn, Term arg);
  static Term lam(std::string var, SemType var_type, Term body);
  static Term quant(Quantifier q, std::string var, SemType var_type, Term body);
  // Flattens nested conjunctions/disjunctions of the same connective and
  // collapses single-child and/or to the child itself.
  static Term conn(Connective c, std::vector<Term> children);
  static Term atom(std::string pred, std::vector<Term> args);
  static Term eq(Term lhs, Term rhs);

  TermKind kind() const;

  const std::string& name() const;       // Var, Const, Lam, Quant (bound var), Atom (pred)
  const SemType& var_type() const;       // Var, Const, Lam, Quant
  Quantifier quantifier() const;         // Quant
  Connective connective() const;         // Conn
  const Term& fn() const;                // App
  const Term& arg() const;               // App
  const Term& body() const;              // Lam, Quant
  const std::vector<Term>& children() const;  // Conn children or Atom args
  const Term& lhs() const;               // Eq
  const Term& rhs() const;               // Eq

  // Exact structural equality (names and types; no alpha conversion).
  bool operator==(const Term& rhs) const;
  bool operator!=(const Term& rhs) const { return !(*this == rhs); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Declared constants. Lookups are total over declared names; declaring a name
// twice with different types is an error.
class Signature {
 public:
  void declare(const std::string& name, SemType type);
  const SemType* lookup(const std::string& name) const;
  const std::map<std::string, SemType>& constants() const { return constants_; }

  // The fixed temporal vocabulary: now, lt, inception, conc, induration, ek,
  // agent, patient, culm, instantaneous, culminated. Lexicon loading adds one
  // kind constant per verb lemma and one entity constant per proper noun.
  static Signature temporal_base();

 private:
  std::map<std::string, SemType> constants_;
};

// Returns the unique type of `term`. Throws TypeError naming the offending
// subterm for undeclared constants, applications of non-functions and
// argument/domain mismatches.
SemType typecheck(const Term& term, const Signature& sig);

// Normal-order reduction to beta-normal form with capture-avoiding
// substitution. Fully applied constant heads of bool result collapse to atom
// nodes, so normal forms of sentence-level terms contain no applications.
Term beta_reduce(const Term& term);

// Equality up to renaming of bound variables.
bool alpha_equal(const Term& a, const Term& b);

std::set<std::string> free_variables(const Term& term);

// Surface syntax: `lam x:entity. body`, `exists t:time. body`, `forall`,
// `&`, `|`, `->`, `~`, `a = b`, atoms `pred(a, b)`, application by
// juxtaposition. print_term/parse_term round-trip exactly.
std::string print_term(const Term& term);
Term parse_term(std::string_view text, const Signature& sig);

}  // namespace tmb
