#include "tmb/hol.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

namespace tmb {

// ---------------------------------------------------------------------------
// SemType

struct SemType::Node {
  bool is_base = true;
  BaseType base = BaseType::Bool;
  std::vector<SemType> parts;  // [domain, codomain] for function types
};

const char* to_string(BaseType b) {
  switch (b) {
    case BaseType::Entity: return "entity";
    case BaseType::Time: return "time";
    case BaseType::Event: return "event";
    case BaseType::Kind: return "kind";
    case BaseType::Bool: return "bool";
  }
  return "?";
}

std::optional<BaseType> base_type_from_name(std::string_view name) {
  if (name == "entity") return BaseType::Entity;
  if (name == "time") return BaseType::Time;
  if (name == "event") return BaseType::Event;
  if (name == "kind") return BaseType::Kind;
  if (name == "bool") return BaseType::Bool;
  return std::nullopt;
}

SemType SemType::base(BaseType b) {
  auto node = std::make_shared<Node>();
  node->is_base = true;
  node->base = b;
  return SemType(std::move(node));
}

SemType SemType::function(SemType domain, SemType codomain) {
  auto node = std::make_shared<Node>();
  node->is_base = false;
  node->parts = {std::move(domain), std::move(codomain)};
  return SemType(std::move(node));
}

bool SemType::is_base() const { return node_->is_base; }
bool SemType::is_function() const { return !node_->is_base; }

BaseType SemType::base_tag() const {
  assert(is_base());
  return node_->base;
}

const SemType& SemType::domain() const {
  assert(is_function());
  return node_->parts[0];
}

const SemType& SemType::codomain() const {
  assert(is_function());
  return node_->parts[1];
}

std::vector<SemType> SemType::argument_types() const {
  std::vector<SemType> args;
  const SemType* t = this;
  while (t->is_function()) {
    args.push_back(t->domain());
    t = &t->codomain();
  }
  return args;
}

SemType SemType::result_type() const {
  const SemType* t = this;
  while (t->is_function()) t = &t->codomain();
  return *t;
}

bool SemType::operator==(const SemType& rhs) const {
  if (node_ == rhs.node_) return true;
  if (node_->is_base != rhs.node_->is_base) return false;
  if (node_->is_base) return node_->base == rhs.node_->base;
  return domain() == rhs.domain() && codomain() == rhs.codomain();
}

std::string SemType::str() const {
  if (is_base()) return to_string(base_tag());
  std::string dom = domain().str();
  if (domain().is_function()) dom = "(" + dom + ")";
  return dom + "->" + codomain().str();
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  TermKind kind;
  std::string name;                // var/const name, binder var, atom pred
  std::optional<SemType> type;     // var/const type, binder var type
  Quantifier quant = Quantifier::Forall;
  Connective conn = Connective::And;
  std::vector<Term> kids;          // app [fn,arg]; lam/quant [body];
                                   // conn children; atom args; eq [lhs,rhs]
};

Term Term::var(std::string name, SemType type) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Var;
  n->name = std::move(name);
  n->type = std::move(type);
  return Term(std::move(n));
}

Term Term::constant(std::string name, SemType type) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Const;
  n->name = std::move(name);
  n->type = std::move(type);
  return Term(std::move(n));
}

Term Term::app(Term fn, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::App;
  n->kids = {std::move(fn), std::move(arg)};
  return Term(std::move(n));
}

Term Term::lam(std::string var, SemType var_type, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Lam;
  n->name = std::move(var);
  n->type = std::move(var_type);
  n->kids = {std::move(body)};
  return Term(std::move(n));
}

Term Term::quant(Quantifier q, std::string var, SemType var_type, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Quant;
  n->quant = q;
  n->name = std::move(var);
  n->type = std::move(var_type);
  n->kids = {std::move(body)};
  return Term(std::move(n));
}

Term Term::conn(Connective c, std::vector<Term> children) {
  if (c == Connective::Not) {
    if (children.size() != 1) throw Error("negation takes exactly one operand");
  } else if (c == Connective::Implies) {
    if (children.size() != 2) throw Error("implication takes exactly two operands");
  } else {
    if (children.empty()) throw Error("empty conjunction/disjunction");
    if (children.size() == 1) return children.front();
    // Flatten nested nodes of the same connective into one n-ary node.
    std::vector<Term> flat;
    for (auto& ch : children) {
      if (ch.kind() == TermKind::Conn && ch.connective() == c) {
        for (const auto& g : ch.children()) flat.push_back(g);
      } else {
        flat.push_back(std::move(ch));
      }
    }
    children = std::move(flat);
  }
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Conn;
  n->conn = c;
  n->kids = std::move(children);
  return Term(std::move(n));
}

Term Term::atom(std::string pred, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Atom;
  n->name = std::move(pred);
  n->kids = std::move(args);
  return Term(std::move(n));
}

Term Term::eq(Term lhs, Term rhs) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Eq;
  n->kids = {std::move(lhs), std::move(rhs)};
  return Term(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const SemType& Term::var_type() const { return *node_->type; }
Quantifier Term::quantifier() const { return node_->quant; }
Connective Term::connective() const { return node_->conn; }
const Term& Term::fn() const { return node_->kids[0]; }
const Term& Term::arg() const { return node_->kids[1]; }
const Term& Term::body() const { return node_->kids[0]; }
const std::vector<Term>& Term::children() const { return node_->kids; }
const Term& Term::lhs() const { return node_->kids[0]; }
const Term& Term::rhs() const { return node_->kids[1]; }

bool Term::operator==(const Term& rhs) const {
  if (node_ == rhs.node_) return true;
  if (node_->kind != rhs.node_->kind) return false;
  if (node_->name != rhs.node_->name) return false;
  if (node_->type.has_value() != rhs.node_->type.has_value()) return false;
  if (node_->type && *node_->type != *rhs.node_->type) return false;
  if (node_->kind == TermKind::Quant && node_->quant != rhs.node_->quant) return false;
  if (node_->kind == TermKind::Conn && node_->conn != rhs.node_->conn) return false;
  if (node_->kids.size() != rhs.node_->kids.size()) return false;
  for (size_t i = 0; i < node_->kids.size(); ++i)
    if (node_->kids[i] != rhs.node_->kids[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Signature

void Signature::declare(const std::string& name, SemType type) {
  auto it = constants_.find(name);
  if (it != constants_.end()) {
    if (it->second != type)
      throw TypeError("constant '" + name + "' redeclared with type " +
                      type.str() + " (was " + it->second.str() + ")");
    return;
  }
  constants_.emplace(name, std::move(type));
}

const SemType* Signature::lookup(const std::string& name) const {
  auto it = constants_.find(name);
  return it == constants_.end() ? nullptr : &it->second;
}

Signature Signature::temporal_base() {
  const SemType entity = SemType::base(BaseType::Entity);
  const SemType time = SemType::base(BaseType::Time);
  const SemType event = SemType::base(BaseType::Event);
  const SemType kind = SemType::base(BaseType::Kind);
  const SemType b = SemType::base(BaseType::Bool);
  auto rel2 = [&](SemType a1, SemType a2) {
    return SemType::function(a1, SemType::function(a2, b));
  };
  Signature sig;
  sig.declare("now", time);
  sig.declare("lt", rel2(time, time));
  sig.declare("inception", rel2(event, time));
  sig.declare("conc", rel2(event, time));
  sig.declare("induration", rel2(event, time));
  sig.declare("ek", rel2(event, kind));
  sig.declare("agent", rel2(event, entity));
  sig.declare("patient", rel2(event, entity));
  sig.declare("culm", rel2(event, event));
  sig.declare("instantaneous", SemType::function(event, b));
  sig.declare("culminated", SemType::function(event, b));
  return sig;
}

// ---------------------------------------------------------------------------
// Type checking

namespace {

class Env {
 public:
  const SemType* lookup(const std::string& name) const {
    for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }
  void push(const std::string& name, const SemType& t) { bindings_.emplace_back(name, t); }
  void pop() { bindings_.pop_back(); }

 private:
  std::vector<std::pair<std::string, SemType>> bindings_;
};

SemType check(const Term& t, const Signature& sig, Env& env) {
  switch (t.kind()) {
    case TermKind::Var: {
      const SemType* bound = env.lookup(t.name());
      if (!bound) throw TypeError("unbound variable '" + t.name() + "'");
      if (*bound != t.var_type())
        throw TypeError("variable '" + t.name() + "' used at type " +
                        t.var_type().str() + " but bound at " + bound->str());
      return *bound;
    }
    case TermKind::Const: {
      const SemType* declared = sig.lookup(t.name());
      if (!declared) throw TypeError("undeclared constant '" + t.name() + "'");
      if (*declared != t.var_type())
        throw TypeError("constant '" + t.name() + "' carries type " +
                        t.var_type().str() + " but is declared " + declared->str());
      return *declared;
    }
    case TermKind::App: {
      SemType tf = check(t.fn(), sig, env);
      if (!tf.is_function())
        throw TypeError("application of non-function in '" + print_term(t) + "'");
      SemType ta = check(t.arg(), sig, env);
      if (ta != tf.domain())
        throw TypeError("type mismatch in '" + print_term(t) + "': expected " +
                        tf.domain().str() + ", got " + ta.str() + " for '" +
                        print_term(t.arg()) + "'");
      return tf.codomain();
    }
    case TermKind::Lam: {
      env.push(t.name(), t.var_type());
      SemType tb = check(t.body(), sig, env);
      env.pop();
      return SemType::function(t.var_type(), tb);
    }
    case TermKind::Quant: {
      env.push(t.name(), t.var_type());
      SemType tb = check(t.body(), sig, env);
      env.pop();
      if (!(tb.is_base() && tb.base_tag() == BaseType::Bool))
        throw TypeError("quantifier body is not bool in '" + print_term(t) + "'");
      return SemType::base(BaseType::Bool);
    }
    case TermKind::Conn: {
      for (const auto& ch : t.children()) {
        SemType tc = check(ch, sig, env);
        if (!(tc.is_base() && tc.base_tag() == BaseType::Bool))
          throw TypeError("connective operand is not bool: '" + print_term(ch) + "'");
      }
      return SemType::base(BaseType::Bool);
    }
    case TermKind::Atom: {
      const SemType* declared = sig.lookup(t.name());
      if (!declared) throw TypeError("undeclared constant '" + t.name() + "'");
      std::vector<SemType> params = declared->argument_types();
      SemType res = declared->result_type();
      if (!(res.is_base() && res.base_tag() == BaseType::Bool))
        throw TypeError("atom head '" + t.name() + "' is not a predicate");
      if (params.size() != t.children().size())
        throw TypeError("atom '" + print_term(t) + "' applies '" + t.name() +
                        "' to " + std::to_string(t.children().size()) +
                        " arguments, expected " + std::to_string(params.size()));
      for (size_t i = 0; i < params.size(); ++i) {
        SemType ta = check(t.children()[i], sig, env);
        if (ta != params[i])
          throw TypeError("type mismatch in '" + print_term(t) + "': argument " +
                          std::to_string(i + 1) + " has type " + ta.str() +
                          ", expected " + params[i].str());
      }
      return SemType::base(BaseType::Bool);
    }
    case TermKind::Eq: {
      SemType tl = check(t.lhs(), sig, env);
      SemType tr = check(t.rhs(), sig, env);
      if (tl != tr)
        throw TypeError("equality between different types in '" + print_term(t) +
                        "': " + tl.str() + " vs " + tr.str());
      return SemType::base(BaseType::Bool);
    }
  }
  throw Error("unreachable term kind");
}

}  // namespace

SemType typecheck(const Term& term, const Signature& sig) {
  Env env;
  return check(term, sig, env);
}

// ---------------------------------------------------------------------------
// Free variables, substitution, reduction

namespace {

void collect_free(const Term& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Var:
      if (!bound.count(t.name())) out.insert(t.name());
      return;
    case TermKind::Const:
      return;
    case TermKind::Lam:
    case TermKind::Quant: {
      bool fresh = bound.insert(t.name()).second;
      collect_free(t.body(), bound, out);
      if (fresh) bound.erase(t.name());
      return;
    }
    default:
      for (const auto& ch : t.children()) collect_free(ch, bound, out);
      return;
  }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string candidate = base + "'";
  while (avoid.count(candidate)) candidate += "'";
  return candidate;
}

Term rebuild(const Term& t, std::vector<Term> kids) {
  switch (t.kind()) {
    case TermKind::App: return Term::app(kids[0], kids[1]);
    case TermKind::Conn: return Term::conn(t.connective(), std::move(kids));
    case TermKind::Atom: return Term::atom(t.name(), std::move(kids));
    case TermKind::Eq: return Term::eq(kids[0], kids[1]);
    default: throw Error("rebuild on leaf/binder");
  }
}

Term make_binder(const Term& t, const std::string& var, Term body) {
  if (t.kind() == TermKind::Lam) return Term::lam(var, t.var_type(), std::move(body));
  return Term::quant(t.quantifier(), var, t.var_type(), std::move(body));
}

// Capture-avoiding substitution of `replacement` for free occurrences of
// `var`.
Term subst(const Term& t, const std::string& var, const Term& replacement) {
  switch (t.kind()) {
    case TermKind::Var:
      return t.name() == var ? replacement : t;
    case TermKind::Const:
      return t;
    case TermKind::Lam:
    case TermKind::Quant: {
      if (t.name() == var) return t;  // shadowed
      std::set<std::string> fv_body = free_variables(t.body());
      if (!fv_body.count(var)) return t;
      std::set<std::string> fv_rep = free_variables(replacement);
      if (fv_rep.count(t.name())) {
        std::set<std::string> avoid = fv_rep;
        avoid.insert(fv_body.begin(), fv_body.end());
        avoid.insert(var);
        std::string renamed = fresh_name(t.name(), avoid);
        Term body = subst(t.body(), t.name(), Term::var(renamed, t.var_type()));
        return make_binder(t, renamed, subst(body, var, replacement));
      }
      return make_binder(t, t.name(), subst(t.body(), var, replacement));
    }
    default: {
      std::vector<Term> kids;
      kids.reserve(t.children().size());
      for (const auto& ch : t.children()) kids.push_back(subst(ch, var, replacement));
      return rebuild(t, std::move(kids));
    }
  }
}

// If `t` is a chain of applications headed by a fully applied constant whose
// result type is bool, fold it into an atom node.
Term collapse_const_spine(const Term& t) {
  std::vector<Term> args;
  const Term* head = &t;
  while (head->kind() == TermKind::App) {
    args.push_back(head->arg());
    head = &head->fn();
  }
  if (head->kind() != TermKind::Const) return t;
  const SemType& ht = head->var_type();
  SemType res = ht.result_type();
  if (!(res.is_base() && res.base_tag() == BaseType::Bool)) return t;
  if (ht.argument_types().size() != args.size()) return t;
  std::reverse(args.begin(), args.end());
  return Term::atom(head->name(), std::move(args));
}

Term normalize(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Const:
      return t;
    case TermKind::Lam:
      return Term::lam(t.name(), t.var_type(), normalize(t.body()));
    case TermKind::Quant:
      return Term::quant(t.quantifier(), t.name(), t.var_type(), normalize(t.body()));
    case TermKind::App: {
      Term fn = normalize(t.fn());
      if (fn.kind() == TermKind::Lam)
        return normalize(subst(fn.body(), fn.name(), t.arg()));
      Term arg = normalize(t.arg());
      return collapse_const_spine(Term::app(std::move(fn), std::move(arg)));
    }
    default: {
      std::vector<Term> kids;
      kids.reserve(t.children().size());
      for (const auto& ch : t.children()) kids.push_back(normalize(ch));
      return rebuild(t, std::move(kids));
    }
  }
}

}  // namespace

std::set<std::string> free_variables(const Term& term) {
  std::set<std::string> bound, out;
  collect_free(term, bound, out);
  return out;
}

Term beta_reduce(const Term& term) { return normalize(term); }

// ---------------------------------------------------------------------------
// Alpha equivalence

namespace {

bool aeq(const Term& a, const Term& b, std::map<std::string, int>& ma,
         std::map<std::string, int>& mb, int depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case TermKind::Var: {
      auto ia = ma.find(a.name());
      auto ib = mb.find(b.name());
      if ((ia == ma.end()) != (ib == mb.end())) return false;
      if (ia == ma.end()) return a.name() == b.name() && a.var_type() == b.var_type();
      return ia->second == ib->second;
    }
    case TermKind::Const:
      return a.name() == b.name() && a.var_type() == b.var_type();
    case TermKind::Lam:
    case TermKind::Quant: {
      if (a.kind() == TermKind::Quant && a.quantifier() != b.quantifier()) return false;
      if (a.var_type() != b.var_type()) return false;
      auto pa = ma.find(a.name());
      auto pb = mb.find(b.name());
      std::optional<int> olda, oldb;
      if (pa != ma.end()) olda = pa->second;
      if (pb != mb.end()) oldb = pb->second;
      ma[a.name()] = depth;
      mb[b.name()] = depth;
      bool eq = aeq(a.body(), b.body(), ma, mb, depth + 1);
      if (olda) ma[a.name()] = *olda; else ma.erase(a.name());
      if (oldb) mb[b.name()] = *oldb; else mb.erase(b.name());
      return eq;
    }
    case TermKind::Conn:
      if (a.connective() != b.connective()) return false;
      break;
    case TermKind::Atom:
      if (a.name() != b.name()) return false;
      break;
    default:
      break;
  }
  if (a.children().size() != b.children().size()) return false;
  for (size_t i = 0; i < a.children().size(); ++i)
    if (!aeq(a.children()[i], b.children()[i], ma, mb, depth)) return false;
  return true;
}

}  // namespace

bool alpha_equal(const Term& a, const Term& b) {
  std::map<std::string, int> ma, mb;
  return aeq(a, b, ma, mb, 0);
}

// ---------------------------------------------------------------------------
// Printing
//
// Precedence: binder 0 < implies 1 < or 2 < and 3 < not 4 < eq 5 < app 6 <
// leaf 7. A node is parenthesized when its precedence is below the context.

namespace {

int precedence(const Term& t) {
  switch (t.kind()) {
    case TermKind::Lam:
    case TermKind::Quant: return 0;
    case TermKind::Conn:
      switch (t.connective()) {
        case Connective::Implies: return 1;
        case Connective::Or: return 2;
        case Connective::And: return 3;
        case Connective::Not: return 4;
      }
      return 4;
    case TermKind::Eq: return 5;
    case TermKind::App: return 6;
    default: return 7;
  }
}

void print_rec(const Term& t, int ctx, std::string& out) {
  const int prec = precedence(t);
  const bool parens = prec < ctx;
  if (parens) out += "(";
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Const:
      out += t.name();
      break;
    case TermKind::Lam:
      out += "lam " + t.name() + ":" + t.var_type().str() + ". ";
      print_rec(t.body(), 0, out);
      break;
    case TermKind::Quant:
      out += (t.quantifier() == Quantifier::Forall ? "forall " : "exists ");
      out += t.name() + ":" + t.var_type().str() + ". ";
      print_rec(t.body(), 0, out);
      break;
    case TermKind::App:
      print_rec(t.fn(), 6, out);
      out += " ";
      print_rec(t.arg(), 7, out);
      break;
    case TermKind::Conn:
      switch (t.connective()) {
        case Connective::Not:
          out += "~";
          // Parenthesize equality under negation to keep the parse unambiguous.
          print_rec(t.children()[0], 6, out);
          break;
        case Connective::Implies:
          print_rec(t.children()[0], 2, out);
          out += " -> ";
          print_rec(t.children()[1], 1, out);
          break;
        case Connective::And: {
          bool first = true;
          for (const auto& ch : t.children()) {
            if (!first) out += " & ";
            first = false;
            print_rec(ch, 4, out);
          }
          break;
        }
        case Connective::Or: {
          bool first = true;
          for (const auto& ch : t.children()) {
            if (!first) out += " | ";
            first = false;
            print_rec(ch, 3, out);
          }
          break;
        }
      }
      break;
    case TermKind::Atom: {
      out += t.name() + "(";
      bool first = true;
      for (const auto& a : t.children()) {
        if (!first) out += ", ";
        first = false;
        print_rec(a, 0, out);
      }
      out += ")";
      break;
    }
    case TermKind::Eq:
      print_rec(t.lhs(), 6, out);
      out += " = ";
      print_rec(t.rhs(), 6, out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string print_term(const Term& term) {
  std::string out;
  print_rec(term, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok { Ident, LParen, RParen, Dot, Comma, Colon, Amp, Bar, Arrow, Tilde, Equal, End };

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> toks;
  size_t i = 0;
  auto isidstart = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
  auto isidchar = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    size_t start = i;
    if (isidstart(c)) {
      while (i < s.size() && isidchar(s[i])) ++i;
      toks.push_back({Tok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    switch (c) {
      case '(': toks.push_back({Tok::LParen, "(", start}); ++i; break;
      case ')': toks.push_back({Tok::RParen, ")", start}); ++i; break;
      case '.': toks.push_back({Tok::Dot, ".", start}); ++i; break;
      case ',': toks.push_back({Tok::Comma, ",", start}); ++i; break;
      case ':': toks.push_back({Tok::Colon, ":", start}); ++i; break;
      case '&': toks.push_back({Tok::Amp, "&", start}); ++i; break;
      case '|': toks.push_back({Tok::Bar, "|", start}); ++i; break;
      case '~': toks.push_back({Tok::Tilde, "~", start}); ++i; break;
      case '=': toks.push_back({Tok::Equal, "=", start}); ++i; break;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          toks.push_back({Tok::Arrow, "->", start});
          i += 2;
          break;
        }
        [[fallthrough]];
      default:
        throw ParseError("unexpected character '" + std::string(1, c) + "' at position " +
                         std::to_string(start));
    }
  }
  toks.push_back({Tok::End, "", s.size()});
  return toks;
}

class TermParser {
 public:
  TermParser(std::string_view text, const Signature& sig)
      : toks_(lex(text)), sig_(sig) {}

  Term parse() {
    Term t = parse_term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  void expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw ParseError(std::string("expected ") + what + " at position " +
                       std::to_string(peek().pos) + ", got '" + peek().text + "'");
    ++pos_;
  }
  bool is_keyword(const Token& t, const char* kw) const {
    return t.kind == Tok::Ident && t.text == kw;
  }

  SemType parse_type() {
    SemType left = parse_type_atom();
    if (peek().kind == Tok::Arrow) {
      next();
      return SemType::function(left, parse_type());
    }
    return left;
  }

  SemType parse_type_atom() {
    if (peek().kind == Tok::LParen) {
      next();
      SemType t = parse_type();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (peek().kind == Tok::Ident) {
      auto b = base_type_from_name(peek().text);
      if (!b)
        throw ParseError("unknown base type '" + peek().text + "' at position " +
                         std::to_string(peek().pos));
      next();
      return SemType::base(*b);
    }
    throw ParseError("expected a type at position " + std::to_string(peek().pos));
  }

  Term parse_term() {
    const Token& t = peek();
    if (is_keyword(t, "lam") || is_keyword(t, "forall") || is_keyword(t, "exists")) {
      std::string kw = next().text;
      if (peek().kind != Tok::Ident)
        throw ParseError("expected a variable name at position " + std::to_string(peek().pos));
      std::string var = next().text;
      expect(Tok::Colon, "':'");
      SemType vt = parse_type();
      expect(Tok::Dot, "'.'");
      scope_.emplace_back(var, vt);
      Term body = parse_term();
      scope_.pop_back();
      if (kw == "lam") return Term::lam(var, vt, body);
      return Term::quant(kw == "forall" ? Quantifier::Forall : Quantifier::Exists, var, vt, body);
    }
    return parse_implies();
  }

  Term parse_implies() {
    Term left = parse_or();
    if (peek().kind == Tok::Arrow) {
      next();
      Term right = parse_implies();
      return Term::conn(Connective::Implies, {left, right});
    }
    return left;
  }

  Term parse_or() {
    std::vector<Term> parts{parse_and()};
    while (peek().kind == Tok::Bar) {
      next();
      parts.push_back(parse_and());
    }
    return parts.size() == 1 ? parts.front() : Term::conn(Connective::Or, std::move(parts));
  }

  Term parse_and() {
    std::vector<Term> parts{parse_unary()};
    while (peek().kind == Tok::Amp) {
      next();
      parts.push_back(parse_unary());
    }
    return parts.size() == 1 ? parts.front() : Term::conn(Connective::And, std::move(parts));
  }

  Term parse_unary() {
    // Binders may appear wherever an operand is expected; their body extends
    // as far right as possible.
    if (is_keyword(peek(), "lam") || is_keyword(peek(), "forall") ||
        is_keyword(peek(), "exists"))
      return parse_term();
    if (peek().kind == Tok::Tilde) {
      next();
      return Term::conn(Connective::Not, {parse_unary()});
    }
    return parse_cmp();
  }

  Term parse_cmp() {
    Term left = parse_app();
    if (peek().kind == Tok::Equal) {
      next();
      Term right = parse_app();
      return Term::eq(left, right);
    }
    return left;
  }

  Term parse_app() {
    Term t = parse_primary();
    while (peek().kind == Tok::Ident || peek().kind == Tok::LParen) {
      // Binder keywords never start a juxtaposed argument.
      if (is_keyword(peek(), "lam") || is_keyword(peek(), "forall") || is_keyword(peek(), "exists"))
        break;
      t = Term::app(t, parse_primary());
    }
    return t;
  }

  const SemType* scope_lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }

  Term parse_primary() {
    if (peek().kind == Tok::LParen) {
      next();
      Term t = parse_term();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (peek().kind != Tok::Ident)
      throw ParseError("expected a term at position " + std::to_string(peek().pos));
    Token id = next();
    const SemType* bound = scope_lookup(id.text);
    bool has_args = peek().kind == Tok::LParen;
    std::vector<Term> args;
    if (has_args) {
      next();
      if (peek().kind != Tok::RParen) {
        args.push_back(parse_term());
        while (peek().kind == Tok::Comma) {
          next();
          args.push_back(parse_term());
        }
      }
      expect(Tok::RParen, "')'");
    }
    if (bound) {
      Term t = Term::var(id.text, *bound);
      for (auto& a : args) t = Term::app(t, a);
      return t;
    }
    const SemType* declared = sig_.lookup(id.text);
    if (!declared)
      throw ParseError("undeclared name '" + id.text + "' at position " +
                       std::to_string(id.pos));
    if (has_args) return Term::atom(id.text, std::move(args));
    return Term::constant(id.text, *declared);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  const Signature& sig_;
  std::vector<std::pair<std::string, SemType>> scope_;
};

}  // namespace

Term parse_term(std::string_view text, const Signature& sig) {
  return TermParser(text, sig).parse();
}

namespace {

SemType parse_type_tokens(const std::vector<Token>& toks, size_t& pos) {
  auto atom = [&]() -> SemType {
    if (toks[pos].kind == Tok::LParen) {
      ++pos;
      SemType t = parse_type_tokens(toks, pos);
      if (toks[pos].kind != Tok::RParen)
        throw ParseError("expected ')' in type at position " + std::to_string(toks[pos].pos));
      ++pos;
      return t;
    }
    if (toks[pos].kind == Tok::Ident) {
      auto b = base_type_from_name(toks[pos].text);
      if (!b) throw ParseError("unknown base type '" + toks[pos].text + "'");
      ++pos;
      return SemType::base(*b);
    }
    throw ParseError("expected a type at position " + std::to_string(toks[pos].pos));
  };
  SemType left = atom();
  if (toks[pos].kind == Tok::Arrow) {
    ++pos;
    return SemType::function(left, parse_type_tokens(toks, pos));
  }
  return left;
}

}  // namespace

SemType parse_sem_type(std::string_view text) {
  std::vector<Token> toks = lex(text);
  size_t pos = 0;
  SemType t = parse_type_tokens(toks, pos);
  if (toks[pos].kind != Tok::End)
    throw ParseError("trailing input after type at position " + std::to_string(toks[pos].pos));
  return t;
}

}  // namespace tmb
