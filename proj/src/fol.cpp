#include "tmb/fol.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

namespace tmb {

struct FolFormula::Node {
  FolKind kind;
  std::string name;             // atom predicate or quantified variable
  bool universal = false;       // Quant
  std::vector<FolTerm> terms;   // Atom args or Eq [lhs, rhs]
  std::vector<FolFormula> kids; // connective children or quantifier body
};

FolFormula FolFormula::atom(std::string pred, std::vector<FolTerm> args) {
  auto n = std::make_shared<Node>();
  n->kind = FolKind::Atom;
  n->name = std::move(pred);
  n->terms = std::move(args);
  return FolFormula(std::move(n));
}

FolFormula FolFormula::eq(FolTerm lhs, FolTerm rhs) {
  auto n = std::make_shared<Node>();
  n->kind = FolKind::Eq;
  n->terms = {std::move(lhs), std::move(rhs)};
  return FolFormula(std::move(n));
}

FolFormula FolFormula::negation(FolFormula f) {
  auto n = std::make_shared<Node>();
  n->kind = FolKind::Not;
  n->kids = {std::move(f)};
  return FolFormula(std::move(n));
}

FolFormula FolFormula::conj(std::vector<FolFormula> fs) {
  if (fs.empty()) throw Error("empty conjunction");
  if (fs.size() == 1) return fs.front();
  std::vector<FolFormula> flat;
  for (auto& f : fs) {
    if (f.kind() == FolKind::And) {
      for (const auto& g : f.children()) flat.push_back(g);
    } else {
      flat.push_back(std::move(f));
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = FolKind::And;
  n->kids = std::move(flat);
  return FolFormula(std::move(n));
}

FolFormula FolFormula::disj(std::vector<FolFormula> fs) {
  if (fs.empty()) throw Error("empty disjunction");
  if (fs.size() == 1) return fs.front();
  std::vector<FolFormula> flat;
  for (auto& f : fs) {
    if (f.kind() == FolKind::Or) {
      for (const auto& g : f.children()) flat.push_back(g);
    } else {
      flat.push_back(std::move(f));
    }
  }
  auto n = std::make_shared<Node>();
  n->kind = FolKind::Or;
  n->kids = std::move(flat);
  return FolFormula(std::move(n));
}

FolFormula FolFormula::implies(FolFormula antecedent, FolFormula consequent) {
  auto n = std::make_shared<Node>();
  n->kind = FolKind::Implies;
  n->kids = {std::move(antecedent), std::move(consequent)};
  return FolFormula(std::move(n));
}

FolFormula FolFormula::forall(std::string var, FolFormula body) {
  auto n = std::make_shared<Node>();
  n->kind = FolKind::Quant;
  n->universal = true;
  n->name = std::move(var);
  n->kids = {std::move(body)};
  return FolFormula(std::move(n));
}

FolFormula FolFormula::exists(std::string var, FolFormula body) {
  auto n = std::make_shared<Node>();
  n->kind = FolKind::Quant;
  n->universal = false;
  n->name = std::move(var);
  n->kids = {std::move(body)};
  return FolFormula(std::move(n));
}

FolKind FolFormula::kind() const { return node_->kind; }
const std::string& FolFormula::pred() const { return node_->name; }
const std::vector<FolTerm>& FolFormula::args() const { return node_->terms; }
const FolTerm& FolFormula::lhs() const { return node_->terms[0]; }
const FolTerm& FolFormula::rhs() const { return node_->terms[1]; }
const std::vector<FolFormula>& FolFormula::children() const { return node_->kids; }
bool FolFormula::is_forall() const { return node_->universal; }
const std::string& FolFormula::var() const { return node_->name; }
const FolFormula& FolFormula::body() const { return node_->kids[0]; }

bool FolFormula::operator==(const FolFormula& rhs) const {
  if (node_ == rhs.node_) return true;
  if (node_->kind != rhs.node_->kind) return false;
  if (node_->name != rhs.node_->name) return false;
  if (node_->universal != rhs.node_->universal) return false;
  if (node_->terms != rhs.node_->terms) return false;
  if (node_->kids.size() != rhs.node_->kids.size()) return false;
  for (size_t i = 0; i < node_->kids.size(); ++i)
    if (node_->kids[i] != rhs.node_->kids[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Translation

namespace {

FolTerm translate_arg(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: return FolTerm::var(t.name());
    case TermKind::Const: return FolTerm::constant(t.name());
    default:
      throw TypeError("not first-order translatable: argument '" + print_term(t) +
                      "' is neither a variable nor a constant");
  }
}

FolFormula translate_rec(const Term& t) {
  switch (t.kind()) {
    case TermKind::Quant: {
      const SemType& vt = t.var_type();
      if (!vt.is_base() || vt.base_tag() == BaseType::Bool)
        throw TypeError("not first-order translatable: quantification over " +
                        vt.str() + " in '" + print_term(t) + "'");
      FolFormula guard = FolFormula::atom(to_string(vt.base_tag()), {FolTerm::var(t.name())});
      FolFormula body = translate_rec(t.body());
      if (t.quantifier() == Quantifier::Forall)
        return FolFormula::forall(t.name(), FolFormula::implies(std::move(guard), std::move(body)));
      return FolFormula::exists(
          t.name(), FolFormula::conj({std::move(guard), std::move(body)}));
    }
    case TermKind::Conn: {
      std::vector<FolFormula> kids;
      kids.reserve(t.children().size());
      for (const auto& ch : t.children()) kids.push_back(translate_rec(ch));
      switch (t.connective()) {
        case Connective::And: return FolFormula::conj(std::move(kids));
        case Connective::Or: return FolFormula::disj(std::move(kids));
        case Connective::Not: return FolFormula::negation(std::move(kids[0]));
        case Connective::Implies:
          return FolFormula::implies(std::move(kids[0]), std::move(kids[1]));
      }
      throw Error("unreachable connective");
    }
    case TermKind::Atom: {
      std::vector<FolTerm> args;
      args.reserve(t.children().size());
      for (const auto& a : t.children()) args.push_back(translate_arg(a));
      return FolFormula::atom(t.name(), std::move(args));
    }
    case TermKind::Eq:
      return FolFormula::eq(translate_arg(t.lhs()), translate_arg(t.rhs()));
    case TermKind::Lam:
      throw TypeError("not first-order translatable: residual abstraction '" +
                      print_term(t) + "'");
    case TermKind::App:
      throw TypeError("not first-order translatable: residual application '" +
                      print_term(t) + "'");
    default:
      throw TypeError("not first-order translatable: '" + print_term(t) +
                      "' at formula position");
  }
}

}  // namespace

FolFormula translate(const Term& term, const Signature& sig) {
  SemType t = typecheck(term, sig);
  if (!(t.is_base() && t.base_tag() == BaseType::Bool))
    throw TypeError("translation input must have type bool, got " + t.str());
  return translate_rec(term);
}

// ---------------------------------------------------------------------------
// Free variables, alpha equality

namespace {

void note_free(const FolTerm& t, const std::set<std::string>& bound,
               std::set<std::string>& out) {
  if (t.kind == FolTerm::Kind::Var && !bound.count(t.name)) out.insert(t.name);
}

void collect_free(const FolFormula& f, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  switch (f.kind()) {
    case FolKind::Atom:
      for (const auto& t : f.args()) note_free(t, bound, out);
      return;
    case FolKind::Eq:
      note_free(f.lhs(), bound, out);
      note_free(f.rhs(), bound, out);
      return;
    case FolKind::Quant: {
      bool fresh = bound.insert(f.var()).second;
      collect_free(f.body(), bound, out);
      if (fresh) bound.erase(f.var());
      return;
    }
    default:
      for (const auto& ch : f.children()) collect_free(ch, bound, out);
      return;
  }
}

bool term_aeq(const FolTerm& a, const FolTerm& b, const std::map<std::string, int>& ma,
              const std::map<std::string, int>& mb) {
  bool va = a.kind == FolTerm::Kind::Var && ma.count(a.name);
  bool vb = b.kind == FolTerm::Kind::Var && mb.count(b.name);
  if (va != vb) return false;
  if (va) return ma.at(a.name) == mb.at(b.name);
  return a == b;
}

bool aeq(const FolFormula& a, const FolFormula& b, std::map<std::string, int>& ma,
         std::map<std::string, int>& mb, int depth) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FolKind::Atom: {
      if (a.pred() != b.pred() || a.args().size() != b.args().size()) return false;
      for (size_t i = 0; i < a.args().size(); ++i)
        if (!term_aeq(a.args()[i], b.args()[i], ma, mb)) return false;
      return true;
    }
    case FolKind::Eq:
      return term_aeq(a.lhs(), b.lhs(), ma, mb) && term_aeq(a.rhs(), b.rhs(), ma, mb);
    case FolKind::Quant: {
      if (a.is_forall() != b.is_forall()) return false;
      std::optional<int> olda, oldb;
      if (auto it = ma.find(a.var()); it != ma.end()) olda = it->second;
      if (auto it = mb.find(b.var()); it != mb.end()) oldb = it->second;
      ma[a.var()] = depth;
      mb[b.var()] = depth;
      bool eq = aeq(a.body(), b.body(), ma, mb, depth + 1);
      if (olda) ma[a.var()] = *olda; else ma.erase(a.var());
      if (oldb) mb[b.var()] = *oldb; else mb.erase(b.var());
      return eq;
    }
    default: {
      if (a.children().size() != b.children().size()) return false;
      for (size_t i = 0; i < a.children().size(); ++i)
        if (!aeq(a.children()[i], b.children()[i], ma, mb, depth)) return false;
      return true;
    }
  }
}

}  // namespace

std::set<std::string> free_variables(const FolFormula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

bool alpha_equal(const FolFormula& a, const FolFormula& b) {
  std::map<std::string, int> ma, mb;
  return aeq(a, b, ma, mb, 0);
}

// ---------------------------------------------------------------------------
// Printing
//
// Precedence: quantifier 0 < implies 1 < or 2 < and 3 < not 4 < atom/eq 5.

namespace {

int precedence(const FolFormula& f) {
  switch (f.kind()) {
    case FolKind::Quant: return 0;
    case FolKind::Implies: return 1;
    case FolKind::Or: return 2;
    case FolKind::And: return 3;
    case FolKind::Not: return 4;
    default: return 5;
  }
}

void print_term_rec(const FolTerm& t, std::string& out) { out += t.name; }

void print_rec(const FolFormula& f, int ctx, std::string& out) {
  const int prec = precedence(f);
  const bool parens = prec < ctx;
  if (parens) out += "(";
  switch (f.kind()) {
    case FolKind::Quant:
      out += f.is_forall() ? "all " : "exists ";
      out += f.var() + ". ";
      print_rec(f.body(), 0, out);
      break;
    case FolKind::Implies:
      print_rec(f.children()[0], 2, out);
      out += " -> ";
      print_rec(f.children()[1], 1, out);
      break;
    case FolKind::Or: {
      bool first = true;
      for (const auto& ch : f.children()) {
        if (!first) out += " | ";
        first = false;
        print_rec(ch, 3, out);
      }
      break;
    }
    case FolKind::And: {
      bool first = true;
      for (const auto& ch : f.children()) {
        if (!first) out += " & ";
        first = false;
        print_rec(ch, 4, out);
      }
      break;
    }
    case FolKind::Not: {
      out += "~";
      const FolFormula& ch = f.children()[0];
      // Equality is parenthesized under negation so the printed form reads
      // back as the same tree.
      if (ch.kind() == FolKind::Eq) {
        out += "(";
        print_rec(ch, 0, out);
        out += ")";
      } else {
        print_rec(ch, 4, out);
      }
      break;
    }
    case FolKind::Atom: {
      out += f.pred() + "(";
      bool first = true;
      for (const auto& a : f.args()) {
        if (!first) out += ", ";
        first = false;
        print_term_rec(a, out);
      }
      out += ")";
      break;
    }
    case FolKind::Eq:
      print_term_rec(f.lhs(), out);
      out += " = ";
      print_term_rec(f.rhs(), out);
      break;
  }
  if (parens) out += ")";
}

}  // namespace

std::string print_fol(const FolFormula& f) {
  std::string out;
  print_rec(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class FTok { Ident, LParen, RParen, Dot, Comma, Amp, Bar, Arrow, Tilde, Equal, End };

struct FToken {
  FTok kind;
  std::string text;
  size_t pos;
};

std::vector<FToken> flex(std::string_view s) {
  std::vector<FToken> toks;
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
      toks.push_back({FTok::Ident, std::string(s.substr(start, i - start)), start});
      continue;
    }
    switch (c) {
      case '(': toks.push_back({FTok::LParen, "(", start}); ++i; break;
      case ')': toks.push_back({FTok::RParen, ")", start}); ++i; break;
      case '.': toks.push_back({FTok::Dot, ".", start}); ++i; break;
      case ',': toks.push_back({FTok::Comma, ",", start}); ++i; break;
      case '&': toks.push_back({FTok::Amp, "&", start}); ++i; break;
      case '|': toks.push_back({FTok::Bar, "|", start}); ++i; break;
      case '~': toks.push_back({FTok::Tilde, "~", start}); ++i; break;
      case '=': toks.push_back({FTok::Equal, "=", start}); ++i; break;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          toks.push_back({FTok::Arrow, "->", start});
          i += 2;
          break;
        }
        [[fallthrough]];
      default:
        throw ParseError("unexpected character '" + std::string(1, c) +
                         "' in formula at position " + std::to_string(start));
    }
  }
  toks.push_back({FTok::End, "", s.size()});
  return toks;
}

class FolParser {
 public:
  explicit FolParser(std::string_view text) : toks_(flex(text)) {}

  FolFormula parse() {
    FolFormula f = parse_formula();
    expect(FTok::End, "end of input");
    return f;
  }

 private:
  const FToken& peek() const { return toks_[pos_]; }
  FToken next() { return toks_[pos_++]; }
  void expect(FTok k, const char* what) {
    if (peek().kind != k)
      throw ParseError(std::string("expected ") + what + " at position " +
                       std::to_string(peek().pos) + ", got '" + peek().text + "'");
    ++pos_;
  }
  bool is_keyword(const FToken& t, const char* kw) const {
    return t.kind == FTok::Ident && t.text == kw;
  }

  FolFormula parse_formula() {
    if (is_keyword(peek(), "all") || is_keyword(peek(), "exists")) {
      bool universal = next().text == "all";
      if (peek().kind != FTok::Ident)
        throw ParseError("expected a variable name at position " + std::to_string(peek().pos));
      std::string var = next().text;
      expect(FTok::Dot, "'.'");
      scope_.push_back(var);
      FolFormula body = parse_formula();
      scope_.pop_back();
      return universal ? FolFormula::forall(var, std::move(body))
                       : FolFormula::exists(var, std::move(body));
    }
    return parse_implies();
  }

  FolFormula parse_implies() {
    FolFormula left = parse_or();
    if (peek().kind == FTok::Arrow) {
      next();
      FolFormula right = parse_implies();
      return FolFormula::implies(std::move(left), std::move(right));
    }
    return left;
  }

  FolFormula parse_or() {
    std::vector<FolFormula> parts{parse_and()};
    while (peek().kind == FTok::Bar) {
      next();
      parts.push_back(parse_and());
    }
    return parts.size() == 1 ? parts.front() : FolFormula::disj(std::move(parts));
  }

  FolFormula parse_and() {
    std::vector<FolFormula> parts{parse_unary()};
    while (peek().kind == FTok::Amp) {
      next();
      parts.push_back(parse_unary());
    }
    return parts.size() == 1 ? parts.front() : FolFormula::conj(std::move(parts));
  }

  FolFormula parse_unary() {
    // A quantifier may appear wherever an operand is expected; its body
    // extends as far right as possible.
    if (is_keyword(peek(), "all") || is_keyword(peek(), "exists")) return parse_formula();
    if (peek().kind == FTok::Tilde) {
      next();
      return FolFormula::negation(parse_unary());
    }
    return parse_atomic();
  }

  bool in_scope(const std::string& name) const {
    return std::find(scope_.rbegin(), scope_.rend(), name) != scope_.rend();
  }

  FolTerm make_term(const std::string& name) const {
    return in_scope(name) ? FolTerm::var(name) : FolTerm::constant(name);
  }

  FolFormula parse_atomic() {
    if (peek().kind == FTok::LParen) {
      next();
      FolFormula f = parse_formula();
      expect(FTok::RParen, "')'");
      return f;
    }
    if (peek().kind != FTok::Ident)
      throw ParseError("expected a formula at position " + std::to_string(peek().pos));
    FToken id = next();
    if (peek().kind == FTok::LParen) {
      next();
      std::vector<FolTerm> args;
      if (peek().kind != FTok::RParen) {
        args.push_back(parse_term());
        while (peek().kind == FTok::Comma) {
          next();
          args.push_back(parse_term());
        }
      }
      expect(FTok::RParen, "')'");
      FolFormula atom = FolFormula::atom(id.text, std::move(args));
      return maybe_eq_tail(std::move(atom), id);
    }
    // Bare identifier: must be the left side of an equality.
    if (peek().kind == FTok::Equal) {
      next();
      FolTerm left = make_term(id.text);
      FolTerm right = parse_term();
      return FolFormula::eq(std::move(left), std::move(right));
    }
    throw ParseError("expected '(' or '=' after '" + id.text + "' at position " +
                     std::to_string(peek().pos));
  }

  FolFormula maybe_eq_tail(FolFormula atom, const FToken& id) {
    if (peek().kind == FTok::Equal)
      throw ParseError("'=' after atom '" + id.text + "' at position " +
                       std::to_string(peek().pos));
    return atom;
  }

  FolTerm parse_term() {
    if (peek().kind != FTok::Ident)
      throw ParseError("expected a term at position " + std::to_string(peek().pos));
    return make_term(next().text);
  }

  std::vector<FToken> toks_;
  size_t pos_ = 0;
  std::vector<std::string> scope_;
};

}  // namespace

FolFormula parse_fol(std::string_view text) { return FolParser(text).parse(); }

}  // namespace tmb
