#include "tmb/lexicon.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace tmb {

const char* to_string(VerbClass c) {
  switch (c) {
    case VerbClass::Process: return "process";
    case VerbClass::State: return "state";
    case VerbClass::Culmination: return "culmination";
  }
  return "?";
}

std::optional<VerbClass> verb_class_from_name(std::string_view name) {
  if (name == "process") return VerbClass::Process;
  if (name == "state") return VerbClass::State;
  if (name == "culmination") return VerbClass::Culmination;
  return std::nullopt;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Splits into at most `limit` fields on '|'; the last field keeps any
// remaining '|' characters (terms may contain disjunctions).
std::vector<std::string> split_fields(const std::string& line, size_t limit) {
  std::vector<std::string> fields;
  size_t pos = 0;
  while (fields.size() + 1 < limit) {
    size_t bar = line.find('|', pos);
    if (bar == std::string::npos) break;
    fields.push_back(trim(line.substr(pos, bar - pos)));
    pos = bar + 1;
  }
  fields.push_back(trim(line.substr(pos)));
  return fields;
}

// The expected term type per category.
SemType category_type(Category cat) {
  const SemType entity = SemType::base(BaseType::Entity);
  const SemType event = SemType::base(BaseType::Event);
  const SemType b = SemType::base(BaseType::Bool);
  const SemType np = SemType::function(SemType::function(entity, b), b);
  const SemType verb = SemType::function(entity, SemType::function(event, b));
  switch (cat) {
    case Category::Pn: return np;
    case Category::Iv: return verb;
    case Category::Tv: return SemType::function(np, verb);
    case Category::Op: return SemType::function(verb, SemType::function(entity, b));
    default: throw Error("category has no lexical type");
  }
}

std::optional<Category> lex_category(const std::string& name) {
  if (name == "pn") return Category::Pn;
  if (name == "iv") return Category::Iv;
  if (name == "tv") return Category::Tv;
  if (name == "op") return Category::Op;
  return std::nullopt;
}

const std::string kBuiltinLexicon = R"(# lexical entries: word | category | class | term
#
# Operator names: perf_past, perf_nonpast, imperf_past, imperf_pres and
# imperf_nonpast, plus the culmination-class perfectives culm_perf_past
# (na- forms) and stripped_perf_past (po- forms). This lexicon covers the
# perfective fragment; imperfective operators have no entries yet.
piotr | pn | - | lam P:entity->bool. P piotr
alina | pn | - | lam P:entity->bool. P alina
list | pn | - | lam P:entity->bool. P list

spacerowac | iv | process | lam x:entity. lam e:event. ek(e, spacerowac) & agent(e, x)
kochac | tv | state | lam Q:(entity->bool)->bool. lam x:entity. lam e:event. Q (lam y:entity. ek(e, kochac) & agent(e, x) & patient(e, y))
pisac | tv | culmination | lam Q:(entity->bool)->bool. lam x:entity. lam e:event. Q (lam y:entity. ek(e, pisac) & agent(e, x) & patient(e, y))

perf_nonpast | op | - | lam V:entity->event->bool. lam x:entity. exists t:time. exists e:event. lt(now, t) & V x e & conc(e, t)
perf_past | op | - | lam V:entity->event->bool. lam x:entity. exists t:time. exists e:event. lt(t, now) & V x e & inception(e, t)
culm_perf_past | op | - | lam V:entity->event->bool. lam x:entity. exists t:time. exists e:event. lt(t, now) & V x e & conc(e, t) & culminated(e)
stripped_perf_past | op | - | lam V:entity->event->bool. lam x:entity. exists t:time. exists e:event. lt(t, now) & V x e & conc(e, t) & ~culminated(e)

# inflected surface forms: surface | form | lemma | operator
pospaceruje | form | spacerowac | perf_nonpast
pokochal | form | kochac | perf_past
napisal | form | pisac | culm_perf_past
popisal | form | pisac | stripped_perf_past
aline | form | alina | -
)";

}  // namespace

Lexicon Lexicon::load(const std::string& text) {
  struct RawEntry {
    int line_no;
    std::string word, cat, cls, term;
  };
  std::vector<RawEntry> raw_entries;
  std::vector<RawEntry> raw_forms;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_fields(line, 4);
    if (fields.size() != 4)
      throw ParseError("lexicon line " + std::to_string(line_no) +
                       ": expected 'word | category | class | term'");
    RawEntry r{line_no, fields[0], fields[1], fields[2], fields[3]};
    if (r.word.empty())
      throw ParseError("lexicon line " + std::to_string(line_no) + ": empty word field");
    if (r.cat == "form")
      raw_forms.push_back(std::move(r));
    else
      raw_entries.push_back(std::move(r));
  }

  Lexicon lex;
  // Declare lexical constants first so every term can be parsed against the
  // complete signature.
  for (const auto& r : raw_entries) {
    auto cat = lex_category(r.cat);
    if (!cat)
      throw ParseError("lexicon line " + std::to_string(r.line_no) + ": unknown category '" +
                       r.cat + "'");
    if (*cat == Category::Pn)
      lex.signature_.declare(r.word, SemType::base(BaseType::Entity));
    else if (*cat == Category::Iv || *cat == Category::Tv)
      lex.signature_.declare(r.word, SemType::base(BaseType::Kind));
  }

  for (const auto& r : raw_entries) {
    Category cat = *lex_category(r.cat);
    const bool is_verb = cat == Category::Iv || cat == Category::Tv;
    std::optional<VerbClass> verb_class;
    std::string kind_name;
    if (is_verb) {
      verb_class = verb_class_from_name(r.cls);
      if (!verb_class)
        throw ParseError("lexicon line " + std::to_string(r.line_no) +
                         ": verb entry needs a class (process|state|culmination), got '" +
                         r.cls + "'");
      kind_name = r.word;
    } else if (r.cls != "-" && !r.cls.empty()) {
      throw ParseError("lexicon line " + std::to_string(r.line_no) +
                       ": class field must be '-' for category '" + r.cat + "'");
    }
    Term term = [&] {
      try {
        return parse_term(r.term, lex.signature_);
      } catch (const Error& e) {
        throw ParseError("lexicon line " + std::to_string(r.line_no) + ": " + e.what());
      }
    }();
    SemType got = [&] {
      try {
        return typecheck(term, lex.signature_);
      } catch (const Error& e) {
        throw TypeError("lexicon line " + std::to_string(r.line_no) + ": " + e.what());
      }
    }();
    SemType want = category_type(cat);
    if (got != want)
      throw TypeError("lexicon line " + std::to_string(r.line_no) + ": entry '" + r.word +
                      "' has type " + got.str() + " but category " + r.cat + " requires " +
                      want.str());
    for (const auto& existing : lex.entries_)
      if (existing.word == r.word && existing.category == cat)
        throw ParseError("lexicon line " + std::to_string(r.line_no) + ": duplicate entry '" +
                         r.word + "'");
    lex.entries_.push_back(LexEntry{r.word, cat, std::move(term), verb_class, kind_name});
  }

  for (const auto& r : raw_forms) {
    SurfaceForm f{r.word, r.cls, r.term == "-" ? "" : r.term};
    if (!f.op.empty()) {
      bool has_verb = lex.find(f.lemma, Category::Iv) || lex.find(f.lemma, Category::Tv);
      bool has_op = lex.find(f.op, Category::Op) != nullptr;
      if (!has_verb)
        throw ParseError("lexicon line " + std::to_string(r.line_no) +
                         ": surface form refers to unknown verb '" + f.lemma + "'");
      if (!has_op)
        throw ParseError("lexicon line " + std::to_string(r.line_no) +
                         ": surface form refers to unknown operator '" + f.op + "'");
    } else if (!lex.find(f.lemma, Category::Pn)) {
      throw ParseError("lexicon line " + std::to_string(r.line_no) +
                       ": surface form refers to unknown noun '" + f.lemma + "'");
    }
    lex.forms_.push_back(std::move(f));
  }
  return lex;
}

Lexicon Lexicon::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read lexicon file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load(buf.str());
}

Lexicon Lexicon::builtin() { return load(kBuiltinLexicon); }

const std::string& Lexicon::builtin_text() { return kBuiltinLexicon; }

const LexEntry* Lexicon::find(const std::string& word, Category cat) const {
  for (const auto& e : entries_)
    if (e.word == word && e.category == cat) return &e;
  return nullptr;
}

const SurfaceForm* Lexicon::form(const std::string& surface) const {
  for (const auto& f : forms_)
    if (f.surface == surface) return &f;
  return nullptr;
}

std::string Lexicon::surface_for_verb(const std::string& lemma, const std::string& op) const {
  for (const auto& f : forms_)
    if (f.lemma == lemma && f.op == op) return f.surface;
  return lemma;
}

std::string Lexicon::surface_for_noun(const std::string& word) const {
  for (const auto& f : forms_)
    if (f.lemma == word && f.op.empty()) return f.surface;
  return word;
}

// ---------------------------------------------------------------------------
// Semantic construction

namespace {

Term construct_rec(const ParseTree& tree, const Lexicon& lex, const Signature& sig) {
  switch (tree.shape()) {
    case ParseTree::Shape::Leaf: {
      const LexEntry* entry = lex.find(tree.word(), tree.category());
      if (!entry)
        throw TypeError("missing lexicon entry for '" + tree.word() + "' (" +
                        to_string(tree.category()) + ")");
      return entry->term;
    }
    case ParseTree::Shape::Unary:
      return construct_rec(tree.child(), lex, sig);
    case ParseTree::Shape::Binary: {
      Term left = construct_rec(tree.left(), lex, sig);
      Term right = construct_rec(tree.right(), lex, sig);
      SemType tl = typecheck(left, sig);
      SemType tr = typecheck(right, sig);
      if (tl.is_function() && tl.domain() == tr) return Term::app(left, right);
      if (tr.is_function() && tr.domain() == tl) return Term::app(right, left);
      throw TypeError("no type-compatible application order at '" +
                      std::string(to_string(tree.category())) + "' node: " + tl.str() +
                      " vs " + tr.str());
    }
  }
  throw Error("unreachable tree shape");
}

}  // namespace

Term construct(const ParseTree& tree, const Lexicon& lexicon, const Signature& sig) {
  Term combined = construct_rec(tree, lexicon, sig);
  Term reduced = beta_reduce(combined);
  SemType t = typecheck(reduced, sig);
  if (!(t.is_base() && t.base_tag() == BaseType::Bool))
    throw TypeError("sentence does not denote a truth value; got type " + t.str());
  return reduced;
}

std::vector<NamedFormula> lexical_axioms(const FolFormula& goal, const Lexicon& lexicon) {
  std::set<std::string> consts;
  // Collect constants from the goal.
  std::function<void(const FolFormula&)> scan = [&](const FolFormula& f) {
    switch (f.kind()) {
      case FolKind::Atom:
        for (const auto& a : f.args())
          if (a.kind == FolTerm::Kind::Const) consts.insert(a.name);
        return;
      case FolKind::Eq:
        if (f.lhs().kind == FolTerm::Kind::Const) consts.insert(f.lhs().name);
        if (f.rhs().kind == FolTerm::Kind::Const) consts.insert(f.rhs().name);
        return;
      case FolKind::Quant:
        scan(f.body());
        return;
      default:
        for (const auto& ch : f.children()) scan(ch);
        return;
    }
  };
  scan(goal);

  std::vector<NamedFormula> out;
  for (const auto& name : consts) {
    const SemType* t = lexicon.signature().lookup(name);
    if (!t || !t->is_base()) continue;
    if (t->base_tag() == BaseType::Entity) {
      out.push_back({"lex_entity_" + name,
                     FolFormula::atom("entity", {FolTerm::constant(name)})});
    } else if (t->base_tag() == BaseType::Kind) {
      out.push_back({"lex_kind_" + name,
                     FolFormula::atom("kind", {FolTerm::constant(name)})});
      for (const auto& e : lexicon.entries()) {
        if (e.kind_name == name && e.verb_class) {
          out.push_back({"lex_class_" + name,
                         FolFormula::atom(to_string(*e.verb_class),
                                          {FolTerm::constant(name)})});
          break;
        }
      }
    }
  }
  return out;
}

std::vector<std::string> tree_yield(const ParseTree& tree, const Lexicon& lexicon) {
  switch (tree.shape()) {
    case ParseTree::Shape::Leaf:
      throw Error("yield of a bare leaf is resolved by its parent");
    case ParseTree::Shape::Unary: {
      const ParseTree& leaf = tree.child();
      return {lexicon.surface_for_noun(leaf.word())};
    }
    case ParseTree::Shape::Binary: {
      if (tree.category() == Category::S) {
        auto left = tree_yield(tree.left(), lexicon);
        auto right = tree_yield(tree.right(), lexicon);
        left.insert(left.end(), right.begin(), right.end());
        return left;
      }
      if (tree.category() == Category::Vp) {
        const std::string& op = tree.left().word();
        const ParseTree& verb = tree.right();
        if (verb.shape() == ParseTree::Shape::Leaf)
          return {lexicon.surface_for_verb(verb.word(), op)};
        // tv' node: verb leaf plus object np
        std::vector<std::string> out{lexicon.surface_for_verb(verb.left().word(), op)};
        auto obj = tree_yield(verb.right(), lexicon);
        out.insert(out.end(), obj.begin(), obj.end());
        return out;
      }
      throw Error("unexpected tree shape in yield");
    }
  }
  throw Error("unreachable tree shape");
}

}  // namespace tmb
