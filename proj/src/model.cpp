#include "tmb/model.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace tmb {

// ---------------------------------------------------------------------------
// Model

void Model::set_constant(const std::string& name, int element) {
  if (element < 0 || element >= size_)
    throw ParseError("constant '" + name + "' denotes d" + std::to_string(element + 1) +
                     ", outside the domain of size " + std::to_string(size_));
  constants_[name] = element;
}

void Model::remove_constant(const std::string& name) { constants_.erase(name); }

std::optional<int> Model::constant(const std::string& name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) return std::nullopt;
  return it->second;
}

void Model::declare_relation(const std::string& name, int arity) {
  relations_[RelKey{name, arity}];
}

void Model::remove_relation(const std::string& name, int arity) {
  relations_.erase(RelKey{name, arity});
}

void Model::add_tuple(const std::string& name, Tuple tuple) {
  if (tuple.empty() || tuple.size() > 2)
    throw ParseError("relation '" + name + "' must be unary or binary");
  for (int e : tuple)
    if (e < 0 || e >= size_)
      throw ParseError("relation '" + name + "' mentions d" + std::to_string(e + 1) +
                       ", outside the domain of size " + std::to_string(size_));
  relations_[RelKey{name, static_cast<int>(tuple.size())}].insert(std::move(tuple));
}

bool Model::has_relation(const std::string& name, int arity) const {
  return relations_.count(RelKey{name, arity}) > 0;
}

const Model::Extension& Model::extension(const std::string& name, int arity) const {
  static const Extension empty;
  auto it = relations_.find(RelKey{name, arity});
  return it == relations_.end() ? empty : it->second;
}

// ---------------------------------------------------------------------------
// Satisfaction

namespace {

int eval_term(const Model& m, const FolTerm& t, const std::map<std::string, int>& env) {
  if (t.kind == FolTerm::Kind::Var) {
    auto it = env.find(t.name);
    if (it == env.end())
      throw TypeError("free variable '" + t.name + "' in formula (input is not closed)");
    return it->second;
  }
  auto e = m.constant(t.name);
  if (!e) throw TypeError("constant '" + t.name + "' is not interpreted by the model");
  return *e;
}

bool eval(const Model& m, const FolFormula& f, std::map<std::string, int>& env) {
  switch (f.kind()) {
    case FolKind::Atom: {
      Model::Tuple tuple;
      tuple.reserve(f.args().size());
      for (const auto& a : f.args()) tuple.push_back(eval_term(m, a, env));
      return m.extension(f.pred(), static_cast<int>(tuple.size())).count(tuple) > 0;
    }
    case FolKind::Eq:
      return eval_term(m, f.lhs(), env) == eval_term(m, f.rhs(), env);
    case FolKind::Not:
      return !eval(m, f.children()[0], env);
    case FolKind::And:
      for (const auto& ch : f.children())
        if (!eval(m, ch, env)) return false;
      return true;
    case FolKind::Or:
      for (const auto& ch : f.children())
        if (eval(m, ch, env)) return true;
      return false;
    case FolKind::Implies:
      return !eval(m, f.children()[0], env) || eval(m, f.children()[1], env);
    case FolKind::Quant: {
      auto saved = env.find(f.var()) != env.end() ? std::optional<int>(env[f.var()])
                                                  : std::nullopt;
      bool result = f.is_forall();
      for (int d = 0; d < m.size(); ++d) {
        env[f.var()] = d;
        bool v = eval(m, f.body(), env);
        if (f.is_forall() && !v) { result = false; break; }
        if (!f.is_forall() && v) { result = true; break; }
      }
      if (saved) env[f.var()] = *saved; else env.erase(f.var());
      return result;
    }
  }
  throw Error("unreachable formula kind");
}

}  // namespace

bool check(const Model& m, const FolFormula& f) {
  std::map<std::string, int> env;
  return eval(m, f, env);
}

CheckAllResult check_all(const Model& m, const std::vector<NamedFormula>& fs) {
  for (const auto& nf : fs)
    if (!check(m, nf.formula)) return {false, nf.name};
  return {true, ""};
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

// Per-element invariant: for every relation, membership/degree counts that
// any isomorphism must preserve.
std::vector<std::vector<int>> profiles(const Model& m, const std::set<Model::RelKey>& keys) {
  std::vector<std::vector<int>> prof(m.size());
  for (const auto& key : keys) {
    const auto& ext = m.extension(key.name, key.arity);
    std::vector<int> member(m.size(), 0), outdeg(m.size(), 0), indeg(m.size(), 0),
        loops(m.size(), 0);
    for (const auto& t : ext) {
      if (key.arity == 1) {
        member[t[0]]++;
      } else if (key.arity == 2) {
        outdeg[t[0]]++;
        indeg[t[1]]++;
        if (t[0] == t[1]) loops[t[0]]++;
      }
    }
    for (int d = 0; d < m.size(); ++d) {
      if (key.arity == 1) {
        prof[d].push_back(member[d]);
      } else {
        prof[d].push_back(outdeg[d]);
        prof[d].push_back(indeg[d]);
        prof[d].push_back(loops[d]);
      }
    }
  }
  return prof;
}

bool preserves(const Model& a, const Model& b, const std::vector<int>& map,
               const std::set<Model::RelKey>& keys) {
  for (const auto& key : keys) {
    const auto& ea = a.extension(key.name, key.arity);
    const auto& eb = b.extension(key.name, key.arity);
    if (ea.size() != eb.size()) return false;
    for (const auto& t : ea) {
      Model::Tuple mapped;
      mapped.reserve(t.size());
      for (int e : t) mapped.push_back(map[e]);
      if (!eb.count(mapped)) return false;
    }
  }
  return true;
}

}  // namespace

bool isomorphic(const Model& a, const Model& b) {
  if (a.size() != b.size()) return false;
  // Constants must exist in both models under the same names.
  {
    auto names = [](const Model& m) {
      std::set<std::string> s;
      for (const auto& [n, e] : m.constants()) s.insert(n);
      return s;
    };
    if (names(a) != names(b)) return false;
  }
  std::set<Model::RelKey> keys;
  for (const auto& [k, ext] : a.relations()) keys.insert(k);
  for (const auto& [k, ext] : b.relations()) keys.insert(k);
  for (const auto& k : keys)
    if (a.extension(k.name, k.arity).size() != b.extension(k.name, k.arity).size())
      return false;

  const int n = a.size();
  std::vector<std::vector<int>> pa = profiles(a, keys), pb = profiles(b, keys);
  std::vector<int> map(n, -1), used(n, 0);

  // Constants pin part of the bijection.
  for (const auto& [name, ea] : a.constants()) {
    int eb = *b.constant(name);
    if (pa[ea] != pb[eb]) return false;
    if (map[ea] != -1 && map[ea] != eb) return false;
    if (map[ea] == -1) {
      if (used[eb]) return false;
      map[ea] = eb;
      used[eb] = 1;
    }
  }

  std::function<bool(int)> assign = [&](int d) -> bool {
    while (d < n && map[d] != -1) ++d;
    if (d == n) return preserves(a, b, map, keys) && [&] {
      // The reverse direction follows from equal extension sizes plus the
      // forward inclusion, but verify explicitly.
      std::vector<int> inv(n);
      for (int i = 0; i < n; ++i) inv[map[i]] = i;
      return preserves(b, a, inv, keys);
    }();
    for (int e = 0; e < n; ++e) {
      if (used[e] || pa[d] != pb[e]) continue;
      map[d] = e;
      used[e] = 1;
      if (assign(d + 1)) return true;
      map[d] = -1;
      used[e] = 0;
    }
    return false;
  };
  return assign(0);
}

// ---------------------------------------------------------------------------
// Textual format

namespace {

struct ModelLexer {
  std::string_view s;
  size_t i = 0;

  void skip_space() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_space();
    return i >= s.size();
  }
  char peek() {
    skip_space();
    return i < s.size() ? s[i] : '\0';
  }
  void expect(char c) {
    skip_space();
    if (i >= s.size() || s[i] != c)
      throw ParseError(std::string("expected '") + c + "' at position " + std::to_string(i) +
                       " of model text");
    ++i;
  }
  std::string ident() {
    skip_space();
    size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\''))
      ++i;
    if (start == i)
      throw ParseError("expected an identifier at position " + std::to_string(start) +
                       " of model text");
    return std::string(s.substr(start, i - start));
  }
  int number() {
    skip_space();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i)
      throw ParseError("expected a number at position " + std::to_string(start) +
                       " of model text");
    return std::stoi(std::string(s.substr(start, i - start)));
  }
};

int element_index(const std::string& label, int domain_size) {
  if (label.size() < 2 || label[0] != 'd')
    throw ParseError("expected a domain element, got '" + label + "'");
  for (size_t i = 1; i < label.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(label[i])))
      throw ParseError("expected a domain element, got '" + label + "'");
  int idx = std::stoi(label.substr(1)) - 1;
  if (idx < 0 || idx >= domain_size)
    throw ParseError("element '" + label + "' is outside the declared domain");
  return idx;
}

}  // namespace

Model parse_model(std::string_view text) {
  ModelLexer lx{text};
  lx.skip_space();
  // Domain line: D=[d1,d2,...]
  if (lx.ident() != "D") throw ParseError("model text must start with 'D=[...]'");
  lx.expect('=');
  lx.expect('[');
  int count = 0;
  if (lx.peek() != ']') {
    while (true) {
      std::string label = lx.ident();
      ++count;
      if (label != "d" + std::to_string(count))
        throw ParseError("domain elements must be d1..dn in order, got '" + label + "'");
      if (lx.peek() == ',') { lx.expect(','); continue; }
      break;
    }
  }
  lx.expect(']');
  Model m(count);

  while (!lx.done()) {
    std::string f = lx.ident();
    if (f != "f") throw ParseError("expected 'f(arity, name, ...)', got '" + f + "'");
    lx.expect('(');
    int arity = lx.number();
    lx.expect(',');
    std::string name = lx.ident();
    lx.expect(',');
    if (arity == 0) {
      std::string label = lx.ident();
      m.set_constant(name, element_index(label, count));
    } else if (arity == 1) {
      lx.expect('[');
      m.declare_relation(name, 1);
      if (lx.peek() != ']') {
        while (true) {
          m.add_tuple(name, {element_index(lx.ident(), count)});
          if (lx.peek() == ',') { lx.expect(','); continue; }
          break;
        }
      }
      lx.expect(']');
    } else if (arity == 2) {
      lx.expect('[');
      m.declare_relation(name, 2);
      if (lx.peek() != ']') {
        while (true) {
          lx.expect('(');
          int a = element_index(lx.ident(), count);
          lx.expect(',');
          int b = element_index(lx.ident(), count);
          lx.expect(')');
          m.add_tuple(name, {a, b});
          if (lx.peek() == ',') { lx.expect(','); continue; }
          break;
        }
      }
      lx.expect(']');
    } else {
      throw ParseError("unsupported arity " + std::to_string(arity) + " for relation '" +
                       name + "'");
    }
    lx.expect(')');
  }
  return m;
}

std::string print_model(const Model& m) {
  std::string out = "D=[";
  for (int d = 0; d < m.size(); ++d) {
    if (d) out += ",";
    out += "d" + std::to_string(d + 1);
  }
  out += "]\n";
  for (const auto& [name, e] : m.constants())
    out += "f(0, " + name + ", d" + std::to_string(e + 1) + ")\n";
  for (const auto& [key, ext] : m.relations()) {
    out += "f(" + std::to_string(key.arity) + ", " + key.name + ", [";
    bool first = true;
    for (const auto& t : ext) {
      if (!first) out += ",";
      first = false;
      if (key.arity == 1) {
        out += "d" + std::to_string(t[0] + 1);
      } else {
        out += "(d" + std::to_string(t[0] + 1) + ",d" + std::to_string(t[1] + 1) + ")";
      }
    }
    out += "])\n";
  }
  return out;
}

}  // namespace tmb
