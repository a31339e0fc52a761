#include "tmb/grammar.hpp"

#include <cctype>

#include "tmb/lexicon.hpp"

namespace tmb {

const char* to_string(Category c) {
  switch (c) {
    case Category::S: return "s";
    case Category::Np: return "np";
    case Category::Vp: return "vp";
    case Category::TvP: return "tv'";
    case Category::Pn: return "pn";
    case Category::Iv: return "iv";
    case Category::Tv: return "tv";
    case Category::Op: return "op";
  }
  return "?";
}

namespace {

std::optional<Category> category_from_name(std::string_view name) {
  if (name == "s") return Category::S;
  if (name == "np") return Category::Np;
  if (name == "vp") return Category::Vp;
  if (name == "tv'") return Category::TvP;
  if (name == "pn") return Category::Pn;
  if (name == "iv") return Category::Iv;
  if (name == "tv") return Category::Tv;
  if (name == "op") return Category::Op;
  return std::nullopt;
}

}  // namespace

struct ParseTree::Node {
  Shape shape;
  Category category;
  std::string word;
  std::vector<ParseTree> kids;
};

ParseTree ParseTree::leaf(std::string word, Category cat) {
  auto n = std::make_shared<Node>();
  n->shape = Shape::Leaf;
  n->category = cat;
  n->word = std::move(word);
  return ParseTree(std::move(n));
}

ParseTree ParseTree::unary(Category cat, ParseTree child) {
  auto n = std::make_shared<Node>();
  n->shape = Shape::Unary;
  n->category = cat;
  n->kids = {std::move(child)};
  return ParseTree(std::move(n));
}

ParseTree ParseTree::binary(Category cat, ParseTree left, ParseTree right) {
  auto n = std::make_shared<Node>();
  n->shape = Shape::Binary;
  n->category = cat;
  n->kids = {std::move(left), std::move(right)};
  return ParseTree(std::move(n));
}

ParseTree::Shape ParseTree::shape() const { return node_->shape; }
Category ParseTree::category() const { return node_->category; }
const std::string& ParseTree::word() const { return node_->word; }
const ParseTree& ParseTree::child() const { return node_->kids[0]; }
const ParseTree& ParseTree::left() const { return node_->kids[0]; }
const ParseTree& ParseTree::right() const { return node_->kids[1]; }

bool ParseTree::operator==(const ParseTree& rhs) const {
  if (node_ == rhs.node_) return true;
  if (node_->shape != rhs.node_->shape || node_->category != rhs.node_->category ||
      node_->word != rhs.node_->word || node_->kids.size() != rhs.node_->kids.size())
    return false;
  for (size_t i = 0; i < node_->kids.size(); ++i)
    if (node_->kids[i] != rhs.node_->kids[i]) return false;
  return true;
}

std::vector<std::string> tokenize(const std::string& input) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(current);
      current.clear();
    }
  };
  for (unsigned char c : input) {
    if (std::isspace(c)) {
      flush();
    } else if (c < 0x80 && std::ispunct(c)) {
      // strip punctuation
    } else {
      current += static_cast<char>(std::tolower(c));
    }
  }
  flush();
  return tokens;
}

namespace {

// A token resolved against the lexicon: a noun or an inflected verb.
struct Resolved {
  const LexEntry* noun = nullptr;
  const LexEntry* verb = nullptr;
  std::string op;
};

Resolved resolve(const std::string& token, const Lexicon& lex) {
  Resolved r;
  if (const SurfaceForm* form = lex.form(token)) {
    if (form->op.empty()) {
      r.noun = lex.find(form->lemma, Category::Pn);
    } else {
      r.verb = lex.find(form->lemma, Category::Iv);
      if (!r.verb) r.verb = lex.find(form->lemma, Category::Tv);
      r.op = form->op;
    }
    if (!r.noun && !r.verb)
      throw ParseError("unknown word '" + token + "': surface form refers to a missing entry '" +
                       form->lemma + "'");
    return r;
  }
  r.noun = lex.find(token, Category::Pn);
  if (r.noun) return r;
  throw ParseError("unknown word '" + token + "'");
}

}  // namespace

ParseTree parse(const std::vector<std::string>& tokens, const Lexicon& lexicon) {
  if (tokens.empty()) throw ParseError("no parse: empty input");
  Resolved subject = resolve(tokens[0], lexicon);
  if (!subject.noun)
    throw ParseError("no parse at position 1: expected a proper noun, got '" + tokens[0] + "'");
  if (tokens.size() < 2)
    throw ParseError("no parse at position 2: expected an inflected verb");
  Resolved verb = resolve(tokens[1], lexicon);
  if (!verb.verb)
    throw ParseError("no parse at position 2: expected an inflected verb, got '" + tokens[1] +
                     "'");

  ParseTree np_subj =
      ParseTree::unary(Category::Np, ParseTree::leaf(subject.noun->word, Category::Pn));
  ParseTree op_leaf = ParseTree::leaf(verb.op, Category::Op);

  if (verb.verb->category == Category::Iv) {
    if (tokens.size() != 2)
      throw ParseError("no parse at position 3: unexpected '" + tokens[2] + "'");
    ParseTree vp = ParseTree::binary(Category::Vp, op_leaf,
                                     ParseTree::leaf(verb.verb->word, Category::Iv));
    return ParseTree::binary(Category::S, np_subj, vp);
  }

  if (tokens.size() < 3)
    throw ParseError("no parse at position 3: expected an object for '" + tokens[1] + "'");
  Resolved object = resolve(tokens[2], lexicon);
  if (!object.noun)
    throw ParseError("no parse at position 3: expected a proper noun, got '" + tokens[2] + "'");
  if (tokens.size() != 3)
    throw ParseError("no parse at position 4: unexpected '" + tokens[3] + "'");
  ParseTree np_obj =
      ParseTree::unary(Category::Np, ParseTree::leaf(object.noun->word, Category::Pn));
  ParseTree tvp = ParseTree::binary(
      Category::TvP, ParseTree::leaf(verb.verb->word, Category::Tv), np_obj);
  ParseTree vp = ParseTree::binary(Category::Vp, op_leaf, tvp);
  return ParseTree::binary(Category::S, np_subj, vp);
}

std::string print_tree(const ParseTree& tree) {
  switch (tree.shape()) {
    case ParseTree::Shape::Leaf:
      return std::string("leaf(") + tree.word() + ", " + to_string(tree.category()) + ")";
    case ParseTree::Shape::Unary:
      return std::string("unary(") + to_string(tree.category()) + ", " +
             print_tree(tree.child()) + ")";
    case ParseTree::Shape::Binary:
      return std::string("binary(") + to_string(tree.category()) + ", " +
             print_tree(tree.left()) + ", " + print_tree(tree.right()) + ")";
  }
  throw Error("unreachable tree shape");
}

namespace {

struct TreeLexer {
  std::string_view s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  char peek() {
    skip();
    return i < s.size() ? s[i] : '\0';
  }
  void expect(char c) {
    skip();
    if (i >= s.size() || s[i] != c)
      throw ParseError(std::string("expected '") + c + "' at position " + std::to_string(i) +
                       " of tree text");
    ++i;
  }
  std::string ident() {
    skip();
    size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_' || s[i] == '\''))
      ++i;
    if (start == i)
      throw ParseError("expected an identifier at position " + std::to_string(start) +
                       " of tree text");
    return std::string(s.substr(start, i - start));
  }
};

ParseTree parse_tree_rec(TreeLexer& lx) {
  std::string functor = lx.ident();
  lx.expect('(');
  if (functor == "leaf") {
    std::string word = lx.ident();
    lx.expect(',');
    std::string cat = lx.ident();
    lx.expect(')');
    auto c = category_from_name(cat);
    if (!c) throw ParseError("unknown category '" + cat + "' in tree text");
    return ParseTree::leaf(word, *c);
  }
  std::string cat = lx.ident();
  auto c = category_from_name(cat);
  if (!c) throw ParseError("unknown category '" + cat + "' in tree text");
  lx.expect(',');
  if (functor == "unary") {
    ParseTree child = parse_tree_rec(lx);
    lx.expect(')');
    return ParseTree::unary(*c, std::move(child));
  }
  if (functor == "binary") {
    ParseTree left = parse_tree_rec(lx);
    lx.expect(',');
    ParseTree right = parse_tree_rec(lx);
    lx.expect(')');
    return ParseTree::binary(*c, std::move(left), std::move(right));
  }
  throw ParseError("unknown functor '" + functor + "' in tree text");
}

}  // namespace

ParseTree parse_tree_text(std::string_view text) {
  TreeLexer lx{text};
  ParseTree t = parse_tree_rec(lx);
  lx.skip();
  if (lx.i != text.size())
    throw ParseError("trailing input after tree text at position " + std::to_string(lx.i));
  return t;
}

}  // namespace tmb
