#pragma once

// Tokenizer and parser for the closed Polish fragment:
//   s -> np vp;  np -> pn;  vp -> OP iv;  vp -> OP (tv np)
// Inflected verb forms decompose into an operator leaf (tense/aspect)
// followed by the lemma leaf.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tmb/errors.hpp"

namespace tmb {

class Lexicon;

// tv' is the internal node combining a transitive verb with its object.
enum class Category { S, Np, Vp, TvP, Pn, Iv, Tv, Op };

const char* to_string(Category c);

class ParseTree {
 public:
  static ParseTree leaf(std::string word, Category cat);
  static ParseTree unary(Category cat, ParseTree child);
  static ParseTree binary(Category cat, ParseTree left, ParseTree right);

  enum class Shape { Leaf, Unary, Binary };
  Shape shape() const;
  Category category() const;
  const std::string& word() const;       // Leaf
  const ParseTree& child() const;        // Unary
  const ParseTree& left() const;         // Binary
  const ParseTree& right() const;        // Binary

  bool operator==(const ParseTree& rhs) const;
  bool operator!=(const ParseTree& rhs) const { return !(*this == rhs); }

 private:
  struct Node;
  explicit ParseTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Whitespace splitting with ASCII lowercasing; punctuation stripped. Empty
// input yields an empty list.
std::vector<std::string> tokenize(const std::string& input);

// Deterministic parse of the fragment. Throws ParseError for unknown words
// (naming the token) and for token lists outside the grammar (naming the
// position).
ParseTree parse(const std::vector<std::string>& tokens, const Lexicon& lexicon);

// Functor notation `binary(s, unary(np, leaf(piotr, pn)), ...)`, one line.
// parse_tree_text reads it back; the pair round-trips exactly.
std::string print_tree(const ParseTree& tree);
ParseTree parse_tree_text(std::string_view text);

}  // namespace tmb
