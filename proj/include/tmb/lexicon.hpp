#pragma once

// The semantic lexicon: typed lambda terms per word and category, the surface
// form table for inflected words, and bottom-up semantic construction over
// parse trees.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmb/fol.hpp"
#include "tmb/grammar.hpp"
#include "tmb/hol.hpp"

namespace tmb {

enum class VerbClass { Process, State, Culmination };

const char* to_string(VerbClass c);
std::optional<VerbClass> verb_class_from_name(std::string_view name);

struct LexEntry {
  std::string word;   // lemma for verbs, canonical form for nouns, operator name
  Category category;  // Pn, Iv, Tv or Op
  Term term;
  std::optional<VerbClass> verb_class;  // verbs only
  std::string kind_name;                // verbs only; the event-kind constant
};

// Maps an inflected surface form to its lemma plus operator (operator empty
// for plain noun aliases such as accusative forms).
struct SurfaceForm {
  std::string surface;
  std::string lemma;
  std::string op;
};

class Lexicon {
 public:
  // Line-oriented text, one entry per line, `#` comments:
  //   word | category | class | term          (category pn/iv/tv/op)
  //   surface | form | lemma | operator       (operator `-` for noun aliases)
  // Proper nouns declare an entity constant, verbs a kind constant; every
  // term must typecheck at the type its category prescribes.
  static Lexicon load(const std::string& text);
  static Lexicon load_file(const std::string& path);
  // The built-in lexicon covering the four reference sentences.
  static Lexicon builtin();
  static const std::string& builtin_text();

  const LexEntry* find(const std::string& word, Category cat) const;
  const SurfaceForm* form(const std::string& surface) const;
  const Signature& signature() const { return signature_; }
  const std::vector<LexEntry>& entries() const { return entries_; }
  const std::vector<SurfaceForm>& forms() const { return forms_; }

  // Inverse of the surface-form table, for reattaching inflection to leaves.
  std::string surface_for_verb(const std::string& lemma, const std::string& op) const;
  std::string surface_for_noun(const std::string& word) const;

 private:
  std::vector<LexEntry> entries_;
  std::vector<SurfaceForm> forms_;
  Signature signature_ = Signature::temporal_base();
};

// Bottom-up semantic construction: leaves denote their lexicon terms and
// binary nodes combine by type-directed function application (the child whose
// type accepts the other's type is the functor); the result is beta-reduced
// and must be a closed term of type bool.
Term construct(const ParseTree& tree, const Lexicon& lexicon, const Signature& sig);

// Ground facts contributed by the lexical constants occurring in a goal
// formula: the type of each proper-noun and kind constant, and the verb-class
// membership of each kind. These accompany the theory axioms during model
// building so the built models carry the verb-class information.
std::vector<NamedFormula> lexical_axioms(const FolFormula& goal, const Lexicon& lexicon);

// Leaf surface forms with inflection reattached; reproduces the token list
// the tree was parsed from.
std::vector<std::string> tree_yield(const ParseTree& tree, const Lexicon& lexicon);

}  // namespace tmb
