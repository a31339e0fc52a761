#include <doctest.h>

#include "tmb/builder.hpp"
#include "tmb/fol.hpp"
#include "tmb/grammar.hpp"
#include "tmb/lexicon.hpp"
#include "tmb/theory.hpp"

using namespace tmb;

namespace {

Term sentence_term(const std::string& sentence) {
  Lexicon lex = Lexicon::builtin();
  return construct(parse(tokenize(sentence), lex), lex, lex.signature());
}

}  // namespace

TEST_CASE("lexicon: builtin loads with the expected entries") {
  Lexicon lex = Lexicon::builtin();
  REQUIRE(lex.find("spacerowac", Category::Iv));
  CHECK(lex.find("spacerowac", Category::Iv)->verb_class == VerbClass::Process);
  REQUIRE(lex.find("kochac", Category::Tv));
  CHECK(lex.find("kochac", Category::Tv)->verb_class == VerbClass::State);
  REQUIRE(lex.find("pisac", Category::Tv));
  CHECK(lex.find("pisac", Category::Tv)->verb_class == VerbClass::Culmination);
  CHECK(lex.find("piotr", Category::Pn));
  CHECK(lex.find("perf_nonpast", Category::Op));
  CHECK(lex.signature().lookup("kochac"));
  CHECK(lex.form("pospaceruje"));
  CHECK(lex.form("aline")->op.empty());
}

TEST_CASE("lexicon: load errors") {
  CHECK_THROWS_AS(Lexicon::load("piotr | pn | -"), ParseError);
  CHECK_THROWS_AS(Lexicon::load("walk | iv | - | lam x:entity. lam e:event. agent(e, x)"),
                  ParseError);  // verbs need a class
  CHECK_THROWS_AS(Lexicon::load("walk | verb | - | lam x:entity. x"), ParseError);
  // Type shape enforced per category.
  CHECK_THROWS_AS(Lexicon::load("piotr | pn | - | lam e:event. agent(e, piotr)"), Error);
  // Surface forms must point at declared entries.
  CHECK_THROWS_AS(Lexicon::load("walked | form | walk | perf_past"), ParseError);
}

TEST_CASE("construct: the walk sentence reproduces the reference representation") {
  Lexicon lex = Lexicon::builtin();
  Term t = sentence_term("Piotr pospaceruje");
  Term expected = parse_term(
      "exists t:time. exists e:event. lt(now, t) & ek(e, spacerowac) & agent(e, piotr) & "
      "conc(e, t)",
      lex.signature());
  CHECK(alpha_equal(t, expected));
}

TEST_CASE("construct: inchoative reading of the perfective state verb") {
  Lexicon lex = Lexicon::builtin();
  Term t = sentence_term("Piotr pokochal Aline");
  Term expected = parse_term(
      "exists t:time. exists e:event. lt(t, now) & ek(e, kochac) & agent(e, piotr) & "
      "patient(e, alina) & inception(e, t)",
      lex.signature());
  CHECK(alpha_equal(t, expected));
}

TEST_CASE("construct: culminated and stripped writing") {
  Lexicon lex = Lexicon::builtin();
  Term na = sentence_term("Piotr napisal list");
  CHECK(alpha_equal(na, parse_term("exists t:time. exists e:event. lt(t, now) & "
                                   "ek(e, pisac) & agent(e, piotr) & patient(e, list) & "
                                   "conc(e, t) & culminated(e)",
                                   lex.signature())));
  Term po = sentence_term("Piotr popisal list");
  CHECK(alpha_equal(po, parse_term("exists t:time. exists e:event. lt(t, now) & "
                                   "ek(e, pisac) & agent(e, piotr) & patient(e, list) & "
                                   "conc(e, t) & ~culminated(e)",
                                   lex.signature())));
}

TEST_CASE("construct: output is closed, beta-normal, and bool-typed") {
  Lexicon lex = Lexicon::builtin();
  for (const char* sentence : {"Piotr pospaceruje", "Piotr pokochal Aline",
                               "Piotr napisal list", "Piotr popisal list"}) {
    Term t = sentence_term(sentence);
    CHECK(free_variables(t).empty());
    CHECK(typecheck(t, lex.signature()) == SemType::base(BaseType::Bool));
    CHECK(beta_reduce(t) == t);
    // And the first-order translation goes through.
    FolFormula f = translate(t, lex.signature());
    CHECK(free_variables(f).empty());
  }
}

TEST_CASE("construct: missing entry is reported") {
  Lexicon lex = Lexicon::builtin();
  ParseTree bad = ParseTree::binary(
      Category::S, ParseTree::unary(Category::Np, ParseTree::leaf("piotr", Category::Pn)),
      ParseTree::binary(Category::Vp, ParseTree::leaf("imperf_pres", Category::Op),
                        ParseTree::leaf("spacerowac", Category::Iv)));
  CHECK_THROWS_WITH_AS(construct(bad, lex, lex.signature()),
                       doctest::Contains("imperf_pres"), TypeError);
}

TEST_CASE("construct: no type-compatible application order is reported") {
  Lexicon lex = Lexicon::builtin();
  ParseTree bad = ParseTree::binary(
      Category::S, ParseTree::unary(Category::Np, ParseTree::leaf("piotr", Category::Pn)),
      ParseTree::unary(Category::Np, ParseTree::leaf("alina", Category::Pn)));
  CHECK_THROWS_WITH_AS(construct(bad, lex, lex.signature()),
                       doctest::Contains("no type-compatible application order"), TypeError);
}

TEST_CASE("consistency smoke: every verb and operator combination has a model") {
  Lexicon lex = Lexicon::builtin();
  const char* ops[] = {"perf_nonpast", "perf_past", "culm_perf_past", "stripped_perf_past"};
  std::vector<NamedFormula> catalog = as_named(axioms());
  for (const auto& entry : lex.entries()) {
    if (!entry.verb_class) continue;
    for (const char* op : ops) {
      ParseTree verb_part =
          entry.category == Category::Iv
              ? ParseTree::leaf(entry.word, Category::Iv)
              : ParseTree::binary(
                    Category::TvP, ParseTree::leaf(entry.word, Category::Tv),
                    ParseTree::unary(Category::Np, ParseTree::leaf("alina", Category::Pn)));
      ParseTree tree = ParseTree::binary(
          Category::S, ParseTree::unary(Category::Np, ParseTree::leaf("piotr", Category::Pn)),
          ParseTree::binary(Category::Vp, ParseTree::leaf(op, Category::Op), verb_part));
      Term t = construct(tree, lex, lex.signature());
      FolFormula goal = translate(t, lex.signature());
      std::vector<NamedFormula> named = catalog;
      for (auto& f : lexical_axioms(goal, lex)) named.push_back(std::move(f));
      auto m = build_minimal(named, goal, 8);
      REQUIRE_MESSAGE(m.has_value(), entry.word << " + " << op);
      std::vector<NamedFormula> all = named;
      all.push_back({"goal", goal});
      CHECK(check_all(*m, all).ok);
    }
  }
}

TEST_CASE("lexical axioms: typing and class facts for goal constants") {
  Lexicon lex = Lexicon::builtin();
  Term t = sentence_term("Piotr pospaceruje");
  FolFormula goal = translate(t, lex.signature());
  std::vector<NamedFormula> facts = lexical_axioms(goal, lex);
  REQUIRE(facts.size() == 3);
  CHECK(facts[0].name == "lex_entity_piotr");
  CHECK(print_fol(facts[0].formula) == "entity(piotr)");
  CHECK(facts[1].name == "lex_kind_spacerowac");
  CHECK(print_fol(facts[1].formula) == "kind(spacerowac)");
  CHECK(facts[2].name == "lex_class_spacerowac");
  CHECK(print_fol(facts[2].formula) == "process(spacerowac)");
  // `now` contributes nothing; its typing is an axiom already.
  for (const auto& f : facts) CHECK(f.name.find("now") == std::string::npos);
}
