#include <doctest.h>

#include "tmb/grammar.hpp"
#include "tmb/lexicon.hpp"

using namespace tmb;

TEST_CASE("tokenize") {
  CHECK(tokenize("Piotr pospaceruje") == std::vector<std::string>{"piotr", "pospaceruje"});
  CHECK(tokenize("Piotr napisal list") ==
        std::vector<std::string>{"piotr", "napisal", "list"});
  CHECK(tokenize("") == std::vector<std::string>{});
  CHECK(tokenize("  Piotr,  pokochal  Aline.  ") ==
        std::vector<std::string>{"piotr", "pokochal", "aline"});
}

TEST_CASE("parse: intransitive sentence") {
  Lexicon lex = Lexicon::builtin();
  ParseTree t = parse({"piotr", "pospaceruje"}, lex);
  ParseTree expected = ParseTree::binary(
      Category::S, ParseTree::unary(Category::Np, ParseTree::leaf("piotr", Category::Pn)),
      ParseTree::binary(Category::Vp, ParseTree::leaf("perf_nonpast", Category::Op),
                        ParseTree::leaf("spacerowac", Category::Iv)));
  CHECK(t == expected);
  CHECK(print_tree(t) ==
        "binary(s, unary(np, leaf(piotr, pn)), binary(vp, leaf(perf_nonpast, op), "
        "leaf(spacerowac, iv)))");
}

TEST_CASE("parse: transitive sentence with the object np under tv'") {
  Lexicon lex = Lexicon::builtin();
  ParseTree t = parse({"piotr", "pokochal", "aline"}, lex);
  ParseTree expected = ParseTree::binary(
      Category::S, ParseTree::unary(Category::Np, ParseTree::leaf("piotr", Category::Pn)),
      ParseTree::binary(
          Category::Vp, ParseTree::leaf("perf_past", Category::Op),
          ParseTree::binary(Category::TvP, ParseTree::leaf("kochac", Category::Tv),
                            ParseTree::unary(Category::Np,
                                             ParseTree::leaf("alina", Category::Pn)))));
  CHECK(t == expected);
  CHECK(print_tree(t) ==
        "binary(s, unary(np, leaf(piotr, pn)), binary(vp, leaf(perf_past, op), "
        "binary(tv', leaf(kochac, tv), unary(np, leaf(alina, pn)))))");
}

TEST_CASE("parse errors name the token or position") {
  Lexicon lex = Lexicon::builtin();
  CHECK_THROWS_WITH_AS(parse({"piotr", "xyzzy"}, lex), doctest::Contains("xyzzy"), ParseError);
  CHECK_THROWS_WITH_AS(parse({}, lex), doctest::Contains("empty"), ParseError);
  CHECK_THROWS_WITH_AS(parse({"pospaceruje", "piotr"}, lex),
                       doctest::Contains("position 1"), ParseError);
  CHECK_THROWS_WITH_AS(parse({"piotr", "pospaceruje", "list"}, lex),
                       doctest::Contains("position 3"), ParseError);
  CHECK_THROWS_WITH_AS(parse({"piotr", "pokochal"}, lex), doctest::Contains("position 3"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse({"piotr", "piotr"}, lex), doctest::Contains("position 2"),
                       ParseError);
}

TEST_CASE("parse is deterministic") {
  Lexicon lex = Lexicon::builtin();
  for (int i = 0; i < 3; ++i)
    CHECK(parse({"piotr", "napisal", "list"}, lex) == parse({"piotr", "napisal", "list"}, lex));
}

TEST_CASE("tree text round-trips") {
  Lexicon lex = Lexicon::builtin();
  for (const char* sentence : {"Piotr pospaceruje", "Piotr pokochal Aline",
                               "Piotr napisal list", "Piotr popisal list"}) {
    ParseTree t = parse(tokenize(sentence), lex);
    CHECK(parse_tree_text(print_tree(t)) == t);
  }
  CHECK_THROWS_AS(parse_tree_text("binary(s, leaf(piotr, pn))"), ParseError);
  CHECK_THROWS_AS(parse_tree_text("ternary(s)"), ParseError);
}

TEST_CASE("yield recovers the token list") {
  Lexicon lex = Lexicon::builtin();
  for (const char* sentence : {"Piotr pospaceruje", "Piotr pokochal Aline",
                               "Piotr napisal list", "Piotr popisal list"}) {
    std::vector<std::string> tokens = tokenize(sentence);
    ParseTree t = parse(tokens, lex);
    CHECK(tree_yield(t, lex) == tokens);
  }
}
