// tmb: build and perturb finite temporal models for a small Polish fragment.
//
// Subcommands mirror the pipeline stages: parse, represent, translate, build,
// perturb, pipeline. Each stage prints its artifact in the same textual
// format the next stage accepts, so stages compose through files.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tmb/builder.hpp"
#include "tmb/errors.hpp"
#include "tmb/fol.hpp"
#include "tmb/grammar.hpp"
#include "tmb/hol.hpp"
#include "tmb/lexicon.hpp"
#include "tmb/model.hpp"
#include "tmb/perturb.hpp"
#include "tmb/theory.hpp"

namespace {

using namespace tmb;

struct Options {
  std::string sentence;
  std::string lexicon_file;
  std::vector<std::string> theory_files;
  std::string groups;
  int max_size = 8;
  int cap_timepoints = 6;
  bool all_minimal = false;
  bool dump_candidates = false;
  std::string format = "paper-model-text";
  std::string tree_file, term_file, goal_file, model_file;
};

AxiomGroup group_from_name(const std::string& name) {
  for (AxiomGroup g : {AxiomGroup::TypePartition, AxiomGroup::Typing, AxiomGroup::TimeStructure,
                       AxiomGroup::TimeEvent, AxiomGroup::Instantaneous, AxiomGroup::Culmination})
    if (name == to_string(g)) return g;
  throw ParseError("unknown axiom group '" + name + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class Driver {
 public:
  explicit Driver(const Options& opt) : opt_(opt) {
    lexicon_ = opt.lexicon_file.empty() ? Lexicon::builtin()
                                        : Lexicon::load_file(opt.lexicon_file);
    TheoryConfig cfg;
    if (!opt.groups.empty()) {
      cfg.enabled.clear();
      std::stringstream ss(opt.groups);
      std::string name;
      while (std::getline(ss, name, ',')) cfg.enabled.insert(group_from_name(name));
    }
    cfg.extra_files = opt.theory_files;
    catalog_ = axioms(cfg);
  }

  const std::vector<Axiom>& catalog() const { return catalog_; }

  ParseTree stage_parse(const std::string& sentence) const {
    return parse(tokenize(sentence), lexicon_);
  }
  Term stage_represent(const ParseTree& tree) const {
    return construct(tree, lexicon_, lexicon_.signature());
  }
  FolFormula stage_translate(const Term& term) const {
    return translate(term, lexicon_.signature());
  }
  std::vector<NamedFormula> axioms_for(const FolFormula& goal) const {
    std::vector<NamedFormula> named = as_named(catalog_);
    for (auto& fact : lexical_axioms(goal, lexicon_)) named.push_back(std::move(fact));
    return named;
  }
  Model stage_build(const FolFormula& goal) const {
    auto m = build_minimal(axioms_for(goal), goal, opt_.max_size);
    if (!m)
      throw UnsatError("unsatisfiable: no model up to size " + std::to_string(opt_.max_size));
    return *m;
  }

  void print_models(std::ostream& out, const std::vector<Model>& models) const {
    out << "models: " << models.size() << "\n";
    int i = 0;
    for (const auto& m : models) {
      ++i;
      if (opt_.format == "summary")
        out << "model " << i << ": " << m.size() << " elements\n";
      else
        out << "\n" << print_model(m);
    }
  }

  void run_parse(std::ostream& out, const std::string& sentence) const {
    out << print_tree(stage_parse(sentence)) << "\n";
  }

  void run_represent(std::ostream& out, const std::string& sentence) const {
    ParseTree tree = opt_.tree_file.empty() ? stage_parse(sentence)
                                            : parse_tree_text(read_file(opt_.tree_file));
    out << print_term(stage_represent(tree)) << "\n";
  }

  void run_translate(std::ostream& out, const std::string& sentence) const {
    Term term = opt_.term_file.empty()
                    ? stage_represent(stage_parse(sentence))
                    : parse_term(read_file(opt_.term_file), lexicon_.signature());
    out << print_fol(stage_translate(term)) << "\n";
  }

  FolFormula goal_from_input(const std::string& sentence) const {
    if (!opt_.goal_file.empty()) return parse_fol(read_file(opt_.goal_file));
    return stage_translate(stage_represent(stage_parse(sentence)));
  }

  void run_build(std::ostream& out, const std::string& sentence) const {
    FolFormula goal = goal_from_input(sentence);
    if (opt_.all_minimal) {
      auto models = build_all_minimal(axioms_for(goal), goal, opt_.max_size);
      if (models.empty())
        throw UnsatError("unsatisfiable: no model up to size " + std::to_string(opt_.max_size));
      print_models(out, models);
      return;
    }
    Model m = stage_build(goal);
    if (opt_.format == "summary")
      out << "model: " << m.size() << " elements\n";
    else
      out << print_model(m);
  }

  void run_perturb(std::ostream& out, const std::string& sentence) const {
    FolFormula goal = goal_from_input(sentence);
    Model m0 = opt_.model_file.empty() ? stage_build(goal)
                                       : parse_model(read_file(opt_.model_file));
    auto named = axioms_for(goal);
    if (opt_.dump_candidates) {
      auto candidates = perturb_candidates(m0, named, goal, opt_.cap_timepoints);
      out << "candidates: " << candidates.size() << "\n";
      int i = 0;
      for (const auto& c : candidates) {
        ++i;
        out << "\ncandidate " << i << ": " << notation(c.succession) << " ["
            << (c.kept ? "kept" : "rejected") << "]\n";
        out << print_model(c.model);
      }
      out << "\n";
    }
    print_models(out, perturb(m0, named, goal, opt_.cap_timepoints));
  }

  void run_pipeline(std::ostream& out, const std::string& sentence) const {
    FolFormula goal = goal_from_input(sentence);
    Model m0 = stage_build(goal);
    print_models(out, perturb(m0, axioms_for(goal), goal, opt_.cap_timepoints));
  }

 private:
  Options opt_;
  Lexicon lexicon_;
  std::vector<Axiom> catalog_;
};

int exit_code_for(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e)) return 2;
  if (dynamic_cast<const TypeError*>(&e)) return 3;
  if (dynamic_cast<const UnsatError*>(&e)) return 4;
  if (dynamic_cast<const CapError*>(&e)) return 5;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"build and perturb finite temporal models for a small Polish fragment"};
  app.fallthrough();

  Options opt;
  bool dump_theory_flag = false;
  app.add_option("--lexicon", opt.lexicon_file, "lexicon file (default: built-in)");
  app.add_option("--theory", opt.theory_files, "extra axiom file, repeatable")
      ->type_size(1)
      ->allow_extra_args(false);
  app.add_option("--groups", opt.groups,
                 "comma-separated axiom groups to enable (default: all; type_partition and "
                 "typing are always on)");
  app.add_option("--max-size", opt.max_size, "largest model size to search (default 8)");
  app.add_option("--cap-timepoints", opt.cap_timepoints,
                 "largest number of significant time points to perturb (default 6)");
  app.add_flag("--dump-theory", dump_theory_flag, "print the axiom catalog and exit");
  app.add_flag("--all-minimal", opt.all_minimal, "build: print all minimal models");
  app.add_flag("--dump-candidates", opt.dump_candidates,
               "perturb: print all pre-filter candidates tagged with their succession");
  app.add_option("--format", opt.format, "output format: paper-model-text | summary")
      ->check(CLI::IsMember({"paper-model-text", "summary"}));

  std::string stage;
  std::string positional;
  auto add_stage = [&](const char* name, const char* desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("sentence", positional, "sentence (reads stdin lines when omitted)");
    sub->callback([&stage, name] { stage = name; });
    return sub;
  };
  add_stage("parse", "print the parse tree");
  CLI::App* represent = add_stage("represent", "print the higher-order representation");
  represent->add_option("--tree", opt.tree_file, "read a parse tree from a file");
  CLI::App* translate_cmd = add_stage("translate", "print the first-order representation");
  translate_cmd->add_option("--term", opt.term_file, "read a higher-order term from a file");
  CLI::App* build = add_stage("build", "build a domain-minimal model");
  build->add_option("--goal", opt.goal_file, "read a first-order goal from a file");
  CLI::App* perturb_cmd = add_stage("perturb", "enumerate all temporal perturbations");
  perturb_cmd->add_option("--goal", opt.goal_file, "read a first-order goal from a file");
  perturb_cmd->add_option("--model", opt.model_file, "read the initial model from a file");
  add_stage("pipeline", "run sentence through build and perturb");

  CLI11_PARSE(app, argc, argv);

  try {
    Driver driver(opt);
    if (dump_theory_flag) {
      std::cout << dump_theory(driver.catalog());
      return 0;
    }
    if (stage.empty()) {
      std::cerr << "error: expected a subcommand (parse, represent, translate, build, "
                   "perturb, pipeline) or --dump-theory\n";
      return 1;
    }

    auto run_one = [&](const std::string& sentence, std::ostream& out) {
      if (stage == "parse") driver.run_parse(out, sentence);
      else if (stage == "represent") driver.run_represent(out, sentence);
      else if (stage == "translate") driver.run_translate(out, sentence);
      else if (stage == "build") driver.run_build(out, sentence);
      else if (stage == "perturb") driver.run_perturb(out, sentence);
      else driver.run_pipeline(out, sentence);
    };

    const bool file_driven = !opt.tree_file.empty() || !opt.term_file.empty() ||
                             !opt.goal_file.empty() || !opt.model_file.empty();
    if (!positional.empty() || file_driven) {
      run_one(positional, std::cout);
      return 0;
    }
    // Batch mode: one sentence per stdin line.
    std::string line;
    bool first = true;
    while (std::getline(std::cin, line)) {
      if (tokenize(line).empty()) continue;
      if (!first) std::cout << "\n";
      first = false;
      std::cout << "## " << line << "\n";
      run_one(line, std::cout);
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
