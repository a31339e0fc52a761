#pragma once

// The named axiom catalog of the theory of time and events, organized by
// group, plus loading of extra axiom files and the dump format
// `axiom <name>. <formula>`.

#include <set>
#include <string>
#include <vector>

#include "tmb/fol.hpp"

namespace tmb {

enum class AxiomGroup {
  TypePartition,
  Typing,
  TimeStructure,
  TimeEvent,
  Instantaneous,
  Culmination,
  Extra,
};

const char* to_string(AxiomGroup g);

struct Axiom {
  std::string name;
  AxiomGroup group;
  // True for axioms reconstructed by analogy rather than printed verbatim in
  // the source theory.
  bool completed;
  FolFormula formula;
};

struct TheoryConfig {
  // type_partition and typing are always enabled; the sort discipline is
  // load-bearing for both the checker and the builder.
  std::set<AxiomGroup> enabled = {
      AxiomGroup::TypePartition, AxiomGroup::Typing,     AxiomGroup::TimeStructure,
      AxiomGroup::TimeEvent,     AxiomGroup::Instantaneous, AxiomGroup::Culmination,
  };
  std::vector<std::string> extra_files;
};

// The fixed catalog, filtered by the enabled groups, with any extra-file
// axioms appended. Extra files hold one formula per line, either bare or as
// `axiom <name>. <formula>`; `#` starts a comment.
std::vector<Axiom> axioms(const TheoryConfig& config = {});

std::vector<NamedFormula> as_named(const std::vector<Axiom>& axs);

// One `axiom <name>. <formula>` line per axiom, with `# group:` headers.
std::string dump_theory(const std::vector<Axiom>& axs);

// Parses the dump/extra-file format.
std::vector<Axiom> parse_axiom_lines(const std::string& text, AxiomGroup group);

}  // namespace tmb
