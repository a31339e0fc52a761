#include "tmb/theory.hpp"

#include <fstream>
#include <sstream>

namespace tmb {

const char* to_string(AxiomGroup g) {
  switch (g) {
    case AxiomGroup::TypePartition: return "type_partition";
    case AxiomGroup::Typing: return "typing";
    case AxiomGroup::TimeStructure: return "time_structure";
    case AxiomGroup::TimeEvent: return "time_event";
    case AxiomGroup::Instantaneous: return "instantaneous";
    case AxiomGroup::Culmination: return "culmination";
    case AxiomGroup::Extra: return "extra";
  }
  return "?";
}

namespace {

Axiom ax(const char* name, AxiomGroup group, bool completed, const char* text) {
  return Axiom{name, group, completed, parse_fol(text)};
}

// The full catalog, in a fixed order. `completed` marks reconstructions by
// analogy; everything else is verbatim from the source theory.
std::vector<Axiom> full_catalog() {
  std::vector<Axiom> axs;
  const auto g1 = AxiomGroup::TypePartition;
  const auto g2 = AxiomGroup::Typing;
  const auto g3 = AxiomGroup::TimeStructure;
  const auto g4 = AxiomGroup::TimeEvent;
  const auto g5 = AxiomGroup::Instantaneous;
  const auto g6 = AxiomGroup::Culmination;

  // Pairwise disjointness of the four object types, plus the cover axiom.
  axs.push_back(ax("not_event_entity", g1, false, "all A. ~(event(A) & entity(A))"));
  axs.push_back(ax("not_event_kind", g1, true, "all A. ~(event(A) & kind(A))"));
  axs.push_back(ax("not_event_time", g1, true, "all A. ~(event(A) & time(A))"));
  axs.push_back(ax("not_kind_entity", g1, true, "all A. ~(kind(A) & entity(A))"));
  axs.push_back(ax("not_kind_time", g1, true, "all A. ~(kind(A) & time(A))"));
  axs.push_back(ax("not_entity_time", g1, false, "all A. ~(entity(A) & time(A))"));
  axs.push_back(ax("type_cover", g1, true,
                   "all A. event(A) | kind(A) | time(A) | entity(A)"));

  // Typing constraints of the predicates.
  axs.push_back(ax("now_type", g2, false, "time(now)"));
  axs.push_back(ax("lt_type", g2, false, "all A. all B. lt(A, B) -> time(A) & time(B)"));
  axs.push_back(ax("agent_type", g2, false,
                   "all A. all B. agent(A, B) -> event(A) & entity(B)"));
  axs.push_back(ax("patient_type", g2, true,
                   "all A. all B. patient(A, B) -> event(A) & entity(B)"));
  axs.push_back(ax("conc_type", g2, false,
                   "all A. all B. conc(A, B) -> event(A) & time(B)"));
  axs.push_back(ax("inception_type", g2, false,
                   "all A. all B. inception(A, B) -> event(A) & time(B)"));
  axs.push_back(ax("induration_type", g2, true,
                   "all A. all B. induration(A, B) -> event(A) & time(B)"));
  axs.push_back(ax("ek_type", g2, false, "all A. all B. ek(A, B) -> event(A) & kind(B)"));
  axs.push_back(ax("culm_type", g2, true,
                   "all A. all B. culm(A, B) -> event(A) & event(B)"));
  axs.push_back(ax("instantaneous_type", g2, true, "all A. instantaneous(A) -> event(A)"));
  axs.push_back(ax("culminated_type", g2, true, "all A. culminated(A) -> event(A)"));

  // Structure of time.
  axs.push_back(ax("lt_irreflexive", g3, false, "all A. ~lt(A, A)"));
  axs.push_back(ax("lt_transitive", g3, false,
                   "all A. all B. all C. lt(A, B) & lt(B, C) -> lt(A, C)"));
  axs.push_back(ax("lt_total", g3, false,
                   "all A. all B. time(A) & time(B) -> lt(A, B) | A = B | lt(B, A)"));

  // Relating times and events.
  axs.push_back(ax("agent_unique", g4, false,
                   "all A. all B. all C. agent(A, B) & agent(A, C) -> B = C"));
  axs.push_back(ax("event_has_inception", g4, false,
                   "all A. event(A) -> (exists B. inception(A, B))"));
  axs.push_back(ax("inception_unique", g4, false,
                   "all A. all B. all C. inception(A, B) & inception(A, C) -> B = C"));
  axs.push_back(ax("event_has_conc", g4, false,
                   "all A. event(A) -> (exists B. conc(A, B))"));
  axs.push_back(ax("conc_unique", g4, false,
                   "all A. all B. all C. conc(A, B) & conc(A, C) -> B = C"));
  axs.push_back(ax("inception_not_after_conc", g4, false,
                   "all A. all B. all C. inception(A, B) & conc(A, C) -> ~lt(C, B)"));
  axs.push_back(ax("duration_before_conc", g4, false,
                   "all A. all B. all C. induration(A, B) & conc(A, C) -> lt(B, C)"));
  axs.push_back(ax("duration_after_inception", g4, true,
                   "all A. all B. all C. induration(A, B) & inception(A, C) -> lt(C, B)"));
  axs.push_back(ax("not_inception_and_induration", g4, false,
                   "all A. all B. ~(inception(A, B) & induration(A, B))"));
  axs.push_back(ax("not_induration_and_conc", g4, false,
                   "all A. all B. ~(induration(A, B) & conc(A, B))"));

  // Instantaneous events.
  axs.push_back(ax("instantaneous_definition_1", g5, false,
                   "all A. instantaneous(A) -> (exists B. inception(A, B) & conc(A, B))"));
  axs.push_back(ax("instantaneous_definition_2", g5, false,
                   "all A. all B. event(A) -> (inception(A, B) & conc(A, B) -> "
                   "instantaneous(A))"));

  // Culminations.
  axs.push_back(ax("culm_unique", g6, false,
                   "all A. all B. all C. culm(A, B) & culm(A, C) -> B = C"));
  axs.push_back(ax("culm_injective", g6, false,
                   "all A. all B. all C. culm(A, C) & culm(B, C) -> A = B"));
  axs.push_back(ax("culm_no_fixpoint", g6, false, "all A. ~culm(A, A)"));
  axs.push_back(ax("culm_antisymmetric", g6, false,
                   "all A. all B. culm(A, B) -> ~culm(B, A)"));
  axs.push_back(ax("culm_preserves_agent", g6, false,
                   "all A. all B. all C. culm(A, B) & agent(A, C) -> agent(B, C)"));
  axs.push_back(ax("culm_preserves_patient", g6, false,
                   "all A. all B. all C. culm(A, B) & patient(A, C) -> patient(B, C)"));
  axs.push_back(ax("culm_preserves_kind", g6, false,
                   "all A. all B. all C. culm(A, B) & ek(A, C) -> ek(B, C)"));
  axs.push_back(ax("culm_inception", g6, false,
                   "all A. all B. all C. culm(A, B) & conc(A, C) -> inception(B, C)"));
  axs.push_back(ax("culm_imp_instantaneous", g6, false,
                   "all A. all B. culm(A, B) -> instantaneous(B)"));
  axs.push_back(ax("culminated_definition", g6, false,
                   "all A. culminated(A) -> (exists B. event(B) & culm(A, B))"));
  axs.push_back(ax("culminated_imp_not_instantaneous", g6, false,
                   "all A. culminated(A) -> ~instantaneous(A)"));
  return axs;
}

}  // namespace

std::vector<Axiom> parse_axiom_lines(const std::string& text, AxiomGroup group) {
  std::vector<Axiom> axs;
  std::istringstream in(text);
  std::string line;
  int counter = 0;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    size_t end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);
    std::string name;
    std::string body = line;
    if (line.rfind("axiom ", 0) == 0) {
      auto dot = line.find('.');
      if (dot == std::string::npos)
        throw ParseError("missing '.' after axiom name in line: " + line);
      name = line.substr(6, dot - 6);
      size_t nb = name.find_first_not_of(" \t");
      size_t ne = name.find_last_not_of(" \t");
      name = nb == std::string::npos ? "" : name.substr(nb, ne - nb + 1);
      body = line.substr(dot + 1);
    }
    ++counter;
    if (name.empty()) name = "extra" + std::to_string(counter);
    axs.push_back(Axiom{name, group, false, parse_fol(body)});
  }
  return axs;
}

std::vector<Axiom> axioms(const TheoryConfig& config) {
  std::set<AxiomGroup> enabled = config.enabled;
  enabled.insert(AxiomGroup::TypePartition);
  enabled.insert(AxiomGroup::Typing);

  std::vector<Axiom> out;
  for (auto& a : full_catalog())
    if (enabled.count(a.group)) out.push_back(std::move(a));

  for (const auto& path : config.extra_files) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read axiom file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    for (auto& a : parse_axiom_lines(buf.str(), AxiomGroup::Extra)) out.push_back(std::move(a));
  }
  return out;
}

std::vector<NamedFormula> as_named(const std::vector<Axiom>& axs) {
  std::vector<NamedFormula> out;
  out.reserve(axs.size());
  for (const auto& a : axs) out.push_back(NamedFormula{a.name, a.formula});
  return out;
}

std::string dump_theory(const std::vector<Axiom>& axs) {
  std::string out;
  const AxiomGroup* current = nullptr;
  for (const auto& a : axs) {
    if (!current || *current != a.group) {
      if (current) out += "\n";
      out += std::string("# group: ") + to_string(a.group) + "\n";
      current = &a.group;
    }
    out += "axiom " + a.name + ". " + print_fol(a.formula) + "\n";
  }
  return out;
}

}  // namespace tmb
