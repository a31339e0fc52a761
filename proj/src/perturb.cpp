#include "tmb/perturb.hpp"

#include <algorithm>
#include <set>

namespace tmb {

namespace {

std::string element_name(int e) { return "d" + std::to_string(e + 1); }

std::vector<int> sorted_extension_elements(const Model& m, const std::string& unary) {
  std::vector<int> out;
  for (const auto& t : m.extension(unary, 1)) out.push_back(t[0]);
  std::sort(out.begin(), out.end());
  return out;
}

// Elements surviving time removal, ascending.
std::vector<int> core_survivors(const Model& m0) {
  std::set<int> removed;
  for (const auto& t : m0.extension("time", 1)) removed.insert(t[0]);
  std::vector<int> survivors;
  for (int d = 0; d < m0.size(); ++d)
    if (!removed.count(d)) survivors.push_back(d);
  return survivors;
}

}  // namespace

std::string notation(const Succession& s) {
  std::string out;
  bool first_block = true;
  for (const auto& block : s.blocks) {
    if (!first_block) out += " < ";
    first_block = false;
    bool first = true;
    for (int p : block) {
      if (!first) out += "=";
      first = false;
      out += element_name(p);
    }
  }
  return out;
}

Model extract_core(const Model& m0) {
  std::vector<int> survivors = core_survivors(m0);
  std::map<int, int> renumber;
  for (size_t i = 0; i < survivors.size(); ++i) renumber[survivors[i]] = static_cast<int>(i);

  Model core(static_cast<int>(survivors.size()));
  for (const auto& [name, e] : m0.constants()) {
    if (name == "now") continue;
    auto it = renumber.find(e);
    if (it == renumber.end()) continue;  // constant denoted a removed element
    core.set_constant(name, it->second);
  }
  for (const auto& [key, ext] : m0.relations()) {
    Model::Extension kept;
    for (const auto& tuple : ext) {
      Model::Tuple mapped;
      bool survives = true;
      for (int e : tuple) {
        auto it = renumber.find(e);
        if (it == renumber.end()) { survives = false; break; }
        mapped.push_back(it->second);
      }
      if (survives) kept.insert(std::move(mapped));
    }
    // Entries emptied by the removal disappear; entries that were already
    // empty carry over unchanged.
    if (kept.empty() && !ext.empty()) continue;
    core.declare_relation(key.name, key.arity);
    for (const auto& tuple : kept) core.add_tuple(key.name, tuple);
  }
  return core;
}

Model extend_with_times(const Model& core, const Model& m0) {
  if (core.size() == 0)
    throw DegenerateError("degenerate model: the core has an empty domain");
  std::vector<int> survivors = core_survivors(m0);
  if (static_cast<int>(survivors.size()) != core.size())
    throw Error("core does not correspond to the given model");

  // Count the fresh points first so the extended domain size is known before
  // tuples are added.
  std::vector<int> events = sorted_extension_elements(core, "event");
  const auto& instantaneous = core.extension("instantaneous", 1);
  const char* temporal_rels[] = {"inception", "induration", "conc"};

  int fresh = 1;  // the now point
  for (int e : events) {
    if (instantaneous.count({e})) {
      fresh += 1;
      continue;
    }
    int m0_event = survivors[e];
    for (const char* rel : temporal_rels) {
      for (const auto& t : m0.extension(rel, 2))
        if (t[0] == m0_event) { fresh += 1; break; }
    }
  }

  Model out(core.size() + fresh);
  for (const auto& [name, e] : core.constants()) out.set_constant(name, e);
  for (const auto& [key, ext] : core.relations()) {
    out.declare_relation(key.name, key.arity);
    for (const auto& t : ext) out.add_tuple(key.name, t);
  }

  int next = core.size();
  out.set_constant("now", next);
  out.add_tuple("time", {next});
  ++next;
  for (int e : events) {
    if (instantaneous.count({e})) {
      out.add_tuple("time", {next});
      out.add_tuple("inception", {e, next});
      out.add_tuple("conc", {e, next});
      ++next;
      continue;
    }
    int m0_event = survivors[e];
    for (const char* rel : temporal_rels) {
      bool participates = false;
      for (const auto& t : m0.extension(rel, 2))
        if (t[0] == m0_event) { participates = true; break; }
      if (!participates) continue;
      out.add_tuple("time", {next});
      out.add_tuple(rel, {e, next});
      ++next;
    }
  }
  return out;
}

std::vector<Succession> enumerate_successions(const std::vector<int>& points) {
  if (points.empty()) throw Error("cannot enumerate successions of an empty point set");
  std::vector<int> pts = points;
  std::sort(pts.begin(), pts.end());
  const int n = static_cast<int>(pts.size());

  std::vector<Succession> out;
  for (int k = 1; k <= n; ++k) {
    // All surjective block assignments pts[i] -> {0..k-1}, lexicographic.
    std::vector<int> assign(n, 0);
    while (true) {
      std::vector<int> seen(k, 0);
      for (int v : assign) seen[v] = 1;
      if (std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; })) {
        Succession s;
        s.blocks.assign(k, {});
        for (int i = 0; i < n; ++i) s.blocks[assign[i]].push_back(pts[i]);
        out.push_back(std::move(s));
      }
      int pos = n - 1;
      while (pos >= 0 && assign[pos] == k - 1) assign[pos--] = 0;
      if (pos < 0) break;
      ++assign[pos];
    }
  }
  return out;
}

std::pair<std::vector<int>, Substitution> simplify(const Succession& s) {
  std::vector<int> reps;
  Substitution subst;
  for (const auto& block : s.blocks) {
    int rep = *std::min_element(block.begin(), block.end());
    reps.push_back(rep);
    for (int p : block) subst.map[p] = rep;
  }
  return {reps, subst};
}

Model apply_succession(const Model& intermediate, const Succession& s) {
  std::set<int> covered;
  for (const auto& block : s.blocks) covered.insert(block.begin(), block.end());
  std::set<int> time_points;
  for (const auto& t : intermediate.extension("time", 1)) time_points.insert(t[0]);
  if (covered != time_points)
    throw Error("succession points do not match the model's time points");

  auto [reps, subst] = simplify(s);
  auto substitute = [&](int e) {
    auto it = subst.map.find(e);
    return it == subst.map.end() ? e : it->second;
  };

  std::vector<int> survivors;
  for (int d = 0; d < intermediate.size(); ++d)
    if (substitute(d) == d) survivors.push_back(d);
  std::map<int, int> renumber;
  for (size_t i = 0; i < survivors.size(); ++i) renumber[survivors[i]] = static_cast<int>(i);
  auto remap = [&](int e) { return renumber.at(substitute(e)); };

  Model out(static_cast<int>(survivors.size()));
  for (const auto& [name, e] : intermediate.constants()) out.set_constant(name, remap(e));
  for (const auto& [key, ext] : intermediate.relations()) {
    if (key.name == "lt" && key.arity == 2) continue;
    out.declare_relation(key.name, key.arity);
    for (const auto& tuple : ext) {
      Model::Tuple mapped;
      mapped.reserve(tuple.size());
      for (int e : tuple) mapped.push_back(remap(e));
      out.add_tuple(key.name, mapped);
    }
  }
  out.declare_relation("lt", 2);
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = i + 1; j < reps.size(); ++j)
      out.add_tuple("lt", {remap(reps[i]), remap(reps[j])});
  return out;
}

std::vector<Candidate> perturb_candidates(const Model& m0,
                                          const std::vector<NamedFormula>& axioms,
                                          const FolFormula& goal, int cap_timepoints) {
  std::vector<NamedFormula> all = axioms;
  all.push_back(NamedFormula{"goal", goal});
  CheckAllResult self = check_all(m0, all);
  if (!self.ok)
    throw Error("input model does not satisfy its own theory and goal (first failure: " +
                self.first_failed + ")");

  Model core = extract_core(m0);
  Model intermediate = extend_with_times(core, m0);
  std::vector<int> points = sorted_extension_elements(intermediate, "time");
  if (static_cast<int>(points.size()) > cap_timepoints)
    throw CapError("perturbation over " + std::to_string(points.size()) +
                   " significant time points exceeds the cap of " +
                   std::to_string(cap_timepoints));

  std::vector<Candidate> out;
  for (auto& s : enumerate_successions(points)) {
    Candidate c;
    c.model = apply_succession(intermediate, s);
    c.kept = check_all(c.model, all).ok;
    c.succession = std::move(s);
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Model> perturb(const Model& m0, const std::vector<NamedFormula>& axioms,
                           const FolFormula& goal, int cap_timepoints) {
  std::vector<Model> kept;
  for (auto& c : perturb_candidates(m0, axioms, goal, cap_timepoints)) {
    if (!c.kept) continue;
    bool dup = false;
    for (const auto& k : kept)
      if (isomorphic(c.model, k)) {
        dup = true;
        break;
      }
    if (!dup) kept.push_back(std::move(c.model));
  }
  std::sort(kept.begin(), kept.end(), [](const Model& a, const Model& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return print_model(a) < print_model(b);
  });
  return kept;
}

}  // namespace tmb
