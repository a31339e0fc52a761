#pragma once

// Temporal perturbation: strip the time-related part of a model down to its
// core, re-introduce one fresh point per significant moment, enumerate all
// weak orders (successions) of those points, and keep the completions that
// satisfy the theory and the goal formula.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tmb/fol.hpp"
#include "tmb/model.hpp"

namespace tmb {

// A weak order over time points: earlier blocks strictly precede later ones,
// points in one block are simultaneous. Blocks are disjoint, nonempty, sorted
// internally, and together cover the point set.
struct Succession {
  std::vector<std::vector<int>> blocks;
  bool operator==(const Succession&) const = default;
};

// Maps every point to its block representative; representatives map to
// themselves (idempotent).
struct Substitution {
  std::map<int, int> map;
};

// `d5 < d4=d6` style notation over printed element names.
std::string notation(const Succession& s);

// Removes the elements of the `time` extension and the constant `now`,
// drops every tuple mentioning a removed element (dropping relation entries
// this empties), and renumbers the remaining elements densely in order.
Model extract_core(const Model& m0);

// Adds one fresh point interpreting `now`, then per event (in element order)
// one fresh point per temporal relation the event participates in within m0
// (inception, induration, conc, in that order), or a single shared
// inception/conc point for instantaneous events. lt is left absent.
// Throws DegenerateError when the core domain is empty.
Model extend_with_times(const Model& core, const Model& m0);

// All weak orders over the given points, ordered by number of blocks and then
// lexicographically by block assignment; the count is the ordered Bell number
// of the point count. Throws on an empty point set.
std::vector<Succession> enumerate_successions(const std::vector<int>& points);

// Collapses each block to its minimum member; returns representatives in
// block (chronological) order plus the substitution.
std::pair<std::vector<int>, Substitution> simplify(const Succession& s);

// Applies the substitution of simplify(s) to every constant and tuple,
// shrinks and renumbers the domain, and sets lt to all pairs of
// representatives in strict block order. The succession must range exactly
// over the intermediate model's time points.
Model apply_succession(const Model& intermediate, const Succession& s);

struct Candidate {
  Succession succession;
  Model model;
  bool kept = false;
};

// The generation plus selection pipeline with per-candidate results kept for
// inspection. Throws if m0 itself fails axioms + goal, or CapError when the
// intermediate model has more than cap_timepoints significant points.
std::vector<Candidate> perturb_candidates(const Model& m0,
                                          const std::vector<NamedFormula>& axioms,
                                          const FolFormula& goal, int cap_timepoints = 6);

// The kept candidates, deduplicated up to isomorphism, ordered by domain size
// and then printed form.
std::vector<Model> perturb(const Model& m0, const std::vector<NamedFormula>& axioms,
                           const FolFormula& goal, int cap_timepoints = 6);

}  // namespace tmb
