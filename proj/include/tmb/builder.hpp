#pragma once

// Domain-minimal finite model search: ground the axioms and the goal over an
// n-element domain, then backtrack over relation-tuple truth values with unit
// propagation, growing n until a model appears.

#include <optional>
#include <vector>

#include "tmb/fol.hpp"
#include "tmb/model.hpp"

namespace tmb {

// Searches sizes 1..max_size and returns a model at the smallest satisfiable
// size, or nullopt. Among size-n models it returns one minimizing the
// cardinality of the `instantaneous` extension; ties break by the documented
// deterministic search order (constants placed canonically in name order,
// relations filled in unary-then-binary name order, tuples lexicographic,
// absent before present). Identical inputs yield identical output models.
std::optional<Model> build_minimal(const std::vector<NamedFormula>& axioms,
                                   const FolFormula& goal, int max_size);

// All extension-minimal models at the smallest satisfiable size (no model
// with the same domain and constants and pointwise-smaller extensions
// satisfies axioms and goal), deduplicated up to isomorphism, in a
// deterministic order. Empty when nothing is satisfiable up to max_size.
std::vector<Model> build_all_minimal(const std::vector<NamedFormula>& axioms,
                                     const FolFormula& goal, int max_size);

}  // namespace tmb
