#pragma once

// Finite first-order structures, Tarskian satisfaction, isomorphism testing
// and the textual model format `D=[..]` / `f(arity, name, ..)`.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tmb/fol.hpp"

namespace tmb {

// Elements are 0-based internally and print as d1..dn. Relations are keyed by
// (name, arity); only arities 1 and 2 occur in this signature. A relation
// missing from the map reads as empty.
class Model {
 public:
  Model() = default;
  explicit Model(int domain_size) : size_(domain_size) {}

  int size() const { return size_; }
  void resize(int n) { size_ = n; }

  void set_constant(const std::string& name, int element);
  void remove_constant(const std::string& name);
  const std::map<std::string, int>& constants() const { return constants_; }
  std::optional<int> constant(const std::string& name) const;

  using Tuple = std::vector<int>;
  using Extension = std::set<Tuple>;
  struct RelKey {
    std::string name;
    int arity;
    auto operator<=>(const RelKey&) const = default;
  };

  // Creates the (possibly empty) extension entry.
  void declare_relation(const std::string& name, int arity);
  void remove_relation(const std::string& name, int arity);
  void add_tuple(const std::string& name, Tuple tuple);
  bool has_relation(const std::string& name, int arity) const;
  // Missing relations read as the empty extension.
  const Extension& extension(const std::string& name, int arity) const;
  const std::map<RelKey, Extension>& relations() const { return relations_; }

  bool operator==(const Model& rhs) const = default;

 private:
  int size_ = 0;
  std::map<std::string, int> constants_;
  std::map<RelKey, Extension> relations_;
};

// Standard Tarskian satisfaction over the full domain; equality is identity
// of elements. Throws TypeError for free variables (non-closed input) and
// constants the model does not interpret.
bool check(const Model& m, const FolFormula& f);

struct CheckAllResult {
  bool ok = true;
  std::string first_failed;  // empty when ok
};

// Conjunction over named formulas, reporting the first failure.
CheckAllResult check_all(const Model& m, const std::vector<NamedFormula>& fs);

// True iff a domain bijection exists preserving all constants and all
// relation extensions in both directions. Backtracking over bijections with
// invariant-profile pruning; intended for domains of at most a few dozen
// elements.
bool isomorphic(const Model& a, const Model& b);

// Textual format, after the model builder's output style:
//   D=[d1,d2,d3]
//   f(0, piotr, d1)
//   f(1, entity, [d1])
//   f(2, agent, [(d3,d1)])
// parse_model accepts several f-groups per line; print_model emits the
// canonical form: the domain line, constants in name order, then relations
// in name order with tuples in lexicographic order. Parsing a printed model
// reproduces it exactly.
Model parse_model(std::string_view text);
std::string print_model(const Model& m);

}  // namespace tmb
