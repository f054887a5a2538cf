#pragma once

#include <optional>
#include <string>
#include <vector>

#include "domlab/poset.hpp"
#include "domlab/rational.hpp"
#include "domlab/valuation.hpp"

// Path spaces of finite pointed posets and the coordinates of Val₁ over a
// finite tree: admissible maps f(t) = ν(↑t).
namespace domlab {

struct PathSpace {
  /// Paths ⊥ → y₁ → … → yₙ ordered by prefix; identifiers join the element
  /// names with '.', e.g. "bot.a.top".
  Poset tree;
  /// r(π) = max π.
  PosetMap last;
  /// paths[i] is the element sequence of tree element i.
  std::vector<std::vector<Element>> paths;
};

/// Paths are listed by length, then lexicographically by element index.
/// The result is checked to be a tree with r monotone and surjective.
/// Throws PreconditionError when Y has no least element.
PathSpace path_space(const Poset& y);

/// Number of saturated chains starting at ⊥, counted by depth-first search.
std::size_t count_paths_from_bottom(const Poset& y);

struct AdmissibleReport {
  bool root_is_one = true;          // f(⊥) = 1
  bool children_bounded = true;     // f(t) >= Σ_{t→t'} f(t')
  bool in_unit_interval = true;
  std::vector<std::string> violations;
  bool valid() const { return root_is_one && children_bounded && in_unit_interval; }
};

/// Throws PreconditionError unless `tree` is a tree and values cover it.
AdmissibleReport check_admissible(const Poset& tree, const std::vector<Rational>& values);

class AdmissibleMap {
 public:
  /// Throws PreconditionError when check_admissible reports a violation.
  AdmissibleMap(Poset tree, std::vector<Rational> values);

  const Poset& tree() const { return tree_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& operator()(Element t) const { return values_.at(t); }

  /// Pointwise order.
  bool leq(const AdmissibleMap& other) const;
  friend bool operator==(const AdmissibleMap& a, const AdmissibleMap& b);

 private:
  Poset tree_;
  std::vector<Rational> values_;
};

/// f(t) = ν(↑t). Throws PreconditionError when the poset is not a tree.
AdmissibleMap valuation_to_admissible(const Valuation& nu);
/// a_t = f(t) − Σ_{t→t'} f(t').
Valuation admissible_to_valuation(const AdmissibleMap& f);

/// Least upper bound by descending induction,
/// f(t) = max(f₁(t), f₂(t), Σ_{t→t'} f(t')). Returns nullopt when f(⊥) > 1,
/// i.e. when f₁ and f₂ have no common upper bound.
std::optional<AdmissibleMap> admissible_lub(const AdmissibleMap& f1, const AdmissibleMap& f2);

/// "kind: admissible" header followed by one `elem:p/q` line per element.
std::string to_text(const AdmissibleMap& f);
AdmissibleMap parse_admissible(std::string_view text, const Poset& tree);

}  // namespace domlab
