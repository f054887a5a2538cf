#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace domlab {

using Element = std::size_t;

/// A finite partially ordered set.
///
/// Elements are indices 0..size()-1 in input order; each carries a unique
/// identifier. The order is stored as a full boolean table, so leq() is O(1).
/// Copies share the immutable representation.
class Poset {
 public:
  Poset();

  /// Builds the reflexive-transitive closure of `less` over `names`.
  /// Throws ParseError on duplicate names and PreconditionError on a cycle.
  static Poset from_relations(std::vector<std::string> names,
                              std::span<const std::pair<Element, Element>> less);

  /// Takes a complete order table (row-major, table[x * n + y] = x <= y) and
  /// checks the partial-order axioms.
  static Poset from_table(std::vector<std::string> names, std::vector<bool> table);

  std::size_t size() const;
  bool leq(Element x, Element y) const;
  bool less(Element x, Element y) const { return x != y && leq(x, y); }
  bool comparable(Element x, Element y) const { return leq(x, y) || leq(y, x); }

  const std::string& name(Element x) const;
  const std::vector<std::string>& names() const;
  std::optional<Element> find(std::string_view id) const;
  /// Throws PreconditionError for unknown identifiers.
  Element index_of(std::string_view id) const;

  std::optional<Element> bottom() const;
  std::optional<Element> top() const;
  bool is_pointed() const { return bottom().has_value(); }

  /// Throws PreconditionError unless x < size().
  void check_element(Element x) const;

  friend bool operator==(const Poset& a, const Poset& b);

  struct Impl;

 private:
  explicit Poset(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// A subset of a poset's carrier, as a membership mask.
class Subset {
 public:
  Subset() = default;
  explicit Subset(std::size_t universe) : mask_(universe, false) {}
  static Subset of(std::size_t universe, std::span<const Element> members);

  std::size_t universe() const { return mask_.size(); }
  bool contains(Element x) const { return x < mask_.size() && mask_[x]; }
  void insert(Element x) { mask_.at(x) = true; }
  void erase(Element x) { mask_.at(x) = false; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<Element> elements() const;

  Subset operator|(const Subset& other) const;
  Subset operator&(const Subset& other) const;
  bool is_subset_of(const Subset& other) const;
  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  std::vector<bool> mask_;
};

// Opens of the Scott topology of a finite poset.
using UpperSet = Subset;

UpperSet up_closure(const Poset& p, std::span<const Element> seeds);
Subset down_closure(const Poset& p, std::span<const Element> seeds);
bool is_upper_set(const Poset& p, const Subset& s);

/// Hasse edges (y, y') with y immediately below y', sorted by (y, y').
std::vector<std::pair<Element, Element>> covers(const Poset& p);

inline constexpr std::size_t kDefaultUpperSetCap = 20;

/// Every upper set, ordered by the bitmask over element indices (so the empty
/// set comes first and the whole carrier last). Throws CapExceeded when the
/// poset is larger than `cap` elements.
std::vector<UpperSet> upper_sets(const Poset& p, std::size_t cap = kDefaultUpperSetCap);

/// Canonical representative of the finitary compact ↑E: the minimal elements
/// of E, sorted by index. Build through antichain_normalize().
struct FinCompact {
  std::vector<Element> members;

  bool contains(Element x) const;
  friend auto operator<=>(const FinCompact&, const FinCompact&) = default;
};

/// Throws PreconditionError on an empty input or unknown elements.
FinCompact antichain_normalize(const Poset& p, std::span<const Element> s);
bool in_up_closure(const Poset& p, const FinCompact& e, Element x);
/// Smyth preorder: ↑e ⊇ ↑f.
bool smyth_leq(const Poset& p, const FinCompact& e, const FinCompact& f);
bool is_antichain(const Poset& p, std::span<const Element> s);

/// Componentwise order on pairs; element (i, j) has index i * q.size() + j
/// and identifier "(name_i,name_j)".
Poset product(const Poset& p, const Poset& q);

/// A function between carriers. Only the shape is validated at construction;
/// order-theoretic properties are reported by map_predicates().
class PosetMap {
 public:
  PosetMap(Poset source, Poset target, std::vector<Element> table);
  static PosetMap identity(const Poset& p);
  static PosetMap constant(const Poset& source, const Poset& target, Element value);

  const Poset& source() const { return source_; }
  const Poset& target() const { return target_; }
  const std::vector<Element>& table() const { return table_; }
  Element operator()(Element x) const { return table_.at(x); }

  /// (this ∘ inner).
  PosetMap after(const PosetMap& inner) const;

  friend bool operator==(const PosetMap&, const PosetMap&) = default;

 private:
  Poset source_;
  Poset target_;
  std::vector<Element> table_;
};

struct MapReport {
  bool monotone = true;
  bool surjective = true;
  // On finite posets proper coincides with monotone.
  bool proper = true;
  std::optional<std::pair<Element, Element>> monotonicity_violation;
  std::optional<Element> missed_value;
};

MapReport map_predicates(const PosetMap& f);
bool is_monotone(const PosetMap& f);

/// Every principal ideal ↓x is a chain. Throws PreconditionError when the
/// poset has no least element.
bool is_tree(const Poset& p);

/// Poset text format:
///   # comment
///   elements: a b c
///   order: a < b; b < c
Poset parse_poset(std::string_view text);
Poset load_poset(const std::string& path);
std::string to_text(const Poset& p);
/// Hasse diagram, nodes in element order and one edge per cover pair.
std::string to_dot(const Poset& p);

inline constexpr std::size_t kMaxEnumeratedPosetSize = 6;

/// Visits every labeled partial order on {0..n-1} exactly once, in a fixed
/// order. Identifiers are "0", "1", ... Throws PreconditionError for n > 6.
void for_each_poset(std::size_t n, const std::function<void(const Poset&)>& visit);
std::vector<Poset> enumerate_posets(std::size_t n);

}  // namespace domlab
