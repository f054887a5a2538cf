#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "domlab/poset.hpp"

// Countable posets given by a decidable order on codes: N₂ (two chains under
// a common top ω), Plotkin's T (two nodes per level, complete bipartite
// between consecutive levels, plus ⊤) and ℕ_ω+ℕ_ω (two chains, each with its
// own top). Every kind has a least element ⊥.
namespace domlab {

enum class LazyKind { kN2, kT, kNomegaSum };

std::string to_string(LazyKind kind);
/// "n2", "t" or "nomega-sum".
LazyKind parse_lazy_kind(std::string_view text);

struct Code {
  enum class Tag { kBottom, kNode, kOmega, kOmegaSide, kTop };
  Tag tag = Tag::kBottom;
  unsigned branch = 0;     // kNode and kOmegaSide
  std::size_t level = 0;   // kNode

  static Code bottom() { return {Tag::kBottom, 0, 0}; }
  static Code node(unsigned branch, std::size_t level) { return {Tag::kNode, branch, level}; }
  static Code omega() { return {Tag::kOmega, 0, 0}; }
  static Code omega_side(unsigned branch) { return {Tag::kOmegaSide, branch, 0}; }
  static Code top() { return {Tag::kTop, 0, 0}; }

  bool is_node() const { return tag == Tag::kNode; }

  friend auto operator<=>(const Code&, const Code&) = default;
};

/// `bot`, `top`, `omega`, `omega0`, `omega1`, `n:J:LEVEL`.
std::string to_string(const Code& c);
Code parse_code(std::string_view text);

/// Throws PreconditionError when the code does not belong to the kind.
void check_code(LazyKind kind, const Code& c);
bool lazy_leq(LazyKind kind, const Code& x, const Code& y);

/// Codes whose levels are at most `max_level`, in a fixed order.
std::vector<Code> codes_up_to(LazyKind kind, std::size_t max_level);

/// A finitary compact ↑E given by its generators.
using LazyCompact = std::vector<Code>;

bool lazy_in_up(LazyKind kind, const LazyCompact& e, const Code& y);
/// ↑a ⊇ ↑b.
bool lazy_smyth_leq(LazyKind kind, const LazyCompact& a, const LazyCompact& b);
std::string to_string(const LazyCompact& e);

/// (i, j) for N₂; T uses i only.
struct FamilyIndex {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const FamilyIndex&, const FamilyIndex&) = default;
};

class LazyQuasiDeflation {
 public:
  LazyQuasiDeflation(LazyKind kind, FamilyIndex index, std::function<LazyCompact(const Code&)> rule)
      : kind_(kind), index_(index), rule_(std::move(rule)) {}
  LazyKind kind() const { return kind_; }
  FamilyIndex index() const { return index_; }
  LazyCompact operator()(const Code& x) const;

 private:
  LazyKind kind_;
  FamilyIndex index_;
  std::function<LazyCompact(const Code&)> rule_;
};

/// φ_ij(⊥) = {⊥}, φ_ij(ω) = {(0,i),(1,j)}, φ_ij(0,m) = {(0,min(m,i)),(1,j)},
/// φ_ij(1,m) = {(0,i),(1,min(m,j))}.
LazyQuasiDeflation n2_family(std::size_t i, std::size_t j);

/// φ_i(⊥) = {⊥}, φ_i(j,n) = {(j,n)} for n < i, anything else ↦ {(0,i),(1,i)}.
LazyQuasiDeflation t_family(std::size_t i);

/// n2_family or t_family; throws PreconditionError for ℕ_ω+ℕ_ω.
LazyQuasiDeflation family_member(LazyKind kind, FamilyIndex index);

/// An index whose member excludes y from ↑φ(x): every coordinate is one more
/// than the largest level among x and y. Throws PreconditionError when x <= y.
FamilyIndex family_witness(LazyKind kind, const Code& x, const Code& y);

struct LazyLawViolation {
  Code x;
  std::optional<Code> y;
  std::string explanation;
};

/// x ∈ ↑φ(x) and x <= y ⇒ ↑φ(x) ⊇ ↑φ(y) over the given codes.
std::optional<LazyLawViolation> check_lazy_quasi_deflation(const LazyQuasiDeflation& phi,
                                                           const std::vector<Code>& codes);

struct Truncation {
  LazyKind kind;
  std::size_t depth;
  Poset poset;
  /// The embedding: element e of `poset` is codes[e].
  std::vector<Code> codes;
  Element element_of(const Code& c) const;
  /// Nearest code of the truncation below c; absent for T.
  std::optional<Element> project(const Code& c) const;
};

/// N₂_k = {⊥, (j,m) m <= k, ω}; T_k = {⊥, levels 0..k-1, ⊤};
/// (ℕ_ω+ℕ_ω)_k = {⊥, (j,m) m <= k, ω₀, ω₁}. Throws PreconditionError for k = 0.
Truncation truncate(LazyKind kind, std::size_t k);

/// Embedding of depth `lower` into depth `upper` and the projection back
/// (p(j,m) = (j, min(m, lower))). Throws PreconditionError for T or when
/// lower > upper.
PosetMap truncation_embedding(LazyKind kind, std::size_t lower, std::size_t upper);
PosetMap truncation_projection(LazyKind kind, std::size_t upper, std::size_t lower);

/// p∘e = id and e∘p <= id for a projection/embedding pair.
bool projection_pair_laws(const PosetMap& embedding, const PosetMap& projection);

/// r : ℕ_ω+ℕ_ω -> N₂ collapsing both tops to ω.
Code sum_to_n2(const Code& c);
/// The same map between depth-k truncations.
PosetMap sum_to_n2_map(std::size_t k);

/// f̂ on T_k for bits of length k: fixes ⊥ and ⊤ and swaps (0,n), (1,n) when
/// bits[n] = 1. Throws PreconditionError on a length mismatch.
PosetMap hat_f(const Truncation& t, const std::vector<bool>& bits);

/// (g <= f̂ pointwise ∧ g(0,0) ≠ ⊥ ∧ g(1,0) ≠ ⊥) ⇒ g = f̂.
bool hat_f_rigidity_check(const PosetMap& g, const std::vector<bool>& bits);

}  // namespace domlab
