#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "domlab/poset.hpp"
#include "domlab/smyth.hpp"

// Quasi-deflations on finite posets, their products and Kleisli squares,
// finite separation of approximation pairs, and controlled quasi-deflations.
namespace domlab {

struct QdViolation {
  Element element;
  // For monotonicity violations, the larger element of the offending pair.
  std::optional<Element> other;
  std::string explanation;
};

struct QdReport {
  bool membership = true;   // x ∈ ↑φ(x)
  bool monotone = true;     // x <= y ⇒ ↑φ(x) ⊇ ↑φ(y)
  std::vector<QdViolation> violations;
  bool valid() const { return membership && monotone; }
};

/// Checks a candidate table φ : P -> Fin(P).
QdReport check_quasi_deflation(const FinMap& candidate);

/// A FinMap P -> Fin(P) that passed check_quasi_deflation.
class QuasiDeflation {
 public:
  /// Throws PreconditionError listing the first violation when invalid.
  explicit QuasiDeflation(FinMap table);
  static QuasiDeflation unit(const Poset& p);
  static QuasiDeflation constant(const Poset& p, Element value);

  const Poset& poset() const { return map_.source(); }
  const FinMap& map() const { return map_; }
  const FinCompact& operator()(Element x) const { return map_(x); }

  /// Members of every antichain in the image.
  std::vector<Element> image_support() const;

  friend bool operator==(const QuasiDeflation&, const QuasiDeflation&) = default;

 private:
  FinMap map_;
};

/// x ↦ φ†(φ(x)).
QuasiDeflation qd_self_compose(const QuasiDeflation& phi);

/// χ(x, y) = φ(x) × ψ(y) on product(P, Q).
QuasiDeflation product_qd(const QuasiDeflation& phi, const QuasiDeflation& psi);

/// φ is pointwise finer than or equal to ψ: ↑φ(x) ⊇ ↑ψ(x) for all x.
bool qd_leq(const QuasiDeflation& phi, const QuasiDeflation& psi);

/// Every pair of members has an upper bound (under qd_leq) in the family.
bool is_directed_family(std::span<const QuasiDeflation> family);

/// Pair (↑E_k, x_k) to be separated; finite reading of ↑E_k ≪ x_k is x_k ∈ ↑E_k.
struct SeparationPair {
  FinCompact compact;
  Element point;
};

/// ψ separates the pairs when x_k ∈ ↑ψ(x_k) ⊆ ↑E_k for all k.
bool separates(const QuasiDeflation& psi, std::span<const SeparationPair> pairs);

/// Returns η, which separates every valid pair list on a finite poset; the
/// result is verified before returning. Throws PreconditionError when some
/// x_k ∉ ↑E_k.
QuasiDeflation qfs_separator(const Poset& p, std::span<const SeparationPair> pairs);

/// Search mode: the first candidate that separates the pairs.
std::optional<QuasiDeflation> qfs_separator(const Poset& p, std::span<const SeparationPair> pairs,
                                            std::span<const QuasiDeflation> candidates);

/// A control map f paired with a candidate φ; validity is established by
/// check_controlled, not at construction.
struct ControlledQuasiDeflation {
  PosetMap control;
  FinMap deflation;
};

struct ControlledReport {
  bool control_monotone = true;
  bool deflation_valid = true;
  bool controlled = true;         // ↑φ(x) ⊆ ↑f(x)
  bool below_identity = true;     // f(x) <= x (only meaningful when requested)
  std::vector<std::string> violations;
  bool valid(bool require_below_identity) const {
    return control_monotone && deflation_valid && controlled &&
           (!require_below_identity || below_identity);
  }
};

ControlledReport check_controlled(const ControlledQuasiDeflation& c, bool require_below_identity);

struct SeparatingSet {
  std::vector<Element> members;
  /// witness[x] = least m ∈ members with f(x) <= m <= x.
  std::vector<Element> witness;
};

/// M = union of the antichains in img φ, verified to satisfy
/// ∀x ∃m ∈ M. f(x) <= m <= x. Throws PreconditionError when verification
/// fails, which signals an invalid controlled pair.
SeparatingSet separating_set_from_controlled(const ControlledQuasiDeflation& c);

/// Quasi-deflation text format: one line `x -> {y1, y2}` per element; the
/// controlled variant adds `control: x -> y` lines.
FinMap parse_quasi_deflation(std::string_view text, const Poset& p);
ControlledQuasiDeflation parse_controlled(std::string_view text, const Poset& p);

}  // namespace domlab
