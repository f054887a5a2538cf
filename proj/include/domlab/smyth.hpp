#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "domlab/error.hpp"
#include "domlab/poset.hpp"

// The Smyth powerdomain monad on finite posets: Fin(P) is the set of
// canonical antichains under the Smyth preorder, η is the unit, and a Kleisli
// map h : P -> Fin(Q) extends to h† : Fin(P) -> Fin(Q) by union.
namespace domlab {

/// A map into finitary compacts, h : source -> Fin(target).
class FinMap {
 public:
  /// Every entry must be a canonical antichain of the target.
  FinMap(Poset source, Poset target, std::vector<FinCompact> table);
  static FinMap unit(const Poset& p);

  const Poset& source() const { return source_; }
  const Poset& target() const { return target_; }
  const std::vector<FinCompact>& table() const { return table_; }
  const FinCompact& operator()(Element x) const { return table_.at(x); }

  friend bool operator==(const FinMap&, const FinMap&) = default;

 private:
  Poset source_;
  Poset target_;
  std::vector<FinCompact> table_;
};

FinCompact eta(const Poset& p, Element x);

/// x <= y implies h(x) <=♯ h(y).
bool is_monotone(const FinMap& h);

/// h†(↑E) = ↑⋃_{x∈E} h(x), normalized.
FinCompact dagger(const FinMap& h, const FinCompact& q);

/// Kleisli composite g† ∘ h : source(h) -> Fin(target(g)).
FinMap kleisli_compose(const FinMap& g, const FinMap& h);

/// Smyth r (↑E) = ↑{r(x) | x ∈ E}.
FinCompact smyth_map(const PosetMap& r, const FinCompact& q);

inline constexpr std::size_t kDefaultFinCap = 100000;

/// All nonempty antichains of p, ordered by (size, lexicographic members).
std::vector<FinCompact> fin_compacts(const Poset& p, std::size_t cap = kDefaultFinCap);

/// Fin(P) materialized as a poset; element i of `poset` is `members[i]`.
struct FinPoset {
  Poset poset;
  std::vector<FinCompact> members;
};
FinPoset fin_poset(const Poset& p, std::size_t cap = kDefaultFinCap);
std::string to_string(const Poset& p, const FinCompact& e);

/// Multiplication μ: union of an antichain of finitary compacts. Throws
/// PreconditionError unless `family` is a nonempty ≤♯-antichain.
FinCompact mu(const Poset& p, std::span<const FinCompact> family);

struct LawViolation {
  std::string law;
  std::string detail;
};

/// Checks η† = id on Fin(P), h† ∘ η = h and (g† ∘ h)† = g† ∘ h† on every
/// element of Fin(P), where P = source(h) and g : target(h) -> Fin(R).
/// Returns the first violation found, or nullopt.
std::optional<LawViolation> check_monad_laws(const FinMap& h, const FinMap& g);

/// Visits every monotone FinMap source -> Fin(target), in a fixed order.
void for_each_monotone_finmap(const Poset& source, const Poset& target,
                              const std::function<void(const FinMap&)>& visit);

struct QuasiSectionWitness {
  std::string law;  // "retraction_law" or "projection_law"
  Element element;
  std::string explanation;
};

struct QuasiSectionReport {
  bool retraction_law = true;
  bool projection_law = true;
  /// qs coincides with the canonical quasi-section (false when r has none).
  bool canonical = false;
  std::optional<FinMap> canonical_section;
  std::optional<QuasiSectionWitness> witness;
};

/// r : X -> Y, qs : Y -> Fin(X). Retraction law: Smyth r(qs(y)) = ↑y for all
/// y; projection law: x ∈ ↑qs(r(x)) for all x. The witness is the first
/// retraction failure in element order, else the first projection failure.
QuasiSectionReport check_quasi_retraction(const PosetMap& r, const FinMap& qs);

/// qs(y) = min r⁻¹(↑y). Throws PreconditionError unless r is monotone and
/// surjective.
FinMap canonical_quasi_section(const PosetMap& r);

/// Raised by koenig_chain when the stage sequence breaks its precondition.
class StageError : public PreconditionError {
 public:
  StageError(std::size_t index, const std::string& what)
      : PreconditionError(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Given ↑E₀ ⊇ ↑E₁ ⊇ … ⊇ ↑E_d all containing y, returns y₀ ≤ … ≤ y_d with
/// y_i ∈ E_i ∩ ↓y: the lexicographically least branch of the tree whose
/// nodes are the non-decreasing prefixes.
std::vector<Element> koenig_chain(const Poset& p, std::span<const FinCompact> stages, Element y);

/// FinMap text format, one line per source element: `y -> {x1, x2}`.
FinMap parse_finmap(std::string_view text, const Poset& source, const Poset& target);
std::string to_text(const FinMap& h);

/// Map text format, one line per source element: `x -> y`.
PosetMap parse_map(std::string_view text, const Poset& source, const Poset& target);
std::string to_text(const PosetMap& f);

}  // namespace domlab
