#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "domlab/poset.hpp"
#include "domlab/rational.hpp"

// Simple probability valuations Σ aₓ δₓ on finite posets, with exact
// rational weights. On a finite poset the opens are the upper sets, so
// ν(U) = Σ_{x∈U} aₓ.
namespace domlab {

class Valuation {
 public:
  /// Throws PreconditionError on negative weights, a wrong length, or a
  /// total different from 1.
  Valuation(Poset p, std::vector<Rational> weights);
  static Valuation dirac(const Poset& p, Element x);

  const Poset& poset() const { return poset_; }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& weight(Element x) const { return weights_.at(x); }
  Rational mass(const Subset& u) const;

  friend bool operator==(const Valuation& a, const Valuation& b);

 private:
  Poset poset_;
  std::vector<Rational> weights_;
};

/// (1 - t)·a + t·b on the same poset, t ∈ [0, 1].
Valuation mix(const Valuation& a, const Valuation& b, const Rational& t);

/// Space-separated `elem:p/q` entries; missing elements weigh 0.
Valuation parse_valuation(std::string_view text, const Poset& p);
/// Nonzero weights in element order, e.g. "a:1/3 b:1/3 top:1/3".
std::string to_string(const Valuation& v);

enum class OrderMode {
  kTransport,  // exact max-flow over the pairs x <= y
  kUpperSets,  // ν(U) <= μ(U) for every upper set U
};

struct TransportMove {
  Element from;
  Element to;
  Rational mass;
};

struct OrderCertificate {
  bool leq = false;
  /// Present when leq: moves with from <= to, row sums ν and column sums μ.
  std::vector<TransportMove> plan;
  /// Present when not leq: an upper set with ν(U) > μ(U).
  std::optional<UpperSet> violating;
};

/// Stochastic order ν <= μ. Throws PreconditionError on a poset mismatch.
bool stochastic_leq(const Valuation& nu, const Valuation& mu, OrderMode mode = OrderMode::kTransport);
OrderCertificate stochastic_order_certificate(const Valuation& nu, const Valuation& mu);

/// ν ≪ μ in Val₁: for every upper set U ≠ X, μ(U) = 0 ⇒ ν(U) = 0 and
/// μ(U) > 0 ⇒ ν(U) < μ(U). Throws PreconditionError on an unpointed poset.
bool way_below(const Valuation& nu, const Valuation& mu);

/// Val₁ r: Σ aₓ δₓ ↦ Σ aₓ δ_{r(x)}.
Valuation pushforward(const PosetMap& r, const Valuation& nu);

/// A ν₀ on the source with pushforward(r, ν₀) = ν: each y's mass goes to the
/// least-index x with r(x) = y. Throws PreconditionError unless r is monotone
/// and surjective.
Valuation pushforward_preimage(const PosetMap& r, const Valuation& nu);

struct GridSpec {
  std::size_t denominator = 1;
};

inline constexpr std::size_t kDefaultGridCap = 1000000;

/// C(N + n - 1, n - 1), saturating at SIZE_MAX.
std::size_t grid_size(std::size_t elements, GridSpec spec);

/// Every valuation with weights in (1/N)ℤ, in decreasing lexicographic order
/// of the weight vector (δ at the first element comes first). Throws
/// CapExceeded past `cap` valuations, PreconditionError for N = 0.
std::vector<Valuation> grid(const Poset& p, GridSpec spec, std::size_t cap = kDefaultGridCap);

/// The grid as a poset under the stochastic order; identifiers are the
/// valuation texts.
Poset grid_poset(const Poset& p, GridSpec spec, std::size_t cap = kDefaultGridCap);

/// Minimal elements of {μ ∈ grid : ν₁ <= μ, ν₂ <= μ}; may be empty.
std::vector<Valuation> minimal_upper_bounds_grid(const Valuation& nu1, const Valuation& nu2,
                                                 GridSpec spec);

/// Maximal elements of {μ ∈ grid : μ <= ν}.
std::vector<Valuation> maximal_below_grid(const Valuation& nu, GridSpec spec);

/// Largest multiple of 1/N that is 0 or strictly below v (v >= 0).
Rational round_down_strict(const Rational& v, GridSpec spec);

// --- The three discretization attempts that fail to be deflations ---------

struct SetFunction {
  std::vector<UpperSet> opens;
  std::vector<Rational> values;
  const Rational& at(const UpperSet& u) const;
};

struct ModularityWitness {
  UpperSet u;
  UpperSet v;
  Rational at_u, at_v, at_union, at_intersection;
};

struct RoundedSetFunction {
  SetFunction values;
  bool monotone = true;
  std::optional<ModularityWitness> witness;
};

/// Attempt (a): U ↦ round_down_strict(ν(U)), with a search for (U, V) where
/// f(U ∪ V) + f(U ∩ V) ≠ f(U) + f(V).
RoundedSetFunction failed_deflation_a(const Valuation& nu, GridSpec spec);

/// Attempt (b): round each non-⊥ weight down strictly to the grid and put the
/// residual on ⊥. Throws PreconditionError on an unpointed poset.
Valuation failed_deflation_b(const Valuation& nu, GridSpec spec);

struct MonotonicityWitness {
  Valuation lower;
  Valuation upper;
  Valuation image_lower;
  Valuation image_upper;
};

/// Searches pairs ν <= ν′ of the grid with denominator `search` for which
/// attempt (b) at denominator `spec` is not monotone.
std::optional<MonotonicityWitness> find_monotonicity_witness_b(const Poset& p, GridSpec spec,
                                                               GridSpec search);

struct LargestBelowReport {
  std::vector<Valuation> candidates;
  std::size_t cardinality = 0;
  bool unique() const { return cardinality == 1; }
};

/// Attempt (c): "the largest grid valuation below ν" via maximal_below_grid.
LargestBelowReport failed_deflation_c(const Valuation& nu, GridSpec spec);

}  // namespace domlab
