#include "domlab/valuation.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>

#include "domlab/error.hpp"
#include "domlab/text.hpp"

namespace domlab {

Valuation::Valuation(Poset p, std::vector<Rational> weights)
    : poset_(std::move(p)), weights_(std::move(weights)) {
  if (weights_.size() != poset_.size()) throw PreconditionError("valuation needs one weight per element");
  Rational total = 0;
  for (auto& w : weights_) {
    w.canonicalize();
    if (w < 0) throw PreconditionError("valuation weights must be nonnegative");
    total += w;
  }
  if (total != 1) throw PreconditionError("valuation weights sum to " + domlab::to_string(total) + ", not 1");
}

Valuation Valuation::dirac(const Poset& p, Element x) {
  p.check_element(x);
  std::vector<Rational> w(p.size(), Rational(0));
  w[x] = 1;
  return Valuation(p, std::move(w));
}

Rational Valuation::mass(const Subset& u) const {
  Rational total = 0;
  for (Element x = 0; x < weights_.size(); ++x)
    if (u.contains(x)) total += weights_[x];
  return total;
}

bool operator==(const Valuation& a, const Valuation& b) {
  return a.poset_ == b.poset_ && a.weights_ == b.weights_;
}

Valuation mix(const Valuation& a, const Valuation& b, const Rational& t) {
  if (!(a.poset() == b.poset())) throw PreconditionError("valuations on different posets");
  if (t < 0 || t > 1) throw PreconditionError("mixing weight outside [0, 1]");
  std::vector<Rational> w(a.weights().size());
  for (Element x = 0; x < w.size(); ++x) w[x] = (1 - t) * a.weight(x) + t * b.weight(x);
  return Valuation(a.poset(), std::move(w));
}

Valuation parse_valuation(std::string_view text, const Poset& p) {
  std::vector<Rational> w(p.size(), Rational(0));
  std::vector<bool> seen(p.size(), false);
  for (const auto& entry : split_words(text)) {
    auto colon = entry.rfind(':');
    if (colon == std::string::npos) throw ParseError("expected 'elem:p/q', got '" + entry + "'");
    std::string id = entry.substr(0, colon);
    auto x = p.find(id);
    if (!x) throw ParseError("unknown element '" + id + "' in valuation");
    if (seen[*x]) throw ParseError("element '" + id + "' listed twice in valuation");
    seen[*x] = true;
    w[*x] = parse_rational(std::string_view(entry).substr(colon + 1));
    if (w[*x] < 0) throw ParseError("negative weight for '" + id + "'");
  }
  Rational total = 0;
  for (const auto& q : w) total += q;
  if (total != 1) throw ParseError("valuation weights sum to " + to_string(total) + ", not 1");
  return Valuation(p, std::move(w));
}

std::string to_string(const Valuation& v) {
  std::string out;
  for (Element x = 0; x < v.weights().size(); ++x) {
    if (v.weight(x) == 0) continue;
    if (!out.empty()) out += ' ';
    out += v.poset().name(x) + ":" + to_string(v.weight(x));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_same_poset(const Valuation& a, const Valuation& b) {
  if (!(a.poset() == b.poset())) throw PreconditionError("valuations live on different posets");
}

// Edmonds–Karp over exact rationals on the bipartite network
// source -> x (cap ν_x), x -> y for x <= y (cap 2), y -> sink (cap μ_y).
// Total flow never exceeds 1, so the middle arcs are never saturated.
struct TransportNetwork {
  struct Arc {
    std::size_t to;
    std::size_t rev;
    Rational residual;
  };
  std::vector<std::vector<Arc>> adj;

  explicit TransportNetwork(std::size_t nodes) : adj(nodes) {}

  void add_arc(std::size_t from, std::size_t to, const Rational& cap) {
    adj[from].push_back({to, adj[to].size(), cap});
    adj[to].push_back({from, adj[from].size() - 1, Rational(0)});
  }

  Rational max_flow(std::size_t s, std::size_t t) {
    Rational total = 0;
    while (true) {
      std::vector<std::pair<std::size_t, std::size_t>> parent(adj.size(), {SIZE_MAX, SIZE_MAX});
      std::deque<std::size_t> queue{s};
      parent[s] = {s, SIZE_MAX};
      while (!queue.empty() && parent[t].first == SIZE_MAX) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < adj[u].size(); ++i) {
          const Arc& a = adj[u][i];
          if (a.residual > 0 && parent[a.to].first == SIZE_MAX) {
            parent[a.to] = {u, i};
            queue.push_back(a.to);
          }
        }
      }
      if (parent[t].first == SIZE_MAX) return total;
      Rational bottleneck = -1;
      for (std::size_t v = t; v != s; v = parent[v].first) {
        const Arc& a = adj[parent[v].first][parent[v].second];
        if (bottleneck < 0 || a.residual < bottleneck) bottleneck = a.residual;
      }
      for (std::size_t v = t; v != s; v = parent[v].first) {
        Arc& a = adj[parent[v].first][parent[v].second];
        a.residual -= bottleneck;
        adj[a.to][a.rev].residual += bottleneck;
      }
      total += bottleneck;
    }
  }

  std::vector<bool> reachable_from(std::size_t s) const {
    std::vector<bool> seen(adj.size(), false);
    std::deque<std::size_t> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (const Arc& a : adj[u])
        if (a.residual > 0 && !seen[a.to]) {
          seen[a.to] = true;
          queue.push_back(a.to);
        }
    }
    return seen;
  }
};

bool leq_by_upper_sets(const Valuation& nu, const Valuation& mu) {
  for (const auto& u : upper_sets(nu.poset()))
    if (nu.mass(u) > mu.mass(u)) return false;
  return true;
}

}  // namespace

OrderCertificate stochastic_order_certificate(const Valuation& nu, const Valuation& mu) {
  check_same_poset(nu, mu);
  const Poset& p = nu.poset();
  const std::size_t n = p.size();
  const std::size_t source = 2 * n;
  const std::size_t sink = 2 * n + 1;
  TransportNetwork net(2 * n + 2);
  std::vector<std::tuple<Element, Element, std::size_t>> middle;
  for (Element x = 0; x < n; ++x) {
    if (nu.weight(x) > 0) net.add_arc(source, x, nu.weight(x));
    if (mu.weight(x) > 0) net.add_arc(n + x, sink, mu.weight(x));
  }
  for (Element x = 0; x < n; ++x) {
    if (nu.weight(x) == 0) continue;
    for (Element y = 0; y < n; ++y)
      if (p.leq(x, y) && mu.weight(y) > 0) {
        middle.emplace_back(x, y, net.adj[x].size());
        net.add_arc(x, n + y, Rational(2));
      }
  }
  OrderCertificate cert;
  cert.leq = net.max_flow(source, sink) == 1;
  if (cert.leq) {
    for (auto [x, y, slot] : middle) {
      Rational moved = 2 - net.adj[x][slot].residual;
      if (moved > 0) cert.plan.push_back({x, y, moved});
    }
  } else {
    // Left nodes still reachable from the source generate a violating upper set.
    auto seen = net.reachable_from(source);
    std::vector<Element> seeds;
    for (Element x = 0; x < n; ++x)
      if (seen[x]) seeds.push_back(x);
    UpperSet u = up_closure(p, seeds);
    if (!(nu.mass(u) > mu.mass(u))) throw Error("transport cut does not certify the violation");
    cert.violating = std::move(u);
  }
  return cert;
}

bool stochastic_leq(const Valuation& nu, const Valuation& mu, OrderMode mode) {
  check_same_poset(nu, mu);
  if (mode == OrderMode::kUpperSets) return leq_by_upper_sets(nu, mu);
  return stochastic_order_certificate(nu, mu).leq;
}

bool way_below(const Valuation& nu, const Valuation& mu) {
  check_same_poset(nu, mu);
  const Poset& p = nu.poset();
  if (!p.is_pointed()) throw PreconditionError("way_below needs a pointed poset");
  for (const auto& u : upper_sets(p)) {
    if (u.count() == p.size()) continue;
    Rational a = nu.mass(u);
    Rational b = mu.mass(u);
    if (b == 0 ? a != 0 : !(a < b)) return false;
  }
  return true;
}

Valuation pushforward(const PosetMap& r, const Valuation& nu) {
  if (!(r.source() == nu.poset())) throw PreconditionError("valuation does not live on the source of the map");
  std::vector<Rational> w(r.target().size(), Rational(0));
  for (Element x = 0; x < nu.weights().size(); ++x) w[r(x)] += nu.weight(x);
  return Valuation(r.target(), std::move(w));
}

Valuation pushforward_preimage(const PosetMap& r, const Valuation& nu) {
  if (!(r.target() == nu.poset())) throw PreconditionError("valuation does not live on the target of the map");
  auto report = map_predicates(r);
  if (!report.monotone) throw PreconditionError("pushforward_preimage needs a monotone map");
  if (!report.surjective)
    throw PreconditionError("pushforward_preimage needs a surjective map: '" +
                            r.target().name(*report.missed_value) + "' is not hit");
  std::vector<Rational> w(r.source().size(), Rational(0));
  for (Element y = 0; y < r.target().size(); ++y) {
    if (nu.weight(y) == 0) continue;
    Element x = 0;
    while (r(x) != y) ++x;
    w[x] += nu.weight(y);
  }
  return Valuation(r.source(), std::move(w));
}

// ---------------------------------------------------------------------------

std::size_t grid_size(std::size_t elements, GridSpec spec) {
  if (elements == 0) return spec.denominator == 0 ? 1 : 0;
  // C(N + n - 1, n - 1) computed incrementally; saturates instead of overflowing.
  const std::size_t k = elements - 1;
  unsigned __int128 c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * (spec.denominator + i) / i;
    if (c > std::numeric_limits<std::size_t>::max()) return std::numeric_limits<std::size_t>::max();
  }
  return static_cast<std::size_t>(c);
}

std::vector<Valuation> grid(const Poset& p, GridSpec spec, std::size_t cap) {
  if (spec.denominator == 0) throw PreconditionError("grid denominator must be positive");
  if (p.size() == 0) throw PreconditionError("grid over an empty poset");
  if (grid_size(p.size(), spec) > cap)
    throw CapExceeded("grid would hold " + std::to_string(grid_size(p.size(), spec)) +
                      " valuations, cap is " + std::to_string(cap));
  const std::size_t n = p.size();
  const long N = static_cast<long>(spec.denominator);
  std::vector<Valuation> out;
  std::vector<long> counts(n, 0);
  std::function<void(std::size_t, long)> place = [&](std::size_t i, long left) {
    if (i + 1 == n) {
      counts[i] = left;
      std::vector<Rational> w(n);
      for (std::size_t j = 0; j < n; ++j) w[j] = Rational(counts[j], N);
      out.emplace_back(p, std::move(w));
      return;
    }
    for (long c = left; c >= 0; --c) {
      counts[i] = c;
      place(i + 1, left - c);
    }
  };
  place(0, N);
  return out;
}

Poset grid_poset(const Poset& p, GridSpec spec, std::size_t cap) {
  auto points = grid(p, spec, cap);
  const std::size_t m = points.size();
  std::vector<std::string> names;
  for (const auto& v : points) names.push_back(to_string(v));
  std::vector<bool> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) table[i * m + j] = i == j || stochastic_leq(points[i], points[j]);
  return Poset::from_table(std::move(names), std::move(table));
}

namespace {

std::vector<Valuation> extremal(std::vector<Valuation> set, bool keep_minimal) {
  std::vector<Valuation> out;
  for (std::size_t i = 0; i < set.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < set.size() && !dominated; ++j) {
      if (i == j) continue;
      dominated = keep_minimal ? stochastic_leq(set[j], set[i]) : stochastic_leq(set[i], set[j]);
    }
    if (!dominated) out.push_back(set[i]);
  }
  return out;
}

}  // namespace

std::vector<Valuation> minimal_upper_bounds_grid(const Valuation& nu1, const Valuation& nu2,
                                                 GridSpec spec) {
  check_same_poset(nu1, nu2);
  std::vector<Valuation> bounds;
  for (auto& mu : grid(nu1.poset(), spec))
    if (stochastic_leq(nu1, mu) && stochastic_leq(nu2, mu)) bounds.push_back(std::move(mu));
  return extremal(std::move(bounds), true);
}

std::vector<Valuation> maximal_below_grid(const Valuation& nu, GridSpec spec) {
  std::vector<Valuation> below;
  for (auto& mu : grid(nu.poset(), spec))
    if (stochastic_leq(mu, nu)) below.push_back(std::move(mu));
  return extremal(std::move(below), false);
}

Rational round_down_strict(const Rational& v, GridSpec spec) {
  if (spec.denominator == 0) throw PreconditionError("grid denominator must be positive");
  if (v < 0) throw PreconditionError("round_down_strict expects a nonnegative value");
  if (v == 0) return 0;
  // Largest k with k/N < v is ceil(vN) - 1.
  Rational scaled = v * Rational(static_cast<long>(spec.denominator));
  mpz_class k;
  mpz_cdiv_q(k.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  k -= 1;
  Rational out(k, mpz_class(static_cast<unsigned long>(spec.denominator)));
  out.canonicalize();
  return out;
}

// ---------------------------------------------------------------------------

const Rational& SetFunction::at(const UpperSet& u) const {
  for (std::size_t i = 0; i < opens.size(); ++i)
    if (opens[i] == u) return values[i];
  throw PreconditionError("set function is not defined on that subset");
}

RoundedSetFunction failed_deflation_a(const Valuation& nu, GridSpec spec) {
  const Poset& p = nu.poset();
  if (!p.is_pointed()) throw PreconditionError("failed_deflation_a needs a pointed poset");
  RoundedSetFunction out;
  out.values.opens = upper_sets(p);
  for (const auto& u : out.values.opens) out.values.values.push_back(round_down_strict(nu.mass(u), spec));
  const auto& opens = out.values.opens;
  const auto& f = out.values.values;
  for (std::size_t i = 0; i < opens.size(); ++i)
    for (std::size_t j = 0; j < opens.size(); ++j)
      if (opens[i].is_subset_of(opens[j]) && f[i] > f[j]) out.monotone = false;
  for (std::size_t i = 0; i < opens.size() && !out.witness; ++i)
    for (std::size_t j = i + 1; j < opens.size(); ++j) {
      const Rational& fu = out.values.at(opens[i] | opens[j]);
      const Rational& fi = out.values.at(opens[i] & opens[j]);
      if (fu + fi != f[i] + f[j]) {
        out.witness = ModularityWitness{opens[i], opens[j], f[i], f[j], fu, fi};
        break;
      }
    }
  return out;
}

Valuation failed_deflation_b(const Valuation& nu, GridSpec spec) {
  const Poset& p = nu.poset();
  auto bottom = p.bottom();
  if (!bottom) throw PreconditionError("failed_deflation_b needs a pointed poset");
  std::vector<Rational> w(p.size(), Rational(0));
  Rational kept = 0;
  for (Element x = 0; x < p.size(); ++x) {
    if (x == *bottom) continue;
    w[x] = round_down_strict(nu.weight(x), spec);
    kept += w[x];
  }
  w[*bottom] = 1 - kept;
  return Valuation(p, std::move(w));
}

std::optional<MonotonicityWitness> find_monotonicity_witness_b(const Poset& p, GridSpec spec,
                                                               GridSpec search) {
  auto points = grid(p, search);
  std::vector<Valuation> images;
  images.reserve(points.size());
  for (const auto& v : points) images.push_back(failed_deflation_b(v, spec));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (i == j || !stochastic_leq(points[i], points[j])) continue;
      if (!stochastic_leq(images[i], images[j]))
        return MonotonicityWitness{points[i], points[j], images[i], images[j]};
    }
  return std::nullopt;
}

LargestBelowReport failed_deflation_c(const Valuation& nu, GridSpec spec) {
  if (!nu.poset().is_pointed()) throw PreconditionError("failed_deflation_c needs a pointed poset");
  LargestBelowReport out;
  out.candidates = maximal_below_grid(nu, spec);
  out.cardinality = out.candidates.size();
  return out;
}

}  // namespace domlab
