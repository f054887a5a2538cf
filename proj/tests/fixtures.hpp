#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "domlab/poset.hpp"
#include "domlab/smyth.hpp"

namespace domlab::testing {

// ⊥ < a, ⊥ < b, a < ⊤, b < ⊤; indices bot=0, a=1, b=2, top=3.
inline Poset diamond() {
  return parse_poset("elements: bot a b top\norder: bot < a; bot < b; a < top; b < top\n");
}

inline Poset chain(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::pair<Element, Element>> less;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    if (i > 0) less.emplace_back(i - 1, i);
  }
  return Poset::from_relations(std::move(names), less);
}

inline Poset antichain(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
  return Poset::from_relations(std::move(names), {});
}

inline FinCompact fc(std::vector<Element> members) { return FinCompact{std::move(members)}; }

// Random order: each pair i < j is related with probability `density`, then closed.
inline Poset random_poset(std::mt19937& rng, std::size_t n, double density = 0.35) {
  std::bernoulli_distribution coin(density);
  std::vector<std::string> names;
  std::vector<std::pair<Element, Element>> less;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("e" + std::to_string(i));
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) less.emplace_back(i, j);
  }
  return Poset::from_relations(std::move(names), less);
}

inline FinCompact random_fin_compact(std::mt19937& rng, const Poset& p) {
  std::uniform_int_distribution<std::size_t> pick(0, p.size() - 1);
  std::bernoulli_distribution more(0.4);
  std::vector<Element> members{pick(rng)};
  while (more(rng)) members.push_back(pick(rng));
  return antichain_normalize(p, members);
}

// h(x) = min of the union of random picks over ↑x, which is Smyth-monotone.
inline FinMap random_monotone_finmap(std::mt19937& rng, const Poset& source, const Poset& target) {
  std::vector<FinCompact> picks;
  for (Element x = 0; x < source.size(); ++x) picks.push_back(random_fin_compact(rng, target));
  std::vector<FinCompact> table;
  for (Element x = 0; x < source.size(); ++x) {
    std::vector<Element> members;
    for (Element z = 0; z < source.size(); ++z)
      if (source.leq(x, z)) members.insert(members.end(), picks[z].members.begin(), picks[z].members.end());
    table.push_back(antichain_normalize(target, members));
  }
  return FinMap(source, target, std::move(table));
}

// Lexicographically least order matrix over all relabelings.
inline std::vector<bool> canonical_form(const Poset& p) {
  std::vector<Element> perm(p.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<bool> best;
  do {
    std::vector<bool> m;
    for (Element i : perm)
      for (Element j : perm) m.push_back(p.leq(i, j));
    if (best.empty() || m < best) best = std::move(m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// One representative per isomorphism class, n <= 5.
inline std::vector<Poset> poset_classes(std::size_t n) {
  std::vector<Poset> out;
  std::vector<std::vector<bool>> seen;
  for (const Poset& p : enumerate_posets(n)) {
    auto form = canonical_form(p);
    if (std::find(seen.begin(), seen.end(), form) != seen.end()) continue;
    seen.push_back(std::move(form));
    out.push_back(p);
  }
  return out;
}

inline void for_each_monotone_map(const Poset& source, const Poset& target,
                                  const std::function<void(const PosetMap&)>& visit) {
  const std::size_t n = source.size();
  std::vector<Element> table(n);
  std::function<void(std::size_t)> place = [&](std::size_t x) {
    if (x == n) {
      visit(PosetMap(source, target, table));
      return;
    }
    for (Element y = 0; y < target.size(); ++y) {
      bool ok = true;
      for (std::size_t z = 0; z < x && ok; ++z) {
        if (source.leq(z, x) && !target.leq(table[z], y)) ok = false;
        if (source.leq(x, z) && !target.leq(y, table[z])) ok = false;
      }
      if (!ok) continue;
      table[x] = y;
      place(x + 1);
    }
  };
  place(0);
}

// Every rooted tree with n nodes up to isomorphism; node 0 is the root and
// names are "t0", "t1", ...
inline std::vector<Poset> rooted_trees(std::size_t n) {
  std::vector<Poset> out;
  std::vector<std::string> seen;
  std::vector<Element> parent(n, 0);
  std::function<std::string(Element)> shape = [&](Element v) {
    std::vector<std::string> kids;
    for (Element c = 1; c < n; ++c)
      if (parent[c] == v) kids.push_back(shape(c));
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (const auto& k : kids) s += k;
    return s + ")";
  };
  std::function<void(Element)> place = [&](Element v) {
    if (v == n) {
      std::string form = shape(0);
      if (std::find(seen.begin(), seen.end(), form) != seen.end()) return;
      seen.push_back(form);
      std::vector<std::string> names;
      std::vector<std::pair<Element, Element>> less;
      for (Element c = 0; c < n; ++c) {
        names.push_back("t" + std::to_string(c));
        if (c > 0) less.emplace_back(parent[c], c);
      }
      out.push_back(Poset::from_relations(std::move(names), less));
      return;
    }
    for (Element p = 0; p < v; ++p) {
      parent[v] = p;
      place(v + 1);
    }
  };
  if (n > 0) place(1);
  return out;
}

}  // namespace domlab::testing
