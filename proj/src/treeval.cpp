#include "domlab/treeval.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "domlab/error.hpp"
#include "domlab/text.hpp"

namespace domlab {

namespace {

std::vector<std::vector<Element>> children_of(const Poset& p) {
  std::vector<std::vector<Element>> out(p.size());
  for (auto [a, b] : covers(p)) out[a].push_back(b);
  return out;
}

void require_tree(const Poset& p) {
  if (!p.is_pointed() || !is_tree(p)) throw PreconditionError("poset is not a tree");
}

// Leaves first: if t < t' then ↑t' is strictly smaller than ↑t.
std::vector<Element> leaves_first(const Poset& p) {
  std::vector<std::size_t> above(p.size(), 0);
  for (Element x = 0; x < p.size(); ++x)
    for (Element y = 0; y < p.size(); ++y) above[x] += p.leq(x, y);
  std::vector<Element> order(p.size());
  for (Element x = 0; x < p.size(); ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(), [&](Element a, Element b) { return above[a] < above[b]; });
  return order;
}

}  // namespace

PathSpace path_space(const Poset& y) {
  auto bottom = y.bottom();
  if (!bottom) throw PreconditionError("path space needs a pointed poset");
  const auto next = children_of(y);
  std::vector<std::vector<Element>> paths{{*bottom}};
  std::vector<std::pair<std::size_t, std::size_t>> prefix_edges;
  // Breadth-first: every path of length k is listed before those of length k+1,
  // and children follow cover order, so the listing is lexicographic per length.
  for (std::size_t i = 0; i < paths.size(); ++i) {
    for (Element succ : next[paths[i].back()]) {
      auto extended = paths[i];
      extended.push_back(succ);
      prefix_edges.emplace_back(i, paths.size());
      paths.push_back(std::move(extended));
    }
  }
  std::vector<std::string> names;
  for (const auto& path : paths) {
    std::string id;
    for (Element e : path) id += (id.empty() ? "" : ".") + y.name(e);
    names.push_back(std::move(id));
  }
  PathSpace out{Poset::from_relations(std::move(names), prefix_edges), PosetMap::identity(y), paths};
  std::vector<Element> last;
  for (const auto& path : paths) last.push_back(path.back());
  out.last = PosetMap(out.tree, y, std::move(last));
  auto report = map_predicates(out.last);
  if (!is_tree(out.tree) || !report.monotone || !report.surjective)
    throw Error("path space construction broke its postcondition");
  return out;
}

std::size_t count_paths_from_bottom(const Poset& y) {
  auto bottom = y.bottom();
  if (!bottom) throw PreconditionError("path count needs a pointed poset");
  const auto next = children_of(y);
  std::function<std::size_t(Element)> count = [&](Element at) {
    std::size_t total = 1;
    for (Element succ : next[at]) total += count(succ);
    return total;
  };
  return count(*bottom);
}

// ---------------------------------------------------------------------------

AdmissibleReport check_admissible(const Poset& tree, const std::vector<Rational>& values) {
  require_tree(tree);
  if (values.size() != tree.size()) throw PreconditionError("admissible map needs one value per node");
  AdmissibleReport report;
  const Element root = *tree.bottom();
  if (values[root] != 1) {
    report.root_is_one = false;
    report.violations.push_back("f(" + tree.name(root) + ") = " + to_string(values[root]) + ", expected 1");
  }
  for (Element t = 0; t < tree.size(); ++t)
    if (values[t] < 0 || values[t] > 1) {
      report.in_unit_interval = false;
      report.violations.push_back("f(" + tree.name(t) + ") = " + to_string(values[t]) + " outside [0, 1]");
    }
  const auto next = children_of(tree);
  for (Element t = 0; t < tree.size(); ++t) {
    Rational sum = 0;
    for (Element c : next[t]) sum += values[c];
    if (values[t] < sum) {
      report.children_bounded = false;
      report.violations.push_back("f(" + tree.name(t) + ") = " + to_string(values[t]) +
                                  " < " + to_string(sum) + " = sum over children");
    }
  }
  return report;
}

AdmissibleMap::AdmissibleMap(Poset tree, std::vector<Rational> values)
    : tree_(std::move(tree)), values_(std::move(values)) {
  for (auto& v : values_) v.canonicalize();
  auto report = check_admissible(tree_, values_);
  if (!report.valid()) throw PreconditionError("not admissible: " + report.violations.front());
}

bool AdmissibleMap::leq(const AdmissibleMap& other) const {
  if (!(tree_ == other.tree_)) throw PreconditionError("admissible maps on different trees");
  for (Element t = 0; t < values_.size(); ++t)
    if (values_[t] > other.values_[t]) return false;
  return true;
}

bool operator==(const AdmissibleMap& a, const AdmissibleMap& b) {
  return a.tree_ == b.tree_ && a.values_ == b.values_;
}

AdmissibleMap valuation_to_admissible(const Valuation& nu) {
  const Poset& tree = nu.poset();
  require_tree(tree);
  std::vector<Rational> values(tree.size());
  for (Element t = 0; t < tree.size(); ++t) {
    std::vector<Element> seed{t};
    values[t] = nu.mass(up_closure(tree, seed));
  }
  return AdmissibleMap(tree, std::move(values));
}

Valuation admissible_to_valuation(const AdmissibleMap& f) {
  const Poset& tree = f.tree();
  const auto next = children_of(tree);
  std::vector<Rational> weights(tree.size());
  for (Element t = 0; t < tree.size(); ++t) {
    weights[t] = f(t);
    for (Element c : next[t]) weights[t] -= f(c);
  }
  return Valuation(tree, std::move(weights));
}

std::optional<AdmissibleMap> admissible_lub(const AdmissibleMap& f1, const AdmissibleMap& f2) {
  if (!(f1.tree() == f2.tree())) throw PreconditionError("admissible maps on different trees");
  const Poset& tree = f1.tree();
  const auto next = children_of(tree);
  std::vector<Rational> values(tree.size());
  for (Element t : leaves_first(tree)) {
    Rational sum = 0;
    for (Element c : next[t]) sum += values[c];
    values[t] = std::max({f1(t), f2(t), sum});
  }
  if (values[*tree.bottom()] > 1) return std::nullopt;
  return AdmissibleMap(tree, std::move(values));
}

std::string to_text(const AdmissibleMap& f) {
  std::ostringstream out;
  out << "kind: admissible\n";
  for (Element t = 0; t < f.tree().size(); ++t) out << f.tree().name(t) << ':' << to_string(f(t)) << '\n';
  return out.str();
}

AdmissibleMap parse_admissible(std::string_view text, const Poset& tree) {
  std::vector<std::optional<Rational>> values(tree.size());
  bool header = false;
  for (const auto& raw : split_lines(text)) {
    std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (!header) {
      if (line != "kind: admissible") throw ParseError("expected 'kind: admissible' header");
      header = true;
      continue;
    }
    auto colon = line.rfind(':');
    if (colon == std::string_view::npos) throw ParseError("expected 'elem:p/q'");
    std::string id(trim(line.substr(0, colon)));
    auto t = tree.find(id);
    if (!t) throw ParseError("unknown element '" + id + "'");
    values[*t] = parse_rational(line.substr(colon + 1));
  }
  if (!header) throw ParseError("expected 'kind: admissible' header");
  std::vector<Rational> out;
  for (Element t = 0; t < tree.size(); ++t) out.push_back(values[t].value_or(Rational(0)));
  return AdmissibleMap(tree, std::move(out));
}

}  // namespace domlab
