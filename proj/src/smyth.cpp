#include "domlab/smyth.hpp"

#include <algorithm>
#include <sstream>

#include "domlab/text.hpp"

namespace domlab {

namespace {

bool is_canonical(const Poset& p, const FinCompact& e) {
  if (e.members.empty()) return false;
  for (Element x : e.members)
    if (x >= p.size()) return false;
  if (!std::is_sorted(e.members.begin(), e.members.end())) return false;
  if (std::adjacent_find(e.members.begin(), e.members.end()) != e.members.end()) return false;
  return is_antichain(p, e.members);
}

}  // namespace

FinMap::FinMap(Poset source, Poset target, std::vector<FinCompact> table)
    : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
  if (table_.size() != source_.size()) throw PreconditionError("FinMap table does not cover the source");
  for (const auto& e : table_)
    if (!is_canonical(target_, e)) throw PreconditionError("FinMap entry is not a canonical antichain");
}

FinMap FinMap::unit(const Poset& p) {
  std::vector<FinCompact> table;
  table.reserve(p.size());
  for (Element x = 0; x < p.size(); ++x) table.push_back(FinCompact{{x}});
  return FinMap(p, p, std::move(table));
}

FinCompact eta(const Poset& p, Element x) {
  p.check_element(x);
  return FinCompact{{x}};
}

bool is_monotone(const FinMap& h) {
  const Poset& src = h.source();
  for (Element x = 0; x < src.size(); ++x)
    for (Element y = 0; y < src.size(); ++y)
      if (x != y && src.leq(x, y) && !smyth_leq(h.target(), h(x), h(y))) return false;
  return true;
}

FinCompact dagger(const FinMap& h, const FinCompact& q) {
  std::vector<Element> joined;
  for (Element x : q.members) {
    h.source().check_element(x);
    const auto& image = h(x);
    joined.insert(joined.end(), image.members.begin(), image.members.end());
  }
  return antichain_normalize(h.target(), joined);
}

FinMap kleisli_compose(const FinMap& g, const FinMap& h) {
  if (!(h.target() == g.source())) throw PreconditionError("FinMaps are not composable");
  std::vector<FinCompact> table;
  table.reserve(h.source().size());
  for (Element x = 0; x < h.source().size(); ++x) table.push_back(dagger(g, h(x)));
  return FinMap(h.source(), g.target(), std::move(table));
}

FinCompact smyth_map(const PosetMap& r, const FinCompact& q) {
  std::vector<Element> image;
  image.reserve(q.members.size());
  for (Element x : q.members) {
    r.source().check_element(x);
    image.push_back(r(x));
  }
  return antichain_normalize(r.target(), image);
}

std::vector<FinCompact> fin_compacts(const Poset& p, std::size_t cap) {
  std::vector<FinCompact> out;
  std::vector<Element> current;
  // Depth-first over increasing element indices, keeping pairwise incomparable
  // members only.
  std::function<void(Element)> grow = [&](Element from) {
    for (Element x = from; x < p.size(); ++x) {
      bool free = true;
      for (Element m : current)
        if (p.comparable(m, x)) {
          free = false;
          break;
        }
      if (!free) continue;
      current.push_back(x);
      if (out.size() >= cap)
        throw CapExceeded("Fin(P) has more than " + std::to_string(cap) + " antichains");
      out.push_back(FinCompact{current});
      grow(x + 1);
      current.pop_back();
    }
  };
  grow(0);
  std::stable_sort(out.begin(), out.end(), [](const FinCompact& a, const FinCompact& b) {
    if (a.members.size() != b.members.size()) return a.members.size() < b.members.size();
    return a.members < b.members;
  });
  return out;
}

std::string to_string(const Poset& p, const FinCompact& e) {
  std::string s = "{";
  for (std::size_t i = 0; i < e.members.size(); ++i) {
    if (i) s += ", ";
    s += p.name(e.members[i]);
  }
  return s + "}";
}

FinPoset fin_poset(const Poset& p, std::size_t cap) {
  FinPoset out;
  out.members = fin_compacts(p, cap);
  const std::size_t n = out.members.size();
  std::vector<std::string> names;
  names.reserve(n);
  for (const auto& e : out.members) names.push_back(to_string(p, e));
  std::vector<bool> table(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) table[i * n + j] = smyth_leq(p, out.members[i], out.members[j]);
  out.poset = Poset::from_table(std::move(names), std::move(table));
  return out;
}

FinCompact mu(const Poset& p, std::span<const FinCompact> family) {
  if (family.empty()) throw PreconditionError("mu needs a nonempty family");
  std::vector<Element> joined;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (!is_canonical(p, family[i])) throw PreconditionError("mu: member is not a canonical antichain");
    for (std::size_t j = 0; j < family.size(); ++j)
      if (i != j && smyth_leq(p, family[i], family[j]))
        throw PreconditionError("mu: family is not an antichain of Fin(P)");
    joined.insert(joined.end(), family[i].members.begin(), family[i].members.end());
  }
  return antichain_normalize(p, joined);
}

std::optional<LawViolation> check_monad_laws(const FinMap& h, const FinMap& g) {
  const Poset& p = h.source();
  const auto fin = fin_compacts(p);
  const FinMap unit = FinMap::unit(p);
  for (const auto& e : fin) {
    if (dagger(unit, e) != e)
      return LawViolation{"unit_dagger_identity", "eta† moves " + to_string(p, e)};
  }
  for (Element x = 0; x < p.size(); ++x) {
    if (dagger(h, eta(p, x)) != h(x))
      return LawViolation{"dagger_after_unit", "h†(eta(" + p.name(x) + ")) differs from h(" +
                                                   p.name(x) + ")"};
  }
  const FinMap gh = kleisli_compose(g, h);
  for (const auto& e : fin) {
    if (dagger(gh, e) != dagger(g, dagger(h, e)))
      return LawViolation{"associativity", "(g†∘h)† and g†∘h† differ at " + to_string(p, e)};
  }
  return std::nullopt;
}

void for_each_monotone_finmap(const Poset& source, const Poset& target,
                              const std::function<void(const FinMap&)>& visit) {
  const auto candidates = fin_compacts(target);
  std::vector<std::size_t> choice(source.size(), 0);
  std::vector<FinCompact> table(source.size());
  std::function<void(Element)> assign = [&](Element x) {
    if (x == source.size()) {
      visit(FinMap(source, target, table));
      return;
    }
    for (const auto& c : candidates) {
      bool ok = true;
      for (Element y = 0; y < x && ok; ++y) {
        if (source.leq(y, x) && !smyth_leq(target, table[y], c)) ok = false;
        if (source.leq(x, y) && !smyth_leq(target, c, table[y])) ok = false;
      }
      if (!ok) continue;
      table[x] = c;
      assign(x + 1);
    }
  };
  assign(0);
}

// ---------------------------------------------------------------------------

FinMap canonical_quasi_section(const PosetMap& r) {
  auto report = map_predicates(r);
  if (!report.monotone) throw PreconditionError("canonical quasi-section needs a monotone map");
  if (!report.surjective)
    throw PreconditionError("canonical quasi-section needs a surjective map: '" +
                            r.target().name(*report.missed_value) + "' is not hit");
  const Poset& x = r.source();
  const Poset& y = r.target();
  std::vector<FinCompact> table;
  table.reserve(y.size());
  for (Element t = 0; t < y.size(); ++t) {
    std::vector<Element> preimage;
    for (Element s = 0; s < x.size(); ++s)
      if (y.leq(t, r(s))) preimage.push_back(s);
    table.push_back(antichain_normalize(x, preimage));
  }
  return FinMap(y, x, std::move(table));
}

QuasiSectionReport check_quasi_retraction(const PosetMap& r, const FinMap& qs) {
  if (!(qs.source() == r.target()) || !(qs.target() == r.source()))
    throw PreconditionError("quasi-section must map the target of r into Fin(source of r)");
  QuasiSectionReport report;
  const Poset& x = r.source();
  const Poset& y = r.target();
  std::optional<QuasiSectionWitness> first_retraction;
  std::optional<QuasiSectionWitness> first_projection;
  for (Element t = 0; t < y.size(); ++t) {
    FinCompact image = smyth_map(r, qs(t));
    if (image != eta(y, t)) {
      report.retraction_law = false;
      if (!first_retraction)
        first_retraction = QuasiSectionWitness{
            "retraction_law", t,
            "Smyth r(qs(" + y.name(t) + ")) = " + to_string(y, image) + ", expected {" + y.name(t) + "}"};
    }
  }
  for (Element s = 0; s < x.size(); ++s) {
    const FinCompact& section = qs(r(s));
    if (!in_up_closure(x, section, s)) {
      report.projection_law = false;
      if (!first_projection)
        first_projection = QuasiSectionWitness{
            "projection_law", s,
            x.name(s) + " is not above qs(r(" + x.name(s) + ")) = " + to_string(x, section)};
    }
  }
  report.witness = first_retraction ? first_retraction : first_projection;
  auto predicates = map_predicates(r);
  if (predicates.monotone && predicates.surjective) {
    report.canonical_section = canonical_quasi_section(r);
    report.canonical = *report.canonical_section == qs;
  }
  return report;
}

// ---------------------------------------------------------------------------

std::vector<Element> koenig_chain(const Poset& p, std::span<const FinCompact> stages, Element y) {
  p.check_element(y);
  if (stages.empty()) throw StageError(0, "koenig_chain needs at least one stage");
  std::vector<std::vector<Element>> restricted(stages.size());
  for (std::size_t i = 0; i < stages.size(); ++i) {
    for (Element m : stages[i].members) p.check_element(m);
    if (i > 0 && !smyth_leq(p, stages[i - 1], stages[i]))
      throw StageError(i, "stage " + std::to_string(i) + " is not contained in stage " +
                              std::to_string(i - 1) + " (↑E_" + std::to_string(i - 1) +
                              " ⊉ ↑E_" + std::to_string(i) + ")");
    if (!in_up_closure(p, stages[i], y))
      throw StageError(i, p.name(y) + " is not in ↑E_" + std::to_string(i));
    for (Element m : stages[i].members)
      if (p.leq(m, y)) restricted[i].push_back(m);
    std::sort(restricted[i].begin(), restricted[i].end());
  }
  std::vector<Element> branch;
  std::function<bool(std::size_t)> descend = [&](std::size_t depth) {
    if (depth == stages.size()) return true;
    for (Element m : restricted[depth]) {
      if (depth > 0 && !p.leq(branch.back(), m)) continue;
      branch.push_back(m);
      if (descend(depth + 1)) return true;
      branch.pop_back();
    }
    return false;
  };
  if (!descend(0)) throw StageError(stages.size() - 1, "no non-decreasing branch exists");
  return branch;
}

// ---------------------------------------------------------------------------

namespace {

// Splits "lhs -> rhs" and resolves lhs in `source`.
std::pair<Element, std::string_view> split_arrow(std::string_view line, const Poset& source,
                                                 std::size_t line_no) {
  auto arrow = line.find("->");
  if (arrow == std::string_view::npos)
    throw ParseError("line " + std::to_string(line_no) + ": expected 'x -> ...'");
  std::string lhs(trim(line.substr(0, arrow)));
  auto x = source.find(lhs);
  if (!x) throw ParseError("line " + std::to_string(line_no) + ": unknown element '" + lhs + "'");
  return {*x, trim(line.substr(arrow + 2))};
}

}  // namespace

FinMap parse_finmap(std::string_view text, const Poset& source, const Poset& target) {
  std::vector<std::optional<FinCompact>> table(source.size());
  std::size_t line_no = 0;
  for (const auto& raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    auto [x, rhs] = split_arrow(line, source, line_no);
    if (rhs.size() < 2 || rhs.front() != '{' || rhs.back() != '}')
      throw ParseError("line " + std::to_string(line_no) + ": expected '{a, b}'");
    std::vector<Element> members;
    for (std::string_view item : split(rhs.substr(1, rhs.size() - 2), ',')) {
      std::string id(trim(item));
      if (id.empty()) continue;
      auto m = target.find(id);
      if (!m) throw ParseError("line " + std::to_string(line_no) + ": unknown element '" + id + "'");
      members.push_back(*m);
    }
    if (members.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty compact");
    if (table[x]) throw ParseError("line " + std::to_string(line_no) + ": '" + source.name(x) + "' mapped twice");
    table[x] = antichain_normalize(target, members);
  }
  std::vector<FinCompact> out;
  for (Element x = 0; x < source.size(); ++x) {
    if (!table[x]) throw ParseError("no image given for '" + source.name(x) + "'");
    out.push_back(*table[x]);
  }
  return FinMap(source, target, std::move(out));
}

std::string to_text(const FinMap& h) {
  std::ostringstream out;
  for (Element x = 0; x < h.source().size(); ++x)
    out << h.source().name(x) << " -> " << to_string(h.target(), h(x)) << '\n';
  return out.str();
}

PosetMap parse_map(std::string_view text, const Poset& source, const Poset& target) {
  std::vector<std::optional<Element>> table(source.size());
  std::size_t line_no = 0;
  for (const auto& raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    auto [x, rhs] = split_arrow(line, source, line_no);
    auto v = target.find(rhs);
    if (!v) throw ParseError("line " + std::to_string(line_no) + ": unknown element '" + std::string(rhs) + "'");
    if (table[x]) throw ParseError("line " + std::to_string(line_no) + ": '" + source.name(x) + "' mapped twice");
    table[x] = *v;
  }
  std::vector<Element> out;
  for (Element x = 0; x < source.size(); ++x) {
    if (!table[x]) throw ParseError("no image given for '" + source.name(x) + "'");
    out.push_back(*table[x]);
  }
  return PosetMap(source, target, std::move(out));
}

std::string to_text(const PosetMap& f) {
  std::ostringstream out;
  for (Element x = 0; x < f.source().size(); ++x)
    out << f.source().name(x) << " -> " << f.target().name(f(x)) << '\n';
  return out.str();
}

}  // namespace domlab
