#include "domlab/poset.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "domlab/error.hpp"
#include "domlab/text.hpp"

namespace domlab {

struct Poset::Impl {
  std::vector<std::string> names;
  std::vector<bool> leq;
  std::unordered_map<std::string, Element> index;
  std::optional<Element> bottom;
  std::optional<Element> top;
};

namespace {

std::shared_ptr<Poset::Impl> make_impl(std::vector<std::string> names, std::vector<bool> leq) {
  auto impl = std::make_shared<Poset::Impl>();
  const std::size_t n = names.size();
  for (Element i = 0; i < n; ++i) {
    if (names[i].empty()) throw ParseError("empty element identifier");
    if (!impl->index.emplace(names[i], i).second)
      throw ParseError("duplicate element '" + names[i] + "'");
  }
  impl->names = std::move(names);
  impl->leq = std::move(leq);
  for (Element c = 0; c < n; ++c) {
    bool below_all = true;
    bool above_all = true;
    for (Element x = 0; x < n; ++x) {
      below_all = below_all && impl->leq[c * n + x];
      above_all = above_all && impl->leq[x * n + c];
    }
    if (below_all) impl->bottom = c;
    if (above_all) impl->top = c;
  }
  return impl;
}

}  // namespace

Poset::Poset() : impl_(make_impl({}, {})) {}

Poset::Poset(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

Poset Poset::from_relations(std::vector<std::string> names,
                            std::span<const std::pair<Element, Element>> less) {
  const std::size_t n = names.size();
  std::vector<bool> leq(n * n, false);
  for (Element i = 0; i < n; ++i) leq[i * n + i] = true;
  for (auto [a, b] : less) {
    if (a >= n || b >= n) throw PreconditionError("relation refers to an unknown element");
    leq[a * n + b] = true;
  }
  // Warshall closure.
  for (Element k = 0; k < n; ++k)
    for (Element i = 0; i < n; ++i)
      if (leq[i * n + k])
        for (Element j = 0; j < n; ++j)
          if (leq[k * n + j]) leq[i * n + j] = true;
  for (Element i = 0; i < n; ++i)
    for (Element j = i + 1; j < n; ++j)
      if (leq[i * n + j] && leq[j * n + i])
        throw PreconditionError("cycle detected between '" + names[i] + "' and '" + names[j] +
                                "'");
  return Poset(make_impl(std::move(names), std::move(leq)));
}

Poset Poset::from_table(std::vector<std::string> names, std::vector<bool> table) {
  const std::size_t n = names.size();
  if (table.size() != n * n) throw PreconditionError("order table has the wrong size");
  for (Element i = 0; i < n; ++i) {
    if (!table[i * n + i]) throw PreconditionError("order table is not reflexive");
    for (Element j = 0; j < n; ++j) {
      if (i != j && table[i * n + j] && table[j * n + i])
        throw PreconditionError("order table is not antisymmetric");
      if (!table[i * n + j]) continue;
      for (Element k = 0; k < n; ++k)
        if (table[j * n + k] && !table[i * n + k])
          throw PreconditionError("order table is not transitive");
    }
  }
  return Poset(make_impl(std::move(names), std::move(table)));
}

std::size_t Poset::size() const { return impl_->names.size(); }

bool Poset::leq(Element x, Element y) const { return impl_->leq[x * size() + y]; }

const std::string& Poset::name(Element x) const { return impl_->names.at(x); }

const std::vector<std::string>& Poset::names() const { return impl_->names; }

std::optional<Element> Poset::find(std::string_view id) const {
  auto it = impl_->index.find(std::string(id));
  if (it == impl_->index.end()) return std::nullopt;
  return it->second;
}

Element Poset::index_of(std::string_view id) const {
  if (auto x = find(id)) return *x;
  throw PreconditionError("unknown element '" + std::string(id) + "'");
}

std::optional<Element> Poset::bottom() const { return impl_->bottom; }

std::optional<Element> Poset::top() const { return impl_->top; }

void Poset::check_element(Element x) const {
  if (x >= size())
    throw PreconditionError("element index " + std::to_string(x) + " out of range");
}

bool operator==(const Poset& a, const Poset& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->names == b.impl_->names && a.impl_->leq == b.impl_->leq;
}

// ---------------------------------------------------------------------------

Subset Subset::of(std::size_t universe, std::span<const Element> members) {
  Subset s(universe);
  for (Element x : members) {
    if (x >= universe) throw PreconditionError("unknown element in subset");
    s.mask_[x] = true;
  }
  return s;
}

std::size_t Subset::count() const { return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), true)); }

std::vector<Element> Subset::elements() const {
  std::vector<Element> out;
  for (Element x = 0; x < mask_.size(); ++x)
    if (mask_[x]) out.push_back(x);
  return out;
}

Subset Subset::operator|(const Subset& other) const {
  Subset out(*this);
  for (Element x = 0; x < mask_.size(); ++x) out.mask_[x] = mask_[x] || other.contains(x);
  return out;
}

Subset Subset::operator&(const Subset& other) const {
  Subset out(*this);
  for (Element x = 0; x < mask_.size(); ++x) out.mask_[x] = mask_[x] && other.contains(x);
  return out;
}

bool Subset::is_subset_of(const Subset& other) const {
  for (Element x = 0; x < mask_.size(); ++x)
    if (mask_[x] && !other.contains(x)) return false;
  return true;
}

UpperSet up_closure(const Poset& p, std::span<const Element> seeds) {
  Subset out(p.size());
  for (Element s : seeds) {
    p.check_element(s);
    for (Element y = 0; y < p.size(); ++y)
      if (p.leq(s, y)) out.insert(y);
  }
  return out;
}

Subset down_closure(const Poset& p, std::span<const Element> seeds) {
  Subset out(p.size());
  for (Element s : seeds) {
    p.check_element(s);
    for (Element y = 0; y < p.size(); ++y)
      if (p.leq(y, s)) out.insert(y);
  }
  return out;
}

bool is_upper_set(const Poset& p, const Subset& s) {
  for (Element x = 0; x < p.size(); ++x)
    if (s.contains(x))
      for (Element y = 0; y < p.size(); ++y)
        if (p.leq(x, y) && !s.contains(y)) return false;
  return true;
}

std::vector<std::pair<Element, Element>> covers(const Poset& p) {
  std::vector<std::pair<Element, Element>> out;
  const std::size_t n = p.size();
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      if (!p.less(x, y)) continue;
      bool immediate = true;
      for (Element z = 0; z < n && immediate; ++z)
        if (p.less(x, z) && p.less(z, y)) immediate = false;
      if (immediate) out.emplace_back(x, y);
    }
  return out;
}

std::vector<UpperSet> upper_sets(const Poset& p, std::size_t cap) {
  const std::size_t n = p.size();
  if (n > cap)
    throw CapExceeded("upper-set enumeration limited to " + std::to_string(cap) +
                      " elements, poset has " + std::to_string(n));
  if (n >= 63) throw CapExceeded("upper-set enumeration needs fewer than 63 elements");
  std::vector<std::uint64_t> up(n, 0);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      if (p.leq(x, y)) up[x] |= std::uint64_t{1} << y;
  std::vector<UpperSet> out;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    bool closed = true;
    for (Element x = 0; x < n && closed; ++x)
      if ((mask >> x & 1) && (up[x] & ~mask)) closed = false;
    if (!closed) continue;
    Subset s(n);
    for (Element x = 0; x < n; ++x)
      if (mask >> x & 1) s.insert(x);
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------

bool FinCompact::contains(Element x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

FinCompact antichain_normalize(const Poset& p, std::span<const Element> s) {
  if (s.empty()) throw PreconditionError("finitary compact needs a nonempty generating set");
  std::vector<Element> sorted(s.begin(), s.end());
  for (Element x : sorted) p.check_element(x);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  FinCompact out;
  for (Element x : sorted) {
    bool minimal = true;
    for (Element y : sorted)
      if (p.less(y, x)) {
        minimal = false;
        break;
      }
    if (minimal) out.members.push_back(x);
  }
  return out;
}

bool in_up_closure(const Poset& p, const FinCompact& e, Element x) {
  for (Element m : e.members)
    if (p.leq(m, x)) return true;
  return false;
}

bool smyth_leq(const Poset& p, const FinCompact& e, const FinCompact& f) {
  for (Element x : e.members) p.check_element(x);
  for (Element y : f.members) {
    p.check_element(y);
    if (!in_up_closure(p, e, y)) return false;
  }
  return true;
}

bool is_antichain(const Poset& p, std::span<const Element> s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j)
      if (i != j && p.leq(s[i], s[j])) return false;
  return true;
}

Poset product(const Poset& p, const Poset& q) {
  const std::size_t n = p.size() * q.size();
  std::vector<std::string> names;
  names.reserve(n);
  for (Element i = 0; i < p.size(); ++i)
    for (Element j = 0; j < q.size(); ++j) names.push_back("(" + p.name(i) + "," + q.name(j) + ")");
  std::vector<bool> table(n * n);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b)
      table[a * n + b] = p.leq(a / q.size(), b / q.size()) && q.leq(a % q.size(), b % q.size());
  return Poset::from_table(std::move(names), std::move(table));
}

// ---------------------------------------------------------------------------

PosetMap::PosetMap(Poset source, Poset target, std::vector<Element> table)
    : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
  if (table_.size() != source_.size()) throw PreconditionError("map table does not cover the source");
  for (Element v : table_) target_.check_element(v);
}

PosetMap PosetMap::identity(const Poset& p) {
  std::vector<Element> table(p.size());
  for (Element x = 0; x < p.size(); ++x) table[x] = x;
  return PosetMap(p, p, std::move(table));
}

PosetMap PosetMap::constant(const Poset& source, const Poset& target, Element value) {
  return PosetMap(source, target, std::vector<Element>(source.size(), value));
}

PosetMap PosetMap::after(const PosetMap& inner) const {
  if (!(inner.target() == source_)) throw PreconditionError("maps are not composable");
  std::vector<Element> table(inner.source().size());
  for (Element x = 0; x < table.size(); ++x) table[x] = table_[inner(x)];
  return PosetMap(inner.source(), target_, std::move(table));
}

MapReport map_predicates(const PosetMap& f) {
  MapReport report;
  const Poset& src = f.source();
  const Poset& dst = f.target();
  for (Element x = 0; x < src.size() && report.monotone; ++x)
    for (Element y = 0; y < src.size(); ++y)
      if (src.leq(x, y) && !dst.leq(f(x), f(y))) {
        report.monotone = false;
        report.monotonicity_violation = std::make_pair(x, y);
        break;
      }
  std::vector<bool> hit(dst.size(), false);
  for (Element v : f.table()) hit[v] = true;
  for (Element y = 0; y < dst.size(); ++y)
    if (!hit[y]) {
      report.surjective = false;
      report.missed_value = y;
      break;
    }
  report.proper = report.monotone;
  return report;
}

bool is_monotone(const PosetMap& f) {
  const Poset& src = f.source();
  const Poset& dst = f.target();
  for (Element x = 0; x < src.size(); ++x)
    for (Element y = 0; y < src.size(); ++y)
      if (src.leq(x, y) && !dst.leq(f(x), f(y))) return false;
  return true;
}

bool is_tree(const Poset& p) {
  if (!p.is_pointed()) throw PreconditionError("is_tree needs a pointed poset");
  const std::size_t n = p.size();
  for (Element x = 0; x < n; ++x)
    for (Element a = 0; a < n; ++a)
      for (Element b = a + 1; b < n; ++b)
        if (p.leq(a, x) && p.leq(b, x) && !p.comparable(a, b)) return false;
  return true;
}

// ---------------------------------------------------------------------------

Poset parse_poset(std::string_view text) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> relations;
  std::size_t line_no = 0;
  for (const std::string& raw : split_lines(text)) {
    ++line_no;
    std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw ParseError("line " + std::to_string(line_no) + ": expected 'elements:' or 'order:'");
    std::string_view key = trim(line.substr(0, colon));
    std::string_view body = line.substr(colon + 1);
    if (key == "elements") {
      for (auto& id : split_words(body)) names.push_back(std::move(id));
    } else if (key == "order") {
      for (std::string_view item : split(body, ';')) {
        item = trim(item);
        if (item.empty()) continue;
        auto parts = split(item, '<');
        if (parts.size() < 2)
          throw ParseError("line " + std::to_string(line_no) + ": expected 'a < b'");
        for (std::size_t k = 0; k + 1 < parts.size(); ++k) {
          std::string lo(trim(parts[k]));
          std::string hi(trim(parts[k + 1]));
          if (lo.empty() || hi.empty())
            throw ParseError("line " + std::to_string(line_no) + ": empty identifier in relation");
          relations.emplace_back(std::move(lo), std::move(hi));
        }
      }
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) +
                       "'");
    }
  }
  std::unordered_map<std::string, Element> index;
  for (Element i = 0; i < names.size(); ++i)
    if (!index.emplace(names[i], i).second) throw ParseError("duplicate element '" + names[i] + "'");
  std::vector<std::pair<Element, Element>> less;
  for (auto& [lo, hi] : relations) {
    auto a = index.find(lo);
    auto b = index.find(hi);
    if (a == index.end()) throw ParseError("undeclared element '" + lo + "' in order");
    if (b == index.end()) throw ParseError("undeclared element '" + hi + "' in order");
    less.emplace_back(a->second, b->second);
  }
  return Poset::from_relations(std::move(names), less);
}

Poset load_poset(const std::string& path) { return parse_poset(read_file(path)); }

std::string to_text(const Poset& p) {
  std::ostringstream out;
  out << "elements:";
  for (const auto& id : p.names()) out << ' ' << id;
  out << '\n';
  auto edges = covers(p);
  if (!edges.empty()) {
    out << "order:";
    bool first = true;
    for (auto [a, b] : edges) {
      out << (first ? " " : "; ") << p.name(a) << " < " << p.name(b);
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

std::string to_dot(const Poset& p) {
  std::ostringstream out;
  out << "digraph poset {\n  rankdir=BT;\n";
  for (const auto& id : p.names()) out << "  \"" << id << "\";\n";
  for (auto [a, b] : covers(p)) out << "  \"" << p.name(a) << "\" -> \"" << p.name(b) << "\";\n";
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------------------

namespace {

// Rows of the order as bitmasks: row[x] has bit y set iff x <= y.
void extend_posets(std::vector<std::uint8_t>& row, std::size_t current, std::size_t target,
                   const std::function<void(const Poset&)>& visit) {
  if (current == target) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < target; ++i) names.push_back(std::to_string(i));
    std::vector<bool> table(target * target);
    for (std::size_t x = 0; x < target; ++x)
      for (std::size_t y = 0; y < target; ++y) table[x * target + y] = (row[x] >> y) & 1;
    visit(Poset::from_table(std::move(names), std::move(table)));
    return;
  }
  const std::size_t n = current;
  const unsigned limit = 1u << n;
  // New element `n` gets a down-set D of strict predecessors and an up-set U
  // of strict successors; transitivity demands d <= u for all d in D, u in U.
  for (unsigned down = 0; down < limit; ++down) {
    bool down_closed = true;
    for (std::size_t d = 0; d < n && down_closed; ++d)
      if (down >> d & 1)
        for (std::size_t e = 0; e < n; ++e)
          if ((row[e] >> d & 1) && !(down >> e & 1)) {
            down_closed = false;
            break;
          }
    if (!down_closed) continue;
    for (unsigned up = 0; up < limit; ++up) {
      if (up & down) continue;
      bool ok = true;
      for (std::size_t u = 0; u < n && ok; ++u)
        if (up >> u & 1) {
          if ((row[u] & ~up) & (limit - 1)) ok = false;
          for (std::size_t d = 0; d < n && ok; ++d)
            if ((down >> d & 1) && !(row[d] >> u & 1)) ok = false;
        }
      if (!ok) continue;
      for (std::size_t d = 0; d < n; ++d)
        if (down >> d & 1) row[d] |= std::uint8_t(1u << n);
      row[n] = std::uint8_t(up | (1u << n));
      extend_posets(row, current + 1, target, visit);
      for (std::size_t d = 0; d < n; ++d) row[d] &= std::uint8_t(~(1u << n));
      row[n] = 0;
    }
  }
}

}  // namespace

void for_each_poset(std::size_t n, const std::function<void(const Poset&)>& visit) {
  if (n > kMaxEnumeratedPosetSize)
    throw PreconditionError("poset enumeration is limited to " +
                            std::to_string(kMaxEnumeratedPosetSize) + " elements");
  std::vector<std::uint8_t> row(n, 0);
  extend_posets(row, 0, n, visit);
}

std::vector<Poset> enumerate_posets(std::size_t n) {
  std::vector<Poset> out;
  for_each_poset(n, [&](const Poset& p) { out.push_back(p); });
  return out;
}

}  // namespace domlab
