#include "domlab/lazy.hpp"

#include <algorithm>
#include <charconv>

#include "domlab/error.hpp"
#include "domlab/text.hpp"

namespace domlab {

std::string to_string(LazyKind kind) {
  switch (kind) {
    case LazyKind::kN2: return "n2";
    case LazyKind::kT: return "t";
    case LazyKind::kNomegaSum: return "nomega-sum";
  }
  return "?";
}

LazyKind parse_lazy_kind(std::string_view text) {
  if (text == "n2") return LazyKind::kN2;
  if (text == "t") return LazyKind::kT;
  if (text == "nomega-sum") return LazyKind::kNomegaSum;
  throw ParseError("unknown lazy poset '" + std::string(text) + "' (expected n2, t or nomega-sum)");
}

std::string to_string(const Code& c) {
  switch (c.tag) {
    case Code::Tag::kBottom: return "bot";
    case Code::Tag::kTop: return "top";
    case Code::Tag::kOmega: return "omega";
    case Code::Tag::kOmegaSide: return "omega" + std::to_string(c.branch);
    case Code::Tag::kNode: return "n:" + std::to_string(c.branch) + ":" + std::to_string(c.level);
  }
  return "?";
}

namespace {

std::size_t parse_natural(std::string_view text, std::string_view whole) {
  std::size_t value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size())
    throw ParseError("malformed code '" + std::string(whole) + "'");
  return value;
}

unsigned parse_bit(std::string_view text, std::string_view whole) {
  if (text != "0" && text != "1") throw ParseError("malformed code '" + std::string(whole) + "'");
  return text == "1" ? 1 : 0;
}

std::size_t level_of(const Code& c) { return c.is_node() ? c.level : 0; }

}  // namespace

Code parse_code(std::string_view text) {
  text = trim(text);
  if (text == "bot") return Code::bottom();
  if (text == "top") return Code::top();
  if (text == "omega") return Code::omega();
  if (text == "omega0" || text == "omega1") return Code::omega_side(parse_bit(text.substr(5), text));
  if (text.starts_with("n:")) {
    auto rest = text.substr(2);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) throw ParseError("malformed code '" + std::string(text) + "'");
    return Code::node(parse_bit(rest.substr(0, colon), text), parse_natural(rest.substr(colon + 1), text));
  }
  throw ParseError("malformed code '" + std::string(text) + "'");
}

void check_code(LazyKind kind, const Code& c) {
  bool ok = false;
  switch (c.tag) {
    case Code::Tag::kBottom: ok = true; break;
    case Code::Tag::kNode: ok = c.branch <= 1; break;
    case Code::Tag::kOmega: ok = kind == LazyKind::kN2; break;
    case Code::Tag::kOmegaSide: ok = kind == LazyKind::kNomegaSum && c.branch <= 1; break;
    case Code::Tag::kTop: ok = kind == LazyKind::kT; break;
  }
  if (!ok) throw PreconditionError("code '" + to_string(c) + "' is not an element of " + to_string(kind));
}

bool lazy_leq(LazyKind kind, const Code& x, const Code& y) {
  check_code(kind, x);
  check_code(kind, y);
  using Tag = Code::Tag;
  if (x.tag == Tag::kBottom) return true;
  if (y.tag == Tag::kBottom) return false;
  switch (kind) {
    case LazyKind::kN2:
      if (y.tag == Tag::kOmega) return true;
      if (x.tag == Tag::kOmega) return false;
      return x.branch == y.branch && x.level <= y.level;
    case LazyKind::kT:
      if (y.tag == Tag::kTop) return true;
      if (x.tag == Tag::kTop) return false;
      return x.level < y.level || (x.level == y.level && x.branch == y.branch);
    case LazyKind::kNomegaSum:
      if (x.branch != y.branch) return false;
      if (y.tag == Tag::kOmegaSide) return true;
      if (x.tag == Tag::kOmegaSide) return false;
      return x.level <= y.level;
  }
  return false;
}

std::vector<Code> codes_up_to(LazyKind kind, std::size_t max_level) {
  std::vector<Code> out{Code::bottom()};
  for (std::size_t level = 0; level <= max_level; ++level)
    for (unsigned branch = 0; branch < 2; ++branch) out.push_back(Code::node(branch, level));
  switch (kind) {
    case LazyKind::kN2: out.push_back(Code::omega()); break;
    case LazyKind::kT: out.push_back(Code::top()); break;
    case LazyKind::kNomegaSum:
      out.push_back(Code::omega_side(0));
      out.push_back(Code::omega_side(1));
      break;
  }
  return out;
}

bool lazy_in_up(LazyKind kind, const LazyCompact& e, const Code& y) {
  return std::any_of(e.begin(), e.end(), [&](const Code& g) { return lazy_leq(kind, g, y); });
}

bool lazy_smyth_leq(LazyKind kind, const LazyCompact& a, const LazyCompact& b) {
  return std::all_of(b.begin(), b.end(), [&](const Code& y) { return lazy_in_up(kind, a, y); });
}

std::string to_string(const LazyCompact& e) {
  std::string out = "{";
  for (std::size_t k = 0; k < e.size(); ++k) out += (k ? ", " : "") + to_string(e[k]);
  return out + "}";
}

// ---------------------------------------------------------------------------

LazyCompact LazyQuasiDeflation::operator()(const Code& x) const {
  check_code(kind_, x);
  return rule_(x);
}

LazyQuasiDeflation n2_family(std::size_t i, std::size_t j) {
  return LazyQuasiDeflation(LazyKind::kN2, {i, j}, [i, j](const Code& x) -> LazyCompact {
    switch (x.tag) {
      case Code::Tag::kBottom: return {Code::bottom()};
      case Code::Tag::kOmega: return {Code::node(0, i), Code::node(1, j)};
      default:
        if (x.branch == 0) return {Code::node(0, std::min(x.level, i)), Code::node(1, j)};
        return {Code::node(0, i), Code::node(1, std::min(x.level, j))};
    }
  });
}

LazyQuasiDeflation t_family(std::size_t i) {
  return LazyQuasiDeflation(LazyKind::kT, {i, 0}, [i](const Code& x) -> LazyCompact {
    if (x.tag == Code::Tag::kBottom) return {Code::bottom()};
    if (x.is_node() && x.level < i) return {x};
    return {Code::node(0, i), Code::node(1, i)};
  });
}

LazyQuasiDeflation family_member(LazyKind kind, FamilyIndex index) {
  switch (kind) {
    case LazyKind::kN2: return n2_family(index.i, index.j);
    case LazyKind::kT: return t_family(index.i);
    case LazyKind::kNomegaSum: break;
  }
  throw PreconditionError("no quasi-deflation family for " + to_string(kind));
}

FamilyIndex family_witness(LazyKind kind, const Code& x, const Code& y) {
  if (lazy_leq(kind, x, y))
    throw PreconditionError(to_string(x) + " <= " + to_string(y) + ": no excluding index exists");
  const std::size_t next = std::max(level_of(x), level_of(y)) + 1;
  FamilyIndex index{next, kind == LazyKind::kT ? 0 : next};
  if (lazy_in_up(kind, family_member(kind, index)(x), y))
    throw Error("family witness failed to exclude " + to_string(y));
  return index;
}

std::optional<LazyLawViolation> check_lazy_quasi_deflation(const LazyQuasiDeflation& phi,
                                                           const std::vector<Code>& codes) {
  const LazyKind kind = phi.kind();
  std::vector<LazyCompact> images;
  images.reserve(codes.size());
  for (const Code& x : codes) {
    images.push_back(phi(x));
    for (const Code& g : images.back()) check_code(kind, g);
    if (!lazy_in_up(kind, images.back(), x))
      return LazyLawViolation{x, std::nullopt, to_string(x) + " ∉ ↑" + to_string(images.back())};
  }
  for (std::size_t a = 0; a < codes.size(); ++a)
    for (std::size_t b = 0; b < codes.size(); ++b)
      if (lazy_leq(kind, codes[a], codes[b]) && !lazy_smyth_leq(kind, images[a], images[b]))
        return LazyLawViolation{codes[a], codes[b],
                                to_string(codes[a]) + " <= " + to_string(codes[b]) + " but ↑" +
                                    to_string(images[a]) + " ⊉ ↑" + to_string(images[b])};
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Element Truncation::element_of(const Code& c) const {
  auto it = std::find(codes.begin(), codes.end(), c);
  if (it == codes.end())
    throw PreconditionError("code '" + to_string(c) + "' is not in the depth-" + std::to_string(depth) +
                            " truncation");
  return static_cast<Element>(it - codes.begin());
}

std::optional<Element> Truncation::project(const Code& c) const {
  check_code(kind, c);
  if (kind == LazyKind::kT) return std::nullopt;
  Code target = c;
  if (c.is_node()) target.level = std::min(c.level, depth);
  return element_of(target);
}

Truncation truncate(LazyKind kind, std::size_t k) {
  if (k == 0) throw PreconditionError("truncation depth must be at least 1");
  std::vector<Code> codes = codes_up_to(kind, kind == LazyKind::kT ? k - 1 : k);
  std::vector<std::string> names;
  std::vector<bool> table(codes.size() * codes.size());
  for (const Code& c : codes) names.push_back(to_string(c));
  for (std::size_t a = 0; a < codes.size(); ++a)
    for (std::size_t b = 0; b < codes.size(); ++b)
      table[a * codes.size() + b] = lazy_leq(kind, codes[a], codes[b]);
  return Truncation{kind, k, Poset::from_table(std::move(names), std::move(table)), std::move(codes)};
}

namespace {

void require_projection_kind(LazyKind kind, std::size_t lower, std::size_t upper) {
  if (kind == LazyKind::kT) throw PreconditionError("T truncations carry no projection");
  if (lower > upper) throw PreconditionError("embedding needs lower <= upper depth");
}

}  // namespace

PosetMap truncation_embedding(LazyKind kind, std::size_t lower, std::size_t upper) {
  require_projection_kind(kind, lower, upper);
  Truncation small = truncate(kind, lower);
  Truncation big = truncate(kind, upper);
  std::vector<Element> table;
  for (const Code& c : small.codes) table.push_back(big.element_of(c));
  return PosetMap(small.poset, big.poset, std::move(table));
}

PosetMap truncation_projection(LazyKind kind, std::size_t upper, std::size_t lower) {
  require_projection_kind(kind, lower, upper);
  Truncation small = truncate(kind, lower);
  Truncation big = truncate(kind, upper);
  std::vector<Element> table;
  for (const Code& c : big.codes) table.push_back(*small.project(c));
  return PosetMap(big.poset, small.poset, std::move(table));
}

bool projection_pair_laws(const PosetMap& embedding, const PosetMap& projection) {
  if (!is_monotone(embedding) || !is_monotone(projection)) return false;
  if (!(projection.after(embedding) == PosetMap::identity(embedding.source()))) return false;
  const Poset& big = embedding.target();
  for (Element x = 0; x < big.size(); ++x)
    if (!big.leq(embedding(projection(x)), x)) return false;
  return true;
}

Code sum_to_n2(const Code& c) {
  check_code(LazyKind::kNomegaSum, c);
  return c.tag == Code::Tag::kOmegaSide ? Code::omega() : c;
}

PosetMap sum_to_n2_map(std::size_t k) {
  Truncation sum = truncate(LazyKind::kNomegaSum, k);
  Truncation n2 = truncate(LazyKind::kN2, k);
  std::vector<Element> table;
  for (const Code& c : sum.codes) table.push_back(n2.element_of(sum_to_n2(c)));
  return PosetMap(sum.poset, n2.poset, std::move(table));
}

PosetMap hat_f(const Truncation& t, const std::vector<bool>& bits) {
  if (t.kind != LazyKind::kT) throw PreconditionError("hat_f lives on truncations of T");
  if (bits.size() != t.depth)
    throw PreconditionError("hat_f needs " + std::to_string(t.depth) + " bits, got " +
                            std::to_string(bits.size()));
  std::vector<Element> table;
  for (Code c : t.codes) {
    if (c.is_node() && bits[c.level]) c.branch = 1 - c.branch;
    table.push_back(t.element_of(c));
  }
  PosetMap out(t.poset, t.poset, std::move(table));
  if (!is_monotone(out)) throw Error("hat_f is not monotone");
  return out;
}

bool hat_f_rigidity_check(const PosetMap& g, const std::vector<bool>& bits) {
  Truncation t = truncate(LazyKind::kT, bits.size());
  if (!(g.source() == t.poset) || !(g.target() == t.poset))
    throw PreconditionError("g must be an endomap of the depth-" + std::to_string(bits.size()) +
                            " truncation of T");
  PosetMap f = hat_f(t, bits);
  const Element bottom = t.element_of(Code::bottom());
  bool below = true;
  for (Element x = 0; x < t.poset.size(); ++x) below = below && t.poset.leq(g(x), f(x));
  const bool premise = below && g(t.element_of(Code::node(0, 0))) != bottom &&
                       g(t.element_of(Code::node(1, 0))) != bottom;
  return !premise || g == f;
}

}  // namespace domlab
