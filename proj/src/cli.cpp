#include "domlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

#include "domlab/error.hpp"
#include "domlab/lazy.hpp"
#include "domlab/poset.hpp"
#include "domlab/qrb.hpp"
#include "domlab/smyth.hpp"
#include "domlab/text.hpp"
#include "domlab/treeval.hpp"
#include "domlab/valuation.hpp"

namespace domlab::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Settings {
  std::string format = "text";
  std::size_t max_elements = 64;
  std::size_t cap = 1000000;
  bool json() const { return format == "json"; }
};

// Commands write either text lines or one JSON document.
class Output {
 public:
  Output(std::ostream& out, bool json) : out_(out), json_(json) {}
  bool json() const { return json_; }
  std::ostream& text() { return out_; }
  Json& doc() { return doc_; }
  void flush() {
    if (json_) out_ << doc_.dump(2) << '\n';
  }

 private:
  std::ostream& out_;
  bool json_;
  Json doc_ = Json::object();
};

Poset load(const std::string& path, const Settings& s) {
  Poset p = load_poset(path);
  if (p.size() > s.max_elements)
    throw PreconditionError(path + " has " + std::to_string(p.size()) + " elements; --max-elements is " +
                            std::to_string(s.max_elements));
  return p;
}

std::string subset_text(const Poset& p, const Subset& u) {
  std::string out = "{";
  for (Element x : u.elements()) out += (out.size() > 1 ? ", " : "") + p.name(x);
  return out + "}";
}

Json names_of(const Poset& p, const std::vector<Element>& xs) {
  Json out = Json::array();
  for (Element x : xs) out.push_back(p.name(x));
  return out;
}

Json covers_json(const Poset& p) {
  Json out = Json::array();
  for (auto [a, b] : covers(p)) out.push_back({p.name(a), p.name(b)});
  return out;
}

Json valuation_json(const Valuation& v) {
  Json out = Json::object();
  for (Element x = 0; x < v.weights().size(); ++x)
    if (v.weight(x) != 0) out[v.poset().name(x)] = to_string(v.weight(x));
  return out;
}

void emit_valuations(Output& o, const std::string& key, const std::vector<Valuation>& vs) {
  if (o.json()) {
    Json list = Json::array();
    for (const auto& v : vs) list.push_back(valuation_json(v));
    o.doc()[key] = list;
    o.doc()["count"] = vs.size();
    return;
  }
  o.text() << "count: " << vs.size() << '\n';
  for (const auto& v : vs) o.text() << to_string(v) << '\n';
}

// ---------------------------------------------------------------------------

int check_poset(Output& o, const Poset& p) {
  auto bottom = p.bottom();
  auto top = p.top();
  bool tree = bottom && is_tree(p);
  std::size_t opens = upper_sets(p).size();
  if (o.json()) {
    o.doc()["elements"] = p.names();
    o.doc()["covers"] = covers_json(p);
    o.doc()["bottom"] = bottom ? Json(p.name(*bottom)) : Json(nullptr);
    o.doc()["top"] = top ? Json(p.name(*top)) : Json(nullptr);
    o.doc()["tree"] = tree;
    o.doc()["upper_sets"] = opens;
    return 0;
  }
  o.text() << "elements: " << p.size() << '\n'
           << "covers: " << covers(p).size() << '\n'
           << "bottom: " << (bottom ? p.name(*bottom) : "none") << '\n'
           << "top: " << (top ? p.name(*top) : "none") << '\n'
           << "tree: " << (tree ? "yes" : "no") << '\n'
           << "upper sets: " << opens << '\n';
  return 0;
}

int hasse(Output& o, const Poset& p, bool dot) {
  if (dot) {
    o.text() << to_dot(p);
    return 0;
  }
  if (o.json()) {
    o.doc()["elements"] = p.names();
    o.doc()["covers"] = covers_json(p);
    return 0;
  }
  for (auto [a, b] : covers(p)) o.text() << p.name(a) << " < " << p.name(b) << '\n';
  return 0;
}

int list_upper_sets(Output& o, const Poset& p) {
  auto all = upper_sets(p);
  if (o.json()) {
    Json list = Json::array();
    for (const auto& u : all) list.push_back(names_of(p, u.elements()));
    o.doc()["upper_sets"] = list;
    o.doc()["count"] = all.size();
    return 0;
  }
  o.text() << "count: " << all.size() << '\n';
  for (const auto& u : all) o.text() << subset_text(p, u) << '\n';
  return 0;
}

int pathspace(Output& o, const Poset& y, bool dot) {
  PathSpace pi = path_space(y);
  if (dot) {
    o.text() << to_dot(pi.tree);
    return 0;
  }
  if (o.json()) {
    Json paths = Json::array();
    for (Element t = 0; t < pi.tree.size(); ++t)
      paths.push_back({{"path", pi.tree.name(t)}, {"last", y.name(pi.last(t))}});
    o.doc()["paths"] = paths;
    o.doc()["covers"] = covers_json(pi.tree);
    return 0;
  }
  o.text() << "paths: " << pi.tree.size() << '\n';
  for (Element t = 0; t < pi.tree.size(); ++t)
    o.text() << pi.tree.name(t) << " -> " << y.name(pi.last(t)) << '\n';
  return 0;
}

int fin(Output& o, const Poset& p, bool dot, const Settings& s) {
  FinPoset f = fin_poset(p, s.cap);
  if (dot) {
    o.text() << to_dot(f.poset);
    return 0;
  }
  if (o.json()) {
    Json list = Json::array();
    for (const auto& e : f.members) list.push_back(names_of(p, e.members));
    o.doc()["antichains"] = list;
    o.doc()["covers"] = covers_json(f.poset);
    return 0;
  }
  o.text() << "antichains: " << f.members.size() << '\n';
  for (const auto& e : f.members) o.text() << to_string(p, e) << '\n';
  o.text() << "covers:\n";
  for (auto [a, b] : covers(f.poset)) o.text() << f.poset.name(a) << " < " << f.poset.name(b) << '\n';
  return 0;
}

int monad_laws(Output& o, const Poset& p, const std::string& h_path, const std::string& g_path,
               const Settings& s) {
  std::optional<LawViolation> violation;
  std::size_t checked = 0;
  if (!h_path.empty() || !g_path.empty()) {
    if (h_path.empty() || g_path.empty()) throw PreconditionError("--h-map and --g-map go together");
    FinMap h = parse_finmap(read_file(h_path), p, p);
    FinMap g = parse_finmap(read_file(g_path), p, p);
    if (!is_monotone(h) || !is_monotone(g)) throw PreconditionError("--h-map and --g-map must be monotone");
    violation = check_monad_laws(h, g);
    checked = 1;
  } else {
    std::vector<FinMap> maps;
    for_each_monotone_finmap(p, p, [&](const FinMap& h) {
      if (maps.size() >= s.cap) throw CapExceeded("more than " + std::to_string(s.cap) + " monotone maps");
      maps.push_back(h);
    });
    if (maps.size() * maps.size() > s.cap)
      throw CapExceeded(std::to_string(maps.size() * maps.size()) + " map pairs exceed --cap " +
                        std::to_string(s.cap));
    for (const auto& h : maps)
      for (const auto& g : maps) {
        ++checked;
        violation = check_monad_laws(h, g);
        if (violation) break;
      }
  }
  if (o.json()) {
    o.doc()["pairs_checked"] = checked;
    o.doc()["holds"] = !violation;
    o.doc()["violation"] =
        violation ? Json{{"law", violation->law}, {"detail", violation->detail}} : Json(nullptr);
  } else {
    o.text() << "pairs checked: " << checked << '\n';
    if (violation)
      o.text() << "violation: " << violation->law << ": " << violation->detail << '\n';
    else
      o.text() << "laws: hold\n";
  }
  return violation ? 1 : 0;
}

int quasi_retraction(Output& o, const Poset& x, const Poset& y, const std::string& map_path,
                     const std::string& qs_path) {
  PosetMap r = parse_map(read_file(map_path), x, y);
  FinMap qs = qs_path.empty() ? canonical_quasi_section(r) : parse_finmap(read_file(qs_path), y, x);
  auto report = check_quasi_retraction(r, qs);
  const bool ok = report.retraction_law && report.projection_law;
  if (o.json()) {
    o.doc()["retraction_law"] = report.retraction_law;
    o.doc()["projection_law"] = report.projection_law;
    o.doc()["canonical"] = report.canonical;
    if (report.canonical_section) {
      Json table = Json::object();
      for (Element e = 0; e < y.size(); ++e)
        table[y.name(e)] = names_of(x, (*report.canonical_section)(e).members);
      o.doc()["canonical_section"] = table;
    }
    o.doc()["witness"] = report.witness ? Json{{"law", report.witness->law},
                                                {"element", report.witness->law == "retraction_law"
                                                                ? y.name(report.witness->element)
                                                                : x.name(report.witness->element)},
                                                {"explanation", report.witness->explanation}}
                                         : Json(nullptr);
    return ok ? 0 : 1;
  }
  o.text() << "retraction_law: " << (report.retraction_law ? "true" : "false") << '\n'
           << "projection_law: " << (report.projection_law ? "true" : "false") << '\n'
           << "canonical: " << (report.canonical ? "true" : "false") << '\n';
  if (report.canonical_section) o.text() << "canonical_section:\n" << to_text(*report.canonical_section);
  if (report.witness)
    o.text() << "witness: " << report.witness->law << ": " << report.witness->explanation << '\n';
  else
    o.text() << "witness: none\n";
  return ok ? 0 : 1;
}

FinCompact parse_compact(const Poset& p, std::string text) {
  std::string_view body = trim(text);
  if (body.size() < 2 || body.front() != '{' || body.back() != '}')
    throw ParseError("expected a compact like '{a, b}', got '" + text + "'");
  std::vector<Element> members;
  for (auto item : split(body.substr(1, body.size() - 2), ',')) {
    std::string id(trim(item));
    if (id.empty()) continue;
    auto e = p.find(id);
    if (!e) throw ParseError("unknown element '" + id + "'");
    members.push_back(*e);
  }
  if (members.empty()) throw ParseError("empty compact");
  return antichain_normalize(p, members);
}

Element element(const Poset& p, const std::string& id) {
  auto e = p.find(id);
  if (!e) throw ParseError("unknown element '" + id + "'");
  return *e;
}

int koenig(Output& o, const Poset& p, const std::string& y, const std::vector<std::string>& stage_texts) {
  std::vector<FinCompact> stages;
  for (const auto& t : stage_texts) stages.push_back(parse_compact(p, t));
  auto chain = koenig_chain(p, stages, element(p, y));
  if (o.json()) {
    o.doc()["chain"] = names_of(p, chain);
    return 0;
  }
  for (std::size_t i = 0; i < chain.size(); ++i) o.text() << (i ? " " : "") << p.name(chain[i]);
  o.text() << '\n';
  return 0;
}

int val_order(Output& o, const Poset& p, const std::string& a, const std::string& b) {
  Valuation nu = parse_valuation(a, p);
  Valuation mu = parse_valuation(b, p);
  auto cert = stochastic_order_certificate(nu, mu);
  if (o.json()) {
    o.doc()["leq"] = cert.leq;
    if (cert.leq) {
      Json plan = Json::array();
      for (const auto& m : cert.plan)
        plan.push_back({{"from", p.name(m.from)}, {"to", p.name(m.to)}, {"mass", to_string(m.mass)}});
      o.doc()["plan"] = plan;
    } else {
      o.doc()["violating"] = names_of(p, cert.violating->elements());
    }
    return cert.leq ? 0 : 1;
  }
  o.text() << "leq: " << (cert.leq ? "true" : "false") << '\n';
  if (cert.leq) {
    for (const auto& m : cert.plan)
      o.text() << "move " << p.name(m.from) << " -> " << p.name(m.to) << ": " << to_string(m.mass) << '\n';
  } else {
    o.text() << "violating: " << subset_text(p, *cert.violating) << " (" << to_string(nu.mass(*cert.violating))
             << " > " << to_string(mu.mass(*cert.violating)) << ")\n";
  }
  return cert.leq ? 0 : 1;
}

int val_waybelow(Output& o, const Poset& p, const std::string& a, const std::string& b) {
  bool wb = way_below(parse_valuation(a, p), parse_valuation(b, p));
  if (o.json())
    o.doc()["way_below"] = wb;
  else
    o.text() << "way_below: " << (wb ? "true" : "false") << '\n';
  return wb ? 0 : 1;
}

int val_push(Output& o, const Poset& x, const Poset& y, const std::string& map_path, const std::string& v,
             bool preimage) {
  PosetMap r = parse_map(read_file(map_path), x, y);
  Valuation out = preimage ? pushforward_preimage(r, parse_valuation(v, y)) : pushforward(r, parse_valuation(v, x));
  if (o.json())
    o.doc()["valuation"] = valuation_json(out);
  else
    o.text() << to_string(out) << '\n';
  return 0;
}

int val_grid(Output& o, const Poset& p, std::size_t n, bool dot, const Settings& s) {
  if (dot) {
    o.text() << to_dot(grid_poset(p, {n}, s.cap));
    return 0;
  }
  emit_valuations(o, "grid", grid(p, {n}, s.cap));
  return 0;
}

std::string modularity_text(const Poset& p, const ModularityWitness& w) {
  return "U = " + subset_text(p, w.u) + ", V = " + subset_text(p, w.v) + ": f(U) = " + to_string(w.at_u) +
         ", f(V) = " + to_string(w.at_v) + ", f(U ∪ V) = " + to_string(w.at_union) +
         ", f(U ∩ V) = " + to_string(w.at_intersection);
}

int demo_failed_deflations(Output& o, const Poset& p, std::size_t n, const std::string& given,
                           const Settings& s) {
  if (!p.is_pointed()) throw PreconditionError("demo-failed-deflations needs a pointed poset");
  std::optional<Valuation> fixed;
  if (!given.empty()) fixed = parse_valuation(given, p);

  // (a): the given valuation, else the first grid valuation with a witness.
  std::optional<Valuation> a_nu;
  std::optional<ModularityWitness> a_witness;
  if (fixed) {
    a_nu = fixed;
    a_witness = failed_deflation_a(*fixed, {n}).witness;
  } else {
    for (const auto& v : grid(p, {n}, s.cap)) {
      auto result = failed_deflation_a(v, {n});
      if (result.witness) {
        a_nu = v;
        a_witness = result.witness;
        break;
      }
    }
  }
  // (b): pairs of the same grid.
  auto b_witness = find_monotonicity_witness_b(p, {n}, {n});
  // (c): the given valuation, else the first valuation on the 2N grid whose
  // maximal grid-N valuations below it are not unique.
  std::optional<LargestBelowReport> c_report;
  std::optional<Valuation> c_nu;
  if (fixed) {
    c_nu = fixed;
    c_report = failed_deflation_c(*fixed, {n});
  } else {
    for (const auto& v : grid(p, {2 * n}, s.cap)) {
      auto report = failed_deflation_c(v, {n});
      if (!report.unique()) {
        c_nu = v;
        c_report = report;
        break;
      }
    }
  }
  const bool c_found = c_report && !c_report->unique();
  const bool found = a_witness || b_witness || c_found;

  if (o.json()) {
    Json a = Json::object();
    a["valuation"] = a_nu ? valuation_json(*a_nu) : Json(nullptr);
    a["witness"] = a_witness ? Json{{"u", names_of(p, a_witness->u.elements())},
                                    {"v", names_of(p, a_witness->v.elements())},
                                    {"f_u", to_string(a_witness->at_u)},
                                    {"f_v", to_string(a_witness->at_v)},
                                    {"f_union", to_string(a_witness->at_union)},
                                    {"f_intersection", to_string(a_witness->at_intersection)}}
                             : Json(nullptr);
    Json b = Json::object();
    b["witness"] = b_witness ? Json{{"lower", valuation_json(b_witness->lower)},
                                    {"upper", valuation_json(b_witness->upper)},
                                    {"image_lower", valuation_json(b_witness->image_lower)},
                                    {"image_upper", valuation_json(b_witness->image_upper)}}
                             : Json(nullptr);
    Json c = Json::object();
    c["valuation"] = c_nu ? valuation_json(*c_nu) : Json(nullptr);
    Json candidates = Json::array();
    if (c_report)
      for (const auto& v : c_report->candidates) candidates.push_back(valuation_json(v));
    c["candidates"] = candidates;
    c["cardinality"] = c_report ? c_report->cardinality : 0;
    o.doc()["grid"] = n;
    o.doc()["a"] = a;
    o.doc()["b"] = b;
    o.doc()["c"] = c;
    o.doc()["witness_found"] = found;
    return found ? 1 : 0;
  }
  auto& t = o.text();
  t << "grid: 1/" << n << '\n';
  t << "attempt a (round every open down):\n";
  if (a_witness)
    t << "  valuation: " << to_string(*a_nu) << "\n  modularity witness: " << modularity_text(p, *a_witness) << '\n';
  else
    t << "  no modularity witness\n";
  t << "attempt b (round every weight down, rest on bottom):\n";
  if (b_witness)
    t << "  monotonicity witness: " << to_string(b_witness->lower) << " <= " << to_string(b_witness->upper)
      << "\n  images: " << to_string(b_witness->image_lower) << " and " << to_string(b_witness->image_upper)
      << " are not ordered\n";
  else
    t << "  no monotonicity witness\n";
  t << "attempt c (largest grid valuation below):\n";
  if (c_report) {
    t << "  valuation: " << to_string(*c_nu) << "\n  maximal grid valuations below: " << c_report->cardinality << '\n';
    for (const auto& v : c_report->candidates) t << "    " << to_string(v) << '\n';
  } else {
    t << "  every valuation has a unique largest grid valuation below it\n";
  }
  return found ? 1 : 0;
}

FamilyIndex parse_index(LazyKind kind, std::size_t i, std::optional<std::size_t> j) {
  if (kind == LazyKind::kN2 && !j) throw PreconditionError("n2 family members need --index2");
  if (kind != LazyKind::kN2 && j) throw PreconditionError(to_string(kind) + " family members take one index");
  return {i, j.value_or(0)};
}

int lazy_kind(Output& o, LazyKind kind, std::size_t depth, bool dot) {
  Truncation t = truncate(kind, depth);
  if (dot) {
    o.text() << to_dot(t.poset);
    return 0;
  }
  if (o.json()) {
    o.doc()["kind"] = to_string(kind);
    o.doc()["depth"] = depth;
    o.doc()["elements"] = t.poset.names();
    o.doc()["covers"] = covers_json(t.poset);
    return 0;
  }
  o.text() << "kind: " << to_string(kind) << "\ndepth: " << depth << '\n' << to_text(t.poset);
  return 0;
}

int lazy_family(Output& o, LazyKind kind, FamilyIndex index, const std::vector<std::string>& codes) {
  auto phi = family_member(kind, index);
  Json table = Json::object();
  for (const auto& text : codes) {
    Code x = parse_code(text);
    auto image = phi(x);
    if (o.json()) {
      Json list = Json::array();
      for (const auto& c : image) list.push_back(to_string(c));
      table[to_string(x)] = list;
    } else {
      o.text() << to_string(x) << " -> " << to_string(image) << '\n';
    }
  }
  if (o.json()) o.doc()["images"] = table;
  return 0;
}

int lazy_witness(Output& o, LazyKind kind, const std::string& xs, const std::string& ys) {
  Code x = parse_code(xs);
  Code y = parse_code(ys);
  if (lazy_leq(kind, x, y)) {
    if (o.json())
      o.doc()["witness"] = nullptr;
    else
      o.text() << to_string(x) << " <= " << to_string(y) << ": no excluding index\n";
    return 1;
  }
  FamilyIndex index = family_witness(kind, x, y);
  auto image = family_member(kind, index)(x);
  if (o.json()) {
    o.doc()["witness"] = kind == LazyKind::kN2 ? Json{index.i, index.j} : Json{index.i};
    Json list = Json::array();
    for (const auto& c : image) list.push_back(to_string(c));
    o.doc()["image"] = list;
    return 0;
  }
  o.text() << "index: " << index.i;
  if (kind == LazyKind::kN2) o.text() << ' ' << index.j;
  o.text() << '\n' << "image: " << to_string(image) << '\n';
  return 0;
}

int enumerate(Output& o, std::size_t n, bool list, const Settings& s) {
  if (n > s.max_elements)
    throw PreconditionError(std::to_string(n) + " exceeds --max-elements " + std::to_string(s.max_elements));
  std::size_t count = 0;
  Json all = Json::array();
  for_each_poset(n, [&](const Poset& p) {
    ++count;
    if (!list) return;
    if (o.json())
      all.push_back(covers_json(p));
    else
      o.text() << to_text(p) << '\n';
  });
  if (o.json()) {
    o.doc()["elements"] = n;
    o.doc()["count"] = count;
    if (list) o.doc()["posets"] = all;
  } else {
    o.text() << "count: " << count << '\n';
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite posets, the Smyth monad, quasi-deflations and probability valuations", "domlab"};
  app.require_subcommand(1);
  Settings s;
  app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--max-elements", s.max_elements, "Largest accepted poset");
  app.add_option("--cap", s.cap, "Limit on enumerated objects");

  std::string file, file2, map_file, qs_file, h_file, g_file, nu, mu, y, valuation;
  std::vector<std::string> rest;
  std::size_t grid_n = 1, depth = 3, count_n = 0;
  bool dot = false, preimage = false, list = false;
  std::string kind_text;
  std::size_t index = 0;
  std::optional<std::size_t> index2;

  auto sub = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->fallthrough();
    return c;
  };
  auto* c_check = sub("check-poset", "Parse a poset and summarize it");
  c_check->add_option("poset", file)->required();
  auto* c_hasse = sub("hasse", "Cover relation, as text or DOT");
  c_hasse->add_option("poset", file)->required();
  c_hasse->add_flag("--dot", dot);
  auto* c_upper = sub("upper-sets", "List the upper sets (the Scott opens)");
  c_upper->add_option("poset", file)->required();
  auto* c_path = sub("pathspace", "Path space of a pointed poset");
  c_path->add_option("poset", file)->required();
  c_path->add_flag("--dot", dot);
  auto* c_fin = sub("fin", "Canonical antichains under the Smyth order");
  c_fin->add_option("poset", file)->required();
  c_fin->add_flag("--dot", dot);
  auto* c_monad = sub("monad-laws", "Check the monad laws for given or all monotone maps");
  c_monad->add_option("poset", file)->required();
  c_monad->add_option("--h-map", h_file, "Kleisli map h : P -> Fin(P)");
  c_monad->add_option("--g-map", g_file, "Kleisli map g : P -> Fin(P)");
  auto* c_qr = sub("quasi-retraction", "Check a quasi-section of r : X -> Y");
  c_qr->add_option("source", file)->required();
  c_qr->add_option("target", file2)->required();
  c_qr->add_option("map", map_file)->required();
  c_qr->add_option("--qs", qs_file);
  auto* c_koenig = sub("koenig", "Non-decreasing chain through nested stages");
  c_koenig->add_option("poset", file)->required();
  c_koenig->add_option("y", y)->required();
  c_koenig->add_option("stages", rest)->required();
  auto* c_order = sub("val-order", "Stochastic order with a transport plan or violating set");
  c_order->add_option("poset", file)->required();
  c_order->add_option("nu", nu)->required();
  c_order->add_option("mu", mu)->required();
  auto* c_wb = sub("val-waybelow", "Way-below relation between valuations");
  c_wb->add_option("poset", file)->required();
  c_wb->add_option("nu", nu)->required();
  c_wb->add_option("mu", mu)->required();
  auto* c_mub = sub("val-mub", "Minimal grid upper bounds of two valuations");
  c_mub->add_option("poset", file)->required();
  c_mub->add_option("nu1", nu)->required();
  c_mub->add_option("nu2", mu)->required();
  c_mub->add_option("--grid", grid_n)->check(CLI::PositiveNumber);
  auto* c_maxb = sub("val-maxbelow", "Maximal grid valuations below a valuation");
  c_maxb->add_option("poset", file)->required();
  c_maxb->add_option("nu", nu)->required();
  c_maxb->add_option("--grid", grid_n)->check(CLI::PositiveNumber);
  auto* c_grid = sub("val-grid", "All valuations with weights in (1/N)Z");
  c_grid->add_option("poset", file)->required();
  c_grid->add_option("--grid", grid_n)->check(CLI::PositiveNumber);
  c_grid->add_flag("--dot", dot);
  auto* c_push = sub("val-push", "Push a valuation along r : X -> Y, or lift one back");
  c_push->add_option("source", file)->required();
  c_push->add_option("target", file2)->required();
  c_push->add_option("map", map_file)->required();
  c_push->add_option("valuation", nu)->required();
  c_push->add_flag("--preimage", preimage);
  auto* c_demo = sub("demo-failed-deflations", "Witnesses against three grid discretizations");
  c_demo->add_option("poset", file)->required();
  c_demo->add_option("--grid", grid_n)->check(CLI::PositiveNumber);
  c_demo->add_option("--valuation", valuation);
  auto* c_lazy = sub("lazy", "N2, T and the sum of two chains");
  c_lazy->require_subcommand(1);
  auto* c_lkind = c_lazy->add_subcommand("kind", "Truncation of a lazy poset");
  c_lkind->fallthrough();
  c_lkind->add_option("kind", kind_text)->required();
  c_lkind->add_option("--depth", depth)->check(CLI::PositiveNumber);
  c_lkind->add_flag("--dot", dot);
  auto* c_lfam = c_lazy->add_subcommand("family", "Evaluate a quasi-deflation family member");
  c_lfam->fallthrough();
  c_lfam->add_option("kind", kind_text)->required();
  c_lfam->add_option("--index", index)->required();
  c_lfam->add_option("--index2", index2);
  c_lfam->add_option("codes", rest)->required();
  auto* c_lwit = c_lazy->add_subcommand("witness", "Index excluding y from the image of x");
  c_lwit->fallthrough();
  c_lwit->add_option("kind", kind_text)->required();
  c_lwit->add_option("x", nu)->required();
  c_lwit->add_option("y", mu)->required();
  auto* c_enum = sub("enumerate-posets", "Count (or list) labeled posets on n elements");
  c_enum->add_option("n", count_n)->required();
  c_enum->add_flag("--list", list);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Output o(out, s.json());
  int code = 0;
  try {
    if (c_check->parsed()) code = check_poset(o, load(file, s));
    else if (c_hasse->parsed()) code = hasse(o, load(file, s), dot);
    else if (c_upper->parsed()) code = list_upper_sets(o, load(file, s));
    else if (c_path->parsed()) code = pathspace(o, load(file, s), dot);
    else if (c_fin->parsed()) code = fin(o, load(file, s), dot, s);
    else if (c_monad->parsed()) code = monad_laws(o, load(file, s), h_file, g_file, s);
    else if (c_qr->parsed()) code = quasi_retraction(o, load(file, s), load(file2, s), map_file, qs_file);
    else if (c_koenig->parsed()) code = koenig(o, load(file, s), y, rest);
    else if (c_order->parsed()) code = val_order(o, load(file, s), nu, mu);
    else if (c_wb->parsed()) code = val_waybelow(o, load(file, s), nu, mu);
    else if (c_mub->parsed()) {
      Poset p = load(file, s);
      emit_valuations(o, "minimal_upper_bounds",
                      minimal_upper_bounds_grid(parse_valuation(nu, p), parse_valuation(mu, p), {grid_n}));
    } else if (c_maxb->parsed()) {
      Poset p = load(file, s);
      emit_valuations(o, "maximal_below", maximal_below_grid(parse_valuation(nu, p), {grid_n}));
    } else if (c_grid->parsed()) code = val_grid(o, load(file, s), grid_n, dot, s);
    else if (c_push->parsed()) code = val_push(o, load(file, s), load(file2, s), map_file, nu, preimage);
    else if (c_demo->parsed()) code = demo_failed_deflations(o, load(file, s), grid_n, valuation, s);
    else if (c_lkind->parsed()) code = lazy_kind(o, parse_lazy_kind(kind_text), depth, dot);
    else if (c_lfam->parsed()) {
      LazyKind kind = parse_lazy_kind(kind_text);
      code = lazy_family(o, kind, parse_index(kind, index, index2), rest);
    }
    else if (c_lwit->parsed()) code = lazy_witness(o, parse_lazy_kind(kind_text), nu, mu);
    else if (c_enum->parsed()) code = enumerate(o, count_n, list, s);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  if (!dot) o.flush();
  return code;
}

}  // namespace domlab::cli
