#include "domlab/qrb.hpp"

#include <algorithm>

#include "domlab/text.hpp"

namespace domlab {

QdReport check_quasi_deflation(const FinMap& candidate) {
  if (!(candidate.source() == candidate.target()))
    throw PreconditionError("a quasi-deflation maps a poset into its own Fin");
  const Poset& p = candidate.source();
  QdReport report;
  for (Element x = 0; x < p.size(); ++x)
    if (!in_up_closure(p, candidate(x), x)) {
      report.membership = false;
      report.violations.push_back(
          {x, std::nullopt, p.name(x) + " ∉ ↑" + to_string(p, candidate(x))});
    }
  for (Element x = 0; x < p.size(); ++x)
    for (Element y = 0; y < p.size(); ++y)
      if (x != y && p.leq(x, y) && !smyth_leq(p, candidate(x), candidate(y))) {
        report.monotone = false;
        report.violations.push_back({x, y,
                                     p.name(x) + " <= " + p.name(y) + " but ↑" +
                                         to_string(p, candidate(x)) + " ⊉ ↑" +
                                         to_string(p, candidate(y))});
      }
  return report;
}

QuasiDeflation::QuasiDeflation(FinMap table) : map_(std::move(table)) {
  auto report = check_quasi_deflation(map_);
  if (!report.valid())
    throw PreconditionError("not a quasi-deflation: " + report.violations.front().explanation);
}

QuasiDeflation QuasiDeflation::unit(const Poset& p) { return QuasiDeflation(FinMap::unit(p)); }

QuasiDeflation QuasiDeflation::constant(const Poset& p, Element value) {
  p.check_element(value);
  return QuasiDeflation(FinMap(p, p, std::vector<FinCompact>(p.size(), FinCompact{{value}})));
}

std::vector<Element> QuasiDeflation::image_support() const {
  std::vector<Element> out;
  for (const auto& e : map_.table()) out.insert(out.end(), e.members.begin(), e.members.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

QuasiDeflation qd_self_compose(const QuasiDeflation& phi) {
  return QuasiDeflation(kleisli_compose(phi.map(), phi.map()));
}

QuasiDeflation product_qd(const QuasiDeflation& phi, const QuasiDeflation& psi) {
  const Poset& p = phi.poset();
  const Poset& q = psi.poset();
  Poset pq = product(p, q);
  std::vector<FinCompact> table;
  table.reserve(pq.size());
  for (Element x = 0; x < p.size(); ++x)
    for (Element y = 0; y < q.size(); ++y) {
      std::vector<Element> members;
      for (Element a : phi(x).members)
        for (Element b : psi(y).members) members.push_back(a * q.size() + b);
      table.push_back(antichain_normalize(pq, members));
    }
  return QuasiDeflation(FinMap(pq, pq, std::move(table)));
}

bool qd_leq(const QuasiDeflation& phi, const QuasiDeflation& psi) {
  if (!(phi.poset() == psi.poset())) throw PreconditionError("quasi-deflations on different posets");
  for (Element x = 0; x < phi.poset().size(); ++x)
    if (!smyth_leq(phi.poset(), phi(x), psi(x))) return false;
  return true;
}

bool is_directed_family(std::span<const QuasiDeflation> family) {
  if (family.empty()) return false;
  for (const auto& a : family)
    for (const auto& b : family) {
      bool bounded = std::any_of(family.begin(), family.end(), [&](const QuasiDeflation& c) {
        return qd_leq(a, c) && qd_leq(b, c);
      });
      if (!bounded) return false;
    }
  return true;
}

bool separates(const QuasiDeflation& psi, std::span<const SeparationPair> pairs) {
  const Poset& p = psi.poset();
  for (const auto& [compact, point] : pairs) {
    if (!in_up_closure(p, psi(point), point)) return false;
    if (!smyth_leq(p, compact, psi(point))) return false;
  }
  return true;
}

namespace {

void check_pairs(const Poset& p, std::span<const SeparationPair> pairs) {
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    p.check_element(pairs[k].point);
    if (!in_up_closure(p, pairs[k].compact, pairs[k].point))
      throw PreconditionError("pair " + std::to_string(k) + ": " + p.name(pairs[k].point) +
                              " ∉ ↑" + to_string(p, pairs[k].compact));
  }
}

}  // namespace

QuasiDeflation qfs_separator(const Poset& p, std::span<const SeparationPair> pairs) {
  check_pairs(p, pairs);
  QuasiDeflation unit = QuasiDeflation::unit(p);
  if (!separates(unit, pairs)) throw Error("unit failed to separate valid pairs");
  return unit;
}

std::optional<QuasiDeflation> qfs_separator(const Poset& p, std::span<const SeparationPair> pairs,
                                            std::span<const QuasiDeflation> candidates) {
  check_pairs(p, pairs);
  for (const auto& c : candidates)
    if (c.poset() == p && separates(c, pairs)) return c;
  return std::nullopt;
}

ControlledReport check_controlled(const ControlledQuasiDeflation& c, bool require_below_identity) {
  const PosetMap& f = c.control;
  const FinMap& phi = c.deflation;
  const Poset& p = f.source();
  if (!(f.target() == p) || !(phi.source() == p) || !(phi.target() == p))
    throw PreconditionError("control and deflation must be endomaps of one poset");
  ControlledReport report;
  auto predicates = map_predicates(f);
  if (!predicates.monotone) {
    report.control_monotone = false;
    auto [a, b] = *predicates.monotonicity_violation;
    report.violations.push_back("control not monotone: " + p.name(a) + " <= " + p.name(b) +
                                " but f(" + p.name(a) + ") ≰ f(" + p.name(b) + ")");
  }
  auto qd = check_quasi_deflation(phi);
  if (!qd.valid()) {
    report.deflation_valid = false;
    for (const auto& v : qd.violations) report.violations.push_back("deflation: " + v.explanation);
  }
  for (Element x = 0; x < p.size(); ++x) {
    for (Element m : phi(x).members)
      if (!p.leq(f(x), m)) {
        report.controlled = false;
        report.violations.push_back("↑" + to_string(p, phi(x)) + " ⊄ ↑" + p.name(f(x)) + " at " +
                                    p.name(x));
        break;
      }
    if (!p.leq(f(x), x)) {
      report.below_identity = false;
      if (require_below_identity)
        report.violations.push_back("f(" + p.name(x) + ") = " + p.name(f(x)) + " ≰ " + p.name(x));
    }
  }
  return report;
}

SeparatingSet separating_set_from_controlled(const ControlledQuasiDeflation& c) {
  const PosetMap& f = c.control;
  const Poset& p = f.source();
  if (!(c.deflation.source() == p)) throw PreconditionError("control and deflation disagree on the poset");
  SeparatingSet out;
  for (const auto& e : c.deflation.table())
    out.members.insert(out.members.end(), e.members.begin(), e.members.end());
  std::sort(out.members.begin(), out.members.end());
  out.members.erase(std::unique(out.members.begin(), out.members.end()), out.members.end());
  out.witness.resize(p.size());
  for (Element x = 0; x < p.size(); ++x) {
    auto it = std::find_if(out.members.begin(), out.members.end(),
                           [&](Element m) { return p.leq(f(x), m) && p.leq(m, x); });
    if (it == out.members.end())
      throw PreconditionError("no m in M with f(" + p.name(x) + ") <= m <= " + p.name(x));
    out.witness[x] = *it;
  }
  return out;
}

FinMap parse_quasi_deflation(std::string_view text, const Poset& p) { return parse_finmap(text, p, p); }

ControlledQuasiDeflation parse_controlled(std::string_view text, const Poset& p) {
  std::string control_lines;
  std::string deflation_lines;
  for (const auto& raw : split_lines(text)) {
    std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.starts_with("control:")) {
      control_lines += std::string(line.substr(8)) + "\n";
    } else {
      deflation_lines += std::string(line) + "\n";
    }
  }
  return ControlledQuasiDeflation{parse_map(control_lines, p, p),
                                  parse_finmap(deflation_lines, p, p)};
}

}  // namespace domlab
