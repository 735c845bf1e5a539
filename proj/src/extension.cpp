#include "indep/extension.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "indep/error.hpp"

namespace indep {

std::string to_string(const CylinderEvent& c) {
  if (c.empty_marker) return "Empty";
  if (c.factors.empty()) return "Omega";
  std::string out;
  for (const auto& [i, set] : c.factors) {
    if (!out.empty()) out += " & ";
    out += std::to_string(i) + ":" + set.to_string();
  }
  return out;
}

// ------------------------------------------------------- IndependentFamily

IndependentFamily::IndependentFamily(std::vector<SigmaAlgebra> algebras) : algebras_(std::move(algebras)) {
  if (algebras_.empty()) throw Error(ErrorCode::EmptyFamily, "a family needs at least one algebra");
  for (std::size_t i = 0; i < algebras_.size(); ++i) {
    if (!same_space(algebras_[i].space(), algebras_.front().space())) {
      throw Error(ErrorCode::SpaceMismatch, "algebra " + std::to_string(i) + " lives on another space");
    }
    if (!algebras_[i].is_nontrivial()) {
      throw Error(ErrorCode::TrivialAlgebra, "algebra " + std::to_string(i) + " is {empty, Omega}");
    }
  }
  if (algebras_.size() >= 2) {
    auto verdict = check_logical_independence(algebras_);
    if (!verdict.independent) {
      throw NotIndependentError(ErrorCode::NotLogicallyIndependent, std::move(*verdict.witness));
    }
  }
}

void IndependentFamily::validate(const CylinderEvent& c) const {
  for (const auto& [i, set] : c.factors) {
    if (i >= algebras_.size()) {
      throw Error(ErrorCode::UnknownAlgebraIndex, "no algebra with index " + std::to_string(i));
    }
    if (!algebras_[i].contains(set)) {
      throw Error(ErrorCode::NotInAlgebra, set.to_string() + " is not in algebra " + std::to_string(i));
    }
  }
}

EventSet IndependentFamily::realize(const CylinderEvent& c) const {
  validate(c);
  if (c.empty_marker) return EventSet::empty(space());
  EventSet out = EventSet::full(space());
  for (const auto& [i, set] : c.factors) out = out & set;
  return out;
}

CylinderEvent IndependentFamily::canonical_form(const CylinderEvent& c) const {
  validate(c);
  if (c.empty_marker) return CylinderEvent::empty();
  CylinderEvent out;
  for (const auto& [i, set] : c.factors) {
    if (set.is_empty()) return CylinderEvent::empty();
    if (!set.is_full()) out.factors.emplace(i, set);
  }
  if (realize(out).is_empty()) return CylinderEvent::empty();
  return out;
}

CylinderEvent IndependentFamily::intersect(const CylinderEvent& a, const CylinderEvent& b) const {
  validate(a);
  validate(b);
  if (a.empty_marker || b.empty_marker) return CylinderEvent::empty();
  CylinderEvent out = a;
  for (const auto& [i, set] : b.factors) {
    auto [it, inserted] = out.factors.emplace(i, set);
    if (!inserted) it->second = it->second & set;
  }
  return canonical_form(out);
}

std::vector<CylinderEvent> IndependentFamily::semiring_difference(const CylinderEvent& a,
                                                                  const CylinderEvent& b) const {
  const CylinderEvent ca = canonical_form(a);
  const CylinderEvent cb = canonical_form(b);
  if (ca.empty_marker) return {};
  if (cb.empty_marker) return {ca};

  std::vector<CylinderEvent> out;
  CylinderEvent prefix;  // B_{j_1} ... B_{j_{l-1}}
  for (const auto& [j, set] : cb.factors) {
    CylinderEvent piece = prefix;
    piece.factors.emplace(j, set.complement());
    piece = intersect(piece, ca);
    if (!piece.empty_marker) out.push_back(std::move(piece));
    prefix.factors.emplace(j, set);
  }
  return out;
}

CylinderEvent IndependentFamily::hull(const EventSet& set) const {
  if (!same_space(set.space(), space())) throw Error(ErrorCode::SpaceMismatch, "set on another space");
  if (set.is_empty()) return CylinderEvent::empty();
  CylinderEvent out;
  for (std::size_t i = 0; i < algebras_.size(); ++i) out.factors.emplace(i, algebras_[i].saturate(set));
  return canonical_form(out);
}

std::optional<CylinderEvent> IndependentFamily::as_cylinder(const EventSet& set) const {
  CylinderEvent h = hull(set);
  if (realize(h) == set) return h;
  return std::nullopt;
}

UnionReport IndependentFamily::verify_union_representation(std::span<const CylinderEvent> parts) const {
  UnionReport report;
  std::vector<CylinderEvent> nonempty;
  EventSet realized_union = EventSet::empty(space());
  for (const auto& p : parts) {
    CylinderEvent c = canonical_form(p);
    if (c.empty_marker) continue;
    realized_union = realized_union | realize(c);
    nonempty.push_back(std::move(c));
  }

  // Component-wise unions over all indices used, padding absent entries with Omega.
  std::set<std::size_t> indices;
  for (const auto& c : nonempty) {
    for (const auto& [i, set] : c.factors) indices.insert(i);
  }
  std::map<std::size_t, EventSet> tilde;
  for (std::size_t i : indices) {
    EventSet u = EventSet::empty(space());
    for (const auto& c : nonempty) {
      const auto it = c.factors.find(i);
      u = u | (it == c.factors.end() ? EventSet::full(space()) : it->second);
    }
    tilde.emplace(i, std::move(u));
  }
  report.componentwise = nonempty.empty() ? CylinderEvent::empty() : canonical_form({tilde, false});

  const auto as_cyl = as_cylinder(realized_union);
  report.representable = as_cyl.has_value();
  if (!report.representable) return report;
  report.union_cylinder = *as_cyl;

  // The union must equal the intersection of the component-wise unions over
  // the index set of every nonempty part.
  bool matches = nonempty.empty() ? realized_union.is_empty() : true;
  for (const auto& c : nonempty) {
    CylinderEvent restricted;
    for (const auto& [i, set] : c.factors) restricted.factors.emplace(i, tilde.at(i));
    if (realize(restricted) != realized_union) matches = false;
  }
  if (realize(report.componentwise) != realized_union) matches = false;
  report.matches_componentwise = matches;
  return report;
}

// -------------------------------------------------------- ExtensionMeasure

namespace {

std::vector<SigmaAlgebra> algebras_of(std::span<const FactorMeasure> factors) {
  std::vector<SigmaAlgebra> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.algebra());
  return out;
}

}  // namespace

ExtensionMeasure::ExtensionMeasure(IndependentFamily family, std::vector<FactorMeasure> factors, SigmaAlgebra join,
                                   std::vector<Rational> cell_prob,
                                   std::vector<std::vector<std::size_t>> cell_blocks)
    : family_(std::move(family)),
      factors_(std::move(factors)),
      join_(std::move(join)),
      cell_prob_(std::move(cell_prob)),
      cell_blocks_(std::move(cell_blocks)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) provenance_.push_back(i);
  if (sum(cell_prob_) != 1) throw std::logic_error("extension cell probabilities do not sum to 1");
}

ExtensionMeasure extend(std::span<const FactorMeasure> factors) {
  IndependentFamily family(algebras_of(factors));
  SigmaAlgebra joined = join(family.algebras());

  std::vector<Rational> cell_prob;
  std::vector<std::vector<std::size_t>> cell_blocks;
  cell_prob.reserve(joined.block_count());
  for (const auto& cell : joined.blocks()) {
    const std::size_t atom = cell.mask().first();
    std::vector<std::size_t> tuple;
    Rational p = 1;
    for (const auto& f : factors) {
      const std::size_t b = f.algebra().block_of(atom);
      tuple.push_back(b);
      p *= f.weights()[b];
    }
    cell_prob.push_back(std::move(p));
    cell_blocks.push_back(std::move(tuple));
  }
  return ExtensionMeasure(std::move(family), std::vector<FactorMeasure>(factors.begin(), factors.end()),
                          std::move(joined), std::move(cell_prob), std::move(cell_blocks));
}

Rational measure_of_cylinder(const ExtensionMeasure& p, const CylinderEvent& c) {
  const CylinderEvent canon = p.family().canonical_form(c);
  if (canon.empty_marker) return 0;

  Rational product = 1;
  for (const auto& [i, set] : canon.factors) product *= p.factors()[i](set);

  const EventSet realized = p.family().realize(canon);
  Rational cells = 0;
  for (std::size_t b = 0; b < p.join_algebra().block_count(); ++b) {
    if (p.join_algebra().block(b).is_subset_of(realized)) cells += p.cell_prob()[b];
  }
  if (cells != product) {
    throw std::logic_error("product formula " + to_string(product) + " disagrees with cell sum " + to_string(cells));
  }
  return product;
}

AdditivityReport verify_finite_additivity(const ExtensionMeasure& p, std::span<const CylinderEvent> parts,
                                          std::uint64_t chain_budget) {
  const IndependentFamily& family = p.family();
  const SpaceRef& space = family.space();

  std::vector<CylinderEvent> canon;
  std::vector<EventSet> realized;
  EventSet realized_union = EventSet::empty(space);
  for (const auto& part : parts) {
    CylinderEvent c = family.canonical_form(part);
    if (c.empty_marker) continue;
    EventSet r = family.realize(c);
    if (r.intersects(realized_union)) throw Error(ErrorCode::NotDisjoint, "parts overlap at " + (r & realized_union).to_string());
    realized_union = realized_union | r;
    canon.push_back(std::move(c));
    realized.push_back(std::move(r));
  }
  const auto union_cyl = family.as_cylinder(realized_union);
  if (!union_cyl) throw Error(ErrorCode::UnionNotCylinder, realized_union.to_string() + " is not a cylinder");

  AdditivityReport report;
  report.union_cylinder = *union_cyl;
  report.union_measure = measure_of_cylinder(p, *union_cyl);
  report.parts_sum = 0;
  for (const auto& c : canon) report.parts_sum += measure_of_cylinder(p, c);
  report.chains_per_part.assign(canon.size(), 0);

  if (canon.empty()) {
    report.chain_sum = 0;
    report.chains_partition_parts = true;
    report.holds = report.parts_sum == 0 && report.union_measure == 0;
    return report;
  }

  std::set<std::size_t> used;
  for (const auto& c : canon) {
    for (const auto& [i, set] : c.factors) used.insert(i);
  }
  report.factor_order.assign(used.begin(), used.end());

  // Maximal disjoint decomposition of each component-wise union: atoms of
  // U_h = union_r A^r_h grouped by which parts' h-components contain them.
  std::vector<std::vector<EventSet>> d_sets;
  std::vector<std::vector<Rational>> d_prob;
  std::uint64_t chain_count = 1;
  for (std::size_t h : report.factor_order) {
    std::vector<EventSet> components;
    for (const auto& c : canon) {
      const auto it = c.factors.find(h);
      components.push_back(it == c.factors.end() ? EventSet::full(space) : it->second);
    }
    std::map<std::vector<bool>, AtomMask> groups;
    for (std::size_t atom = 0; atom < space->atom_count(); ++atom) {
      std::vector<bool> sig(components.size());
      bool any = false;
      for (std::size_t r = 0; r < components.size(); ++r) {
        sig[r] = components[r].contains(atom);
        any = any || sig[r];
      }
      if (!any) continue;
      auto [it, inserted] = groups.try_emplace(std::move(sig), space->atom_count());
      it->second.set(atom);
    }
    std::vector<EventSet> ds;
    for (auto& [sig, mask] : groups) ds.emplace_back(space, std::move(mask));
    std::sort(ds.begin(), ds.end(), [](const EventSet& a, const EventSet& b) { return a.mask().first() < b.mask().first(); });
    std::vector<Rational> probs;
    for (const auto& d : ds) probs.push_back(p.factors()[h](d));
    report.cells_per_factor.push_back(ds.size());
    if (chain_count > chain_budget / ds.size()) throw Error(ErrorCode::TooLarge, "too many D-chains");
    chain_count *= ds.size();
    d_sets.push_back(std::move(ds));
    d_prob.push_back(std::move(probs));
  }
  report.d_chain_count = chain_count;

  report.chain_sum = 0;
  std::vector<Rational> per_part(canon.size(), 0);
  bool partition_ok = true;
  const std::size_t n = d_sets.size();
  std::vector<std::size_t> odometer(n, 0);
  while (true) {
    EventSet chain = EventSet::full(space);
    Rational pchain = 1;
    for (std::size_t h = 0; h < n; ++h) {
      chain = chain & d_sets[h][odometer[h]];
      pchain *= d_prob[h][odometer[h]];
    }
    std::size_t owners = 0;
    std::size_t owner = 0;
    for (std::size_t r = 0; r < canon.size(); ++r) {
      if (chain.is_subset_of(realized[r])) {
        ++owners;
        owner = r;
      }
    }
    if (chain.is_empty() || owners != 1) {
      partition_ok = false;
    } else {
      ++report.chains_per_part[owner];
      per_part[owner] += pchain;
    }
    report.chain_sum += pchain;

    bool done = true;
    for (std::size_t pos = n; pos > 0; --pos) {
      if (++odometer[pos - 1] < d_sets[pos - 1].size()) {
        done = false;
        break;
      }
      odometer[pos - 1] = 0;
    }
    if (done) break;
  }

  for (std::size_t r = 0; r < canon.size() && partition_ok; ++r) {
    if (per_part[r] != measure_of_cylinder(p, canon[r])) partition_ok = false;
  }
  report.chains_partition_parts = partition_ok;
  report.holds = partition_ok && report.parts_sum == report.union_measure && report.union_measure == report.chain_sum;
  return report;
}

UniquenessReport verify_uniqueness(const ExtensionMeasure& p, const BlockMeasure& candidate) {
  if (!(candidate.algebra() == p.join_algebra()) || !same_space(candidate.space(), p.join_algebra().space())) {
    throw Error(ErrorCode::MeasureMismatch, "candidate is not defined on the join algebra");
  }
  candidate.require_probability();

  UniquenessReport report;
  report.marginals_match = true;
  for (std::size_t i = 0; i < p.factors().size() && report.marginals_match; ++i) {
    const auto& f = p.factors()[i];
    for (std::size_t b = 0; b < f.algebra().block_count(); ++b) {
      const Rational q = candidate(f.algebra().block(b));
      if (q != f.weights()[b]) {
        report.marginals_match = false;
        report.marginal_mismatch = MarginalMismatch{i, f.algebra().block(b), q, f.weights()[b]};
        break;
      }
    }
  }
  report.independence = p.family().size() >= 2
                            ? check_probabilistic_independence(p.family().algebras(), candidate)
                            : IndependenceVerdict{};
  report.equals_extension = candidate.weights() == p.cell_prob();
  report.holds = report.marginals_match && report.independence.independent && report.equals_extension;
  return report;
}

}  // namespace indep
