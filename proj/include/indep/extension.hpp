#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "indep/independence.hpp"
#include "indep/measure.hpp"
#include "indep/rational.hpp"
#include "indep/space.hpp"

namespace indep {

/// A finite intersection of one member per factor algebra. Absent indices
/// stand for Omega. As built by callers it may hold Omega or empty entries;
/// IndependentFamily::canonical_form normalizes it.
struct CylinderEvent {
  std::map<std::size_t, EventSet> factors;
  bool empty_marker = false;

  static CylinderEvent empty() { return {{}, true}; }
  static CylinderEvent omega() { return {}; }

  bool is_empty_marker() const noexcept { return empty_marker; }
  bool operator==(const CylinderEvent&) const = default;
};

std::string to_string(const CylinderEvent& c);

struct UnionReport {
  /// Whether the realized union is itself a cylinder.
  bool representable = false;
  /// Whether the component-wise union cylinder realizes the union, checked for
  /// every nonempty part's index set. Meaningful only when representable.
  bool matches_componentwise = false;
  CylinderEvent union_cylinder;  // canonical; only when representable
  CylinderEvent componentwise;   // canonical cylinder of component-wise unions

  bool holds() const noexcept { return !representable || matches_componentwise; }
};

/// A logically independent family of nontrivial sub-sigma-algebras, together
/// with the semi-ring of cylinders it generates.
class IndependentFamily {
 public:
  /// Throws Error{EmptyFamily}, Error{TrivialAlgebra}, Error{SpaceMismatch},
  /// or NotIndependentError{NotLogicallyIndependent}.
  explicit IndependentFamily(std::vector<SigmaAlgebra> algebras);

  const std::vector<SigmaAlgebra>& algebras() const noexcept { return algebras_; }
  std::size_t size() const noexcept { return algebras_.size(); }
  const SpaceRef& space() const noexcept { return algebras_.front().space(); }

  /// Explicit atom set of a cylinder. Throws Error{UnknownAlgebraIndex},
  /// Error{NotInAlgebra}.
  EventSet realize(const CylinderEvent& c) const;

  /// Drops Omega entries; empty marker iff some entry is empty or the realized
  /// intersection is empty. Cylinders with equal nonempty realized sets have
  /// identical canonical forms.
  CylinderEvent canonical_form(const CylinderEvent& c) const;

  /// Canonical intersection of two cylinders.
  CylinderEvent intersect(const CylinderEvent& a, const CylinderEvent& b) const;

  /// a \ b as pairwise-disjoint cylinders, following the telescoping
  /// B^c_l . (B_1 ... B_{l-1}) . a pattern over b's entries in index order.
  std::vector<CylinderEvent> semiring_difference(const CylinderEvent& a, const CylinderEvent& b) const;

  /// Smallest cylinder containing `set`: entry i is the i-saturation of the set.
  CylinderEvent hull(const EventSet& set) const;
  /// The cylinder realizing `set`, if any.
  std::optional<CylinderEvent> as_cylinder(const EventSet& set) const;

  /// If the union of the parts is a cylinder, checks that it equals the
  /// cylinder of component-wise unions.
  UnionReport verify_union_representation(std::span<const CylinderEvent> parts) const;

 private:
  void validate(const CylinderEvent& c) const;

  std::vector<SigmaAlgebra> algebras_;
};

/// The independence-preserving extension of per-factor probabilities to the
/// join of the factor algebras.
class ExtensionMeasure {
 public:
  const IndependentFamily& family() const noexcept { return family_; }
  const std::vector<FactorMeasure>& factors() const noexcept { return factors_; }
  const SigmaAlgebra& join_algebra() const noexcept { return join_; }
  const std::vector<Rational>& cell_prob() const noexcept { return cell_prob_; }
  /// Factor index that each factor entry came from (0..k-1 in input order).
  const std::vector<std::size_t>& provenance() const noexcept { return provenance_; }
  /// For each join cell, the block index it occupies in every factor.
  const std::vector<std::vector<std::size_t>>& cell_blocks() const noexcept { return cell_blocks_; }

  BlockMeasure as_block_measure() const { return BlockMeasure(join_, cell_prob_); }

 private:
  friend ExtensionMeasure extend(std::span<const FactorMeasure> factors);
  ExtensionMeasure(IndependentFamily family, std::vector<FactorMeasure> factors, SigmaAlgebra join,
                   std::vector<Rational> cell_prob, std::vector<std::vector<std::size_t>> cell_blocks);

  IndependentFamily family_;
  std::vector<FactorMeasure> factors_;
  SigmaAlgebra join_;
  std::vector<Rational> cell_prob_;
  std::vector<std::size_t> provenance_;
  std::vector<std::vector<std::size_t>> cell_blocks_;
};

/// Builds P on the join with P(cell) = product of the block probabilities.
/// Throws NotIndependentError, Error{TrivialAlgebra}, Error{SpaceMismatch},
/// Error{EmptyFamily}.
ExtensionMeasure extend(std::span<const FactorMeasure> factors);

/// Product formula, cross-checked against the sum of cell probabilities over
/// the realized set.
Rational measure_of_cylinder(const ExtensionMeasure& p, const CylinderEvent& c);

struct AdditivityReport {
  bool holds = false;
  Rational parts_sum;
  Rational union_measure;
  Rational chain_sum;  // sum of P-chains
  std::vector<std::size_t> factor_order;      // factor indices h, ascending
  std::vector<std::size_t> cells_per_factor;  // m_h per entry of factor_order
  std::uint64_t d_chain_count = 0;
  /// Every D-chain is nonempty and lies in exactly one part.
  bool chains_partition_parts = false;
  std::vector<std::uint64_t> chains_per_part;
  CylinderEvent union_cylinder;
};

inline constexpr std::uint64_t kDefaultChainBudget = std::uint64_t{1} << 20;

/// Finite additivity on a disjoint cylinder family whose union is a cylinder,
/// through the maximal disjoint decompositions (D-chains) and their product
/// probabilities (P-chains). Throws Error{NotDisjoint}, Error{UnionNotCylinder},
/// Error{TooLarge}.
AdditivityReport verify_finite_additivity(const ExtensionMeasure& p, std::span<const CylinderEvent> parts,
                                          std::uint64_t chain_budget = kDefaultChainBudget);

struct MarginalMismatch {
  std::size_t factor;
  EventSet block;
  Rational candidate;
  Rational expected;
};

struct UniquenessReport {
  bool holds = false;
  bool marginals_match = false;
  std::optional<MarginalMismatch> marginal_mismatch;
  IndependenceVerdict independence;
  /// Candidate equals the extension cell by cell.
  bool equals_extension = false;
};

/// True iff `candidate` has the extension's marginals and makes the family
/// independent; in that case it must coincide with the extension, and
/// `equals_extension` records whether it does. Throws Error{MeasureMismatch},
/// Error{NotAProbability}.
UniquenessReport verify_uniqueness(const ExtensionMeasure& p, const BlockMeasure& candidate);

}  // namespace indep
