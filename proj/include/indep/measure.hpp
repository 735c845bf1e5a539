#pragma once

#include <vector>

#include "indep/rational.hpp"
#include "indep/space.hpp"

namespace indep {

/// A finite measure given by one exact weight per block of a sigma-algebra.
/// Weights may be negative; probability-ness is checked where it matters.
/// Atom-weight measures are block measures on the discrete algebra.
class BlockMeasure {
 public:
  /// Throws Error{MeasureMismatch} when the weight count differs from the block count.
  BlockMeasure(SigmaAlgebra algebra, std::vector<Rational> weights);
  static BlockMeasure on_atoms(SpaceRef space, std::vector<Rational> atom_weights);

  const SigmaAlgebra& algebra() const noexcept { return algebra_; }
  const std::vector<Rational>& weights() const noexcept { return weights_; }
  const SpaceRef& space() const noexcept { return algebra_.space(); }

  Rational total() const;
  bool is_zero() const;
  bool is_probability() const;
  /// Throws Error{NotAProbability}.
  void require_probability() const;

  /// Throws Error{MeasureMismatch} when the event is not measurable here.
  Rational operator()(const EventSet& event) const;
  /// True when every block of `coarse` is measurable here.
  bool refines(const SigmaAlgebra& coarse) const;
  /// The same measure divided by its total mass.
  BlockMeasure normalized() const;

  bool operator==(const BlockMeasure& other) const { return algebra_ == other.algebra_ && weights_ == other.weights_; }

 private:
  SigmaAlgebra algebra_;
  std::vector<Rational> weights_;
};

/// A probability on one factor algebra (one weight per block, summing to 1).
class FactorMeasure : public BlockMeasure {
 public:
  /// Throws Error{NotAProbability}.
  FactorMeasure(SigmaAlgebra algebra, std::vector<Rational> block_prob);
};

}  // namespace indep
