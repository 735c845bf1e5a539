#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "indep/error.hpp"
#include "indep/measure.hpp"
#include "indep/space.hpp"

namespace indep {

struct WitnessEntry {
  std::size_t algebra;  // position in the input family
  EventSet set;

  bool operator==(const WitnessEntry&) const = default;
};

/// Exact evidence that the product rule fails on a witness choice.
struct ProductRuleMismatch {
  Rational joint;                 // P(intersection)
  std::vector<Rational> factors;  // P(set) per witness entry
  Rational product;               // product of `factors`
};

struct IndependenceVerdict {
  bool independent = true;
  /// Present iff not independent.
  std::optional<std::vector<WitnessEntry>> witness;
  /// Present iff the verdict came from a product-rule check and failed.
  std::optional<ProductRuleMismatch> mismatch;
};

/// Raised by constructions that require a logically independent family.
class NotIndependentError : public Error {
 public:
  NotIndependentError(ErrorCode code, std::vector<WitnessEntry> witness);
  const std::vector<WitnessEntry>& witness() const noexcept { return witness_; }

 private:
  std::vector<WitnessEntry> witness_;
};

inline constexpr std::uint64_t kDefaultBruteForceBudget = std::uint64_t{1} << 20;

/// Decides logical independence through the block-tuple criterion: the family
/// is independent iff every choice of one block per algebra has a nonempty
/// intersection. On failure the witness is the lexicographically first
/// violating block tuple.
///
/// Throws Error{FewerThanTwo}, Error{TrivialAlgebra}, Error{SpaceMismatch}.
IndependenceVerdict check_logical_independence(std::span<const SigmaAlgebra> algebras);

/// Literal form of the definition: every choice of one nontrivial member per
/// algebra must intersect. Serves as the oracle for the block-tuple criterion.
/// Throws Error{TooLarge} when the number of choices exceeds `budget`.
IndependenceVerdict check_logical_independence_bruteforce(std::span<const SigmaAlgebra> algebras,
                                                          std::uint64_t budget = kDefaultBruteForceBudget);

/// For a finite family every countable subfamily is finite, so the sigma
/// version coincides with check_logical_independence.
IndependenceVerdict check_sigma_logical_independence(std::span<const SigmaAlgebra> algebras);

/// Exact product-rule check under `probability`, over every subfamily of size
/// >= 2 (by size, then lexicographically) and every block tuple of it.
///
/// Throws Error{MeasureMismatch} when the measure cannot see some algebra,
/// Error{NotAProbability}, Error{SpaceMismatch}, Error{EmptyFamily}.
IndependenceVerdict check_probabilistic_independence(std::span<const SigmaAlgebra> algebras,
                                                     const BlockMeasure& probability);

/// Intersection of the witness sets.
EventSet witness_intersection(const std::vector<WitnessEntry>& witness);

}  // namespace indep
