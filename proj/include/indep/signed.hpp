#pragma once

#include <optional>
#include <span>
#include <vector>

#include "indep/independence.hpp"
#include "indep/measure.hpp"

namespace indep {

/// A finite signed measure: one exact weight of any sign per block.
using SignedMeasure = BlockMeasure;

struct JordanPair {
  BlockMeasure positive;
  BlockMeasure negative;
  /// Atoms carrying mu+; zero-weight blocks are placed here.
  EventSet hahn_positive_set;
};

/// mu+ = max(mu, 0) and mu- = max(-mu, 0), block by block.
JordanPair jordan_decompose(const SignedMeasure& mu);

struct SignedVerdict {
  bool independent = true;
  /// Verdict under the normalized part; nullopt when that part is zero
  /// (vacuously independent).
  std::optional<IndependenceVerdict> positive;
  std::optional<IndependenceVerdict> negative;
};

/// Independence under a signed measure: the family must be sigma-logically
/// independent, and probabilistically independent under each nonzero Jordan
/// part normalized to total mass 1.
/// Throws NotIndependentError{NotSigmaLogicallyIndependent}, Error{ZeroMeasure}.
SignedVerdict check_independence_signed(std::span<const SigmaAlgebra> algebras, const SignedMeasure& mu);

struct UniformVerdict {
  bool independent = true;
  std::optional<std::size_t> failing_measure;
  /// Verdict for the failing measure; default (independent) otherwise.
  IndependenceVerdict detail;
};

/// Probabilistic independence under every measure of the list. An empty list
/// is vacuously uniform. Throws NotIndependentError{NotSigmaLogicallyIndependent},
/// Error{NotAProbability}.
UniformVerdict check_uniform_independence(std::span<const SigmaAlgebra> algebras,
                                          std::span<const BlockMeasure> measures);

}  // namespace indep
