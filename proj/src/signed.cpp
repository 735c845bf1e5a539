#include "indep/signed.hpp"

namespace indep {

JordanPair jordan_decompose(const SignedMeasure& mu) {
  std::vector<Rational> pos;
  std::vector<Rational> neg;
  AtomMask hahn(mu.space()->atom_count());
  for (std::size_t b = 0; b < mu.weights().size(); ++b) {
    const Rational& w = mu.weights()[b];
    pos.emplace_back(w > 0 ? w : Rational(0));
    neg.emplace_back(w < 0 ? Rational(-w) : Rational(0));
    if (w >= 0) hahn |= mu.algebra().block(b).mask();
  }
  return {BlockMeasure(mu.algebra(), std::move(pos)), BlockMeasure(mu.algebra(), std::move(neg)),
          EventSet(mu.space(), std::move(hahn))};
}

namespace {

void require_sigma_logical(std::span<const SigmaAlgebra> algebras) {
  auto verdict = check_sigma_logical_independence(algebras);
  if (!verdict.independent) {
    throw NotIndependentError(ErrorCode::NotSigmaLogicallyIndependent, std::move(*verdict.witness));
  }
}

}  // namespace

SignedVerdict check_independence_signed(std::span<const SigmaAlgebra> algebras, const SignedMeasure& mu) {
  require_sigma_logical(algebras);
  const JordanPair parts = jordan_decompose(mu);
  if (parts.positive.is_zero() && parts.negative.is_zero()) {
    throw Error(ErrorCode::ZeroMeasure, "both Jordan parts are zero");
  }
  SignedVerdict out;
  if (!parts.positive.is_zero()) {
    out.positive = check_probabilistic_independence(algebras, parts.positive.normalized());
  }
  if (!parts.negative.is_zero()) {
    out.negative = check_probabilistic_independence(algebras, parts.negative.normalized());
  }
  out.independent = (!out.positive || out.positive->independent) && (!out.negative || out.negative->independent);
  return out;
}

UniformVerdict check_uniform_independence(std::span<const SigmaAlgebra> algebras,
                                          std::span<const BlockMeasure> measures) {
  require_sigma_logical(algebras);
  for (const auto& m : measures) m.require_probability();
  UniformVerdict out;
  for (std::size_t j = 0; j < measures.size(); ++j) {
    auto verdict = check_probabilistic_independence(algebras, measures[j]);
    if (!verdict.independent) {
      out.independent = false;
      out.failing_measure = j;
      out.detail = std::move(verdict);
      return out;
    }
  }
  return out;
}

}  // namespace indep
