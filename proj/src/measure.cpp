#include "indep/measure.hpp"

#include <algorithm>

#include "indep/error.hpp"

namespace indep {

BlockMeasure::BlockMeasure(SigmaAlgebra algebra, std::vector<Rational> weights)
    : algebra_(std::move(algebra)), weights_(std::move(weights)) {
  if (weights_.size() != algebra_.block_count()) {
    throw Error(ErrorCode::MeasureMismatch, std::to_string(weights_.size()) + " weights for " +
                                                std::to_string(algebra_.block_count()) + " blocks");
  }
  for (auto& w : weights_) w.canonicalize();  // mpq_class(p, q) does not reduce
}

BlockMeasure BlockMeasure::on_atoms(SpaceRef space, std::vector<Rational> atom_weights) {
  return BlockMeasure(SigmaAlgebra::discrete(std::move(space)), std::move(atom_weights));
}

Rational BlockMeasure::total() const { return sum(weights_); }

bool BlockMeasure::is_zero() const {
  return std::all_of(weights_.begin(), weights_.end(), [](const Rational& w) { return w == 0; });
}

bool BlockMeasure::is_probability() const {
  return std::all_of(weights_.begin(), weights_.end(), [](const Rational& w) { return w >= 0; }) && total() == 1;
}

void BlockMeasure::require_probability() const {
  for (const auto& w : weights_) {
    if (w < 0) throw Error(ErrorCode::NotAProbability, "negative weight " + to_string(w));
  }
  if (const Rational t = total(); t != 1) {
    throw Error(ErrorCode::NotAProbability, "total mass is " + to_string(t) + ", not 1");
  }
}

Rational BlockMeasure::operator()(const EventSet& event) const {
  if (!same_space(event.space(), space())) throw Error(ErrorCode::MeasureMismatch, "event on another space");
  if (!algebra_.contains(event)) {
    throw Error(ErrorCode::MeasureMismatch, event.to_string() + " is not measurable");
  }
  Rational out = 0;
  for (std::size_t b = 0; b < weights_.size(); ++b) {
    if (algebra_.block(b).mask().intersects(event.mask())) out += weights_[b];
  }
  return out;
}

bool BlockMeasure::refines(const SigmaAlgebra& coarse) const {
  if (!same_space(coarse.space(), space())) return false;
  return std::all_of(coarse.blocks().begin(), coarse.blocks().end(),
                     [&](const EventSet& b) { return algebra_.contains(b); });
}

BlockMeasure BlockMeasure::normalized() const {
  const Rational t = total();
  if (t == 0) throw Error(ErrorCode::ZeroMeasure, "cannot normalize a measure of total mass 0");
  std::vector<Rational> w;
  w.reserve(weights_.size());
  for (const auto& x : weights_) w.emplace_back(x / t);
  return BlockMeasure(algebra_, std::move(w));
}

FactorMeasure::FactorMeasure(SigmaAlgebra algebra, std::vector<Rational> block_prob)
    : BlockMeasure(std::move(algebra), std::move(block_prob)) {
  require_probability();
}

}  // namespace indep
