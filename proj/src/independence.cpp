#include "indep/independence.hpp"

#include <limits>

namespace indep {

NotIndependentError::NotIndependentError(ErrorCode code, std::vector<WitnessEntry> witness)
    : Error(code, "the family has disjoint nontrivial choices"), witness_(std::move(witness)) {}

namespace {

void validate_family(std::span<const SigmaAlgebra> algebras) {
  if (algebras.size() < 2) throw Error(ErrorCode::FewerThanTwo, "independence needs at least two algebras");
  for (std::size_t i = 0; i < algebras.size(); ++i) {
    if (!same_space(algebras[i].space(), algebras.front().space())) {
      throw Error(ErrorCode::SpaceMismatch, "algebra " + std::to_string(i) + " lives on another space");
    }
    if (!algebras[i].is_nontrivial()) {
      throw Error(ErrorCode::TrivialAlgebra, "algebra " + std::to_string(i) + " is {empty, Omega}");
    }
  }
}

// Depth-first walk over block tuples in lexicographic order. An empty prefix
// intersection means the tuple (prefix, 0, ..., 0) is the first violation.
bool first_empty_tuple(std::span<const SigmaAlgebra> algebras, std::size_t level, const AtomMask& prefix,
                       std::vector<std::size_t>& choice) {
  if (level == algebras.size()) return false;
  const auto& blocks = algebras[level].blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    choice[level] = b;
    const AtomMask next = prefix & blocks[b].mask();
    if (next.none()) {
      for (std::size_t rest = level + 1; rest < algebras.size(); ++rest) choice[rest] = 0;
      return true;
    }
    if (first_empty_tuple(algebras, level + 1, next, choice)) return true;
  }
  return false;
}

}  // namespace

// A nontrivial member of a partition algebra is a nonempty union of blocks
// other than the full union, so it contains at least one block; if every block
// tuple intersects then every tuple of nontrivial members does too. Blocks of
// a nontrivial algebra are themselves nontrivial members, which gives the
// converse. check_logical_independence_bruteforce is the test oracle for this
// reduction.
IndependenceVerdict check_logical_independence(std::span<const SigmaAlgebra> algebras) {
  validate_family(algebras);
  std::vector<std::size_t> choice(algebras.size(), 0);
  const AtomMask all = AtomMask::full(algebras.front().space()->atom_count());
  if (!first_empty_tuple(algebras, 0, all, choice)) return {};
  std::vector<WitnessEntry> witness;
  for (std::size_t i = 0; i < algebras.size(); ++i) witness.push_back({i, algebras[i].block(choice[i])});
  return {false, std::move(witness), std::nullopt};
}

IndependenceVerdict check_logical_independence_bruteforce(std::span<const SigmaAlgebra> algebras,
                                                          std::uint64_t budget) {
  validate_family(algebras);
  std::uint64_t total = 1;
  for (const auto& a : algebras) {
    if (a.block_count() >= 62) throw Error(ErrorCode::TooLarge, "too many blocks for brute force");
    const std::uint64_t members = (std::uint64_t{1} << a.block_count()) - 2;
    if (total > budget / members) {
      throw Error(ErrorCode::TooLarge, "brute-force choice count exceeds the budget of " + std::to_string(budget));
    }
    total *= members;
  }

  std::vector<std::vector<EventSet>> nontrivial(algebras.size());
  for (std::size_t i = 0; i < algebras.size(); ++i) {
    for (EventSet member : enumerate_members(algebras[i], 62)) {
      if (member.is_nontrivial()) nontrivial[i].push_back(std::move(member));
    }
  }

  std::vector<std::size_t> odometer(algebras.size(), 0);
  while (true) {
    AtomMask meet = nontrivial[0][odometer[0]].mask();
    for (std::size_t i = 1; i < algebras.size(); ++i) meet &= nontrivial[i][odometer[i]].mask();
    if (meet.none()) {
      std::vector<WitnessEntry> witness;
      for (std::size_t i = 0; i < algebras.size(); ++i) witness.push_back({i, nontrivial[i][odometer[i]]});
      return {false, std::move(witness), std::nullopt};
    }
    std::size_t pos = algebras.size();
    while (pos > 0) {
      --pos;
      if (++odometer[pos] < nontrivial[pos].size()) break;
      odometer[pos] = 0;
      if (pos == 0) return {};
    }
  }
}

IndependenceVerdict check_sigma_logical_independence(std::span<const SigmaAlgebra> algebras) {
  return check_logical_independence(algebras);
}

IndependenceVerdict check_probabilistic_independence(std::span<const SigmaAlgebra> algebras,
                                                     const BlockMeasure& probability) {
  if (algebras.empty()) throw Error(ErrorCode::EmptyFamily, "no algebras given");
  for (std::size_t i = 0; i < algebras.size(); ++i) {
    if (!same_space(algebras[i].space(), algebras.front().space())) {
      throw Error(ErrorCode::SpaceMismatch, "algebra " + std::to_string(i) + " lives on another space");
    }
  }
  if (!same_space(algebras.front().space(), probability.space())) {
    throw Error(ErrorCode::MeasureMismatch, "the measure lives on another space");
  }
  for (std::size_t i = 0; i < algebras.size(); ++i) {
    if (!probability.refines(algebras[i])) {
      throw Error(ErrorCode::MeasureMismatch, "algebra " + std::to_string(i) + " is not measurable");
    }
  }
  probability.require_probability();

  const std::size_t k = algebras.size();
  std::vector<std::vector<Rational>> block_prob(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& b : algebras[i].blocks()) block_prob[i].push_back(probability(b));
  }

  // Subfamilies by size, then lexicographically by index set.
  for (std::size_t size = 2; size <= k; ++size) {
    std::vector<std::size_t> subset(size);
    for (std::size_t s = 0; s < size; ++s) subset[s] = s;
    while (true) {
      std::vector<std::size_t> odometer(size, 0);
      while (true) {
        EventSet meet = algebras[subset[0]].block(odometer[0]);
        Rational product = block_prob[subset[0]][odometer[0]];
        for (std::size_t s = 1; s < size; ++s) {
          meet = meet & algebras[subset[s]].block(odometer[s]);
          product *= block_prob[subset[s]][odometer[s]];
        }
        const Rational joint = probability(meet);
        if (joint != product) {
          IndependenceVerdict v{false, std::vector<WitnessEntry>{}, ProductRuleMismatch{joint, {}, product}};
          for (std::size_t s = 0; s < size; ++s) {
            v.witness->push_back({subset[s], algebras[subset[s]].block(odometer[s])});
            v.mismatch->factors.push_back(block_prob[subset[s]][odometer[s]]);
          }
          return v;
        }
        std::size_t pos = size;
        bool done = false;
        while (true) {
          if (pos == 0) {
            done = true;
            break;
          }
          --pos;
          if (++odometer[pos] < algebras[subset[pos]].block_count()) break;
          odometer[pos] = 0;
        }
        if (done) break;
      }
      // Next combination of `size` indices out of k.
      std::size_t pos = size;
      while (pos > 0 && subset[pos - 1] == k - size + (pos - 1)) --pos;
      if (pos == 0) break;
      ++subset[pos - 1];
      for (std::size_t s = pos; s < size; ++s) subset[s] = subset[s - 1] + 1;
    }
  }
  return {};
}

EventSet witness_intersection(const std::vector<WitnessEntry>& witness) {
  if (witness.empty()) throw Error(ErrorCode::EmptyFamily, "empty witness");
  EventSet meet = witness.front().set;
  for (const auto& w : witness) meet = meet & w.set;
  return meet;
}

}  // namespace indep
