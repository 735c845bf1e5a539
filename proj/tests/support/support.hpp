#pragma once

// Hand-rolled generators and library-independent oracles. Oracles work on
// plain partitions (one block id per atom) and never call library code.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "indep/measure.hpp"
#include "indep/space.hpp"

namespace testsupport {

using indep::Rational;
using Partition = std::vector<int>;  // block id per atom, ids 0..k-1

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  std::size_t uniform(std::size_t lo, std::size_t hi) {  // inclusive
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng); }

  template <class T>
  void shuffle(std::vector<T>& v) {
    std::shuffle(v.begin(), v.end(), rng);
  }

  /// Probability vector of length k with small denominators. Zeros allowed
  /// when `allow_zero`.
  std::vector<Rational> probs(std::size_t k, bool allow_zero = true) {
    std::vector<unsigned long> w(k);
    unsigned long total = 0;
    while (total == 0) {
      total = 0;
      for (auto& x : w) {
        x = (allow_zero && chance(0.15)) ? 0 : uniform(1, 12);
        total += x;
      }
    }
    std::vector<Rational> out;
    for (auto x : w) {
      Rational r(static_cast<long>(x), static_cast<long>(total));
      r.canonicalize();
      out.push_back(r);
    }
    return out;
  }

  Rational signed_weight() {
    if (chance(0.2)) return 0;
    Rational r(static_cast<long>(uniform(0, 40)) - 20, static_cast<long>(uniform(1, 9)));
    r.canonicalize();
    return r;
  }
};

/// Relabels blocks so ids are 0..k-1 in order of first appearance.
inline Partition normalize(const Partition& p) {
  std::vector<int> map;
  Partition out(p.size());
  for (std::size_t a = 0; a < p.size(); ++a) {
    auto it = std::find(map.begin(), map.end(), p[a]);
    if (it == map.end()) {
      map.push_back(p[a]);
      it = map.end() - 1;
    }
    out[a] = static_cast<int>(it - map.begin());
  }
  return out;
}

inline int block_count(const Partition& p) { return p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1; }

/// Random partition of n atoms into 2..max_blocks nonempty blocks.
inline Partition random_partition(Gen& g, std::size_t n, std::size_t max_blocks) {
  const std::size_t k = g.uniform(2, std::min(max_blocks, n));
  Partition p(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  g.shuffle(order);
  for (std::size_t i = 0; i < n; ++i) p[order[i]] = static_cast<int>(i < k ? i : g.uniform(0, k - 1));
  return normalize(p);
}

/// Product construction: one atom per cell of dims[0] x ... x dims[m-1], each
/// cell repeated `copies[c]` times, atoms shuffled. Factor i reads coordinate i.
/// Independent by construction.
struct Family {
  std::size_t atoms = 0;
  std::vector<Partition> partitions;
};

inline Family product_family(Gen& g, const std::vector<std::size_t>& dims, std::size_t max_copies = 1) {
  std::size_t cells = 1;
  for (auto d : dims) cells *= d;
  std::vector<std::size_t> cell_of;
  for (std::size_t c = 0; c < cells; ++c) {
    const std::size_t copies = g.uniform(1, max_copies);
    for (std::size_t i = 0; i < copies; ++i) cell_of.push_back(c);
  }
  g.shuffle(cell_of);
  Family f;
  f.atoms = cell_of.size();
  for (std::size_t i = 0, stride = 1; i < dims.size(); stride *= dims[i], ++i) {
    Partition p(f.atoms);
    for (std::size_t a = 0; a < f.atoms; ++a) p[a] = static_cast<int>((cell_of[a] / stride) % dims[i]);
    f.partitions.push_back(normalize(p));
  }
  return f;
}

/// Drops atoms from a family; returns false when some partition would lose
/// a block or become trivial.
inline bool drop_atoms(Gen& g, Family& f, std::size_t count) {
  std::vector<std::size_t> idx(f.atoms);
  std::iota(idx.begin(), idx.end(), 0);
  g.shuffle(idx);
  idx.resize(f.atoms - std::min(count, f.atoms - 1));
  std::sort(idx.begin(), idx.end());
  Family out;
  out.atoms = idx.size();
  for (const auto& p : f.partitions) {
    Partition q;
    for (auto a : idx) q.push_back(p[a]);
    if (block_count(normalize(q)) != block_count(p)) return false;
    out.partitions.push_back(normalize(q));
  }
  f = std::move(out);
  return true;
}

inline std::vector<std::string> atom_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("w" + std::to_string(i));
  return out;
}

inline indep::SigmaAlgebra to_algebra(const indep::SpaceRef& space, const Partition& p) {
  std::vector<indep::EventSet> blocks;
  for (int b = 0; b < block_count(p); ++b) {
    std::vector<std::size_t> atoms;
    for (std::size_t a = 0; a < p.size(); ++a) {
      if (p[a] == b) atoms.push_back(a);
    }
    blocks.push_back(indep::EventSet::from_indices(space, atoms));
  }
  return indep::SigmaAlgebra::from_partition(space, std::move(blocks));
}

inline std::vector<indep::SigmaAlgebra> to_algebras(const indep::SpaceRef& space, const std::vector<Partition>& ps) {
  std::vector<indep::SigmaAlgebra> out;
  for (const auto& p : ps) out.push_back(to_algebra(space, p));
  return out;
}

// ---------------------------------------------------------------- oracles

/// Every choice of one nontrivial member (block subset) per partition has a
/// nonempty intersection. Members are enumerated as bitmasks over block ids.
inline bool oracle_logically_independent(const std::vector<Partition>& ps, std::size_t atoms) {
  const std::size_t m = ps.size();
  std::vector<std::uint32_t> full(m), choice(m);
  for (std::size_t i = 0; i < m; ++i) {
    full[i] = (1u << block_count(ps[i])) - 1;
    if (full[i] == 1u) return false;  // trivial algebra
    choice[i] = 1;
  }
  while (true) {
    bool hit = false;
    for (std::size_t a = 0; a < atoms && !hit; ++a) {
      bool in_all = true;
      for (std::size_t i = 0; i < m && in_all; ++i) in_all = (choice[i] >> ps[i][a]) & 1u;
      hit = in_all;
    }
    if (!hit) return false;
    std::size_t i = 0;
    for (; i < m; ++i) {
      if (++choice[i] < full[i]) break;
      choice[i] = 1;
    }
    if (i == m) return true;
  }
}

/// Product rule P(E_1 ∩ ... ∩ E_m) = prod P(E_i) for every choice of members,
/// Omega included (which covers all subfamilies).
inline bool oracle_product_rule(const std::vector<Partition>& ps, const std::vector<Rational>& atom_weights) {
  const std::size_t m = ps.size();
  const std::size_t n = atom_weights.size();
  std::vector<std::uint32_t> full(m), choice(m, 0);
  for (std::size_t i = 0; i < m; ++i) full[i] = (1u << block_count(ps[i])) - 1;
  while (true) {
    Rational joint = 0;
    Rational product = 1;
    for (std::size_t i = 0; i < m; ++i) {
      Rational pi = 0;
      for (std::size_t a = 0; a < n; ++a) {
        if ((choice[i] >> ps[i][a]) & 1u) pi += atom_weights[a];
      }
      product *= pi;
    }
    for (std::size_t a = 0; a < n; ++a) {
      bool in_all = true;
      for (std::size_t i = 0; i < m && in_all; ++i) in_all = (choice[i] >> ps[i][a]) & 1u;
      if (in_all) joint += atom_weights[a];
    }
    if (joint != product) return false;
    std::size_t i = 0;
    for (; i < m; ++i) {
      if (++choice[i] <= full[i]) break;
      choice[i] = 0;
    }
    if (i == m) return true;
  }
}

/// Mass of each atom's join cell under the product of block probabilities,
/// assigned to the cell's first atom (other atoms of the cell get 0).
inline std::vector<Rational> oracle_product_atoms(const std::vector<Partition>& ps,
                                                  const std::vector<std::vector<Rational>>& block_probs,
                                                  std::size_t atoms) {
  std::vector<Rational> out(atoms, Rational(0));
  for (std::size_t a = 0; a < atoms; ++a) {
    bool first = true;
    for (std::size_t b = 0; b < a && first; ++b) {
      bool same = true;
      for (const auto& p : ps) same = same && p[a] == p[b];
      first = !same;
    }
    if (!first) continue;
    Rational v = 1;
    for (std::size_t i = 0; i < ps.size(); ++i) v *= block_probs[i][static_cast<std::size_t>(ps[i][a])];
    out[a] = v;
  }
  return out;
}

}  // namespace testsupport
