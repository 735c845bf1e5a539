// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "indep/error.hpp"
#include "indep/extension.hpp"
#include "indep/independence.hpp"
#include "indep/limit_lab.hpp"
#include "indep/problem.hpp"
#include "indep/report.hpp"
#include "indep/signed.hpp"
#include "support.hpp"

using namespace indep;
using namespace testsupport;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = dt < limit_s;
  const bool pass = o.ok && in_time;
  failures += !pass;
  std::printf("%s  %2d  %-34s %s (%.3f s, limit %g s%s)\n", pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), dt,
              limit_s, in_time ? "" : ", TOO SLOW");
  std::fflush(stdout);
}

std::string str(const Rational& r) { return to_string(r); }

// Coin space and its two algebras.
struct Coin {
  SpaceRef s = make_space({"HH", "HT", "TH", "TT"});
  SigmaAlgebra a = generate_sigma_algebra(s, std::vector{EventSet::from_labels(s, {"HH", "HT"})});
  SigmaAlgebra b = generate_sigma_algebra(s, std::vector{EventSet::from_labels(s, {"HH", "TH"})});

  std::map<std::string, Rational> extension(Rational pa, Rational pb) const {
    std::vector<FactorMeasure> f{FactorMeasure(a, {pa, 1 - pa}), FactorMeasure(b, {pb, 1 - pb})};
    const auto p = extend(f);
    std::map<std::string, Rational> out;
    for (std::size_t c = 0; c < p.cell_prob().size(); ++c) {
      for (const auto& l : p.join_algebra().block(c).labels()) out[l] = p.cell_prob()[c];
    }
    return out;
  }
};

std::vector<std::size_t> small_dims(Gen& g, std::size_t k_lo, std::size_t k_hi, std::size_t d_hi, std::size_t cap) {
  while (true) {
    std::vector<std::size_t> dims;
    std::size_t prod = 1;
    for (std::size_t k = g.uniform(k_lo, k_hi); k > 0; --k) {
      dims.push_back(g.uniform(2, d_hi));
      prod *= dims.back();
    }
    if (prod <= cap) return dims;
  }
}

// Random logically independent instance with factor measures and its extension.
struct Instance {
  Family fam;
  SpaceRef space;
  std::vector<SigmaAlgebra> algs;
  std::vector<std::vector<Rational>> block_probs;
  std::vector<FactorMeasure> factors;
};

Instance random_instance(Gen& g) {
  Instance in;
  const auto dims = g.chance(0.2) ? std::vector<std::size_t>(4, 2) : small_dims(g, 2, 3, 3, 27);
  in.fam = product_family(g, dims, 2);
  in.space = make_space(atom_names(in.fam.atoms));
  in.algs = to_algebras(in.space, in.fam.partitions);
  for (const auto& a : in.algs) {
    in.block_probs.push_back(g.probs(a.block_count()));
    in.factors.emplace_back(a, in.block_probs.back());
  }
  return in;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main() {
  criterion(1, "coin reproduction (exact)", 1, [] {
    const Coin c;
    const auto p1 = c.extension(Rational(1, 4), Rational(3, 4));
    const auto p2 = c.extension(Rational(3, 4), Rational(1, 4));
    const bool ok = p1.at("HH") == Rational(3, 16) && p1.at("HT") == Rational(1, 16) &&
                    p1.at("TH") == Rational(9, 16) && p1.at("TT") == Rational(3, 16) &&
                    p2.at("HH") == Rational(3, 16) && p2.at("HT") == Rational(9, 16) &&
                    p2.at("TH") == Rational(1, 16) && p2.at("TT") == Rational(3, 16);
    return Outcome{ok, "P1 = " + str(p1.at("HH")) + "," + str(p1.at("HT")) + "," + str(p1.at("TH")) + "," +
                           str(p1.at("TT")) + "; P2 = " + str(p2.at("HH")) + "," + str(p2.at("HT")) + "," +
                           str(p2.at("TH")) + "," + str(p2.at("TT"))};
  });

  criterion(2, "mixture counterexample (exact)", 1, [] {
    const Coin c;
    const auto p3 = BlockMeasure::on_atoms(c.s, {{3, 16}, {5, 16}, {5, 16}, {3, 16}});
    const auto v = check_probabilistic_independence(std::vector{c.a, c.b}, p3);
    const bool ok = !v.independent && v.mismatch && v.mismatch->joint == Rational(3, 16) &&
                    v.mismatch->product == Rational(1, 4) && v.witness &&
                    witness_intersection(*v.witness).labels() == std::vector<std::string>{"HH"};
    return Outcome{ok, v.mismatch ? "P3(A∩B) = " + str(v.mismatch->joint) + " vs " + str(v.mismatch->product)
                                  : std::string("no mismatch reported")};
  });

  criterion(3, "logical check == brute force", 60, [] {
    Gen g(3003);
    int instances = 0, discrepancies = 0, independent = 0;
    while (instances < 1200) {
      Family f;
      switch (instances % 3) {
        case 0: f = product_family(g, small_dims(g, 2, 4, 4, 16)); break;
        case 1:
          f = product_family(g, small_dims(g, 2, 4, 4, 16));
          if (!drop_atoms(g, f, g.uniform(1, 3))) continue;
          break;
        default:
          f.atoms = g.uniform(2, 16);
          for (std::size_t k = g.uniform(2, 4); k > 0; --k) f.partitions.push_back(random_partition(g, f.atoms, 4));
      }
      const auto s = make_space(atom_names(f.atoms));
      const auto algs = to_algebras(s, f.partitions);
      const bool fast = check_logical_independence(algs).independent;
      const bool slow = check_logical_independence_bruteforce(algs).independent;
      const bool raw = oracle_logically_independent(f.partitions, f.atoms);
      discrepancies += (fast != slow) || (fast != raw);
      independent += raw;
      ++instances;
    }
    return Outcome{discrepancies == 0, std::to_string(instances) + " instances (" + std::to_string(independent) +
                                           " independent), " + std::to_string(discrepancies) + " discrepancies"};
  });

  // Criteria 4 and 5 share their instances.
  std::vector<Instance> instances;
  criterion(4, "extension correctness (property)", 120, [&] {
    Gen g(4004);
    int bad_marginal = 0, bad_indep = 0, bad_sum = 0;
    for (int i = 0; i < 500; ++i) {
      Instance in = random_instance(g);
      const auto p = extend(in.factors);
      const BlockMeasure pm = p.as_block_measure();
      const auto oracle = oracle_product_atoms(in.fam.partitions, in.block_probs, in.fam.atoms);
      for (std::size_t k = 0; k < in.algs.size(); ++k) {
        for (std::size_t b = 0; b < in.algs[k].block_count(); ++b) {
          Rational raw = 0;
          for (std::size_t a = 0; a < in.fam.atoms; ++a) {
            if (in.algs[k].block_of(a) == b) raw += oracle[a];
          }
          bad_marginal += pm(in.algs[k].block(b)) != in.block_probs[k][b] || raw != in.block_probs[k][b];
        }
      }
      // Library cells against the oracle, then the exhaustive product rule.
      std::vector<Rational> lib_atoms(in.fam.atoms, Rational(0));
      for (std::size_t c = 0; c < p.cell_prob().size(); ++c) lib_atoms[p.join_algebra().block(c).mask().first()] = p.cell_prob()[c];
      bad_indep += lib_atoms != oracle || !oracle_product_rule(in.fam.partitions, lib_atoms) ||
                   !check_probabilistic_independence(in.algs, pm).independent;
      bad_sum += sum(p.cell_prob()) != 1;
      instances.push_back(std::move(in));
    }
    return Outcome{bad_marginal + bad_indep + bad_sum == 0,
                   "500 instances; marginal/independence/sum failures " + std::to_string(bad_marginal) + "/" +
                       std::to_string(bad_indep) + "/" + std::to_string(bad_sum)};
  });

  criterion(5, "uniqueness detects perturbations", 120, [&] {
    Gen g(5005);
    int misses = 0, oracle_misses = 0, checked = 0;
    for (const auto& in : instances) {
      const auto p = extend(in.factors);
      std::vector<Rational> w = p.cell_prob();
      std::vector<std::size_t> positive;
      for (std::size_t c = 0; c < w.size(); ++c) {
        if (w[c] > 0) positive.push_back(c);
      }
      const std::size_t c1 = positive[g.uniform(0, positive.size() - 1)];
      std::size_t c2 = g.uniform(0, w.size() - 2);
      if (c2 >= c1) ++c2;
      const Rational delta = w[c1] * make_rational(static_cast<long>(g.uniform(1, 4)), 4);
      w[c1] -= delta;
      w[c2] += delta;
      const BlockMeasure q(p.join_algebra(), w);
      const auto r = verify_uniqueness(p, q);
      misses += r.marginals_match && r.independence.independent;
      // Independent check: the candidate must break a marginal or the product rule.
      std::vector<Rational> atoms(in.fam.atoms, Rational(0));
      for (std::size_t c = 0; c < w.size(); ++c) atoms[p.join_algebra().block(c).mask().first()] = w[c];
      bool marginals = true;
      for (std::size_t k = 0; k < in.algs.size(); ++k) {
        for (std::size_t b = 0; b < in.algs[k].block_count(); ++b) {
          Rational m = 0;
          for (std::size_t a = 0; a < in.fam.atoms; ++a) {
            if (in.algs[k].block_of(a) == b) m += atoms[a];
          }
          marginals = marginals && m == in.block_probs[k][b];
        }
      }
      oracle_misses += marginals && oracle_product_rule(in.fam.partitions, atoms);
      ++checked;
    }
    return Outcome{checked >= 500 && misses == 0 && oracle_misses == 0,
                   std::to_string(checked) + " perturbations, " + std::to_string(misses) + " misses (oracle " +
                       std::to_string(oracle_misses) + ")"};
  });

  criterion(6, "D-chain finite additivity", 60, [] {
    Gen g(6006);
    int families = 0, bad = 0;
    std::size_t total_parts = 0;
    while (families < 250) {
      const Family f = product_family(g, small_dims(g, 2, 3, 3, 27), 2);
      const auto s = make_space(atom_names(f.atoms));
      const auto algs = to_algebras(s, f.partitions);
      std::vector<FactorMeasure> factors;
      std::vector<std::vector<Rational>> bp;
      for (const auto& a : algs) {
        bp.push_back(g.probs(a.block_count()));
        factors.emplace_back(a, bp.back());
      }
      const auto p = extend(factors);
      const auto& fam = p.family();
      // Entries as block bitmasks; the union cylinder has a random nonempty
      // member per factor (all blocks = Omega).
      using Entry = std::vector<std::uint64_t>;
      Entry u(algs.size());
      for (std::size_t k = 0; k < algs.size(); ++k) {
        const std::uint64_t full = (std::uint64_t{1} << algs[k].block_count()) - 1;
        u[k] = g.chance(0.3) ? full : g.uniform(1, full);
      }
      std::vector<Entry> parts{u};
      for (std::size_t step = g.uniform(1, 6); step > 0; --step) {
        const std::size_t pi = g.uniform(0, parts.size() - 1);
        const std::size_t k = g.uniform(0, algs.size() - 1);
        const std::uint64_t m = parts[pi][k];
        if (std::popcount(m) < 2) continue;
        std::uint64_t left = 0;
        while (left == 0 || left == m) {
          left = 0;
          for (std::uint64_t bits = m; bits; bits &= bits - 1) {
            if (g.chance(0.5)) left |= bits & (~bits + 1);
          }
        }
        Entry other = parts[pi];
        parts[pi][k] = left;
        other[k] = m & ~left;
        parts.push_back(std::move(other));
      }
      const auto to_cyl = [&](const Entry& e) {
        CylinderEvent c;
        for (std::size_t k = 0; k < e.size(); ++k) {
          if (e[k] != (std::uint64_t{1} << algs[k].block_count()) - 1) c.factors.emplace(k, algs[k].union_of(e[k]));
        }
        return c;
      };
      std::vector<CylinderEvent> cyls;
      for (const auto& e : parts) cyls.push_back(to_cyl(e));
      // Every few families, split with the semiring difference instead.
      if (families % 4 == 3) {
        Entry c(algs.size());
        for (std::size_t k = 0; k < algs.size(); ++k) c[k] = g.uniform(1, (std::uint64_t{1} << algs[k].block_count()) - 1);
        cyls = fam.semiring_difference(to_cyl(u), to_cyl(c));
        const auto inner = fam.intersect(to_cyl(u), to_cyl(c));
        if (!inner.empty_marker) cyls.push_back(inner);
        if (cyls.size() < 2) continue;
      }
      const auto r = verify_finite_additivity(p, cyls);
      // Oracle: sum of product atom masses over each realized part and over the union.
      const auto oracle = oracle_product_atoms(f.partitions, bp, f.atoms);
      const auto mass = [&](const EventSet& e) {
        Rational m = 0;
        for (auto a : e.atoms()) m += oracle[a];
        return m;
      };
      Rational parts_sum = 0;
      for (const auto& c : cyls) parts_sum += mass(fam.realize(c));
      const Rational union_mass = mass(fam.realize(to_cyl(u)));
      std::uint64_t chains = 0;
      for (auto n : r.chains_per_part) chains += n;
      bad += !(r.holds && r.chains_partition_parts && r.parts_sum == r.union_measure && r.chain_sum == r.union_measure &&
               parts_sum == union_mass && r.union_measure == union_mass && chains == r.d_chain_count);
      total_parts += cyls.size();
      ++families;
    }
    return Outcome{bad == 0, std::to_string(families) + " families, " + std::to_string(total_parts) + " parts, " +
                                 std::to_string(bad) + " failures"};
  });

  criterion(7, "Jordan decomposition", 30, [] {
    Gen g(7007);
    int bad = 0;
    for (int i = 0; i < 500; ++i) {
      const std::size_t n = g.uniform(2, 8);
      const auto s = make_space(atom_names(n));
      const auto alg = i % 2 ? SigmaAlgebra::discrete(s) : to_algebra(s, random_partition(g, n, 4));
      std::vector<Rational> w;
      for (std::size_t b = 0; b < alg.block_count(); ++b) w.push_back(g.signed_weight());
      const BlockMeasure mu(alg, w);
      const auto jp = jordan_decompose(mu);
      bool ok = jp.positive(jp.hahn_positive_set.complement()) == 0 && jp.negative(jp.hahn_positive_set) == 0;
      for (std::size_t b = 0; b < w.size(); ++b) {
        ok = ok && jp.positive.weights()[b] - jp.negative.weights()[b] == w[b] && jp.positive.weights()[b] >= 0 &&
             jp.negative.weights()[b] >= 0;
      }
      const auto members = enumerate_members(alg);
      for (int alt = 0; alt < 10; ++alt) {
        std::vector<Rational> neg, pos;
        for (const auto& x : w) {
          Rational r = make_rational(static_cast<long>(g.uniform(0, 12)), static_cast<long>(g.uniform(1, 4)));
          if (x + r < 0) r = -x + make_rational(static_cast<long>(g.uniform(0, 3)), 2);
          neg.push_back(r);
          pos.push_back(x + r);
        }
        const BlockMeasure nu_pos(alg, pos), nu_neg(alg, neg);
        for (const auto& e : members) ok = ok && nu_pos(e) >= jp.positive(e) && nu_neg(e) >= jp.negative(e);
        ok = ok && nu_pos.total() + nu_neg.total() >= jp.positive.total() + jp.negative.total();
      }
      bad += !ok;
    }
    return Outcome{bad == 0, "500 signed measures x 10 alternatives, " + std::to_string(bad) + " failures"};
  });

  const auto bernoulli = [](std::uint64_t horizon, bool clt) {
    return select_identical_measures(RangeSpec::make({0, 1}), CoordinateMeasure::make({Rational(1, 2), Rational(1, 2)}),
                                     horizon, clt);
  };

  criterion(8, "LLN, Bernoulli(1/2), n=1e5", 5, [&] {
    const auto r = run_lln(bernoulli(100000, false), 100000, 20240601);
    char buf[96];
    std::snprintf(buf, sizeof buf, "|S_n/n - 1/2| = %.6g (bound 0.01)", std::fabs(r.final_deviation));
    return Outcome{std::fabs(r.final_deviation) <= 0.01, buf};
  });

  criterion(9, "CLT, n=2000, 5000 reps", 30, [&] {
    const auto r = run_clt(bernoulli(2000, true), 2000, 5000, 20240602);
    char buf[96];
    std::snprintf(buf, sizeof buf, "KS distance = %.6g (bound 0.03)", r.ks_distance);
    return Outcome{r.ks_distance <= 0.03, buf};
  });

  criterion(10, "Lindeberg exactness", 1, [&] {
    const Rational one = lindeberg_sum(bernoulli(4, false), 4, Rational(1, 10));
    Gen g(1010);
    int zero_checks = 0, bad = 0;
    for (int i = 0; i < 200; ++i) {
      const std::size_t k = g.uniform(2, 4);
      std::vector<Rational> support;
      Rational x(static_cast<long>(g.uniform(0, 10)) - 5);
      for (std::size_t j = 0; j < k; ++j) {
        support.push_back(x);
        x += make_rational(static_cast<long>(g.uniform(1, 5)), static_cast<long>(g.uniform(1, 4)));
      }
      const auto probs = g.probs(k, false);
      const std::uint64_t n = g.uniform(1, 50);
      const auto spec = select_identical_measures(RangeSpec::make(support), CoordinateMeasure::make(probs), n);
      const auto mo = moments(spec.range, spec.measure_at(1));
      const Rational b2 = mo.variance * static_cast<long>(n);
      Rational max_d2 = 0;
      for (const auto& v : support) max_d2 = std::max(max_d2, Rational((v - mo.mean) * (v - mo.mean)));
      // eps^2 > max_d2 / b2 holds for eps = max_d2 / b2 + 1.
      const Rational eps = max_d2 / b2 + 1;
      bad += lindeberg_sum(spec, n, eps) != 0;
      ++zero_checks;
    }
    return Outcome{one == 1 && bad == 0, "Bernoulli n=4 eps=1/10 -> " + str(one) + "; " + std::to_string(zero_checks) +
                                             " large-eps cases, " + std::to_string(bad) + " nonzero"};
  });

  criterion(11, "Kolmogorov condition", 1, [] {
    const VarianceRule constant{[](std::uint64_t) { return Rational(1); },
                                GrowthBound{GrowthBound::Direction::Upper, 1, 1, 0}};
    const VarianceRule linear{[](std::uint64_t n) { return Rational(static_cast<long>(n)); },
                              GrowthBound{GrowthBound::Direction::Lower, 1, 1, 1}};
    const VarianceRule unbounded{[](std::uint64_t) { return Rational(1); }, std::nullopt};
    const auto c = kolmogorov_condition(constant, 10000, 1e-3);
    const auto d = kolmogorov_condition(linear, 10000, 1e-3);
    const auto u = kolmogorov_condition(unbounded, 10000, 1e-3);
    const bool ok = c.verdict == SeriesVerdict::Convergent && c.tail_bound && c.within_tolerance &&
                    d.verdict == SeriesVerdict::Divergent && u.verdict == SeriesVerdict::Undecided;
    char buf[160];
    std::snprintf(buf, sizeof buf, "sigma^2=1 -> %s (tail <= %.3g); sigma^2=n -> %s; no bound -> %s",
                  to_string(c.verdict).c_str(), c.tail_bound.value_or(NAN), to_string(d.verdict).c_str(),
                  to_string(u.verdict).c_str());
    return Outcome{ok, buf};
  });

  criterion(12, "LIL smoke, n=1e5", 10, [&] {
    const auto r = run_lil(bernoulli(100000, false), 100000, 20240603);
    char buf[96];
    std::snprintf(buf, sizeof buf, "running max = %.6g (band [0.2, 2.0])", r.running_max);
    return Outcome{r.running_max >= 0.2 && r.running_max <= 2.0, buf};
  });

  criterion(13, "determinism of the CLI suite", 60, [] {
    const auto pf = cli::parse_problem(slurp(std::string(INDEP_PROBLEMS_DIR) + "/suite.json"));
    const auto first = cli::render_json(cli::run(pf, {1}));
    const auto second = cli::render_json(cli::run(pf, {1}));
    const auto eight = cli::render_json(cli::run(pf, {8}));
    const bool ok = first == second && first == eight;
    return Outcome{ok, std::to_string(pf.tasks.size()) + " tasks, " + std::to_string(first.size()) +
                           " bytes; rerun " + (first == second ? "identical" : "DIFFERS") + ", 8 threads " +
                           (first == eight ? "identical" : "DIFFERS")};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
