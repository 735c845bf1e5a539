#include <catch2/catch_amalgamated.hpp>

#include "indep/error.hpp"
#include "indep/extension.hpp"
#include "support.hpp"

using namespace indep;
using namespace testsupport;

namespace {

struct Coin {
  SpaceRef s = make_space({"HH", "HT", "TH", "TT"});
  EventSet A = EventSet::from_labels(s, {"HH", "HT"});
  EventSet B = EventSet::from_labels(s, {"HH", "TH"});
  SigmaAlgebra sa = generate_sigma_algebra(s, std::vector{A});
  SigmaAlgebra sb = generate_sigma_algebra(s, std::vector{B});

  // P_A(A) = pa on sigma(A), P_B(B) = pb on sigma(B).
  ExtensionMeasure extension(Rational pa, Rational pb) const {
    std::vector<FactorMeasure> f{FactorMeasure(sa, {pa, 1 - pa}), FactorMeasure(sb, {pb, 1 - pb})};
    return extend(f);
  }
  CylinderEvent cyl(std::optional<EventSet> a, std::optional<EventSet> b) const {
    CylinderEvent c;
    if (a) c.factors.emplace(0, *a);
    if (b) c.factors.emplace(1, *b);
    return c;
  }
};

std::map<std::string, Rational> by_atom(const ExtensionMeasure& p) {
  std::map<std::string, Rational> out;
  for (std::size_t c = 0; c < p.cell_prob().size(); ++c) {
    for (const auto& l : p.join_algebra().block(c).labels()) out[l] = p.cell_prob()[c];
  }
  return out;
}

}  // namespace

TEST_CASE("coin extension reproduces both product tables", "[extension]") {
  const Coin c;
  const auto p1 = by_atom(c.extension(Rational(1, 4), Rational(3, 4)));
  CHECK(p1.at("HH") == Rational(3, 16));
  CHECK(p1.at("HT") == Rational(1, 16));
  CHECK(p1.at("TH") == Rational(9, 16));
  CHECK(p1.at("TT") == Rational(3, 16));
  const auto p2 = by_atom(c.extension(Rational(3, 4), Rational(1, 4)));
  CHECK(p2.at("HH") == Rational(3, 16));
  CHECK(p2.at("HT") == Rational(9, 16));
  CHECK(p2.at("TH") == Rational(1, 16));
  CHECK(p2.at("TT") == Rational(3, 16));
}

TEST_CASE("extension of dependent algebras is refused with a witness", "[extension]") {
  const Coin c;
  std::vector<FactorMeasure> f{FactorMeasure(c.sa, {Rational(1, 2), Rational(1, 2)}),
                               FactorMeasure(c.sa, {Rational(1, 3), Rational(2, 3)})};
  try {
    extend(f);
    FAIL("dependent family accepted");
  } catch (const NotIndependentError& e) {
    CHECK(e.code() == ErrorCode::NotLogicallyIndependent);
    CHECK(witness_intersection(e.witness()).is_empty());
  }
  CHECK_THROWS_AS(FactorMeasure(c.sa, {Rational(1, 2), Rational(1, 3)}), Error);
}

TEST_CASE("cylinder measure and canonical forms", "[extension]") {
  const Coin c;
  const auto p = c.extension(Rational(1, 4), Rational(3, 4));
  CHECK(measure_of_cylinder(p, c.cyl(c.A, c.B)) == Rational(3, 16));
  CHECK(measure_of_cylinder(p, c.cyl(c.A, std::nullopt)) == Rational(1, 4));
  CHECK(measure_of_cylinder(p, CylinderEvent::omega()) == 1);
  CHECK(measure_of_cylinder(p, CylinderEvent::empty()) == 0);
  const auto& fam = p.family();
  CHECK(fam.canonical_form(c.cyl(c.A, EventSet::full(c.s))) == c.cyl(c.A, std::nullopt));
  CHECK(fam.canonical_form(c.cyl(c.A, EventSet::empty(c.s))).empty_marker);
  CHECK(fam.intersect(c.cyl(c.A, std::nullopt), c.cyl(c.A.complement(), std::nullopt)).empty_marker);
  CHECK(fam.realize(c.cyl(c.A, c.B)).labels() == std::vector<std::string>{"HH"});
  CHECK_THROWS_AS(fam.realize(c.cyl(c.B, std::nullopt)), Error);  // B is not in sigma(A)
}

TEST_CASE("semiring difference follows the telescoping pattern", "[extension]") {
  const Coin c;
  const IndependentFamily fam({c.sa, c.sb});
  const auto d1 = fam.semiring_difference(c.cyl(c.A, std::nullopt), c.cyl(c.A, c.B));
  REQUIRE(d1.size() == 1);
  CHECK(d1[0] == c.cyl(c.A, c.B.complement()));

  const auto d2 = fam.semiring_difference(CylinderEvent::omega(), c.cyl(c.A, c.B));
  REQUIRE(d2.size() == 2);
  const EventSet r0 = fam.realize(d2[0]);
  const EventSet r1 = fam.realize(d2[1]);
  CHECK_FALSE(r0.intersects(r1));
  CHECK((r0 | r1) == (c.A & c.B).complement());
}

TEST_CASE("semiring difference partitions a \\ b on random families", "[extension][property]") {
  Gen g(404);
  for (int trial = 0; trial < 150; ++trial) {
    std::vector<std::size_t> dims;
    for (std::size_t k = g.uniform(2, 3); k > 0; --k) dims.push_back(g.uniform(2, 3));
    const Family f = product_family(g, dims, 2);
    const auto s = make_space(atom_names(f.atoms));
    const IndependentFamily fam(to_algebras(s, f.partitions));
    const auto random_cyl = [&] {
      CylinderEvent c;
      for (std::size_t i = 0; i < fam.size(); ++i) {
        if (g.chance(0.3)) continue;
        const auto& alg = fam.algebras()[i];
        c.factors.emplace(i, alg.union_of(g.uniform(1, (std::uint64_t{1} << alg.block_count()) - 1)));
      }
      return c;
    };
    const CylinderEvent a = random_cyl();
    const CylinderEvent b = random_cyl();
    const auto parts = fam.semiring_difference(a, b);
    EventSet acc = EventSet::empty(s);
    for (const auto& p : parts) {
      const EventSet r = fam.realize(p);
      CHECK_FALSE(r.intersects(acc));
      acc = acc | r;
    }
    CHECK(acc == (fam.realize(a) - fam.realize(b)));
  }
}

TEST_CASE("union representation", "[extension]") {
  const Coin c;
  const IndependentFamily fam({c.sa, c.sb});
  const std::vector ok{c.cyl(c.A, c.B), c.cyl(c.A, c.B.complement())};
  const auto r = fam.verify_union_representation(ok);
  CHECK(r.representable);
  CHECK(r.matches_componentwise);
  CHECK(r.holds());
  CHECK(r.union_cylinder == c.cyl(c.A, std::nullopt));

  const std::vector bad{c.cyl(c.A, c.B), c.cyl(c.A.complement(), c.B.complement())};
  CHECK_FALSE(fam.verify_union_representation(bad).representable);
  CHECK_FALSE(fam.as_cylinder(c.A & c.B | (c.A.complement() & c.B.complement())));
  CHECK(fam.hull(EventSet::from_labels(c.s, {"HH"})) == c.cyl(c.A, c.B));
}

TEST_CASE("finite additivity through D-chains on the coin", "[extension]") {
  const Coin c;
  const auto p = c.extension(Rational(1, 4), Rational(3, 4));
  const std::vector parts{c.cyl(c.A, c.B), c.cyl(c.A, c.B.complement())};
  const auto r = verify_finite_additivity(p, parts);
  CHECK(r.holds);
  CHECK(r.parts_sum == Rational(1, 4));
  CHECK(r.union_measure == Rational(1, 4));
  CHECK(r.chain_sum == Rational(1, 4));
  CHECK(r.chains_partition_parts);

  const std::vector bad{c.cyl(c.A, c.B), c.cyl(c.A.complement(), c.B.complement())};
  try {
    verify_finite_additivity(p, bad);
    FAIL("non-cylinder union accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnionNotCylinder);
  }
  const std::vector overlap{c.cyl(c.A, std::nullopt), c.cyl(c.A, c.B)};
  try {
    verify_finite_additivity(p, overlap);
    FAIL("overlapping parts accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotDisjoint);
  }
}

TEST_CASE("uniqueness rejects the mixture", "[extension]") {
  const Coin c;
  const auto p1 = c.extension(Rational(1, 2), Rational(1, 2));
  const BlockMeasure p3 = BlockMeasure::on_atoms(c.s, {{3, 16}, {5, 16}, {5, 16}, {3, 16}});
  const auto r = verify_uniqueness(p1, p3);
  CHECK(r.marginals_match);
  CHECK_FALSE(r.independence.independent);
  CHECK_FALSE(r.holds);
  const auto same = verify_uniqueness(p1, p1.as_block_measure());
  CHECK(same.holds);
  CHECK(same.equals_extension);
}

TEST_CASE("extension restricts to the marginals and is independent", "[extension][property]") {
  Gen g(99);
  for (int trial = 0; trial < 120; ++trial) {
    std::vector<std::size_t> dims;
    for (std::size_t k = g.uniform(2, 3); k > 0; --k) dims.push_back(g.uniform(2, 3));
    const Family f = product_family(g, dims, 2);
    const auto s = make_space(atom_names(f.atoms));
    const auto algs = to_algebras(s, f.partitions);
    std::vector<std::vector<Rational>> bp;
    std::vector<FactorMeasure> factors;
    for (const auto& a : algs) {
      bp.push_back(g.probs(a.block_count()));
      factors.emplace_back(a, bp.back());
    }
    const auto p = extend(factors);
    const BlockMeasure pm = p.as_block_measure();
    CHECK(sum(p.cell_prob()) == 1);
    for (std::size_t i = 0; i < algs.size(); ++i) {
      for (std::size_t b = 0; b < algs[i].block_count(); ++b) CHECK(pm(algs[i].block(b)) == bp[i][b]);
    }
    const auto oracle = oracle_product_atoms(f.partitions, bp, f.atoms);
    for (std::size_t a = 0; a < f.atoms; ++a) {
      if (oracle[a] == 0) continue;
      CHECK(pm(EventSet(s, p.join_algebra().block(p.join_algebra().block_of(a)).mask())) == oracle[a]);
    }
    CHECK(oracle_product_rule(f.partitions, oracle));
    CHECK(check_probabilistic_independence(algs, pm).independent);
  }
}
