#include <catch_amalgamated.hpp>

#include <memory>
#include <random>

#include "bordcalc/errors.hpp"
#include "bordcalc/graded_ring.hpp"

using namespace bordcalc;

namespace {

RingPtr su_integral() {
  return std::make_shared<RingPresentation>(
      CoeffRing::Z,
      std::vector<RingGenerator>{{"b2", 3, GenKind::Exterior}, {"b3", 5, GenKind::Exterior},
                                 {"b4", 7, GenKind::Exterior}, {"b5", 9, GenKind::Exterior}},
      9);
}

RingPtr su_mod2() {
  auto r = std::make_shared<RingPresentation>(
      CoeffRing::Z2,
      std::vector<RingGenerator>{{"b̄2", 3, GenKind::Exterior}, {"b̄3", 5, GenKind::Exterior},
                                 {"b̄4", 7, GenKind::Exterior}, {"b̄5", 9, GenKind::Exterior}},
      10);
  r->set_square(2, "b̄2", r->parse_terms("b̄3"));
  r->set_square(2, "b̄3", r->parse_terms("0"));
  r->set_square(2, "b̄4", r->parse_terms("b̄5"));
  return r;
}

RingPtr bsu_integral() {
  return std::make_shared<RingPresentation>(
      CoeffRing::Z,
      std::vector<RingGenerator>{{"c2", 4, GenKind::Polynomial}, {"c3", 6, GenKind::Polynomial},
                                 {"c4", 8, GenKind::Polynomial}, {"c5", 10, GenKind::Polynomial}},
      10);
}

RingPtr bsu_mod2() {
  auto r = std::make_shared<RingPresentation>(
      CoeffRing::Z2,
      std::vector<RingGenerator>{{"c̄2", 4, GenKind::Polynomial}, {"c̄3", 6, GenKind::Polynomial},
                                 {"c̄4", 8, GenKind::Polynomial}, {"c̄5", 10, GenKind::Polynomial}},
      10);
  r->set_square(2, "c̄2", r->parse_terms("c̄3"));
  r->set_square(2, "c̄3", r->parse_terms("0"));
  r->set_square(2, "c̄4", r->parse_terms("c̄5"));
  return r;
}

RingPtr kz3_mod2() {
  auto r = std::make_shared<RingPresentation>(
      CoeffRing::Z2,
      std::vector<RingGenerator>{{"d̄3", 3, GenKind::Polynomial}, {"d̄′5", 5, GenKind::Polynomial},
                                 {"d̄′9", 9, GenKind::Polynomial}},
      9);
  r->set_square(2, "d̄3", r->parse_terms("d̄′5"));
  r->set_square(2, "d̄′5", r->parse_terms("0"));
  r->set_square(1, "d̄′5", r->parse_terms("d̄3^2"));
  return r;
}

PairingTable identity_pairing(const RingPtr& ring, const std::map<int, std::vector<std::string>>& homology) {
  PairingTable t(ring);
  for (const auto& [d, labels] : homology) {
    t.set_homology_basis(d, labels);
    auto basis = ring->basis(d);
    for (std::size_t i = 0; i < basis.size(); ++i) t.set_value(d, basis[i], labels[i], 1);
  }
  t.validate();
  return t;
}

}  // namespace

TEST_CASE("products in the fixture rings") {
  auto su = su_integral();
  auto b2 = CohomologyClass::generator(su, "b2");
  auto b3 = CohomologyClass::generator(su, "b3");
  CHECK(multiply(b2, b2).is_zero());
  CHECK(multiply(b2, b3) == multiply(b3, b2) * Integer(-1));
  CHECK(multiply(b2, b3).str() == "b2b3");

  auto bsu = bsu_integral();
  auto c2 = CohomologyClass::generator(bsu, "c2");
  auto sq = multiply(c2, c2);
  CHECK(sq.str() == "c2²");
  auto basis8 = bsu->basis(8);
  REQUIRE(basis8.size() == 2);
  CHECK(bsu->monomial_label(basis8[0]) == "c4");
  CHECK(bsu->monomial_label(basis8[1]) == "c2²");
  CHECK(sq.coordinates() == std::vector<Integer>{0, 1});
  CHECK_THROWS_AS(multiply(multiply(c2, c2), CohomologyClass::generator(bsu, "c3")), InputError);
}

TEST_CASE("graded commutativity holds on all basis pairs within the cap") {
  for (const auto& ring : {su_integral(), bsu_integral()}) {
    for (int a = 0; a <= ring->degree_cap(); ++a)
      for (int b = 0; a + b <= ring->degree_cap(); ++b)
        for (const auto& x : ring->basis(a))
          for (const auto& y : ring->basis(b)) {
            auto cx = CohomologyClass::monomial(ring, x);
            auto cy = CohomologyClass::monomial(ring, y);
            Integer sign = (a * b) % 2 == 0 ? 1 : -1;
            REQUIRE(multiply(cx, cy) == multiply(cy, cx) * sign);
          }
  }
}

TEST_CASE("Steenrod squares on fixture classes") {
  auto su = su_mod2();
  auto b2 = CohomologyClass::generator(su, "b̄2");
  auto b3 = CohomologyClass::generator(su, "b̄3");
  CHECK(sq2(b2) == b3);
  CHECK(sq2(sq2(b2)).is_zero());
  CHECK(sq2(multiply(b2, b3)).is_zero());

  auto bsu = bsu_mod2();
  auto c2 = CohomologyClass::generator(bsu, "c̄2");
  CHECK(sq2(multiply(c2, c2)).is_zero());
  CHECK(sq2(CohomologyClass::generator(bsu, "c̄4")) == CohomologyClass::generator(bsu, "c̄5"));

  auto kz3 = kz3_mod2();
  CHECK(sq2(CohomologyClass::generator(kz3, "d̄′5")).is_zero());
  auto d3 = CohomologyClass::generator(kz3, "d̄3");
  CHECK(sq2(multiply(d3, d3)).is_zero());
  CHECK(sq1(sq2(d3)) == multiply(d3, d3));

  CHECK_THROWS_AS(sq2(CohomologyClass::generator(su, "b̄5")), InputError);
  CHECK_THROWS_AS(sq2(multiply(b2, CohomologyClass::generator(su, "b̄4"))), InputError);
  CHECK_THROWS_AS(sq2(CohomologyClass::generator(su_integral(), "b2")), InputError);
}

TEST_CASE("Sq2 is additive and raises degree by two") {
  auto bsu = bsu_mod2();
  for (int d = 0; d + 2 <= bsu->degree_cap(); ++d) {
    auto basis = bsu->basis(d);
    for (const auto& x : basis)
      for (const auto& y : basis) {
        auto cx = CohomologyClass::monomial(bsu, x);
        auto cy = CohomologyClass::monomial(bsu, y);
        auto s = sq2(cx + cy);
        REQUIRE(s.degree() == d + 2);
        REQUIRE(s == sq2(cx) + sq2(cy));
      }
  }
}

TEST_CASE("pairing evaluations") {
  auto su = su_integral();
  auto t = identity_pairing(su, {{3, {"β2"}}, {5, {"β3"}}, {8, {"β2β3"}}});
  auto b2b3 = multiply(CohomologyClass::generator(su, "b2"), CohomologyClass::generator(su, "b3"));
  CHECK(t.pair(b2b3, "β2β3") == 1);
  CHECK_THROWS_AS(t.pair(CohomologyClass::generator(su, "b2"), "β3"), InputError);

  auto kz3 = kz3_mod2();
  auto p = identity_pairing(kz3, {{3, {"δ̄3"}}, {5, {"δ̄′5"}}, {6, {"δ̄3²"}}, {8, {"δ̄3δ̄′5"}}, {9, {"δ̄′9", "δ̄3³"}}});
  auto d3 = CohomologyClass::generator(kz3, "d̄3");
  CHECK(p.pair(multiply(d3, sq2(d3)), "δ̄3δ̄′5") == 1);
}

TEST_CASE("dualizing cohomology maps") {
  auto su = su_mod2();
  auto t = identity_pairing(su, {{3, {"β̄2"}}, {5, {"β̄3"}}, {7, {"β̄4"}}, {8, {"β̄2β̄3"}}, {9, {"β̄5"}}});
  auto d = dual_sq2(t, 5);
  CHECK(d.matrix() == IntMatrix::from_rows({{1}}));
  CHECK(dual_sq2(t, 7).is_zero());
  CHECK(dual_sq2(t, 9).matrix() == IntMatrix::from_rows({{1}}));

  PairingBlock dom{t.block(3).cohomology, t.block(3).homology, t.block(3).matrix};
  CHECK(dualize(IntMatrix(1, 1), dom, dom, CoeffRing::Z2).is_zero());
  CHECK_THROWS_AS(dualize(IntMatrix(2, 1), dom, dom, CoeffRing::Z2), InputError);

  // λ*: H³(K(Z,3)) → H³(SU), d3 ↦ b2, dualizes to β2 ↦ δ3.
  PairingBlock kz{{Monomial{1}}, {"δ3"}, IntMatrix::identity(1)};
  PairingBlock s{{Monomial{1, 0, 0, 0}}, {"β2"}, IntMatrix::identity(1)};
  auto lam = dualize(IntMatrix::identity(1), kz, s, CoeffRing::Z);
  CHECK(lam.matrix() == IntMatrix::identity(1));
}

TEST_CASE("dualize is an involution for identity pairings") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> entry(-4, 4), size(1, 3);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t a = static_cast<std::size_t>(size(rng)), b = static_cast<std::size_t>(size(rng));
    PairingBlock pa{std::vector<Monomial>(a), std::vector<std::string>(a), IntMatrix::identity(a)};
    PairingBlock pb{std::vector<Monomial>(b), std::vector<std::string>(b), IntMatrix::identity(b)};
    IntMatrix f(b, a);
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = 0; j < a; ++j) f(i, j) = entry(rng);
    auto once = dualize(f, pa, pb, CoeffRing::Z);
    auto twice = dualize(once.matrix(), pb, pa, CoeffRing::Z);
    REQUIRE(twice.matrix() == f);
  }
}

TEST_CASE("mod 2 reduction of the integral rings matches the Z2 bases") {
  std::vector<std::pair<RingPtr, RingPtr>> pairs{{su_integral(), su_mod2()}, {bsu_integral(), bsu_mod2()}};
  for (const auto& [z, z2] : pairs) {
    for (int d = 0; d <= z->degree_cap(); ++d) {
      auto bz = z->basis(d);
      auto b2 = z2->basis(d);
      REQUIRE(bz.size() == b2.size());
      REQUIRE(bz == b2);
    }
  }
}

TEST_CASE("monomial parsing round-trips through labels") {
  auto kz3 = kz3_mod2();
  for (int d = 0; d <= 9; ++d)
    for (const auto& m : kz3->basis(d)) REQUIRE(kz3->parse_monomial(kz3->monomial_label(m)) == m);
  CHECK(kz3->parse_monomial("d̄3^2*d̄′5") == Monomial{2, 1, 0});
  CHECK_THROWS_AS(kz3->parse_monomial("x7"), InputError);
}
