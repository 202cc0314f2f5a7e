#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>

#include "bordcalc/errors.hpp"
#include "bordcalc/picard.hpp"

using namespace bordcalc;

namespace {

FGAbelianGroup Zn(long n) { return FGAbelianGroup::cyclic(n); }

// All finite abelian groups of order at most 16, one per isomorphism class.
std::vector<FGAbelianGroup> small_groups() {
  std::vector<std::string> texts{"0",       "Z/2",     "Z/3",     "Z/4",      "Z/2^2",   "Z/5",   "Z/6",
                                 "Z/7",     "Z/8",     "Z/2+Z/4", "Z/2^3",    "Z/9",     "Z/3^2", "Z/10",
                                 "Z/11",    "Z/12",    "Z/2+Z/6", "Z/13",     "Z/14",    "Z/15",  "Z/16",
                                 "Z/2+Z/8", "Z/4^2",   "Z/2^2+Z/4", "Z/2^4"};
  std::vector<FGAbelianGroup> out;
  for (const auto& t : texts) out.push_back(FGAbelianGroup::parse(t));
  return out;
}

// Independent oracle: every function π₀ × π₀ → π₁ given as a full table, filtered for bilinearity.
// Only feasible for tiny groups; counts (|Alt|, |Skew|, |Hom(π₀/2π₀, π₁)|).
std::tuple<long, long, long> brute_force_counts(const FGAbelianGroup& pi0, const FGAbelianGroup& pi1) {
  auto a = enumerate(pi0);
  auto b = enumerate(pi1);
  std::size_t n = a.size(), m = b.size();
  auto index_of = [](const std::vector<Element>& v, const Element& e) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), e) - v.begin());
  };
  std::vector<std::vector<std::size_t>> sum0(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sum0[i][j] = index_of(a, add(pi0, a[i], a[j]));
  std::vector<std::vector<std::size_t>> sum1(m, std::vector<std::size_t>(m));
  std::vector<std::size_t> neg1(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) sum1[i][j] = index_of(b, add(pi1, b[i], b[j]));
    neg1[i] = index_of(b, scale(pi1, -1, b[i]));
  }

  long alt = 0, skew = 0;
  std::vector<std::size_t> table(n * n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == n * n) {
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t z = 0; z < n; ++z) {
            if (table[sum0[x][y] * n + z] != sum1[table[x * n + z]][table[y * n + z]]) return;
            if (table[z * n + sum0[x][y]] != sum1[table[z * n + x]][table[z * n + y]]) return;
          }
      bool is_skew = true, is_alt = true;
      for (std::size_t x = 0; x < n; ++x) {
        if (table[x * n + x] != 0) is_alt = false;
        for (std::size_t y = 0; y < n; ++y)
          if (table[x * n + y] != neg1[table[y * n + x]]) is_skew = false;
      }
      skew += is_skew;
      alt += is_skew && is_alt;
      return;
    }
    for (std::size_t v = 0; v < m; ++v) {
      table[k] = v;
      rec(k + 1);
    }
  };
  rec(0);

  // Homomorphisms π₀ → π₁ that kill 2π₀, as full tables.
  long hom = 0;
  std::vector<std::size_t> f(n, 0);
  std::function<void(std::size_t)> rec_hom = [&](std::size_t k) {
    if (k == n) {
      for (std::size_t x = 0; x < n; ++x) {
        if (f[sum0[x][x]] != 0) return;
        for (std::size_t y = 0; y < n; ++y)
          if (f[sum0[x][y]] != sum1[f[x]][f[y]]) return;
      }
      ++hom;
      return;
    }
    for (std::size_t v = 0; v < m; ++v) {
      f[k] = v;
      rec_hom(k + 1);
    }
  };
  rec_hom(0);
  return {alt, skew, hom};
}

}  // namespace

TEST_CASE("quadratic map examples", "[picard]") {
  auto z4 = Zn(4);
  QuadraticMap square(z4, z4, [](const Element& x) { return Element{x[0] * x[0]}; });
  CHECK(is_quadratic(square).holds);
  CHECK(is_quadratic(square).exhaustive);
  CHECK_FALSE(is_linear_quadratic(square).holds);

  auto z2 = Zn(2);
  auto zero = QuadraticMap::zero(z4, z2);
  CHECK(is_quadratic(zero).holds);
  CHECK(is_linear_quadratic(zero).holds);

  QuadraticMap id(z2, z2, [](const Element& x) { return x; });
  CHECK(is_quadratic(id).holds);
  CHECK(is_linear_quadratic(id).holds);

  QuadraticMap cube(Zn(5), Zn(5), [](const Element& x) { return Element{x[0] * x[0] * x[0]}; });
  auto verdict = is_quadratic(cube);
  CHECK_FALSE(verdict.holds);
  CHECK_FALSE(verdict.witness.empty());
}

TEST_CASE("ill-defined maps are not quadratic", "[picard]") {
  // x ↦ x on representatives 0..2 of Z/3 into Z: not compatible with x ~ x + 3.
  QuadraticMap bad(Zn(3), FGAbelianGroup::free(1), [](const Element& x) { return Element{x[0]}; });
  CHECK_FALSE(is_quadratic(bad).holds);
}

TEST_CASE("quadratic maps on infinite groups are sampled", "[picard]") {
  auto z = FGAbelianGroup::free(1);
  auto q = QuadraticMap::from_generators(z, z, {Element{3}});
  auto verdict = is_quadratic(q);
  CHECK(verdict.holds);
  CHECK_FALSE(verdict.exhaustive);
  CHECK(q(Element{5}) == Element{75});
  CHECK_FALSE(is_linear_quadratic(q).holds);
}

TEST_CASE("from_generators uses the bilinear cross terms", "[picard]") {
  auto g = FGAbelianGroup::parse("Z/2^2");
  auto z2 = Zn(2);
  std::vector<std::vector<Element>> b(2, std::vector<Element>(2, Element{0}));
  b[0][1] = Element{1};
  auto q = QuadraticMap::from_generators(g, z2, {Element{0}, Element{0}}, b);
  CHECK(q(Element{1, 1}) == Element{1});
  CHECK(q.bilinear(Element{1, 0}, Element{0, 1}) == Element{1});
  CHECK(is_quadratic(q).holds);
  CHECK_FALSE(is_linear_quadratic(q).holds);
}

TEST_CASE("skew forms and the diagonal map", "[picard]") {
  auto z2 = Zn(2);
  auto v = FGAbelianGroup::parse("Z/2^2");
  SkewForm alternating(v, z2, {{Element{0}, Element{1}}, {Element{1}, Element{0}}});
  CHECK(alternating.skew());
  CHECK(alternating.alternating());
  auto q0 = delta_star(alternating);
  for (const auto& x : enumerate(v)) CHECK(is_zero_element(q0(x)));

  SkewForm product(z2, z2, {{Element{1}}});
  CHECK(product.skew());
  CHECK_FALSE(product.alternating());
  auto q = delta_star(product);
  CHECK(q(Element{0}) == Element{0});
  CHECK(q(Element{1}) == Element{1});

  SkewForm symmetric(Zn(4), Zn(4), {{Element{1}}});
  CHECK_FALSE(symmetric.skew());
  CHECK_THROWS_AS(delta_star(symmetric), InputError);
  CHECK_THROWS_AS(SkewForm(Zn(2), Zn(3), {{Element{1}}}), InputError);
}

TEST_CASE("diagonal of every skew form is linear quadratic", "[picard][property]") {
  for (const auto& pi0 : {Zn(2), Zn(4), FGAbelianGroup::parse("Z/2^2"), FGAbelianGroup::parse("Z/2+Z/4")})
    for (const auto& pi1 : {Zn(2), Zn(4), FGAbelianGroup::parse("Z/2^2")}) {
      auto gens0 = pi0.generator_orders().size();
      auto elems = enumerate(pi1);
      // Every table on generator pairs; keep the well-defined skew ones.
      std::size_t cells = gens0 * gens0;
      std::vector<std::size_t> idx(cells, 0);
      while (true) {
        std::vector<std::vector<Element>> table(gens0, std::vector<Element>(gens0));
        for (std::size_t k = 0; k < cells; ++k) table[k / gens0][k % gens0] = elems[idx[k]];
        try {
          SkewForm s(pi0, pi1, table);
          if (s.skew()) {
            auto q = delta_star(s);
            REQUIRE(is_linear_quadratic(q).holds);
            for (const auto& x : enumerate(pi0)) REQUIRE(is_zero_element(scale(pi1, 2, q(x))));
          }
        } catch (const InputError&) {
        }
        std::size_t k = 0;
        while (k < cells && ++idx[k] == elems.size()) idx[k++] = 0;
        if (k == cells) break;
      }
    }
}

TEST_CASE("ses_check examples", "[picard]") {
  auto c = ses_check(Zn(2), Zn(2));
  CHECK(c.alt == 1);
  CHECK(c.skew == 2);
  CHECK(c.hom == 2);
  CHECK(c.exact);

  auto odd = ses_check(Zn(3), Zn(2));
  CHECK(odd.hom == 1);
  CHECK(odd.exact);

  auto trivial = ses_check(FGAbelianGroup(), Zn(5));
  CHECK(trivial.alt == 1);
  CHECK(trivial.skew == 1);
  CHECK(trivial.hom == 1);
  CHECK(trivial.exact);

  CHECK_THROWS_AS(ses_check(FGAbelianGroup::free(1), Zn(2)), InputError);
  CHECK_THROWS_AS(ses_check(Zn(8192), Zn(2)), InputError);
}

TEST_CASE("ses_check agrees with full-table enumeration on tiny groups", "[picard][property]") {
  std::vector<FGAbelianGroup> tiny{FGAbelianGroup(), Zn(2), Zn(3), Zn(4), FGAbelianGroup::parse("Z/2^2")};
  for (const auto& pi0 : tiny)
    for (const auto& pi1 : tiny) {
      // |π₁|^(|π₀|²) tables; keep the enumeration small.
      double tables = std::pow(pi1.order().get_d(), pi0.order().get_d() * pi0.order().get_d());
      if (tables > 3e5) continue;
      auto [alt, skew, hom] = brute_force_counts(pi0, pi1);
      auto c = ses_check(pi0, pi1);
      INFO(pi0.str() << " , " << pi1.str());
      CHECK(c.alt == alt);
      CHECK(c.skew == skew);
      CHECK(c.hom == hom);
    }
}

TEST_CASE("ses_check is exact for all groups of order at most 16", "[picard][property]") {
  auto groups = small_groups();
  for (const auto& pi0 : groups)
    for (const auto& pi1 : groups) {
      auto c = ses_check(pi0, pi1);
      INFO(pi0.str() << " , " << pi1.str());
      REQUIRE(c.exact);
      REQUIRE(c.skew == c.alt * c.hom);
    }
}

TEST_CASE("functor existence", "[picard][reference]") {
  auto super = super_torsor_picard();
  auto plain = plain_torsor_picard();
  auto id0 = GroupMorphism(super.pi0, super.pi0, IntMatrix::identity(1));
  auto id1 = GroupMorphism(super.pi1, super.pi1, IntMatrix::identity(1));
  auto zero1 = GroupMorphism(super.pi1, super.pi1, IntMatrix(1, 1));

  CHECK(functor_exists(super, super, id0, id1));
  CHECK_FALSE(functor_exists(super, super, id0, zero1));
  CHECK_FALSE(functor_exists(super, plain, id0, id1));
  CHECK_FALSE(functor_exists(plain, super, id0, zero1));
  auto zero0 = GroupMorphism(super.pi0, super.pi0, IntMatrix(1, 1));
  CHECK(functor_exists(plain, super, zero0, id1));

  auto unknown = picard_from_groups(Zn(2), Zn(2));
  CHECK_THROWS_AS(functor_exists(unknown, super, id0, id1), UnresolvedError);
}

TEST_CASE("identity functors exist whenever q is known", "[picard][property]") {
  std::vector<PicardData> data{super_torsor_picard(), plain_torsor_picard()};
  auto v = FGAbelianGroup::parse("Z/2^2");
  data.push_back({v, Zn(2), QuadraticMap::linear(v, Zn(2), {Element{1}, Element{0}})});
  data.push_back({Zn(4), Zn(2), QuadraticMap::linear(Zn(4), Zn(2), {Element{1}})});
  for (const auto& d : data) {
    d.validate();
    auto n0 = d.pi0.generator_orders().size(), n1 = d.pi1.generator_orders().size();
    CHECK(functor_exists(d, d, GroupMorphism(d.pi0, d.pi0, IntMatrix::identity(n0)),
                         GroupMorphism(d.pi1, d.pi1, IntMatrix::identity(n1))));
  }
}

TEST_CASE("Picard data validation", "[picard]") {
  auto z4 = Zn(4);
  PicardData bad{z4, z4, QuadraticMap(z4, z4, [](const Element& x) { return Element{x[0] * x[0]}; })};
  CHECK_THROWS_AS(bad.validate(), InputError);
  CHECK(super_torsor_picard().q.has_value());
  CHECK_FALSE(picard_from_groups(FGAbelianGroup::free(1), FGAbelianGroup()).q.has_value());
}

TEST_CASE("graded torsor tensor products", "[picard]") {
  auto t = GradedTorsor::make("a", "b", 1);
  auto u = GradedTorsor::make("c", "d", 1);
  auto tu = torsor_tensor(t, u);
  CHECK(tu.epsilon == 0);
  CHECK(tu.points[0] == "a⊗c");
  CHECK(tu.points[1] == "a⊗d");
  // (b, d) lies in the orbit of (a, c).
  CHECK(tu.cls[1][1] == 0);
  CHECK(tu.cls[1][0] == 1);
  CHECK(tu.action[0] == 1);

  GradedTorsor broken = GradedTorsor::make("x", "y", 0);
  broken.action = {0, 1};
  CHECK_THROWS_AS(broken.validate(), InputError);
}

TEST_CASE("torsor symmetry carries the Koszul sign", "[picard][reference]") {
  auto even = GradedTorsor::make("a", "b", 0);
  auto even2 = GradedTorsor::make("c", "d", 0);
  auto odd = GradedTorsor::make("a", "b", 1);
  auto odd2 = GradedTorsor::make("c", "d", 1);

  // Plain swap: (a, c) ↦ (c, a), which is point 0 of c⊗a.
  CHECK(torsor_symmetry(even, even2) == TorsorMap{{0, 1}});
  // Odd ⊗ odd: swap followed by the nontrivial element.
  CHECK(torsor_symmetry(odd, odd2) == TorsorMap{{1, 0}});
  CHECK(torsor_symmetry(odd, even2) == TorsorMap{{0, 1}});
}

TEST_CASE("torsor symmetry is an involution and satisfies the hexagon", "[picard][property]") {
  int triples = 0;
  for (int e1 = 0; e1 < 2; ++e1)
    for (int e2 = 0; e2 < 2; ++e2) {
      auto t = GradedTorsor::make("a", "b", e1);
      auto u = GradedTorsor::make("c", "d", e2);
      CHECK(compose(torsor_symmetry(u, t), torsor_symmetry(t, u)) == TorsorMap{});
      CHECK(is_equivariant(torsor_symmetry(t, u), torsor_tensor(t, u), torsor_tensor(u, t)));
      CHECK(torsor_tensor(t, u).epsilon == (e1 + e2) % 2);
      for (int e3 = 0; e3 < 2; ++e3) {
        CHECK(hexagon_holds(t, u, GradedTorsor::make("e", "f", e3)));
        ++triples;
      }
    }
  CHECK(triples == 8);
}

TEST_CASE("associators are equivariant bijections", "[picard]") {
  auto a = GradedTorsor::make("a", "b", 1), b = GradedTorsor::make("c", "d", 0), c = GradedTorsor::make("e", "f", 1);
  auto left = torsor_tensor(torsor_tensor(a, b), c);
  auto right = torsor_tensor(a, torsor_tensor(b, c));
  auto alpha = associator(left, right);
  CHECK(alpha.image[0] != alpha.image[1]);
  CHECK(is_equivariant(alpha, left, right));
  CHECK_THROWS_AS(associator(right, left), InputError);
}
