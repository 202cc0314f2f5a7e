#include <catch_amalgamated.hpp>

#include <numeric>

#include "bordcalc/charnum.hpp"
#include "bordcalc/errors.hpp"

using namespace bordcalc;

namespace {

long gcd_all(const std::vector<long>& values) {
  long g = 0;
  for (long v : values) g = std::gcd(g, v);
  return g;
}

BundleData su_bundle(int rank, std::map<int, CohomologyClass> chern) {
  BundleData b;
  b.group = BundleData::Group::SU;
  b.rank = rank;
  b.chern = std::move(chern);
  return b;
}

// The two SU(2) bundles on S⁴ × S³ × S¹ whose sum gives (a,b,c) = (0,0,1).
std::pair<BundleData, BundleData> floer_example(const ManifoldModel& m) {
  auto e1 = su_bundle(2, {{2, m.poincare_dual({0})}});
  auto e2 = su_bundle(2, {{2, m.poincare_dual({1, 2})}});
  return {e1, e2};
}

}  // namespace

TEST_CASE("manifold models integrate the top class to one", "[charnum]") {
  ManifoldModel s7 = ManifoldModel::parse("S7");
  CHECK(s7.dim() == 7);
  CHECK(integrate(s7.top(), s7) == 1);

  ManifoldModel m = ManifoldModel::parse("S4 x S3 x S1");
  CHECK(m.dim() == 8);
  CHECK(m.str() == "S4 x S3 x S1");
  CHECK(integrate(m.top(), m) == 1);
  CHECK(integrate(multiply(multiply(m.fundamental_dual(0), m.fundamental_dual(1)), m.fundamental_dual(2)), m) == 1);
  CHECK_THROWS_AS(integrate(m.fundamental_dual(0), m), InputError);
}

TEST_CASE("p1 vanishes on spheres and integrates to 48 on K3", "[charnum]") {
  ManifoldModel k3 = ManifoldModel::parse("K3");
  CHECK(integrate(k3.p1(), k3) == 48);
  ManifoldModel s4 = ManifoldModel::parse("S4");
  CHECK(s4.p1().is_zero());
}

TEST_CASE("repeated blocks get distinct labels", "[charnum]") {
  ManifoldModel m = ManifoldModel::parse("S3 x S3 x S1 x S1");
  CHECK(m.blocks()[1].label == "s3_2");
  CHECK(m.blocks()[3].label == "s1_2");
  CHECK_THROWS_AS(ManifoldModel::parse("S3 x T2"), InputError);
  CHECK_THROWS_AS(ManifoldModel::parse("S3 x "), InputError);
}

TEST_CASE("c2 squared of the S4 x S3 x S1 sum is 2", "[charnum]") {
  ManifoldModel m = ManifoldModel::parse("S4 x S3 x S1");
  auto [e1, e2] = floer_example(m);
  auto q = whitney_sum({e1, e2}, m);
  CHECK(q.rank == 4);
  auto c2 = q.c(2, m);
  // (u + v)² = 2uv with u² = v² = 0.
  CHECK(integrate(multiply(c2, c2), m) == 2);
  CHECK(q.c(4, m) == m.top());
}

TEST_CASE("whitney sum with a trivial bundle changes nothing", "[charnum]") {
  ManifoldModel m = ManifoldModel::parse("S4 x S3 x S1");
  auto [e1, e2] = floer_example(m);
  auto sum = whitney_sum({e1, trivial_bundle(3)}, m);
  CHECK(sum.rank == 5);
  CHECK(sum.chern.size() == 1);
  CHECK(sum.c(2, m) == e1.c(2, m));
  auto empty = whitney_sum({trivial_bundle(0), trivial_bundle(0)}, m);
  CHECK(empty.rank == 0);
  CHECK(empty.chern.empty());
}

TEST_CASE("bundle validation", "[charnum]") {
  ManifoldModel m = ManifoldModel::parse("S4 x S3 x S1");
  CHECK_THROWS_AS(su_bundle(1, {{2, m.poincare_dual({0})}}).validate(m), InputError);
  BundleData u;
  u.group = BundleData::Group::SU;
  u.rank = 2;
  u.chern.emplace(1, m.zero(2) + m.zero(2));
  CHECK_NOTHROW(u.validate(m));
}

TEST_CASE("generator bundles follow the factorial rule", "[charnum]") {
  for (int i = 2; i <= 5; ++i) {
    ManifoldModel base = ManifoldModel::parse("S" + std::to_string(2 * i - 1) + " x S1");
    auto b = generator_bundle(i, base);
    long factorial = 1;
    for (int k = 2; k < i; ++k) factorial *= k;
    CHECK(integrate(b.c(i, base), base) == factorial);
    for (int j = 2; j < i; ++j) CHECK(b.c(j, base).is_zero());
  }
  CHECK_THROWS_AS(generator_bundle(1, ManifoldModel::parse("S1 x S1")), InputError);
  CHECK_THROWS_AS(generator_bundle(6, ManifoldModel::parse("S11 x S1")), InputError);
  CHECK_THROWS_AS(generator_bundle(3, ManifoldModel::parse("S3 x S1")), InputError);
}

TEST_CASE("generators of the relative loop bordism map to unit vectors", "[charnum][reference]") {
  ManifoldModel s3 = ManifoldModel::parse("S3 x S1");
  CHECK(bsu_loop_invariants(s3, generator_bundle(2, s3)) == std::vector<Integer>{1});

  ManifoldModel s5 = ManifoldModel::parse("S5 x S1");
  CHECK(bsu_loop_invariants(s5, generator_bundle(3, s5)) == std::vector<Integer>{1});

  ManifoldModel s7 = ManifoldModel::parse("S7 x S1");
  // The S7 generator is the clutching bundle with ∫c4 = 3! = 6.
  CHECK(su_loop_invariants(s7, generator_bundle(4, s7)) == SuLoopInvariants{1, 0, 0});

  ManifoldModel k3 = ManifoldModel::parse("K3 x S3 x S1");
  auto b = su_bundle(2, {{2, k3.poincare_dual({1, 2})}});
  CHECK(integrate(multiply(k3.p1(), b.c(2, k3)), k3) == 48);
  CHECK(su_loop_invariants(k3, b) == SuLoopInvariants{0, 1, 0});

  ManifoldModel m = ManifoldModel::parse("S4 x S3 x S1");
  auto [e1, e2] = floer_example(m);
  CHECK(su_loop_invariants(m, whitney_sum({e1, e2}, m)) == SuLoopInvariants{0, 0, 1});
}

TEST_CASE("loop invariants reject bad shapes and non-integral data", "[charnum]") {
  ManifoldModel no_circle = ManifoldModel::parse("S4 x S4");
  CHECK_THROWS_AS(su_loop_invariants(no_circle, trivial_bundle(2)), InputError);
  ManifoldModel m = ManifoldModel::parse("S4 x S3 x S1");
  // ∫c4 = 1 alone gives a = 1/6.
  auto bad = su_bundle(4, {{4, m.top()}});
  CHECK_THROWS_AS(su_loop_invariants(m, bad), IntegralityError);
  ManifoldModel s5 = ManifoldModel::parse("S5 x S1");
  CHECK_THROWS_AS(bsu_loop_invariants(s5, su_bundle(3, {{3, s5.top()}})), IntegralityError);
}

TEST_CASE("index formula examples", "[charnum]") {
  CHECK(xi_index(4, 2, 1, 0) == 2);
  CHECK(xi_index(3, 0, 0, 0) == 0);
  CHECK(xi_index(2, 2, 1, 0) == 2);
  CHECK_THROWS_AS(xi_index(2, 1, 0, 0), IntegralityError);
  CHECK_THROWS_AS(xi_index(1, 0, 0, 0), InputError);
}

TEST_CASE("Xi from (a,b,c)", "[charnum]") {
  CHECK(xi_from_abc(2, {1, 0, -6}) == -16);
  CHECK(xi_from_abc(5, {0, 0, 0}) == 0);
  CHECK(xi_from_abc(3, {0, 1, 0}) == 12);
}

TEST_CASE("index formula agrees with (a,b,c) and is even", "[charnum][property]") {
  for (int r = 2; r <= 10; ++r)
    for (int a = -5; a <= 5; ++a)
      for (int b = -5; b <= 5; ++b)
        for (int c = -5; c <= 5; ++c) {
          Integer via_index = xi_index(r, 2 * c, 6 * a + c, 48 * b);
          long oracle = -2L * r * a + 4L * r * b + 2L * c;
          REQUIRE(via_index == oracle);
          REQUIRE(xi_from_abc(r, {a, b, c}) == oracle);
          REQUIRE(oracle % 2 == 0);
        }
}

TEST_CASE("Floer divisibility", "[charnum][reference]") {
  CHECK(floer_divisibility(2) == 8);
  CHECK(floer_divisibility(3) == 6);
  for (int r = 4; r <= 12; ++r) CHECK(floer_divisibility(r) == 2);
  CHECK(stabilized_divisibility(6) == 24);
  CHECK(stabilized_divisibility(18) == 24);
  CHECK(stabilized_divisibility(7) == 2);
  CHECK_THROWS_AS(stabilized_divisibility(3), InputError);
}

TEST_CASE("Floer divisibility is attained on the constrained lattice", "[charnum][property]") {
  for (int r : {2, 3}) {
    std::vector<long> values;
    for (int a = -5; a <= 5; ++a)
      for (int b = -5; b <= 5; ++b) {
        Integer x = xi_from_abc(r, {a, b, -6 * a});
        REQUIRE(x % floer_divisibility(r) == 0);
        values.push_back(x.get_si());
      }
    CHECK(gcd_all(values) == floer_divisibility(r).get_si());
  }
  for (int r = 4; r <= 12; ++r) {
    std::vector<long> values;
    for (int a = -2; a <= 2; ++a)
      for (int b = -2; b <= 2; ++b)
        for (int c = -2; c <= 2; ++c) values.push_back(xi_from_abc(r, {a, b, c}).get_si());
    CHECK(gcd_all(values) == floer_divisibility(r).get_si());
  }
}

TEST_CASE("whitney sum is associative and commutative", "[charnum][property]") {
  ManifoldModel m = ManifoldModel::parse("S4 x S2 x S2");
  auto x = m.poincare_dual({0});
  auto y = m.poincare_dual({1});
  auto z = m.poincare_dual({2});
  BundleData a = su_bundle(3, {{2, x}, {3, m.zero(6)}});
  BundleData b;
  b.group = BundleData::Group::U;
  b.rank = 2;
  b.chern.emplace(1, y + z);
  b.chern.emplace(2, multiply(y, z));
  BundleData c = su_bundle(2, {{2, multiply(y, z) * 3}});
  auto left = whitney_sum({whitney_sum({a, b}, m), c}, m);
  auto right = whitney_sum({a, whitney_sum({b, c}, m)}, m);
  auto swapped = whitney_sum({c, b, a}, m);
  for (int i = 1; i <= 4; ++i) {
    CHECK(left.c(i, m) == right.c(i, m));
    CHECK(left.c(i, m) == swapped.c(i, m));
  }
  CHECK(left.rank == 7);
  CHECK(left.group == BundleData::Group::U);
  // c(b) = (1 + y)(1 + z): expanding by hand gives c2(a ⊕ b) = x + yz.
  CHECK(whitney_sum({a, b}, m).c(2, m) == x + multiply(y, z));
}

TEST_CASE("integration is linear", "[charnum][property]") {
  ManifoldModel m = ManifoldModel::parse("K3 x S3 x S1");
  auto t = m.top();
  auto other = multiply(m.p1(), m.poincare_dual({1, 2}));
  for (int k = -3; k <= 3; ++k) {
    CHECK(integrate(t * k, m) == k);
    CHECK(integrate(t * k + other, m) == integrate(t * k, m) + integrate(other, m));
  }
}

TEST_CASE("SU bordism invariants in low degrees", "[charnum]") {
  ManifoldModel s3 = ManifoldModel::parse("S3");
  CHECK(su_invariants_low(s3, {{"b2", s3.top()}}) == std::vector<Integer>{1});
  ManifoldModel s5 = ManifoldModel::parse("S5");
  CHECK(su_invariants_low(s5, {{"b3", s5.top() * 2}}) == std::vector<Integer>{1});
  CHECK_THROWS_AS(su_invariants_low(s5, {{"b3", s5.top()}}), IntegralityError);
  ManifoldModel k3s3 = ManifoldModel::parse("K3 x S3");
  auto v = su_invariants_low(k3s3, {{"b2", k3s3.poincare_dual({1})}, {"b4", k3s3.zero(7)}});
  CHECK(v == std::vector<Integer>{0, 2});
  ManifoldModel s3s5 = ManifoldModel::parse("S3 x S5");
  CHECK(su_invariants_low(s3s5, {{"b2", s3s5.poincare_dual({0})}, {"b3", s3s5.poincare_dual({1})}}) ==
        std::vector<Integer>{1});
  CHECK_THROWS_AS(su_invariants_low(s3, {}), InputError);
}

TEST_CASE("K(Z,3) bordism invariants", "[charnum][reference]") {
  ManifoldModel k3s3 = ManifoldModel::parse("K3 x S3");
  CHECK(kz3_invariants(k3s3, {{"d3", k3s3.poincare_dual({1})}}) == std::vector<Integer>{6});
  ManifoldModel s3 = ManifoldModel::parse("S3");
  CHECK(kz3_invariants(s3, {{"d3", s3.top()}}) == std::vector<Integer>{1});
  CHECK(kz3_invariants(s3, {{"d3", s3.zero(3)}}) == std::vector<Integer>{0});
  ManifoldModel s3s5 = ManifoldModel::parse("S3 x S5");
  // Sq² vanishes on products of spheres, so the mod 2 invariant is zero there.
  CHECK(kz3_invariants(s3s5, {{"d3", s3s5.poincare_dual({0})}}) == std::vector<Integer>{0});
  CHECK_THROWS_AS(kz3_invariants(ManifoldModel::parse("S5"), {{"d3", s3.top()}}), InputError);
}
