#include <catch_amalgamated.hpp>

#include "bordcalc/registry.hpp"

using namespace bordcalc;

namespace {

// Membership in the good and bad lists, read straight off the raw atom. SO(k) and PSU(m) are
// judged by their covers Spin(k) and SU(m).
bool on_good_list(std::string name, std::optional<int> k) {
  if (name == "SO") name = "Spin";
  if (name == "PSU") name = "SU";
  if (name == "E8" || name == "E7" || name == "E6" || name == "G2") return true;
  if (name == "SU" || name == "U") return true;
  if (name == "Spin") return *k == 3 || *k % 2 == 0;
  if (name == "Sp") return *k == 1;
  return false;
}

bool on_bad_list(std::string name, std::optional<int> k) {
  if (name == "SO") name = "Spin";
  if (name == "F4") return true;
  if (name == "Sp") return *k >= 2;
  if (name == "Spin") return *k >= 5 && *k % 2 == 1;
  return false;
}

std::vector<GroupAtom> all_atoms(int max_param) {
  std::vector<GroupAtom> out;
  for (const auto& e : exceptional_groups()) out.push_back({e, std::nullopt});
  for (const auto& f : parametric_families())
    for (int k = 1; k <= max_param; ++k)
      if (is_recognized({f, k})) out.push_back({f, k});
  return out;
}

}  // namespace

TEST_CASE("point bordism lookups", "[registry][reference]") {
  auto s4 = lookup_point_bordism(Structure::Spin, 4);
  CHECK(s4.group() == FGAbelianGroup::free(1));
  CHECK(s4.labels() == std::vector<std::string>{"α2"});
  CHECK(lookup_point_bordism(Structure::Spin, 8).group() == FGAbelianGroup::free(2));
  CHECK(lookup_point_bordism(Structure::Spin, 3).is_zero());
  CHECK(lookup_point_bordism(Structure::O, 6).group() == FGAbelianGroup::parse("Z/2^3"));
  CHECK(lookup_point_bordism(Structure::SU, 1).group() == FGAbelianGroup::cyclic(2));
  CHECK(lookup_point_bordism(Structure::SO, 5).group() == FGAbelianGroup::cyclic(2));
  CHECK_THROWS_AS(lookup_point_bordism(Structure::SO, 9), InputError);
  CHECK_THROWS_AS(lookup_point_bordism(Structure::Spin, -1), InputError);
}

TEST_CASE("structure names round-trip", "[registry]") {
  for (auto s : all_structures()) CHECK(parse_structure(to_string(s)) == s);
  CHECK(parse_structure("spinc") == Structure::SpinC);
  CHECK_THROWS_AS(parse_structure("pin+"), InputError);
}

TEST_CASE("point rows agree with the lookups", "[registry][property]") {
  for (auto s : all_structures()) {
    auto row = point_bordism_row(s);
    REQUIRE(row.max_q == max_degree(s));
    for (int n = 0; n <= row.max_q; ++n) CHECK(row.at(n).group() == lookup_point_bordism(s, n).group());
    // Ω₀ is Z for oriented structures and Z/2 for O.
    CHECK(row.at(0).group() == (s == Structure::O ? FGAbelianGroup::cyclic(2) : FGAbelianGroup::free(1)));
    CHECK(parse_row(row.str()).at(row.max_q).group() == row.at(row.max_q).group());
  }
}

TEST_CASE("homotopy of E8 in the stable range", "[registry]") {
  CHECK(lookup_e8_homotopy(4) == FGAbelianGroup::free(1));
  CHECK(lookup_e8_homotopy(3, false) == FGAbelianGroup::free(1));
  for (int d = 0; d <= 15; ++d)
    if (d != 4) CHECK(lookup_e8_homotopy(d).is_zero());
  CHECK_THROWS_AS(lookup_e8_homotopy(16), InputError);
  CHECK_THROWS_AS(lookup_e8_homotopy(15, false), InputError);
}

TEST_CASE("group expression parsing", "[registry]") {
  auto g = parse_group("SU(5) x E8");
  REQUIRE(g.factors.size() == 2);
  CHECK(g.factors[0] == GroupAtom{"SU", 5});
  CHECK(g.factors[1] == GroupAtom{"E8", std::nullopt});
  CHECK_FALSE(g.quotient);
  CHECK(g.str() == "SU(5) x E8");

  auto q = parse_group("Spin(10) × U(1)/K");
  CHECK(q.quotient);
  CHECK(q.factors.size() == 2);
  CHECK(q.str() == "Spin(10) x U(1)/K");

  try {
    parse_group("SU()");
    FAIL("expected a parse error");
  } catch (const GroupExprError& e) {
    CHECK(e.offset() == 3);
    CHECK(std::string(e.what()).find("offset 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_group(""), GroupExprError);
  CHECK_THROWS_AS(parse_group("SU(2) x"), GroupExprError);
  CHECK_THROWS_AS(parse_group("E8(3)"), GroupExprError);
  CHECK_THROWS_AS(parse_group("Spin(1)"), GroupExprError);
  CHECK_THROWS_AS(parse_group("su(2)"), GroupExprError);
  CHECK_THROWS_AS(parse_group("SU(2)/H"), GroupExprError);
}

TEST_CASE("printing and parsing are inverse", "[registry][property]") {
  auto atoms = all_atoms(6);
  for (std::size_t i = 0; i < atoms.size(); ++i)
    for (std::size_t j = 0; j < atoms.size(); j += 3) {
      GroupExpr g{{atoms[i], atoms[j]}, (i + j) % 2 == 1};
      REQUIRE(parse_group(g.str()) == g);
    }
}

TEST_CASE("normalization of exceptional isomorphisms", "[registry]") {
  CHECK(normalize(parse_group("Spin(3)")).factors[0] == GroupAtom{"SU", 2});
  CHECK(normalize(parse_group("Spin(5)")).factors[0] == GroupAtom{"Sp", 2});
  CHECK(normalize(parse_group("Spin(6)")).factors[0] == GroupAtom{"SU", 4});
  CHECK(normalize(parse_group("Sp(1)")).factors[0] == GroupAtom{"SU", 2});
  auto so = normalize(parse_group("SO(10)"));
  CHECK(so.factors[0] == GroupAtom{"Spin", 10});
  CHECK(so.quotient);
  CHECK(normalize(parse_group("SO(2)")) == parse_group("U(1)"));
}

TEST_CASE("normalization is idempotent", "[registry][property]") {
  for (const auto& a : all_atoms(20)) {
    GroupExpr g{{a}, false};
    auto once = normalize(g);
    REQUIRE(normalize(once) == once);
  }
}

TEST_CASE("orientability examples", "[registry][reference]") {
  auto sp2 = classify_orientability(parse_group("Sp(2)"), 7);
  CHECK_FALSE(sp2.orientable_all);
  CHECK(sp2.offending_factor == "Sp(2)");
  CHECK(sp2.str() == "COUNTEREXAMPLE: Sp(2) ×_{Sp(1)×Sp(1)} Sp(1) with the trivial bundle P = X × G");
  CHECK(classify_orientability(parse_group("Sp(2)"), 8).counterexample.find("× S^1") != std::string::npos);

  CHECK(classify_orientability(parse_group("SU(5) x E8"), 8).str() == "ORIENTABLE-ALL");
  CHECK(classify_orientability(parse_group("SO(10)/K"), 7).str() == "ORIENTABLE-ALL [simply-connected]");
  CHECK(classify_orientability(parse_group("SO(10)"), 8).simply_connected_only);
  CHECK_FALSE(classify_orientability(parse_group("SO(9)"), 7).orientable_all);
  CHECK_FALSE(classify_orientability(parse_group("E8 x F4"), 8).orientable_all);
  CHECK(classify_orientability(parse_group("Spin(3) x Spin(6)"), 7).orientable_all);
  CHECK_FALSE(classify_orientability(parse_group("Spin(5)"), 7).orientable_all);

  CHECK_THROWS_AS(classify_orientability(parse_group("SU(2)"), 6), InputError);
  CHECK_THROWS_AS(classify_orientability(parse_group("Foo"), 7), InputError);
}

TEST_CASE("every recognized atom lands in exactly one branch", "[registry][property]") {
  int checked = 0;
  for (const auto& a : all_atoms(20)) {
    bool good = on_good_list(a.name, a.param);
    bool bad = on_bad_list(a.name, a.param);
    INFO(a.str());
    REQUIRE(good != bad);
    for (int n : {7, 8}) {
      auto v = classify_orientability(GroupExpr{{a}, false}, n);
      REQUIRE(v.orientable_all == good);
      REQUIRE(v.counterexample.empty() == good);
    }
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("products are orientable iff every factor is", "[registry][property]") {
  auto atoms = all_atoms(8);
  for (const auto& a : atoms)
    for (const auto& b : atoms) {
      auto v = classify_orientability(GroupExpr{{a, b}, false}, 7);
      REQUIRE(v.orientable_all == (on_good_list(a.name, a.param) && on_good_list(b.name, b.param)));
    }
}

TEST_CASE("complex type morphisms", "[registry][reference]") {
  auto su = complex_type(parse_group("SU(3) x U(1)"), parse_group("SU(4)"));
  REQUIRE(su);
  CHECK(su->p == 6);
  auto flipped = complex_type(parse_group("U(1) x SU(3)"), parse_group("SU(4)"));
  REQUIRE(flipped);
  CHECK(flipped->p == 6);

  auto u = complex_type(parse_group("U(4)"), parse_group("SU(5)"));
  REQUIRE(u);
  CHECK_FALSE(u->p.has_value());

  auto sp = complex_type(parse_group("Sp(2) x U(1)"), parse_group("Sp(3)"));
  REQUIRE(sp);
  CHECK(sp->p == 10);

  auto so = complex_type(parse_group("SO(8) x U(1)"), parse_group("SO(10)"));
  REQUIRE(so);
  CHECK(so->p == 7);

  CHECK(complex_type(parse_group("E7 x U(1)"), parse_group("E8")));
  CHECK(complex_type(parse_group("G2"), parse_group("Spin(8)")));
  CHECK(complex_type(parse_group("Spin(7) x U(1)"), parse_group("F4")));
  CHECK(complex_type(parse_group("Spin(9)"), parse_group("SO(9)")));
  CHECK_FALSE(complex_type(parse_group("SU(3)"), parse_group("SU(4)")));
  CHECK_FALSE(complex_type(parse_group("E7"), parse_group("E8")));
  CHECK_FALSE(complex_type(parse_group("SU(2) x U(1)"), parse_group("SU(4)")));
}

TEST_CASE("embedded fixtures", "[registry]") {
  const auto& fx = embedded_fixtures();
  for (const char* name : {"su.space", "bsu.space", "kz3.space", "kz4.space", "su.hints", "kz3.hints"})
    CHECK(fx.count(name) == 1);
  auto loader = registry_loader();
  CHECK(loader("builtin/su.space") == fx.at("su.space"));
  CHECK_THROWS_AS(loader("builtin/nope.space"), InputError);
  CHECK(export_document("kz4.space") == fx.at("kz4.space"));
  CHECK(export_document("row:Spin").find("Z") != std::string::npos);
  CHECK_THROWS_AS(export_document("missing"), InputError);
  for (const auto& [name, text] : fx)
    if (name.size() > 6 && name.substr(name.size() - 6) == ".space") CHECK_NOTHROW(parse_space(text, name).validate());
}

TEST_CASE("Picard data from point bordism", "[registry]") {
  auto p4 = picard_from_bordism(Structure::Spin, 4);
  CHECK(p4.pi0 == FGAbelianGroup::free(1));
  CHECK(p4.pi1.is_zero());
  CHECK_FALSE(p4.q.has_value());
  auto p1 = picard_from_bordism(Structure::Spin, 1);
  CHECK(p1.pi0 == FGAbelianGroup::cyclic(2));
  CHECK(p1.pi1 == FGAbelianGroup::cyclic(2));
}
