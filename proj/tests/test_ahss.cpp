#include <catch_amalgamated.hpp>

#include "bordcalc/ahss.hpp"
#include "bordcalc/errors.hpp"

using namespace bordcalc;

namespace {

const std::string kDir = BORDCALC_FIXTURE_DIR;

std::string fixture(const std::string& name) { return kDir + "/" + name; }

SpaceDescriptor load_space(const std::string& name) { return parse_space(file_loader()(fixture(name)), name); }

std::shared_ptr<const CoefficientRow> spin_row() { return std::make_shared<CoefficientRow>(spin_coefficients()); }

std::shared_ptr<const SSRun> base_run(Workspace& ws, const std::string& stem) {
  return ws.run({fixture(stem + ".space"), fixture(stem + ".hints"), spin_row(), 8, false});
}

std::shared_ptr<const SSRun> loop_run(Workspace& ws, const std::string& base_stem, const std::string& loop_space,
                                      const std::string& loop_hints) {
  auto base = base_run(ws, base_stem);
  auto row = std::make_shared<CoefficientRow>(base->as_row("bordism"));
  return ws.run({fixture(loop_space), fixture(loop_hints), row, 8, true});
}

std::vector<std::string> groups_of(const SSRun& run) {
  std::vector<std::string> out;
  for (int n = 0; n <= run.upto; ++n) out.push_back(run.reports.at(n).group_text());
  return out;
}

FGAbelianGroup e2_group(const std::vector<E2Generator>& gens) {
  std::vector<Integer> orders;
  for (const auto& g : gens) orders.push_back(g.order);
  return FGAbelianGroup::from_cyclic(orders);
}

// E² oracle: H_p(T; ⊕ Z/n_i) = ⊕ H_p(T; Z/n_i), each by universal coefficients.
FGAbelianGroup e2_oracle(const SpaceDescriptor& space, const CoefficientRow& row, int p, int q) {
  FGAbelianGroup out;
  auto h = space.integral_groups();
  for (const auto& order : row.at(q).orders()) out = out.direct_sum(uct_homology(h, p, Coefficient{order}));
  return out;
}

const std::vector<std::string> kSpaces{"su.space", "bsu.space", "kz3.space", "kz4.space"};

}  // namespace

TEST_CASE("fixtures parse and validate", "[ahss]") {
  for (const auto& name : kSpaces) {
    auto s = load_space(name);
    CHECK_NOTHROW(s.validate());
    CHECK(s.cap >= 8);
    CHECK(s.has_cohomology);
  }
  CHECK_THROWS_AS(load_space("su.space").homology_at(40), InputError);
  CHECK_THROWS_AS(parse_space("space X\ncap 3\nhomology Z\n  2 Z/2 : a\n"), InputError);
}

TEST_CASE("universal coefficient round trips on every fixture", "[ahss][reference]") {
  for (const auto& name : kSpaces) {
    auto s = load_space(name);
    auto h = s.integral_groups();
    for (int n = 0; n <= s.cap; ++n) {
      INFO(name << " degree " << n);
      auto stated = s.cohomology.count(n) ? s.cohomology.at(n).group() : FGAbelianGroup();
      CHECK(uct_cohomology(h, n, Coefficient::integers()) == stated);
      auto mod2 = uct_homology(h, n, Coefficient::mod(2));
      CHECK(mod2.torsion().size() == s.mod2_at(n).size());
    }
  }
}

TEST_CASE("E2 entries", "[ahss]") {
  auto su = load_space("su.space");
  auto row = spin_coefficients();
  auto e51 = e2_generators(su, row, 5, 1);
  REQUIRE(e51.size() == 1);
  CHECK(e51[0].order == 2);
  CHECK(e51[0].label == "α1β̄3");
  auto e34 = e2_generators(su, row, 3, 4);
  REQUIRE(e34.size() == 1);
  CHECK(e34[0].order == 0);
  CHECK(e34[0].label == "α2β2");
  CHECK(e2_generators(su, row, 4, 0).empty());

  auto kz3 = load_space("kz3.space");
  auto e61 = e2_generators(kz3, row, 6, 1);
  REQUIRE(e61.size() == 1);
  CHECK(e61[0].kind == E2Generator::Kind::Mod2);
  CHECK(e61[0].order == 2);
  CHECK(e2_group(e2_generators(kz3, row, 7, 0)) == FGAbelianGroup::cyclic(3));
  CHECK(e2_generators(kz3, row, 7, 1).empty());
}

TEST_CASE("E2 agrees with universal coefficients", "[ahss][property]") {
  auto row = spin_coefficients();
  for (const auto& name : kSpaces) {
    auto s = load_space(name);
    for (int p = 0; p <= s.cap; ++p)
      for (int q = 0; q <= row.max_q; ++q) {
        INFO(name << " (" << p << "," << q << ")");
        REQUIRE(e2_group(e2_generators(s, row, p, q)) == e2_oracle(s, row, p, q));
      }
  }
}

TEST_CASE("d2 from the dual of Sq2", "[ahss]") {
  auto su = load_space("su.space");
  auto row = spin_coefficients();
  CHECK(d2_ambient(su, row, 5, 0) == IntMatrix::from_rows({{1}}));
  CHECK(d2_ambient(su, row, 5, 1) == IntMatrix::from_rows({{1}}));
  CHECK(d2_ambient(su, row, 7, 0).is_zero());
  CHECK(d2_ambient(su, row, 9, 0) == IntMatrix::from_rows({{1}}));
}

TEST_CASE("turning the E2 page of SU", "[ahss]") {
  Workspace ws;
  auto run = base_run(ws, "su");
  const auto& e3 = run->page(3);
  REQUIRE(e3.find({5, 0}));
  CHECK(e3.find({5, 0})->str() == "Z : 2β3");
  CHECK(e3.find({3, 1})->is_zero());
  CHECK(e3.find({5, 2})->group() == FGAbelianGroup::cyclic(2));

  // Turning with no differentials changes nothing.
  auto same = turn_page(run->page(2), {});
  for (const auto& [pos, entry] : run->page(2).entries) CHECK(same.find(pos)->group() == entry.group());
}

TEST_CASE("naturality deduces the vanishing differentials", "[ahss]") {
  Workspace ws;
  auto run = base_run(ws, "su");
  const auto& xi = run->morphisms.at("xi");
  const auto& target = run->targets.at("xi");
  auto r3 = deduce_vanishing(xi, *run->row, run->page(3), target->page(3), 3, {8, 0});
  CHECK(r3.vanishes);
  CHECK_FALSE(r3.note.empty());
  bool found = false;
  for (const auto& page : run->differentials)
    for (const auto& d : page)
      if (d.source == Pos{8, 0} && d.r == 5) {
        found = true;
        CHECK(d.status == DiffStatus::Deduced);
        CHECK(d.is_zero());
      }
  CHECK(found);
}

TEST_CASE("extension via a map into a torsion-free stage", "[ahss]") {
  // 0 → Z → F → Z/2 → 0 with the quotient mapping injectively into Z/2 ⊂ a torsion-free group.
  GroupMorphism qmap({Integer(2)}, {Integer(2)}, IntMatrix::from_rows({{1}}));
  auto res = resolve_extension_via_map(FGAbelianGroup::free(1), qmap, FGAbelianGroup::free(2));
  CHECK(res.status == ExtStatus::Nontrivial);
  REQUIRE(res.group);
  CHECK(*res.group == FGAbelianGroup::free(1));

  auto zero = resolve_extension_via_map(FGAbelianGroup::free(1), GroupMorphism::zero({2}, {2}), FGAbelianGroup::free(2));
  CHECK(zero.status == ExtStatus::Open);
  auto torsion = resolve_extension_via_map(FGAbelianGroup::free(1), qmap, FGAbelianGroup::parse("Z+Z/2"));
  CHECK(torsion.status == ExtStatus::Open);
  auto unknown = resolve_extension_via_map(FGAbelianGroup::free(1), qmap, std::nullopt);
  CHECK(unknown.status == ExtStatus::Open);
}

TEST_CASE("extensions from a known total", "[ahss]") {
  std::vector<FGAbelianGroup> pieces{FGAbelianGroup::free(1), FGAbelianGroup::cyclic(2), FGAbelianGroup::free(1)};
  auto absorbed = resolve_extensions_from_total(FGAbelianGroup::free(2), pieces);
  CHECK(absorbed.steps == std::vector<ExtStatus>{ExtStatus::Nontrivial, ExtStatus::Split});
  REQUIRE(absorbed.stages[1]);
  CHECK(*absorbed.stages[1] == FGAbelianGroup::free(1));

  auto split = resolve_extensions_from_total(FGAbelianGroup::parse("Z^2+Z/2"), pieces);
  CHECK(split.steps == std::vector<ExtStatus>{ExtStatus::Split, ExtStatus::Split});

  CHECK_THROWS_AS(resolve_extensions_from_total(FGAbelianGroup::free(3), pieces), InputError);
  CHECK_THROWS_AS(resolve_extensions_from_total(FGAbelianGroup::free(1), {}), InputError);
  CHECK(resolve_extensions_from_total(FGAbelianGroup(), {}).steps.empty());
}

TEST_CASE("assembled filtrations", "[ahss]") {
  Workspace ws;
  auto run = base_run(ws, "su");
  auto r7 = assemble(*run, 7);
  CHECK(r7.status == ReportStatus::Resolved);
  CHECK(r7.group_text() == "Z^2");
  REQUIRE(r7.pieces.size() == 3);
  CHECK(r7.extensions[0].status == ExtStatus::Nontrivial);
  CHECK(r7.extensions[0].tag == "naturality-map");
  CHECK(r7.extensions[1].tag == "free-quotient");
  CHECK(assemble(*run, 5).result()->str().find("2β3") != std::string::npos);
}

TEST_CASE("golden group lists", "[ahss][reference]") {
  Workspace ws;
  CHECK(groups_of(*base_run(ws, "su")) ==
        std::vector<std::string>{"0", "0", "0", "Z", "0", "Z", "0", "Z^2", "Z"});
  CHECK(groups_of(*base_run(ws, "kz3")) ==
        std::vector<std::string>{"0", "0", "0", "Z", "0", "0", "0", "Z", "Z/2"});

  auto bsu = loop_run(ws, "su", "bsu.space", "loop_bsu.hints");
  CHECK(groups_of(*bsu) == std::vector<std::string>{"0", "0", "0", "Z", "0", "Z", "0", "Z^3", "Z / im(k)"});
  CHECK(bsu->overall() == ReportStatus::Parametric);

  auto kz4 = loop_run(ws, "kz3", "kz4.space", "loop_kz4.hints");
  auto g = groups_of(*kz4);
  CHECK(g[7] == "Z^2");
  CHECK(g[8] == "Z/2 / im(l)");
}

TEST_CASE("runs are deterministic", "[ahss][property]") {
  Workspace a, b;
  auto ra = base_run(a, "su"), rb = base_run(b, "su");
  CHECK(render(*ra, OutputFormat::Table) == render(*rb, OutputFormat::Table));
  CHECK(render(*ra, OutputFormat::KeyValue) == render(*rb, OutputFormat::KeyValue));
}

TEST_CASE("spectral sequence invariants", "[ahss][property]") {
  Workspace ws;
  std::vector<std::shared_ptr<const SSRun>> runs{base_run(ws, "su"), base_run(ws, "kz3"),
                                                 loop_run(ws, "su", "bsu.space", "loop_bsu.hints")};
  for (const auto& run : runs) {
    INFO(run->space->name);
    // d ∘ d = 0 for every pair of composable determined differentials.
    for (std::size_t i = 0; i < run->differentials.size(); ++i) {
      const auto& page = run->pages[i];
      for (const auto& d : run->differentials[i])
        for (const auto& e : run->differentials[i]) {
          if (!(e.source == d.target) || !d.determined() || !e.determined()) continue;
          if (d.matrix.rows() == 0 || e.matrix.cols() == 0) continue;
          auto comp = e.matrix * d.matrix;
          auto orders = page.find(e.target)->sub.orders();
          for (std::size_t r = 0; r < comp.rows(); ++r)
            for (std::size_t c = 0; c < comp.cols(); ++c) REQUIRE(reduce_mod(comp(r, c), orders[r]) == 0);
        }
    }
    // Free rank never grows from one page to the next.
    for (std::size_t i = 0; i + 1 < run->pages.size(); ++i)
      for (const auto& [pos, entry] : run->pages[i + 1].entries) {
        const auto* before = run->pages[i].find(pos);
        REQUIRE(before);
        if (entry.known && before->known) REQUIRE(entry.group().free_rank() <= before->group().free_rank());
      }
    // The resolved totals account for every E∞ piece.
    for (const auto& [n, report] : run->reports) {
      if (report.status != ReportStatus::Resolved) continue;
      auto total = report.result()->group();
      unsigned rank = 0;
      Integer order = 1;
      bool finite = true;
      for (const auto& piece : report.pieces) {
        auto g = piece.entry.group();
        rank += g.free_rank();
        if (g.is_finite()) order *= g.order();
        else finite = false;
      }
      CHECK(total.free_rank() == rank);
      if (finite) CHECK(total.order() == order);
    }
  }
}

TEST_CASE("coefficient rows", "[ahss]") {
  auto spin = spin_coefficients();
  CHECK(spin.at(8).group() == FGAbelianGroup::free(2));
  CHECK(spin.at(1).group() == FGAbelianGroup::cyclic(2));
  CHECK(spin.at(3).is_zero());
  CHECK_THROWS_AS(spin.at(40), InputError);
  auto again = parse_row(spin.str());
  for (int q = 0; q <= spin.max_q; ++q) CHECK(again.at(q).group() == spin.at(q).group());
  CHECK_THROWS_AS(parse_row("row X\nmax 2\n  5 Z : a\n"), InputError);
}

TEST_CASE("hint parse errors", "[ahss]") {
  CHECK_NOTHROW(parse_hints(file_loader()(fixture("su.hints"))));
  CHECK_THROWS_AS(parse_hints("d 3 8 zero\n"), InputError);
  CHECK_THROWS_AS(parse_hints("frobnicate 1 2\n"), InputError);
  CHECK_THROWS_AS(parse_hints("ext 7 5 sideways : no\n"), InputError);
  CHECK_THROWS_AS(parse_hints("morphism m : self -> t shift 1\n  z 3 a -> b\n"), InputError);
}

TEST_CASE("missing documents and paths", "[ahss]") {
  Workspace ws;
  CHECK_THROWS_AS(ws.run({fixture("absent.space"), std::nullopt, spin_row(), 8, false}), InputError);
  CHECK(join_path("dir/a.hints", "b.space") == "dir/b.space");
  CHECK(join_path("a.hints", "b.space") == "b.space");
}
