#include <algorithm>

#include "bordcalc/ahss.hpp"
#include "bordcalc/errors.hpp"

namespace bordcalc {

std::string to_string(ExtStatus s) {
  switch (s) {
    case ExtStatus::Split: return "split";
    case ExtStatus::Nontrivial: return "nontrivial";
    case ExtStatus::Open: return "open";
  }
  return "?";
}

std::string to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::Resolved: return "resolved";
    case ReportStatus::Parametric: return "parametric";
    case ReportStatus::Unresolved: return "unresolved";
  }
  return "?";
}

std::string StageGenerator::label() const {
  if (divisor == 1) return base;
  bool bracket = base.find_first_of("+ ,/") != std::string::npos;
  return (bracket ? "[" + base + "]" : base) + "/" + divisor.get_str();
}

FGAbelianGroup Stage::group() const {
  std::vector<Integer> orders;
  for (const auto& g : gens) orders.push_back(g.order);
  return FGAbelianGroup::from_cyclic(orders);
}

bool Stage::torsion_free() const { return group().is_torsion_free(); }

std::string Stage::str() const {
  std::vector<Integer> orders;
  std::vector<std::string> labels;
  for (const auto& g : gens) {
    orders.push_back(g.order);
    labels.push_back(g.label());
  }
  return labeled_group_text(orders, labels);
}

// ---------------------------------------------------------------------------------------------

namespace {

bool is_prime(const Integer& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

}  // namespace

ExtensionResolution resolve_extension_via_map(const FGAbelianGroup& previous, const GroupMorphism& quotient_map,
                                              const std::optional<FGAbelianGroup>& target_stage) {
  ExtensionResolution out;
  const auto& orders = quotient_map.source_orders();
  bool torsion_hit = false;
  for (std::size_t j = 0; j < orders.size(); ++j) {
    if (orders[j] == 0) continue;
    std::vector<Integer> e(orders.size(), 0);
    e[j] = 1;
    auto img = quotient_map.apply(e);
    for (std::size_t i = 0; i < img.size(); ++i)
      if (reduce_mod(img[i], quotient_map.target_orders()[i]) != 0) torsion_hit = true;
  }
  if (!torsion_hit) {
    out.note = "the induced map vanishes on the torsion of the quotient";
    return out;
  }
  if (!target_stage) {
    out.note = "the receiving filtration stage is not determined";
    return out;
  }
  if (!target_stage->is_torsion_free()) {
    out.note = "the receiving filtration stage has torsion";
    return out;
  }
  out.status = ExtStatus::Nontrivial;
  auto quotient = quotient_map.source();
  if (quotient_map.is_injective() && previous.is_torsion_free()) {
    out.group = FGAbelianGroup::free(previous.free_rank() + quotient.free_rank());
    out.note = "injective on the quotient into a torsion-free stage";
  } else if (previous.is_torsion_free() && previous.free_rank() > 0 && quotient.is_finite() &&
             quotient.torsion().size() == 1 && is_prime(quotient.torsion()[0])) {
    out.group = previous;
    out.note = "nonsplit extension of a free group by a group of prime order";
  } else {
    out.note = "nonsplit, group not pinned down";
  }
  return out;
}

namespace {

struct TorsionItem {
  std::size_t piece;
  Integer order;
};

// forced[i] constrains the step of piece i (i ≥ 1) when set.
TotalResolution resolve_total(const FGAbelianGroup& total, const std::vector<FGAbelianGroup>& pieces,
                              const std::vector<std::optional<ExtStatus>>& forced) {
  TotalResolution out;
  if (pieces.empty()) {
    if (!total.is_zero()) throw InputError("no filtration pieces, but the total is " + total.str());
    return out;
  }
  std::vector<TorsionItem> items;
  for (std::size_t i = 1; i < pieces.size(); ++i)
    for (const auto& t : pieces[i].torsion()) items.push_back({i, t});
  if (items.size() > 20) throw InputError("too many torsion summands to search extension patterns");

  std::vector<std::vector<bool>> consistent;
  for (unsigned long mask = 0; mask < (1UL << items.size()); ++mask) {
    std::vector<bool> absorbed(items.size());
    for (std::size_t k = 0; k < items.size(); ++k) absorbed[k] = (mask >> k) & 1UL;
    unsigned free = pieces[0].free_rank();
    std::vector<Integer> torsion = pieces[0].torsion();
    bool ok = true;
    std::size_t k = 0;
    for (std::size_t i = 1; i < pieces.size() && ok; ++i) {
      bool any = false;
      for (; k < items.size() && items[k].piece == i; ++k) {
        if (absorbed[k]) {
          if (free == 0) ok = false;
          any = true;
        } else {
          torsion.push_back(items[k].order);
        }
      }
      if (forced.size() > i && forced[i]) {
        if (*forced[i] == ExtStatus::Split && any) ok = false;
        if (*forced[i] == ExtStatus::Nontrivial && !any) ok = false;
      }
      free += pieces[i].free_rank();
    }
    if (!ok) continue;
    std::vector<Integer> orders(free, Integer(0));
    orders.insert(orders.end(), torsion.begin(), torsion.end());
    if (FGAbelianGroup::from_cyclic(orders) == total) consistent.push_back(absorbed);
  }
  if (consistent.empty()) {
    std::string list;
    for (const auto& p : pieces) list += (list.empty() ? "" : ", ") + p.str();
    throw InputError("no extension of the pieces " + list + " has total " + total.str());
  }

  out.stages.assign(pieces.size(), std::nullopt);
  out.steps.assign(pieces.size() > 0 ? pieces.size() - 1 : 0, ExtStatus::Open);
  out.stages[0] = pieces[0];
  bool prefix_agrees = true;
  std::size_t k = 0;
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    std::size_t begin = k;
    while (k < items.size() && items[k].piece == i) ++k;
    std::optional<ExtStatus> agreed;
    bool agree = true;
    for (const auto& a : consistent) {
      bool any = false;
      for (std::size_t t = begin; t < k; ++t) any = any || a[t];
      ExtStatus s = any ? ExtStatus::Nontrivial : ExtStatus::Split;
      if (!agreed) agreed = s;
      else if (*agreed != s) agree = false;
      for (std::size_t t = begin; t < k; ++t)
        if (a[t] != consistent[0][t]) prefix_agrees = false;
    }
    out.steps[i - 1] = agree ? *agreed : ExtStatus::Open;
    if (!prefix_agrees) continue;
    unsigned free = 0;
    std::vector<Integer> torsion = pieces[0].torsion();
    free = pieces[0].free_rank();
    std::size_t t = 0;
    for (std::size_t j = 1; j <= i; ++j) {
      for (; t < items.size() && items[t].piece == j; ++t)
        if (!consistent[0][t]) torsion.push_back(items[t].order);
      free += pieces[j].free_rank();
    }
    std::vector<Integer> orders(free, Integer(0));
    orders.insert(orders.end(), torsion.begin(), torsion.end());
    out.stages[i] = FGAbelianGroup::from_cyclic(orders);
  }
  return out;
}

}  // namespace

TotalResolution resolve_extensions_from_total(const FGAbelianGroup& total, const std::vector<FGAbelianGroup>& pieces) {
  return resolve_total(total, pieces, {});
}

// ---------------------------------------------------------------------------------------------

std::optional<Stage> FiltrationReport::result() const {
  if (pieces.empty()) return Stage{};
  return stages.back();
}

std::optional<Stage> FiltrationReport::stage_at(int p) const {
  std::optional<Stage> current = Stage{};
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].pos.p > p) break;
    current = stages[i];
  }
  return current;
}

std::string FiltrationReport::group_text() const {
  if (status == ReportStatus::Resolved) {
    auto r = result();
    return r ? r->group().str() : "?";
  }
  if (status == ReportStatus::Unresolved) return "?";
  std::vector<std::string> parts;
  for (const auto& piece : pieces) parts.push_back(piece.entry.group_text());
  if (parts.size() == 1) return parts[0];
  std::string out = "ext(";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out + ")";
}

namespace {

Stage stage_of(const PageEntry& e) {
  Stage s;
  auto labels = e.generator_labels();
  for (std::size_t i = 0; i < labels.size(); ++i) s.gens.push_back({e.sub.orders()[i], labels[i], 1});
  return s;
}

void append(Stage& s, const Stage& more) { s.gens.insert(s.gens.end(), more.gens.begin(), more.gens.end()); }

// F absorbs the torsion of the quotient: the free part of F grows by the quotient's free rank.
Stage absorb(const Stage& previous, const Stage& quotient) {
  Stage out;
  std::size_t free_count = 0;
  Integer torsion_order = 1;
  for (const auto& g : previous.gens) free_count += g.order == 0;
  for (const auto& g : quotient.gens)
    if (g.order != 0) torsion_order *= g.order;
  for (auto g : previous.gens) {
    if (g.order == 0 && free_count == 1) g.divisor *= torsion_order;
    out.gens.push_back(g);
  }
  for (const auto& g : quotient.gens)
    if (g.order == 0) out.gens.push_back(g);
  return out;
}

}  // namespace

FiltrationReport assemble(const SSRun& run, int n) {
  FiltrationReport report;
  report.n = n;
  const SSPage& inf = run.infinity();
  for (int p = 0; p <= n; ++p) {
    const PageEntry* e = inf.find({p, n - p});
    if (!e) throw InputError("no E-infinity data at " + to_string(Pos{p, n - p}));
    if (e->is_zero() && e->exact()) continue;
    report.pieces.push_back({{p, n - p}, *e});
  }

  for (const auto& piece : report.pieces) {
    if (!piece.entry.known || !piece.entry.cycles_exact || !piece.entry.boundaries_exact) {
      report.status = ReportStatus::Unresolved;
      report.reason = piece.entry.known ? "a differential at " + to_string(piece.pos) + " is undetermined"
                                        : "no E2 data at " + to_string(piece.pos);
      break;
    }
    if (!piece.entry.exact()) report.status = ReportStatus::Parametric;
  }

  const TotalHint* total = run.hints.find_total(n);
  std::vector<std::optional<ExtStatus>> forced(report.pieces.size());
  report.stages.assign(report.pieces.size(), std::nullopt);
  report.extensions.clear();

  bool usable = report.status == ReportStatus::Resolved;
  for (std::size_t i = 0; i < report.pieces.size(); ++i) {
    const auto& piece = report.pieces[i];
    Stage b = stage_of(piece.entry);
    if (i == 0) {
      if (usable) report.stages[0] = b;
      continue;
    }
    ExtensionRecord rec;
    rec.p = piece.pos.p;
    const auto& prev = report.stages[i - 1];
    auto bgroup = piece.entry.group();
    const ExtHint* hint = run.hints.find_extension(n, piece.pos.p);
    if (bgroup.is_torsion_free()) {
      rec.status = ExtStatus::Split;
      rec.tag = "free-quotient";
      rec.note = "the quotient is free";
      if (prev) {
        Stage s = *prev;
        append(s, b);
        report.stages[i] = s;
      }
    } else if (hint && hint->kind == ExtHint::Kind::Naturality) {
      rec.tag = "naturality-map";
      auto tit = run.targets.find(hint->morphism);
      const auto& m = run.morphisms.at(hint->morphism);
      if (tit == run.targets.end()) throw InputError("sequence for morphism " + hint->morphism + " was not built");
      const SSRun& target = *tit->second;
      Pos tpos{piece.pos.p + m.shift, piece.pos.q};
      const PageEntry* te = target.infinity().find(tpos);
      auto map = m.e2_map(*run.row, piece.pos.p, piece.pos.q);
      if (!te || !map || !te->exact() || !piece.entry.exact()) {
        rec.note = hint->morphism + " is not known on this piece";
      } else {
        auto coords = page_coordinates(piece.entry, *te, *map);
        GroupMorphism qmap(piece.entry.sub.orders(), te->sub.orders(), coords);
        const auto& treport = target.reports.at(n + m.shift);
        auto tstage = treport.stage_at(tpos.p);
        std::optional<FGAbelianGroup> tgroup;
        if (tstage) tgroup = tstage->group();
        auto res = resolve_extension_via_map(prev ? prev->group() : FGAbelianGroup(), qmap, tgroup);
        rec.status = res.status;
        rec.note = hint->morphism + ": " + res.note;
        if (prev && res.group) report.stages[i] = absorb(*prev, b);
      }
    } else if (hint) {
      rec.tag = "user-asserted";
      rec.note = hint->justification;
      if (hint->kind == ExtHint::Kind::Trivial) {
        rec.status = ExtStatus::Split;
        if (prev) {
          Stage s = *prev;
          append(s, b);
          report.stages[i] = s;
        }
      } else {
        rec.status = ExtStatus::Nontrivial;
        auto pg = prev ? prev->group() : FGAbelianGroup();
        if (prev && pg.is_torsion_free() && pg.free_rank() > 0 && bgroup.is_finite() && bgroup.torsion().size() == 1 &&
            is_prime(bgroup.torsion()[0]))
          report.stages[i] = absorb(*prev, b);
      }
    } else if (total) {
      rec.tag = "known-total";
    }
    if (rec.status != ExtStatus::Open) forced[i] = rec.status;
    report.extensions.push_back(rec);
  }

  if (total && usable) {
    std::vector<FGAbelianGroup> groups;
    for (const auto& piece : report.pieces) groups.push_back(piece.entry.group());
    auto res = resolve_total(total->group, groups, forced);
    for (std::size_t i = 1; i < report.pieces.size(); ++i) {
      auto& rec = report.extensions[i - 1];
      if (rec.status != ExtStatus::Open || rec.tag != "known-total") continue;
      rec.status = res.steps[i - 1];
      rec.note = total->justification;
    }
    // Rebuild stages that the explicit rules left open, following the unique consistent pattern.
    for (std::size_t i = 1; i < report.pieces.size(); ++i) {
      if (report.stages[i] || !report.stages[i - 1] || !res.stages[i]) continue;
      const auto& rec = report.extensions[i - 1];
      Stage b = stage_of(report.pieces[i].entry);
      if (rec.status == ExtStatus::Split) {
        Stage s = *report.stages[i - 1];
        append(s, b);
        report.stages[i] = s;
      } else if (rec.status == ExtStatus::Nontrivial) {
        Stage s = absorb(*report.stages[i - 1], b);
        if (s.group() == *res.stages[i]) report.stages[i] = s;
      }
    }
    if (report.stages.back() && !(report.stages.back()->group() == total->group))
      throw InputError("degree " + std::to_string(n) + " assembles to " + report.stages.back()->group().str() +
                       " but the stated total is " + total->group.str());
  }

  if (report.status == ReportStatus::Resolved && !report.pieces.empty() && !report.stages.back()) {
    report.status = ReportStatus::Unresolved;
    for (std::size_t i = 1; i < report.pieces.size(); ++i) {
      if (report.stages[i]) continue;
      const auto& rec = report.extensions[i - 1];
      report.reason = "extension at p=" + std::to_string(rec.p) +
                      (rec.status == ExtStatus::Open ? " is open" : " does not determine the group");
      break;
    }
  }
  return report;
}

}  // namespace bordcalc
