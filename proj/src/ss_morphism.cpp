#include <algorithm>
#include <set>

#include "bordcalc/ahss.hpp"
#include "bordcalc/errors.hpp"

namespace bordcalc {

namespace {

std::vector<std::string> integral_labels(const SpaceDescriptor& s, int p) { return s.homology_at(p).labels(); }

std::vector<std::string> mod2_labels(const SpaceDescriptor& s, int p) {
  std::vector<std::string> out;
  for (const auto& g : s.mod2_at(p)) out.push_back(g.label);
  return out;
}

// The block of a degree map, or a zero block when either side is the zero group.
std::optional<IntMatrix> block(const std::map<int, DegreeMap>& maps, int p, std::size_t src, std::size_t tgt) {
  auto it = maps.find(p);
  if (it != maps.end()) return it->second.known ? std::optional<IntMatrix>(it->second.matrix) : std::nullopt;
  if (src == 0 || tgt == 0) return IntMatrix(tgt, src);
  return std::nullopt;
}

bool in_range(const SpaceDescriptor& s, int p) { return p >= 0 && p <= s.cap; }

Integer term_coefficient(std::string& term) {
  std::size_t k = 0;
  while (k < term.size() && std::isdigit(static_cast<unsigned char>(term[k]))) ++k;
  if (k == 0) return 1;
  Integer c(term.substr(0, k));
  term = term.substr(k);
  if (!term.empty() && term[0] == '*') term = term.substr(1);
  return c;
}

}  // namespace

SSMorphism parse_morphism(const std::string& name, SpacePtr source, SpacePtr target, int shift,
                          const std::vector<text::Line>& body, const std::string& source_name) {
  SSMorphism m;
  m.name = name;
  m.source = source;
  m.target = target;
  m.shift = shift;
  std::map<std::pair<bool, int>, std::map<std::string, std::string>> listed;
  std::set<std::pair<bool, int>> unknown;

  for (const auto& line : body) {
    auto words = text::split_words(line.text);
    if (words.size() < 3 || (words[0] != "z" && words[0] != "z2"))
      text::fail(source_name, line, "expected 'z|z2 <degree> <generator> -> <terms>' or 'z|z2 <degree> unknown'");
    bool mod2 = words[0] == "z2";
    int p = text::parse_int(words[1], "degree");
    if (!in_range(*source, p)) text::fail(source_name, line, "degree outside the source data");
    auto key = std::make_pair(mod2, p);
    if (words.size() == 3 && words[2] == "unknown") {
      if (listed.count(key)) text::fail(source_name, line, "degree both listed and unknown");
      unknown.insert(key);
      continue;
    }
    if (unknown.count(key)) text::fail(source_name, line, "degree both listed and unknown");
    auto arrow = line.text.find("->");
    if (words.size() < 5 || words[3] != "->" || arrow == std::string::npos)
      text::fail(source_name, line, "expected '<generator> -> <terms>'");
    if (!listed[key].emplace(words[2], text::trim(line.text.substr(arrow + 2))).second)
      text::fail(source_name, line, words[2] + " listed twice");
  }

  for (const auto& key : unknown) (key.first ? m.mod2 : m.integral)[key.second] = DegreeMap{false, {}};
  for (const auto& [key, entries] : listed) {
    auto [mod2, p] = key;
    int tp = p + shift;
    if (!in_range(*target, tp))
      throw InputError(source_name + ": morphism " + name + " lands in degree " + std::to_string(tp) +
                       ", outside the target data");
    auto src = mod2 ? mod2_labels(*source, p) : integral_labels(*source, p);
    auto tgt = mod2 ? mod2_labels(*target, tp) : integral_labels(*target, tp);
    IntMatrix mat(tgt.size(), src.size());
    for (const auto& [from, terms] : entries) {
      auto j = std::find(src.begin(), src.end(), from);
      if (j == src.end())
        throw InputError(source_name + ": " + from + " is not a generator in degree " + std::to_string(p));
      if (terms == "0") continue;
      for (auto term : text::split(terms, "+")) {
        auto i = std::find(tgt.begin(), tgt.end(), term);
        Integer c = 1;
        if (i == tgt.end()) {
          c = term_coefficient(term);
          i = std::find(tgt.begin(), tgt.end(), term);
        }
        if (i == tgt.end())
          throw InputError(source_name + ": " + term + " is not a target generator in degree " + std::to_string(tp));
        mat(i - tgt.begin(), j - src.begin()) += c;
      }
    }
    for (const auto& label : src)
      if (!entries.count(label))
        throw InputError(source_name + ": morphism " + name + " does not say where " + label + " goes");
    if (mod2)
      for (std::size_t i = 0; i < mat.rows(); ++i)
        for (std::size_t j = 0; j < mat.cols(); ++j) mat(i, j) = reduce_mod(mat(i, j), 2);
    (mod2 ? m.mod2 : m.integral)[p] = DegreeMap{true, mat};
  }
  return m;
}

std::optional<IntMatrix> SSMorphism::e2_map(const CoefficientRow& row, int p, int q) const {
  int tp = p + shift;
  if (!in_range(*source, p) || !in_range(*target, tp) || !row.has(q)) return std::nullopt;
  auto src = e2_generators(*source, row, p, q);
  auto tgt = e2_generators(*target, row, tp, q);
  IntMatrix out(tgt.size(), src.size());
  if (src.empty() || tgt.empty()) return out;

  auto zp = block(integral, p, source->homology_at(p).summands.size(), target->homology_at(tp).summands.size());
  auto z2p = block(mod2, p, source->mod2_at(p).size(), target->mod2_at(tp).size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    for (std::size_t i = 0; i < tgt.size(); ++i) {
      if (src[j].coeff_index != tgt[i].coeff_index) continue;
      using K = E2Generator::Kind;
      if (src[j].kind != tgt[i].kind) {
        if (src[j].kind == K::Tor || tgt[i].kind == K::Tor) return std::nullopt;
        continue;
      }
      switch (src[j].kind) {
        case K::Integral:
        case K::Tensor:
          if (!zp) return std::nullopt;
          out(i, j) = reduce_mod((*zp)(tgt[i].hom_index, src[j].hom_index), tgt[i].order);
          break;
        case K::Mod2:
          if (!z2p) return std::nullopt;
          out(i, j) = reduce_mod((*z2p)(tgt[i].hom_index, src[j].hom_index), 2);
          break;
        case K::Tor:
          return std::nullopt;
      }
    }
  }
  return out;
}

SSMorphism::Flag SSMorphism::flag(const CoefficientRow& row, int p, int q) const {
  auto m = e2_map(row, p, q);
  if (!m) return Flag::Unknown;
  if (m->is_zero()) return Flag::Zero;
  auto src = e2_generators(*source, row, p, q);
  auto tgt = e2_generators(*target, row, p + shift, q);
  std::vector<Integer> so, to;
  for (const auto& g : src) so.push_back(g.order);
  for (const auto& g : tgt) to.push_back(g.order);
  GroupMorphism f(so, to, *m);
  return f.is_injective() && f.cokernel().is_zero() ? Flag::Iso : Flag::Other;
}

void SSMorphism::validate(const CoefficientRow& row) const {
  auto bad = [&](const std::string& msg) { throw InputError("morphism " + name + ": " + msg); };
  for (int p = 0; p <= source->cap && p + shift <= target->cap; ++p) {
    int tp = p + shift;
    auto zs = source->homology_at(p), zt = target->homology_at(tp);
    auto ms = source->mod2_at(p), mt = target->mod2_at(tp);
    auto zp = block(integral, p, zs.summands.size(), zt.summands.size());
    auto z2p = block(mod2, p, ms.size(), mt.size());
    if (zp && z2p) {
      IntMatrix lhs = target->reduction_matrix(tp) * *zp;
      IntMatrix rhs = *z2p * source->reduction_matrix(p);
      for (std::size_t k = 0; k < lhs.entries().size(); ++k)
        if (reduce_mod(lhs.entries()[k] - rhs.entries()[k], 2) != 0)
          bad("does not commute with mod 2 reduction in degree " + std::to_string(p));
    }
    auto below_s = source->homology_at(p - 1), below_t = target->homology_at(tp - 1);
    auto zb = block(integral, p - 1, below_s.summands.size(), below_t.summands.size());
    if (z2p && zb) {
      for (std::size_t j = 0; j < ms.size(); ++j) {
        if (ms[j].origin != Mod2Generator::Origin::Tor) continue;
        std::size_t h = 0;
        while (below_s.summands[h].label != ms[j].source) ++h;
        if (below_s.summands[h].order != 2) continue;
        for (std::size_t i = 0; i < mt.size(); ++i) {
          if (mt[i].origin != Mod2Generator::Origin::Tor) continue;
          std::size_t h2 = 0;
          while (below_t.summands[h2].label != mt[i].source) ++h2;
          if (below_t.summands[h2].order != 2) continue;
          if (reduce_mod((*z2p)(i, j) - (*zb)(h2, h), 2) != 0)
            bad("the Tor part of " + ms[j].label + " does not follow the map in degree " + std::to_string(p - 1));
        }
      }
    }
  }
  if (!row.spin) return;
  for (int q = 0; q <= 1; ++q) {
    for (int p = 2; p <= source->cap && p + shift <= target->cap; ++p) {
      auto high = e2_map(row, p, q);
      auto low = e2_map(row, p - 2, q + 1);
      if (!high || !low) continue;
      IntMatrix lhs = *low * d2_ambient(*source, row, p, q);
      IntMatrix rhs = d2_ambient(*target, row, p + shift, q) * *high;
      for (std::size_t k = 0; k < lhs.entries().size(); ++k)
        if (reduce_mod(lhs.entries()[k] - rhs.entries()[k], 2) != 0)
          bad("does not commute with d2 at " + to_string(Pos{p, q}));
    }
  }
}

DeduceResult deduce_vanishing(const SSMorphism& m, const CoefficientRow& row, const SSPage& source_page,
                              const SSPage& target_page, int r, const Pos& pos) {
  const PageEntry* s = source_page.find(pos);
  Pos tpos{pos.p - r, pos.q + r - 1};
  const PageEntry* t = source_page.find(tpos);
  if (!s || !t) return {false, "position outside the page"};
  if (s->is_zero()) return {true, "source is zero"};
  Pos ms_pos{pos.p + m.shift, pos.q}, mt_pos{tpos.p + m.shift, tpos.q};
  const PageEntry* s2 = target_page.find(ms_pos);
  const PageEntry* t2 = target_page.find(mt_pos);
  if (!s2 || !t2 || !s2->known || !t2->known) return {false, "target sequence has no data there"};
  auto ms = m.e2_map(row, pos.p, pos.q);
  auto mt = m.e2_map(row, tpos.p, tpos.q);
  if (!ms || !mt) return {false, "map not known on E2"};

  const auto& gens = s->sub.generators();
  IntMatrix image = *ms * gens;
  for (std::size_t j = 0; j < gens.cols(); ++j) {
    auto c = s2->sub.coordinates(image.column(j));
    if (!c) return {false, "image of a source generator is not a cycle"};
    for (std::size_t i = 0; i < c->size(); ++i)
      if (reduce_mod((*c)[i], s2->sub.orders()[i]) != 0) return {false, "map is nonzero on " + to_string(pos)};
  }
  if (!t->exact() || !t2->exact()) return {false, "target entries not exact on this page"};
  IntMatrix coords;
  try {
    coords = page_coordinates(*t, *t2, *mt);
  } catch (const InputError&) {
    return {false, "map does not preserve cycles at " + to_string(tpos)};
  }
  if (!GroupMorphism(t->sub.orders(), t2->sub.orders(), coords).is_injective())
    return {false, "map is not injective on " + to_string(tpos)};
  return {true, "zero on " + to_string(pos) + ", injective on " + to_string(tpos)};
}

}  // namespace bordcalc
