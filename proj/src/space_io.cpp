#include <algorithm>
#include <set>

#include "bordcalc/errors.hpp"
#include "bordcalc/space.hpp"
#include "bordcalc/text_format.hpp"

namespace bordcalc {

using text::Line;

std::vector<Integer> parse_summand_orders(const std::string& group_text) {
  std::vector<Integer> out;
  auto t = text::trim(group_text);
  if (t == "0") return out;
  for (const auto& part : text::split(t, "+")) {
    if (part.empty() || part[0] != 'Z') throw InputError("cannot read group summand '" + part + "'");
    std::string rest = part.substr(1);
    unsigned copies = 1;
    auto caret = rest.find('^');
    if (caret != std::string::npos) {
      int k = text::parse_int(rest.substr(caret + 1), "exponent in '" + part + "'");
      if (k < 1) throw InputError("exponent must be positive in '" + part + "'");
      copies = static_cast<unsigned>(k);
      rest = rest.substr(0, caret);
    }
    if (!rest.empty() && rest[0] == '/') rest = rest.substr(1);
    Integer order = 0;
    if (!rest.empty()) {
      int m = text::parse_int(rest, "order in '" + part + "'");
      if (m < 2) throw InputError("cyclic order must be at least 2 in '" + part + "'");
      order = m;
    }
    for (unsigned i = 0; i < copies; ++i) out.push_back(order);
  }
  return out;
}

std::string summand_text(const std::vector<Integer>& orders) {
  if (orders.empty()) return "0";
  std::string out;
  for (const auto& o : orders) {
    if (!out.empty()) out += " + ";
    out += o == 0 ? std::string("Z") : "Z/" + o.get_str();
  }
  return out;
}

std::string combine_labels(const std::string& coefficient, const std::string& homology) {
  if (coefficient.empty() || coefficient == "1") return homology;
  if (homology.empty() || homology == "1" || homology == "1̄") return coefficient;
  bool bracket = coefficient.find_first_of("/+ ,-") != std::string::npos;
  return (bracket ? "[" + coefficient + "]" : coefficient) + homology;
}

LabeledGroup LabeledGroup::parse(const std::string& group_text, const std::string& labels_text) {
  auto orders = parse_summand_orders(group_text);
  auto labels = text::split(labels_text, ",");
  if (labels.size() != orders.size())
    throw InputError("group '" + group_text + "' has " + std::to_string(orders.size()) + " summands but " +
                     std::to_string(labels.size()) + " labels");
  LabeledGroup g;
  for (std::size_t i = 0; i < orders.size(); ++i) g.summands.push_back({orders[i], labels[i]});
  return g;
}

std::vector<Integer> LabeledGroup::orders() const {
  std::vector<Integer> out;
  for (const auto& s : summands) out.push_back(s.order);
  return out;
}

std::vector<std::string> LabeledGroup::labels() const {
  std::vector<std::string> out;
  for (const auto& s : summands) out.push_back(s.label);
  return out;
}

std::string LabeledGroup::str() const {
  if (is_zero()) return "0";
  std::string out = summand_text(orders()) + " :";
  for (std::size_t i = 0; i < summands.size(); ++i) out += (i ? ", " : " ") + summands[i].label;
  return out;
}

// ---------------------------------------------------------------------------------------------
// SpaceDescriptor

LabeledGroup SpaceDescriptor::homology_at(int p) const {
  if (p < 0) return {};
  if (p > cap) throw InputError(name + ": no homology data in degree " + std::to_string(p));
  auto it = homology.find(p);
  return it == homology.end() ? LabeledGroup{} : it->second;
}

std::vector<Mod2Generator> SpaceDescriptor::mod2_at(int p) const {
  if (p < 0) return {};
  if (p > cap) throw InputError(name + ": no mod 2 homology data in degree " + std::to_string(p));
  auto it = homology_mod2.find(p);
  return it == homology_mod2.end() ? std::vector<Mod2Generator>{} : it->second;
}

GradedGroups SpaceDescriptor::integral_groups() const {
  GradedGroups g;
  for (int p = 0; p <= cap; ++p) g[p] = homology_at(p).group();
  return g;
}

IntMatrix SpaceDescriptor::reduction_matrix(int p) const {
  auto z = homology_at(p);
  auto m2 = mod2_at(p);
  IntMatrix m(m2.size(), z.summands.size());
  for (std::size_t i = 0; i < m2.size(); ++i) {
    if (m2[i].origin != Mod2Generator::Origin::Reduction) continue;
    for (std::size_t j = 0; j < z.summands.size(); ++j)
      if (z.summands[j].label == m2[i].source) m(i, j) = 1;
  }
  return m;
}

SpaceDescriptor SpaceDescriptor::with_basepoint() const {
  SpaceDescriptor s = *this;
  if (!reduced) return s;
  s.reduced = false;
  s.homology[0] = LabeledGroup{{{Integer(0), "1"}}};
  s.homology_mod2[0] = {{"1̄", Mod2Generator::Origin::Reduction, "1"}};
  if (has_cohomology) s.cohomology[0] = LabeledGroup{{{Integer(0), "1"}}};
  s.pairing.set_homology_basis(0, {"1̄"});
  s.pairing.set_value(0, ring_mod2->unit(), "1̄", 1);
  return s;
}

void SpaceDescriptor::validate() const {
  auto bad = [&](const std::string& msg) { throw InputError(name + ": " + msg); };
  if (!ring_mod2) bad("no Z2 cohomology ring");
  if (ring_mod2->coefficients() != CoeffRing::Z2) bad("the mod 2 ring must have Z2 coefficients");
  if (ring_mod2->degree_cap() < cap) bad("the Z2 ring stops below the degree cap");
  for (const auto& [p, g] : homology)
    if (p < 0 || p > cap) bad("homology listed outside degrees 0.." + std::to_string(cap));
  for (const auto& [p, g] : homology_mod2)
    if (p < 0 || p > cap) bad("mod 2 homology listed outside degrees 0.." + std::to_string(cap));

  const int start = reduced ? 1 : 0;
  if (reduced && (homology.count(0) || homology_mod2.count(0))) bad("a reduced descriptor has no degree 0 homology");
  auto groups = integral_groups();
  for (int p = start; p <= cap; ++p) {
    auto z = homology_at(p);
    auto m2 = mod2_at(p);
    std::set<std::string> seen;
    for (const auto& s : z.summands)
      if (!seen.insert(s.label).second) bad("label " + s.label + " repeated in degree " + std::to_string(p));
    for (const auto& g : m2)
      if (!seen.insert(g.label).second) bad("label " + g.label + " repeated in degree " + std::to_string(p));

    auto expected = uct_homology(groups, p, Coefficient::mod(2));
    auto listed = FGAbelianGroup(0, std::vector<Integer>(m2.size(), Integer(2)));
    if (!(expected == listed))
      bad("mod 2 homology in degree " + std::to_string(p) + " should be " + expected.str() + " by the UCT, listed " +
          listed.str());

    auto below = homology_at(p - 1);
    std::multiset<std::string> reduction_sources, tor_sources;
    for (const auto& g : m2) {
      const auto& pool = g.origin == Mod2Generator::Origin::Reduction ? z : below;
      auto it = std::find_if(pool.summands.begin(), pool.summands.end(),
                             [&](const Summand& s) { return s.label == g.source; });
      if (it == pool.summands.end())
        bad(g.label + " refers to " + g.source + ", which is not an integral generator in degree " +
            std::to_string(g.origin == Mod2Generator::Origin::Reduction ? p : p - 1));
      bool even = mpz_even_p(it->order.get_mpz_t()) != 0;
      if (g.origin == Mod2Generator::Origin::Reduction) {
        if (!even) bad(g.source + " has odd order and does not reduce to a nonzero mod 2 class");
        reduction_sources.insert(g.source);
      } else {
        if (it->order == 0 || !even) bad(g.source + " contributes no Tor term");
        tor_sources.insert(g.source);
      }
    }
    for (const auto& s : z.summands)
      if (mpz_even_p(s.order.get_mpz_t()) && reduction_sources.count(s.label) != 1)
        bad("the reduction of " + s.label + " must be listed exactly once in degree " + std::to_string(p));
    for (const auto& s : below.summands)
      if (s.order != 0 && mpz_even_p(s.order.get_mpz_t()) && tor_sources.count(s.label) != 1)
        bad("the Tor class of " + s.label + " must be listed exactly once in degree " + std::to_string(p));

    if (has_cohomology) {
      auto it = cohomology.find(p);
      auto listed_h = it == cohomology.end() ? FGAbelianGroup() : it->second.group();
      auto expect_h = uct_cohomology(groups, p, Coefficient::integers());
      if (!(listed_h == expect_h))
        bad("integral cohomology in degree " + std::to_string(p) + " should be " + expect_h.str() +
            " by the UCT, listed " + listed_h.str());
    }

    auto basis = ring_mod2->basis(p);
    if (basis.size() != m2.size())
      bad("the Z2 ring has " + std::to_string(basis.size()) + " classes in degree " + std::to_string(p) + " but " +
          std::to_string(m2.size()) + " mod 2 homology classes are listed");
    if (!m2.empty() && !pairing.has_degree(p)) bad("no pairing in degree " + std::to_string(p));
  }

  if (ring_integral) {
    if (ring_integral->coefficients() != CoeffRing::Z) bad("the integral ring must have Z coefficients");
    if (ring_integral->generators().size() != ring_mod2->generators().size()) bad("integral and mod 2 rings differ");
    for (int p = start; p <= cap; ++p) {
      if (ring_integral->basis(p) != ring_mod2->basis(p))
        bad("mod 2 reduction of the integral ring does not match the Z2 basis in degree " + std::to_string(p));
      if (!has_cohomology) continue;
      auto it = cohomology.find(p);
      std::vector<std::string> listed = it == cohomology.end() ? std::vector<std::string>{} : it->second.labels();
      std::vector<std::string> from_ring;
      for (const auto& m : ring_integral->basis(p)) from_ring.push_back(ring_integral->monomial_label(m));
      if (listed != from_ring) bad("integral cohomology labels in degree " + std::to_string(p) + " disagree with the ring");
    }
  }

  for (std::size_t g = 0; g < ring_mod2->generators().size(); ++g) {
    const auto& gen = ring_mod2->generators()[g];
    if (gen.degree + 2 <= cap && !ring_mod2->square_of_generator(2, g))
      bad("Sq2 of " + gen.label + " lands in degree " + std::to_string(gen.degree + 2) + " but is not given");
  }
  pairing.validate();
}

// ---------------------------------------------------------------------------------------------
// Parsing

namespace {

struct RingDraft {
  CoeffRing coeff = CoeffRing::Z2;
  int cap = 10;
  std::vector<RingGenerator> gens;
  std::vector<std::pair<Line, std::vector<std::string>>> squares;
};

RingPtr build_ring(const RingDraft& d, const std::string& source) {
  auto ring = std::make_shared<RingPresentation>(d.coeff, d.gens, d.cap);
  for (const auto& [line, words] : d.squares) {
    try {
      int which = words[0] == "sq1" ? 1 : 2;
      std::string rhs;
      for (std::size_t i = 3; i < words.size(); ++i) rhs += (i > 3 ? " " : "") + words[i];
      ring->set_square(which, words[1], ring->parse_terms(rhs));
    } catch (const InputError& e) {
      text::fail(source, line, e.what());
    }
  }
  return ring;
}

void parse_homology_z(const std::vector<Line>& body, std::map<int, LabeledGroup>& out, const std::string& source) {
  for (const auto& line : body) {
    auto [head, labels] = text::split_colon(line.text);
    auto words = text::split_words(head);
    if (words.size() < 2) text::fail(source, line, "expected '<degree> <group> : <labels>'");
    int p = text::parse_int(words[0], "degree");
    std::string group;
    for (std::size_t i = 1; i < words.size(); ++i) group += words[i] + " ";
    try {
      auto g = LabeledGroup::parse(group, labels.value_or(""));
      if (!out.emplace(p, g).second) text::fail(source, line, "degree " + words[0] + " listed twice");
    } catch (const InputError& e) {
      if (std::string(e.what()).find(source) == 0) throw;
      text::fail(source, line, e.what());
    }
  }
}

}  // namespace

SpaceDescriptor parse_space(const std::string& document, const std::string& source) {
  auto lines = text::read_lines(document);
  SpaceDescriptor s;
  bool have_name = false, have_cap = false;
  std::optional<RingDraft> mod2, integral;
  std::optional<Line> pairing_line;
  bool pairing_identity = false;
  std::vector<Line> pairing_entries;

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const Line& line = lines[i];
    auto words = text::split_words(line.text);
    const std::string& key = words[0];
    if (key == "space") {
      if (words.size() < 2) text::fail(source, line, "missing space name");
      s.name = text::trim(line.text.substr(5));
      have_name = true;
    } else if (key == "cap") {
      if (words.size() != 2) text::fail(source, line, "expected 'cap <degree>'");
      s.cap = text::parse_int(words[1], "cap");
      have_cap = true;
    } else if (key == "homology" && words.size() == 2 && words[1] == "Z") {
      parse_homology_z(text::read_block(lines, i, source), s.homology, source);
    } else if (key == "cohomology" && words.size() == 2 && words[1] == "Z") {
      parse_homology_z(text::read_block(lines, i, source), s.cohomology, source);
      s.has_cohomology = true;
    } else if (key == "homology" && words.size() == 2 && words[1] == "Z2") {
      for (const auto& row : text::read_block(lines, i, source)) {
        auto w = text::split_words(row.text);
        bool tor = w.size() == 5 && w[3] == "tor";
        if (!((w.size() == 4 || tor) && w[2] == "<-"))
          text::fail(source, row, "expected '<degree> <label> <- [tor] <integral label>'");
        Mod2Generator g{w[1], tor ? Mod2Generator::Origin::Tor : Mod2Generator::Origin::Reduction, w.back()};
        s.homology_mod2[text::parse_int(w[0], "degree")].push_back(g);
      }
    } else if (key == "ring") {
      if (words.size() != 2 && !(words.size() == 4 && words[2] == "cap"))
        text::fail(source, line, "expected 'ring Z|Z2 [cap <degree>]'");
      RingDraft d;
      if (words[1] == "Z") d.coeff = CoeffRing::Z;
      else if (words[1] == "Z2") d.coeff = CoeffRing::Z2;
      else text::fail(source, line, "ring coefficients must be Z or Z2");
      if (words.size() == 4) d.cap = text::parse_int(words[3], "ring cap");
      for (const auto& row : text::read_block(lines, i, source)) {
        auto w = text::split_words(row.text);
        if (w[0] == "gen") {
          if (w.size() != 4) text::fail(source, row, "expected 'gen <label> <degree> exterior|polynomial'");
          GenKind kind;
          if (w[3] == "exterior") kind = GenKind::Exterior;
          else if (w[3] == "polynomial") kind = GenKind::Polynomial;
          else text::fail(source, row, "generator kind must be exterior or polynomial");
          d.gens.push_back({w[1], text::parse_int(w[2], "generator degree"), kind});
        } else if ((w[0] == "sq1" || w[0] == "sq2") && w.size() >= 4 && w[2] == "=") {
          d.squares.push_back({row, w});
        } else {
          text::fail(source, row, "expected a 'gen' or 'sq1'/'sq2' line");
        }
      }
      try {
        if (d.coeff == CoeffRing::Z) {
          if (integral) text::fail(source, line, "integral ring given twice");
          integral = d;
        } else {
          if (mod2) text::fail(source, line, "mod 2 ring given twice");
          mod2 = d;
        }
      } catch (const InputError&) {
        throw;
      }
    } else if (key == "pairing") {
      if (words.size() >= 2 && words[1] != "Z2") text::fail(source, line, "only Z2 pairings are stored");
      pairing_line = line;
      if (words.size() == 3 && words[2] == "identity") {
        pairing_identity = true;
      } else if (words.size() == 2) {
        pairing_entries = text::read_block(lines, i, source);
      } else {
        text::fail(source, line, "expected 'pairing Z2 identity' or a 'pairing Z2' block");
      }
    } else {
      text::fail(source, line, "unknown directive '" + key + "'");
    }
  }
  if (!have_name) throw InputError(source + ": missing 'space' line");
  if (!have_cap) throw InputError(source + ": missing 'cap' line");
  if (!mod2) throw InputError(source + ": missing 'ring Z2' block");
  if (!pairing_line) throw InputError(source + ": missing pairing");

  try {
    s.ring_mod2 = build_ring(*mod2, source);
    if (integral) s.ring_integral = build_ring(*integral, source);
  } catch (const InputError& e) {
    if (std::string(e.what()).find(source) == 0) throw;
    throw InputError(source + ": " + e.what());
  }

  s.pairing = PairingTable(s.ring_mod2);
  for (const auto& [p, gens] : s.homology_mod2) {
    if (p > s.ring_mod2->degree_cap()) continue;
    std::vector<std::string> labels;
    for (const auto& g : gens) labels.push_back(g.label);
    s.pairing.set_homology_basis(p, labels);
    if (pairing_identity) {
      auto basis = s.ring_mod2->basis(p);
      if (basis.size() != labels.size())
        throw InputError(source + ": identity pairing in degree " + std::to_string(p) + " needs " +
                         std::to_string(basis.size()) + " mod 2 homology classes");
      for (std::size_t k = 0; k < basis.size(); ++k) s.pairing.set_value(p, basis[k], labels[k], 1);
    }
  }
  for (const auto& row : pairing_entries) {
    auto w = text::split_words(row.text);
    if (w.size() != 4) text::fail(source, row, "expected '<degree> <monomial> <homology label> <value>'");
    try {
      int p = text::parse_int(w[0], "degree");
      s.pairing.set_value(p, s.ring_mod2->parse_monomial(w[1]), w[2], text::parse_int(w[3], "pairing value"));
    } catch (const InputError& e) {
      text::fail(source, row, e.what());
    }
  }
  s.validate();
  return s;
}

// ---------------------------------------------------------------------------------------------
// Coefficient rows

LabeledGroup CoefficientRow::at(int q) const {
  if (!has(q)) throw InputError("coefficient row " + name + " has no data in degree " + std::to_string(q));
  auto it = groups.find(q);
  return it == groups.end() ? LabeledGroup{} : it->second;
}

std::string CoefficientRow::str() const {
  std::string out = "row " + name + "\nmax " + std::to_string(max_q) + "\n";
  if (spin) out += "spin\n";
  for (int q = 0; q <= max_q; ++q) {
    auto g = at(q);
    out += "  " + std::to_string(q) + " " + g.str() + "\n";
  }
  return out;
}

CoefficientRow spin_coefficients() {
  CoefficientRow row;
  row.name = "Spin";
  row.max_q = 9;
  row.spin = true;
  row.groups[0] = LabeledGroup::parse("Z", "1");
  row.groups[1] = LabeledGroup::parse("Z/2", "α1");
  row.groups[2] = LabeledGroup::parse("Z/2", "α1²");
  row.groups[4] = LabeledGroup::parse("Z", "α2");
  row.groups[8] = LabeledGroup::parse("Z^2", "ω8a, ω8b");
  row.groups[9] = LabeledGroup::parse("Z/2^2", "ω9a, ω9b");
  return row;
}

CoefficientRow parse_row(const std::string& document, const std::string& source) {
  CoefficientRow row;
  bool have_name = false;
  for (const auto& line : text::read_lines(document)) {
    auto words = text::split_words(line.text);
    if (words[0] == "row") {
      row.name = text::trim(line.text.substr(3));
      have_name = !row.name.empty();
    } else if (words[0] == "max" && words.size() == 2) {
      row.max_q = text::parse_int(words[1], "max");
    } else if (words[0] == "spin" && words.size() == 1) {
      row.spin = true;
    } else {
      auto [head, labels] = text::split_colon(line.text);
      auto w = text::split_words(head);
      int q = text::parse_int(w[0], "degree");
      std::string group;
      for (std::size_t i = 1; i < w.size(); ++i) group += w[i] + " ";
      try {
        auto g = LabeledGroup::parse(group, labels.value_or(""));
        if (!g.is_zero()) row.groups[q] = g;
      } catch (const InputError& e) {
        text::fail(source, line, e.what());
      }
    }
  }
  if (!have_name) throw InputError(source + ": missing 'row' line");
  for (const auto& [q, g] : row.groups)
    if (q < 0 || q > row.max_q) throw InputError(source + ": degree " + std::to_string(q) + " beyond 'max'");
  return row;
}

}  // namespace bordcalc
