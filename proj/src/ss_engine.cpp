#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "bordcalc/ahss.hpp"
#include "bordcalc/errors.hpp"

namespace bordcalc {

std::string to_string(const Pos& pos) { return "(" + std::to_string(pos.p) + "," + std::to_string(pos.q) + ")"; }

std::string to_string(DiffStatus s) {
  switch (s) {
    case DiffStatus::Vanishing: return "vanishing";
    case DiffStatus::Computed: return "computed";
    case DiffStatus::AssertedZero: return "asserted-zero";
    case DiffStatus::AssertedValue: return "asserted-value";
    case DiffStatus::Deduced: return "deduced-zero";
    case DiffStatus::Parameter: return "unknown-with-parameter";
    case DiffStatus::Undetermined: return "undetermined";
  }
  return "?";
}

namespace {

std::string order_text(const Integer& o) { return o == 0 ? std::string("Z") : "Z/" + o.get_str(); }

}  // namespace

std::string labeled_group_text(const std::vector<Integer>& orders, const std::vector<std::string>& labels) {
  std::vector<std::pair<Integer, std::string>> items;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] == 1) continue;
    items.emplace_back(orders[i], i < labels.size() ? labels[i] : "?");
  }
  if (items.empty()) return "0";
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if ((a.first == 0) != (b.first == 0)) return a.first == 0;
    return a.first < b.first;
  });
  std::vector<Integer> sorted;
  for (const auto& it : items) sorted.push_back(it.first);
  auto group = FGAbelianGroup::from_cyclic(sorted);
  bool plain = group.generator_orders() == sorted;
  std::string out = group.str() + " :";
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += (i ? ", " : " ") + items[i].second;
    if (!plain) out += " [" + order_text(items[i].first) + "]";
  }
  return out;
}

// ---------------------------------------------------------------------------------------------
// E²

std::vector<E2Generator> e2_generators(const SpaceDescriptor& space, const CoefficientRow& row, int p, int q) {
  std::vector<E2Generator> out;
  if (p < 0 || q < 0) return out;
  auto coeff = row.at(q);
  if (coeff.is_zero()) return out;
  auto h = space.homology_at(p);
  for (std::size_t ci = 0; ci < coeff.summands.size(); ++ci) {
    const auto& c = coeff.summands[ci];
    if (c.order == 0) {
      for (std::size_t j = 0; j < h.summands.size(); ++j)
        out.push_back({h.summands[j].order, combine_labels(c.label, h.summands[j].label), ci,
                       E2Generator::Kind::Integral, j});
    } else if (c.order == 2) {
      auto m2 = space.mod2_at(p);
      for (std::size_t j = 0; j < m2.size(); ++j)
        out.push_back({Integer(2), combine_labels(c.label, m2[j].label), ci, E2Generator::Kind::Mod2, j});
    } else {
      for (std::size_t j = 0; j < h.summands.size(); ++j) {
        Integer g = gcd(h.summands[j].order, c.order);
        if (g > 1) out.push_back({g, combine_labels(c.label, h.summands[j].label), ci, E2Generator::Kind::Tensor, j});
      }
      auto below = space.homology_at(p - 1);
      for (std::size_t j = 0; j < below.summands.size(); ++j) {
        if (below.summands[j].order == 0) continue;
        Integer g = gcd(below.summands[j].order, c.order);
        if (g > 1)
          out.push_back({g, combine_labels(c.label, "τ(" + below.summands[j].label + ")"), ci, E2Generator::Kind::Tor, j});
      }
    }
  }
  return out;
}

std::vector<Integer> PageEntry::ambient_orders() const {
  std::vector<Integer> out;
  for (const auto& g : basis) out.push_back(g.order);
  return out;
}

std::string PageEntry::vector_label(const std::vector<Integer>& v) const {
  std::string out;
  for (std::size_t i = 0; i < v.size() && i < basis.size(); ++i) {
    Integer c = reduce_mod(v[i], basis[i].order);
    if (c == 0) continue;
    const std::string& label = basis[i].label;
    bool negative = c < 0;
    Integer a = negative ? Integer(-c) : c;
    std::string term;
    if (a == 1) {
      term = label;
    } else {
      bool glue = !label.empty() && (std::isdigit(static_cast<unsigned char>(label[0])) || label[0] == '[');
      term = a.get_str() + (glue ? "·" : "") + label;
    }
    if (out.empty()) out = negative ? "-" + term : term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::vector<std::string> PageEntry::generator_labels() const {
  std::vector<std::string> out;
  const auto& g = sub.generators();
  for (std::size_t j = 0; j < g.cols(); ++j) out.push_back(vector_label(g.column(j)));
  return out;
}

std::string PageEntry::group_text() const {
  if (!known) return "?";
  std::string base = group().str();
  if (!kernel_params.empty()) {
    std::string names;
    for (const auto& k : kernel_params) names += (names.empty() ? "" : ", ") + k;
    base = "ker(" + names + " on " + base + ")";
  }
  if (!image_params.empty()) {
    std::string names;
    for (const auto& k : image_params) names += (names.empty() ? "" : ", ") + k;
    base += " / im(" + names + ")";
  }
  return base;
}

std::string PageEntry::str() const {
  if (!known) return "? (no data)";
  std::string labelled = labeled_group_text(sub.orders(), generator_labels());
  if (image_params.empty() && kernel_params.empty()) return labelled;
  auto colon = labelled.find(" :");
  return group_text() + (colon == std::string::npos ? "" : labelled.substr(colon));
}

const PageEntry* SSPage::find(const Pos& pos) const {
  auto it = entries.find(pos);
  return it == entries.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------------------------
// d² and page turning

namespace {

bool spin_shaped(const CoefficientRow& row) {
  if (!row.spin || !row.has(2)) return false;
  auto o0 = row.at(0).orders(), o1 = row.at(1).orders(), o2 = row.at(2).orders();
  return o0 == std::vector<Integer>{0} && o1 == std::vector<Integer>{2} && o2 == std::vector<Integer>{2};
}

}  // namespace

IntMatrix d2_ambient(const SpaceDescriptor& space, const CoefficientRow& row, int p, int q) {
  if (!spin_shaped(row) || (q != 0 && q != 1))
    throw InputError("d2 is only computed on the q = 0 and q = 1 rows of the spin coefficients");
  auto src = e2_generators(space, row, p, q);
  auto tgt = e2_generators(space, row, p - 2, q + 1);
  IntMatrix out(tgt.size(), src.size());
  if (src.empty() || tgt.empty()) return out;
  IntMatrix dual = dual_sq2(space.pairing, p).matrix();
  IntMatrix m = q == 1 ? dual : dual * space.reduction_matrix(p);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = reduce_mod(m(i, j), 2);
  return out;
}

IntMatrix page_coordinates(const PageEntry& source, const PageEntry& target, const IntMatrix& ambient) {
  const auto& g = source.sub.generators();
  IntMatrix image = ambient * g;
  const auto& orders = target.sub.orders();
  IntMatrix out(orders.size(), g.cols());
  for (std::size_t j = 0; j < g.cols(); ++j) {
    auto c = target.sub.coordinates(image.column(j));
    if (!c) throw InputError("the image of " + source.vector_label(g.column(j)) + " is not a cycle");
    for (std::size_t i = 0; i < orders.size(); ++i) out(i, j) = reduce_mod((*c)[i], orders[i]);
  }
  return out;
}

Differential d2(const SpaceDescriptor& space, const CoefficientRow& row, const SSPage& page, int p, int q) {
  Differential d;
  d.r = 2;
  d.source = {p, q};
  d.target = {p - 2, q + 1};
  const PageEntry* s = page.find(d.source);
  const PageEntry* t = page.find(d.target);
  if (!s || !t) throw InputError("d2 from " + to_string(d.source) + " leaves the page");
  d.status = DiffStatus::Computed;
  d.matrix = page_coordinates(*s, *t, d2_ambient(space, row, p, q));
  return d;
}

SSPage turn_page(const SSPage& page, const std::vector<Differential>& diffs) {
  SSPage next = page;
  next.r = page.r + 1;
  std::map<Pos, IntMatrix> new_cycles, new_boundaries;
  std::map<Pos, const Differential*> incoming, outgoing;

  for (const auto& d : diffs) {
    if (d.r != page.r) throw InputError("a d" + std::to_string(d.r) + " cannot act on page " + std::to_string(page.r));
    const PageEntry* s = page.find(d.source);
    const PageEntry* t = page.find(d.target);
    if (!s || !t) throw InputError("differential from " + to_string(d.source) + " leaves the page");
    outgoing[d.source] = &d;
    incoming[d.target] = &d;
    if (d.status == DiffStatus::Parameter) {
      next.entries[d.source].kernel_params.insert(d.parameter);
      next.entries[d.target].image_params.insert(d.parameter);
      continue;
    }
    if (!d.determined()) {
      next.entries[d.source].cycles_exact = false;
      next.entries[d.target].boundaries_exact = false;
      continue;
    }
    if (d.matrix.is_zero()) continue;
    IntMatrix kernel = lattice::kernel_modulo(d.matrix, t->sub.orders());
    new_cycles[d.source] = (s->sub.generators() * kernel).hstack(s->sub.boundary_basis());
    new_boundaries[d.target] = t->sub.boundary_basis().hstack(t->sub.generators() * d.matrix);
  }

  for (const auto& [pos, in] : incoming) {
    auto out = outgoing.find(pos);
    if (out == outgoing.end() || !in->determined() || !out->second->determined()) continue;
    const auto& orders = page.find(out->second->target)->sub.orders();
    IntMatrix comp = out->second->matrix * in->matrix;
    for (std::size_t i = 0; i < comp.rows(); ++i)
      for (std::size_t j = 0; j < comp.cols(); ++j)
        if (reduce_mod(comp(i, j), orders[i]) != 0)
          throw InputError("d" + std::to_string(page.r) + " ∘ d" + std::to_string(page.r) + " ≠ 0 through " +
                           to_string(pos));
  }

  std::set<Pos> touched;
  for (const auto& [pos, m] : new_cycles) touched.insert(pos);
  for (const auto& [pos, m] : new_boundaries) touched.insert(pos);
  for (const auto& pos : touched) {
    PageEntry& e = next.entries[pos];
    IntMatrix z = new_cycles.count(pos) ? new_cycles[pos] : e.sub.cycle_basis();
    IntMatrix b = new_boundaries.count(pos) ? new_boundaries[pos] : e.sub.boundary_basis();
    e.sub = lattice::Subquotient(e.ambient_orders(), z, b);
  }
  return next;
}

// ---------------------------------------------------------------------------------------------
// Hints

const DiffHint* HintSet::find_differential(int r, const Pos& source) const {
  for (const auto& h : differentials)
    if (h.r == r && h.source == source) return &h;
  return nullptr;
}

const ExtHint* HintSet::find_extension(int n, int p) const {
  for (const auto& h : extensions)
    if (h.n == n && h.p == p) return &h;
  return nullptr;
}

const TotalHint* HintSet::find_total(int n) const {
  for (const auto& h : totals)
    if (h.n == n) return &h;
  return nullptr;
}

HintSet parse_hints(const std::string& document, const std::string& source) {
  HintSet hints;
  hints.source = source;
  auto lines = text::read_lines(document);
  std::set<std::string> aliases, morphism_names;

  auto justified = [&](const text::Line& line) {
    auto [head, just] = text::split_colon(line.text);
    if (!just || text::trim(*just).empty()) text::fail(source, line, "every hint needs a justification after ' : '");
    return std::make_pair(text::split_words(head), text::trim(*just));
  };

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    auto words = text::split_words(line.text);
    const std::string& key = words[0];
    if (key == "use") {
      if (!((words.size() == 4 || words.size() == 6) && words[2] == "=" && (words.size() == 4 || words[4] == "hints")))
        text::fail(source, line, "expected 'use <alias> = <space file> [hints <hints file>]'");
      if (!aliases.insert(words[1]).second) text::fail(source, line, "alias " + words[1] + " used twice");
      UseClause u{words[1], words[3], std::nullopt};
      if (words.size() == 6) u.hints_path = words[5];
      hints.uses.push_back(u);
    } else if (key == "morphism") {
      if (words.size() != 8 || words[2] != ":" || words[3] != "self" || words[4] != "->" || words[6] != "shift")
        text::fail(source, line, "expected 'morphism <name> : self -> <alias> shift <s>'");
      if (!morphism_names.insert(words[1]).second) text::fail(source, line, "morphism " + words[1] + " defined twice");
      MorphismBlock m;
      m.name = words[1];
      m.target_alias = words[5];
      m.shift = text::parse_int(words[7], "shift");
      if (m.shift < 0) text::fail(source, line, "the shift must be nonnegative");
      if (!aliases.count(m.target_alias)) text::fail(source, line, "unknown alias " + m.target_alias);
      m.body = text::read_block(lines, i, source);
      hints.morphisms.push_back(std::move(m));
    } else if (key == "d") {
      auto [w, just] = justified(line);
      if (w.size() < 5) text::fail(source, line, "expected 'd <r> <p> <q> zero|value|unknown|deduce ...'");
      DiffHint h;
      h.r = text::parse_int(w[1], "r");
      h.source = {text::parse_int(w[2], "p"), text::parse_int(w[3], "q")};
      h.justification = just;
      h.line = line.number;
      if (h.r < 2) text::fail(source, line, "differentials start at r = 2");
      if (hints.find_differential(h.r, h.source)) text::fail(source, line, "differential hinted twice");
      if (w[4] == "zero" && w.size() == 5) {
        h.kind = DiffHint::Kind::Zero;
      } else if (w[4] == "unknown" && w.size() == 6) {
        h.kind = DiffHint::Kind::Parameter;
        h.name = w[5];
      } else if (w[4] == "deduce" && w.size() == 6) {
        h.kind = DiffHint::Kind::Deduce;
        h.name = w[5];
      } else if (w[4] == "value" && w.size() > 5) {
        h.kind = DiffHint::Kind::Value;
        std::string rest;
        for (std::size_t k = 5; k < w.size(); ++k) rest += w[k] + " ";
        for (const auto& part : text::split(rest, ";")) {
          auto arrow = part.find("->");
          if (arrow == std::string::npos) text::fail(source, line, "expected '<source label> -> <terms>'");
          h.value.emplace_back(text::trim(part.substr(0, arrow)), text::trim(part.substr(arrow + 2)));
        }
      } else {
        text::fail(source, line, "unknown differential assertion '" + w[4] + "'");
      }
      hints.differentials.push_back(h);
    } else if (key == "ext") {
      auto [w, just] = justified(line);
      if (w.size() < 4) text::fail(source, line, "expected 'ext <n> <p> naturality <morphism>|trivial|nontrivial'");
      ExtHint h;
      h.n = text::parse_int(w[1], "n");
      h.p = text::parse_int(w[2], "p");
      h.justification = just;
      if (w[3] == "naturality" && w.size() == 5) {
        h.kind = ExtHint::Kind::Naturality;
        h.morphism = w[4];
      } else if (w[3] == "trivial" && w.size() == 4) {
        h.kind = ExtHint::Kind::Trivial;
      } else if (w[3] == "nontrivial" && w.size() == 4) {
        h.kind = ExtHint::Kind::Nontrivial;
      } else {
        text::fail(source, line, "unknown extension assertion '" + w[3] + "'");
      }
      if (hints.find_extension(h.n, h.p)) text::fail(source, line, "extension hinted twice");
      hints.extensions.push_back(h);
    } else if (key == "total") {
      auto [w, just] = justified(line);
      if (w.size() < 3) text::fail(source, line, "expected 'total <n> <group>'");
      TotalHint h;
      h.n = text::parse_int(w[1], "n");
      std::string g;
      for (std::size_t k = 2; k < w.size(); ++k) g += w[k];
      try {
        h.group = FGAbelianGroup::parse(g);
      } catch (const InputError& e) {
        text::fail(source, line, e.what());
      }
      h.justification = just;
      if (hints.find_total(h.n)) text::fail(source, line, "total given twice");
      hints.totals.push_back(h);
    } else {
      text::fail(source, line, "unknown hint '" + key + "'");
    }
  }
  for (const auto& h : hints.differentials)
    if (h.kind == DiffHint::Kind::Deduce && !morphism_names.count(h.name))
      throw InputError(source + ":" + std::to_string(h.line) + ": unknown morphism " + h.name);
  for (const auto& h : hints.extensions)
    if (h.kind == ExtHint::Kind::Naturality && !morphism_names.count(h.morphism))
      throw InputError(source + ": unknown morphism " + h.morphism + " in an extension hint");
  return hints;
}

// ---------------------------------------------------------------------------------------------
// Documents

DocumentLoader file_loader() {
  return [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
}

std::string join_path(const std::string& base_file, const std::string& relative) {
  if (!relative.empty() && relative[0] == '/') return relative;
  auto slash = base_file.rfind('/');
  if (slash == std::string::npos) return relative;
  return base_file.substr(0, slash + 1) + relative;
}

// ---------------------------------------------------------------------------------------------
// Runs

ReportStatus SSRun::overall() const {
  ReportStatus s = ReportStatus::Resolved;
  for (const auto& [n, r] : reports) {
    if (r.status == ReportStatus::Unresolved) return ReportStatus::Unresolved;
    if (r.status == ReportStatus::Parametric) s = ReportStatus::Parametric;
  }
  return s;
}

CoefficientRow SSRun::as_row(const std::string& name) const {
  CoefficientRow row;
  row.name = name;
  row.max_q = -1;
  for (const auto& [n, report] : reports) {
    auto stage = report.status == ReportStatus::Resolved ? report.result() : std::nullopt;
    if (!stage) break;
    LabeledGroup g;
    for (const auto& gen : stage->gens)
      if (gen.order != 1) g.summands.push_back({gen.order, gen.label()});
    if (!g.is_zero()) row.groups[n] = g;
    row.max_q = n;
  }
  return row;
}

Workspace::Workspace(DocumentLoader loader) : loader_(std::move(loader)) {}

SpacePtr Workspace::space(const std::string& path, bool unreduced) {
  std::string key = path + (unreduced ? "|unreduced" : "|reduced");
  auto it = spaces_.find(key);
  if (it != spaces_.end()) return it->second;
  auto parsed = parse_space(loader_(path), path);
  SpacePtr s = std::make_shared<const SpaceDescriptor>(unreduced ? parsed.with_basepoint() : parsed);
  spaces_[key] = s;
  return s;
}

namespace {

class RunBuilder {
 public:
  RunBuilder(Workspace& ws, const RunRequest& req, SSRun& run) : ws_(ws), req_(req), run_(run) {}

  void build() {
    run_.space = ws_.space(req_.space_path, req_.unreduced);
    run_.row = req_.row;
    run_.upto = req_.upto;
    if (req_.upto < 0) throw InputError("--upto must be nonnegative");
    if (req_.hints_path) run_.hints = parse_hints(ws_.loader()(*req_.hints_path), *req_.hints_path);
    load_morphisms();
    build_e2();
    for (int r = 2; r <= req_.upto + 1; ++r) {
      const SSPage& page = run_.pages.back();
      std::vector<Differential> diffs;
      for (const auto& [pos, entry] : page.entries) {
        Pos target{pos.p - r, pos.q + r - 1};
        if (target.p < 0 || !page.find(target)) continue;
        auto d = decide(page, r, pos, target);
        if (d) diffs.push_back(std::move(*d));
      }
      SSPage next = turn_page(page, diffs);
      run_.differentials.push_back(std::move(diffs));
      run_.pages.push_back(std::move(next));
    }
    for (const auto& h : run_.hints.extensions)
      if (h.kind == ExtHint::Kind::Naturality && h.n <= req_.upto) target_run(h.morphism);
    for (int n = 0; n <= req_.upto; ++n) run_.reports[n] = assemble(run_, n);
  }

 private:
  void load_morphisms() {
    for (const auto& block : run_.hints.morphisms) {
      const UseClause* use = find_use(block.target_alias);
      SpacePtr target = ws_.space(join_path(*req_.hints_path, use->space_path), req_.unreduced);
      auto m = parse_morphism(block.name, run_.space, target, block.shift, block.body, *req_.hints_path);
      m.validate(*run_.row);
      run_.morphisms.emplace(block.name, std::move(m));
    }
  }

  const UseClause* find_use(const std::string& alias) const {
    for (const auto& u : run_.hints.uses)
      if (u.alias == alias) return &u;
    throw InputError(run_.hints.source + ": unknown alias " + alias);
  }

  std::shared_ptr<const SSRun> target_run(const std::string& name) {
    auto cached = run_.targets.find(name);
    if (cached != run_.targets.end()) return cached->second;
    const MorphismBlock* block = nullptr;
    for (const auto& b : run_.hints.morphisms)
      if (b.name == name) block = &b;
    if (!block) throw InputError("unknown morphism " + name);
    const UseClause* use = find_use(block->target_alias);
    RunRequest req;
    req.space_path = join_path(*req_.hints_path, use->space_path);
    if (use->hints_path) req.hints_path = join_path(*req_.hints_path, *use->hints_path);
    req.row = req_.row;
    req.upto = req_.upto + block->shift;
    req.unreduced = req_.unreduced;
    auto result = ws_.run(req);
    run_.targets[name] = result;
    return result;
  }

  void build_e2() {
    SSPage page;
    page.r = 2;
    const auto& space = *run_.space;
    const auto& row = *run_.row;
    for (int p = 0; p <= req_.upto + 1; ++p) {
      for (int q = 0; p + q <= req_.upto + 1; ++q) {
        PageEntry e;
        if (p > space.cap || !row.has(q)) {
          bool h_zero = p <= space.cap;  // rows beyond the data only matter when H_p is nonzero
          if (h_zero) h_zero = space.homology_at(p).is_zero() && space.homology_at(p - 1).group().is_torsion_free();
          if (!h_zero) {
            e.known = false;
            e.cycles_exact = e.boundaries_exact = false;
          }
        } else {
          e.basis = e2_generators(space, row, p, q);
        }
        e.sub = lattice::Subquotient::whole(e.ambient_orders());
        if (p + q == req_.upto + 1) e.boundaries_exact = false;
        page.entries[{p, q}] = std::move(e);
      }
    }
    run_.pages.push_back(std::move(page));
  }

  IntMatrix value_matrix(const DiffHint& h, const std::vector<E2Generator>& src, const std::vector<E2Generator>& tgt) {
    IntMatrix v(tgt.size(), src.size());
    auto where = run_.hints.source + ":" + std::to_string(h.line) + ": ";
    auto find = [](const std::vector<E2Generator>& gens, const std::string& label) -> std::optional<std::size_t> {
      for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens[i].label == label) return i;
      return std::nullopt;
    };
    for (const auto& [from, terms] : h.value) {
      auto j = find(src, from);
      if (!j) throw InputError(where + from + " is not an E2 generator at " + to_string(h.source));
      if (text::trim(terms) == "0") continue;
      for (const auto& term : text::split(terms, "+")) {
        auto i = find(tgt, term);
        Integer c = 1;
        if (!i) {
          std::size_t k = 0;
          while (k < term.size() && std::isdigit(static_cast<unsigned char>(term[k]))) ++k;
          std::string rest = term.substr(k);
          if (!rest.empty() && rest[0] == '*') rest = rest.substr(1);
          if (k > 0) {
            c = Integer(term.substr(0, k));
            i = find(tgt, rest);
          }
        }
        if (!i) throw InputError(where + term + " is not an E2 generator of the target");
        v(*i, *j) += c;
      }
    }
    return v;
  }

  std::optional<Differential> decide(const SSPage& page, int r, const Pos& src, const Pos& tgt) {
    const PageEntry& s = *page.find(src);
    const PageEntry& t = *page.find(tgt);
    const DiffHint* hint = run_.hints.find_differential(r, src);
    Differential d;
    d.r = r;
    d.source = src;
    d.target = tgt;
    auto zero = [&](DiffStatus st, std::string note) {
      d.status = st;
      d.matrix = IntMatrix(t.sub.orders().size(), s.sub.orders().size());
      d.note = std::move(note);
      return d;
    };
    auto where = [&]() { return run_.hints.source + ":" + std::to_string(hint->line) + ": "; };

    if (s.is_zero() || t.is_zero()) {
      if (hint && hint->kind == DiffHint::Kind::Value)
        throw InputError(where() + "a nonzero value is asserted for a differential with zero source or target");
      return std::nullopt;
    }

    std::optional<IntMatrix> computed;
    const auto& row = *run_.row;
    if (r == 2 && s.known && t.known && spin_shaped(row) && (src.q == 0 || src.q == 1))
      computed = page_coordinates(s, t, d2_ambient(*run_.space, row, src.p, src.q));

    if (s.known && t.known && s.group().is_finite() && t.group().is_torsion_free() && t.boundaries_exact &&
        t.image_params.empty()) {
      if (hint && hint->kind == DiffHint::Kind::Value)
        throw InputError(where() + "a nonzero value is asserted for a map from a finite group to a free one");
      return zero(DiffStatus::Vanishing, "finite source, torsion-free target");
    }

    if (hint) {
      switch (hint->kind) {
        case DiffHint::Kind::Zero:
          if (computed && !computed->is_zero()) throw InputError(where() + "asserted zero but d2 is nonzero");
          return zero(DiffStatus::AssertedZero, hint->justification);
        case DiffHint::Kind::Value: {
          if (!s.known || !t.known) throw InputError(where() + "value asserted where E2 is not known");
          auto v = value_matrix(*hint, s.basis, t.basis);
          d.status = DiffStatus::AssertedValue;
          d.matrix = page_coordinates(s, t, v);
          GroupMorphism(s.sub.orders(), t.sub.orders(), d.matrix);
          if (computed && !(*computed == d.matrix)) throw InputError(where() + "asserted value disagrees with d2");
          d.note = hint->justification;
          return d;
        }
        case DiffHint::Kind::Parameter:
          d.status = DiffStatus::Parameter;
          d.parameter = hint->name;
          d.note = hint->justification;
          return d;
        case DiffHint::Kind::Deduce: {
          auto target = target_run(hint->name);
          const auto& m = run_.morphisms.at(hint->name);
          auto result = deduce_vanishing(m, row, page, target->page(r), r, src);
          if (result.vanishes) return zero(DiffStatus::Deduced, "via " + hint->name + ": " + result.note);
          if (computed) break;
          d.status = DiffStatus::Undetermined;
          d.note = "naturality along " + hint->name + " inconclusive: " + result.note;
          return d;
        }
      }
    }
    if (computed) {
      d.status = DiffStatus::Computed;
      d.matrix = *computed;
      return d;
    }
    d.status = DiffStatus::Undetermined;
    d.note = "no rule or hint applies";
    return d;
  }

  Workspace& ws_;
  const RunRequest& req_;
  SSRun& run_;
};

}  // namespace

std::shared_ptr<const SSRun> Workspace::run(const RunRequest& request) {
  if (!request.row) throw InputError("no coefficient row given");
  std::string key = request.space_path + "|" + request.hints_path.value_or("") + "|" + request.row->name + "|" +
                    std::to_string(request.upto) + (request.unreduced ? "|u" : "|r");
  auto it = runs_.find(key);
  if (it != runs_.end()) return it->second;
  if (!in_progress_.insert(key).second)
    throw InputError("hint files refer to each other in a cycle through " + request.space_path);
  auto run = std::make_shared<SSRun>();
  try {
    RunBuilder(*this, request, *run).build();
  } catch (...) {
    in_progress_.erase(key);
    throw;
  }
  in_progress_.erase(key);
  runs_[key] = run;
  return run;
}

}  // namespace bordcalc
