#include "bordcalc/registry.hpp"

#include <algorithm>

namespace bordcalc {

// Defined in the generated embedded_fixtures.cpp.
extern const std::vector<std::pair<std::string, std::string>> kEmbeddedFixtures;

namespace {

const std::string kCounterexample7 = "Sp(2) ×_{Sp(1)×Sp(1)} Sp(1)";
const std::string kCounterexample8 = "(Sp(2) ×_{Sp(1)×Sp(1)} Sp(1)) × S^1";

struct BordismRow {
  Structure structure;
  const char* name;
  const char* label_stem;
  std::vector<const char*> groups;  // index n
};

// Bordism of the point for the classical tangential structures. Only the Spin generators have
// published names; the other labels are stems for the AHSS output.
const std::vector<BordismRow>& bordism_rows() {
  static const std::vector<BordismRow> rows{
      {Structure::SO, "SO", "so", {"Z", "0", "0", "0", "Z", "Z/2", "0", "0", "Z^2"}},
      {Structure::O, "O", "o", {"Z/2", "0", "Z/2", "0", "Z/2^2", "Z/2", "Z/2^3", "Z/2", "Z/2^5"}},
      {Structure::Spin, "Spin", "", {"Z", "Z/2", "Z/2", "0", "Z", "0", "0", "0", "Z^2", "Z/2^2"}},
      {Structure::SpinC, "Spin^c", "spinc", {"Z", "0", "Z", "0", "Z^2", "0", "Z^2", "0", "Z^4"}},
      {Structure::U, "U", "u", {"Z", "0", "Z", "0", "Z^2", "0", "Z^3", "0", "Z^5"}},
      {Structure::SU, "SU", "su", {"Z", "Z/2", "Z/2", "0", "Z", "0", "Z", "0", "Z^2"}},
  };
  return rows;
}

const BordismRow& row_of(Structure s) {
  for (const auto& r : bordism_rows())
    if (r.structure == s) return r;
  throw InputError("no bordism table for this structure");
}

std::string joined_factors(const GroupExpr& g) {
  std::vector<std::string> parts;
  for (const auto& a : g.factors) parts.push_back(a.str());
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += p + ";";
  return out;
}

GroupExpr product(std::initializer_list<GroupAtom> atoms) { return GroupExpr{atoms, false}; }

}  // namespace

// ---------------------------------------------------------------------------------------------

AtomClass classify_atom(const GroupAtom& a) {
  if (!is_recognized(a)) throw InputError("unrecognized group " + a.str());
  const std::string& n = a.name;
  if (n == "E6" || n == "E7" || n == "E8" || n == "G2" || n == "SU" || n == "U") return AtomClass::Good;
  if (n == "F4") return AtomClass::Bad;
  if (n == "Sp") {
    if (*a.param >= 2) return AtomClass::Bad;
    throw InputError("Sp(1) must be normalized to SU(2) before classification");
  }
  if (n == "Spin") {
    int m = *a.param;
    if (m % 2 == 0) return AtomClass::Good;
    if (m >= 7) return AtomClass::Bad;
    throw InputError(a.str() + " must be normalized before classification");
  }
  throw InputError(a.str() + " must be normalized before classification");
}

std::string OrientabilityVerdict::str() const {
  if (!orientable_all) return "COUNTEREXAMPLE: " + counterexample;
  return simply_connected_only ? "ORIENTABLE-ALL [simply-connected]" : "ORIENTABLE-ALL";
}

OrientabilityVerdict classify_orientability(const GroupExpr& g, int n) {
  if (n != 7 && n != 8) throw InputError("orientability is classified for n = 7 or 8, got " + std::to_string(n));
  if (g.factors.empty()) throw InputError("empty group expression");
  GroupExpr norm = normalize(g);
  OrientabilityVerdict v;
  for (std::size_t i = 0; i < norm.factors.size(); ++i) {
    if (!is_recognized(g.factors[i])) throw InputError("unrecognized group " + g.factors[i].str());
    if (classify_atom(norm.factors[i]) == AtomClass::Bad) {
      v.orientable_all = false;
      v.offending_factor = g.factors[i].str();
      v.counterexample = (n == 7 ? kCounterexample7 : kCounterexample8) + " with the trivial bundle P = X × G";
      return v;
    }
  }
  v.orientable_all = true;
  v.simply_connected_only = norm.quotient;
  return v;
}

// ---------------------------------------------------------------------------------------------

std::string ComplexTypeRecord::str() const {
  return source + " -> " + target + (p ? "  (p = " + std::to_string(*p) + ")" : "");
}

std::optional<ComplexTypeRecord> complex_type(const GroupExpr& source, const GroupExpr& target) {
  if (source.quotient || target.quotient || target.factors.size() != 1) return std::nullopt;
  const GroupAtom& t = target.factors.front();
  const GroupAtom u1{"U", 1};
  auto matches = [&](const GroupExpr& want_source, const GroupAtom& want_target) {
    return t == want_target && joined_factors(source) == joined_factors(want_source);
  };
  auto record = [&](std::optional<int> p) {
    return ComplexTypeRecord{source.str(), target.str(), p};
  };

  // The fixed list.
  const std::vector<std::pair<GroupExpr, GroupAtom>> fixed{
      {product({{"E7", {}}, u1}), {"E8", {}}},
      {product({{"E6", {}}, u1, u1}), {"E8", {}}},
      {product({{"Spin", 14}, u1}), {"E8", {}}},
      {product({{"SU", 8}, u1}), {"E8", {}}},
      {product({{"Sp", 3}, u1}), {"F4", {}}},
      {product({{"Spin", 7}, u1}), {"F4", {}}},
      {product({{"G2", {}}}), {"Spin", 8}},
  };
  for (const auto& [s, tt] : fixed)
    if (matches(s, tt)) return record(std::nullopt);

  // Families in m ≥ 1, with connectivity where listed.
  if (!t.param) return std::nullopt;
  int k = *t.param;
  if (t.name == "SU" && k - 1 >= 1) {
    int m = k - 1;
    if (matches(product({{"SU", m}, u1}), t)) return record(2 * m);
    if (matches(product({{"U", m}}), t)) return record(std::nullopt);
  }
  if (t.name == "Sp" && k - 1 >= 1 && matches(product({{"Sp", k - 1}, u1}), t)) return record(4 * (k - 1) + 2);
  for (const char* fam : {"SO", "Spin"})
    if (t.name == fam && k - 2 >= 1 && matches(product({{fam, k - 2}, u1}), t)) return record(k - 3);
  if (t.name == "SO" && matches(product({{"Spin", k}}), t)) return record(std::nullopt);
  return std::nullopt;
}

// ---------------------------------------------------------------------------------------------

Structure parse_structure(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != '^' && c != ' ') s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "so") return Structure::SO;
  if (s == "o") return Structure::O;
  if (s == "spin") return Structure::Spin;
  if (s == "spinc") return Structure::SpinC;
  if (s == "u") return Structure::U;
  if (s == "su") return Structure::SU;
  throw InputError("unknown tangential structure '" + text + "' (expected SO, O, Spin, Spin^c, U or SU)");
}

std::string to_string(Structure s) { return row_of(s).name; }

const std::vector<Structure>& all_structures() {
  static const std::vector<Structure> v{Structure::SO, Structure::O, Structure::Spin,
                                        Structure::SpinC, Structure::U, Structure::SU};
  return v;
}

int max_degree(Structure s) { return static_cast<int>(row_of(s).groups.size()) - 1; }

LabeledGroup lookup_point_bordism(Structure s, int n) {
  const auto& row = row_of(s);
  if (n < 0 || n > max_degree(s))
    throw InputError("the " + std::string(row.name) + " bordism table covers 0 <= n <= " + std::to_string(max_degree(s)) +
                     ", got " + std::to_string(n));
  if (s == Structure::Spin) {
    auto spin = spin_coefficients();
    return spin.has(n) && spin.groups.count(n) ? spin.groups.at(n) : LabeledGroup{};
  }
  auto orders = parse_summand_orders(row.groups[n]);
  LabeledGroup g;
  std::string stem = row.label_stem + std::to_string(n);
  for (std::size_t i = 0; i < orders.size(); ++i) {
    std::string label = stem;
    if (orders.size() > 1) label += static_cast<char>('a' + i);
    g.summands.push_back({orders[i], label});
  }
  return g;
}

CoefficientRow point_bordism_row(Structure s) {
  if (s == Structure::Spin) return spin_coefficients();
  CoefficientRow row;
  row.name = row_of(s).name;
  row.max_q = max_degree(s);
  for (int n = 0; n <= row.max_q; ++n) {
    auto g = lookup_point_bordism(s, n);
    if (!g.is_zero()) row.groups[n] = g;
  }
  return row;
}

FGAbelianGroup lookup_e8_homotopy(int d, bool classifying) {
  int top = classifying ? 15 : 14;
  if (d < 0 || d > top)
    throw InputError(std::string("the homotopy of ") + (classifying ? "BE8" : "E8") + " is tabulated for 0 <= d <= " +
                     std::to_string(top) + ", got " + std::to_string(d));
  int nonzero = classifying ? 4 : 3;
  return d == nonzero ? FGAbelianGroup::free(1) : FGAbelianGroup();
}

PicardData picard_from_bordism(Structure s, int n) {
  return picard_from_groups(lookup_point_bordism(s, n).group(), lookup_point_bordism(s, n + 1).group());
}

// ---------------------------------------------------------------------------------------------

const std::map<std::string, std::string>& embedded_fixtures() {
  static const std::map<std::string, std::string> m(kEmbeddedFixtures.begin(), kEmbeddedFixtures.end());
  return m;
}

DocumentLoader registry_loader() {
  DocumentLoader files = file_loader();
  return [files](const std::string& path) {
    const std::string prefix = "builtin/";
    if (path.rfind(prefix, 0) != 0) return files(path);
    auto name = path.substr(prefix.size());
    const auto& m = embedded_fixtures();
    auto it = m.find(name);
    if (it == m.end()) throw InputError("no built-in fixture named " + name);
    return it->second;
  };
}

std::string export_document(const std::string& name) {
  if (name.rfind("row:", 0) == 0) return point_bordism_row(parse_structure(name.substr(4))).str();
  const auto& m = embedded_fixtures();
  auto it = m.find(name);
  if (it == m.end()) {
    std::string known;
    for (const auto& [k, v] : m) known += " " + k;
    throw InputError("no built-in fixture named " + name + " (available:" + known + ", row:<structure>)");
  }
  return it->second;
}

}  // namespace bordcalc
