#include "bordcalc/graded_ring.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

#include "bordcalc/errors.hpp"

namespace bordcalc {

std::string to_string(CoeffRing r) { return r == CoeffRing::Z ? "Z" : "Z2"; }

Integer ring_modulus(CoeffRing r) { return r == CoeffRing::Z ? Integer(0) : Integer(2); }

namespace {

const char* const kSuperscripts[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};

std::string superscript(int n) {
  std::string digits = std::to_string(n);
  std::string out;
  for (char c : digits) out += kSuperscripts[c - '0'];
  return out;
}

// Reads superscript digits starting at pos; returns -1 if none.
int read_superscript(const std::string& s, std::size_t& pos) {
  int value = -1;
  for (;;) {
    bool matched = false;
    for (int d = 0; d <= 9; ++d) {
      std::string sup = kSuperscripts[d];
      if (s.compare(pos, sup.size(), sup) == 0) {
        value = (value < 0 ? 0 : value * 10) + d;
        pos += sup.size();
        matched = true;
        break;
      }
    }
    if (!matched) return value;
  }
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

RingPresentation::RingPresentation(CoeffRing coefficients, std::vector<RingGenerator> generators, int degree_cap)
    : coeff_(coefficients), gens_(std::move(generators)), cap_(degree_cap) {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    const auto& g = gens_[i];
    if (g.degree <= 0) throw InputError("generator " + g.label + " must have positive degree");
    if (coeff_ == CoeffRing::Z && g.degree % 2 == 1 && g.kind == GenKind::Polynomial)
      throw InputError("odd-degree generator " + g.label + " over Z must be exterior");
    for (std::size_t j = 0; j < i; ++j)
      if (gens_[j].label == g.label) throw InputError("duplicate generator " + g.label);
  }
}

std::optional<std::size_t> RingPresentation::find_generator(const std::string& label) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].label == label) return i;
  return std::nullopt;
}

std::size_t RingPresentation::generator_index(const std::string& label) const {
  auto i = find_generator(label);
  if (!i) throw InputError("unknown ring generator '" + label + "'");
  return *i;
}

int RingPresentation::degree(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < gens_.size(); ++i) d += m[i] * gens_[i].degree;
  return d;
}

Monomial RingPresentation::generator_monomial(std::size_t index) const {
  Monomial m = unit();
  m[index] = 1;
  return m;
}

bool RingPresentation::is_zero_monomial(const Monomial& m) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].kind == GenKind::Exterior && m[i] > 1) return true;
  return false;
}

std::vector<Monomial> RingPresentation::basis(int degree) const {
  if (degree < 0) return {};
  if (degree > cap_) throw InputError("degree " + std::to_string(degree) + " exceeds the ring's cap " + std::to_string(cap_));
  std::vector<Monomial> out;
  Monomial cur = unit();
  auto rec = [&](auto&& self, std::size_t i, int remaining) -> void {
    if (i == gens_.size()) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    int max_e = remaining / gens_[i].degree;
    if (gens_[i].kind == GenKind::Exterior) max_e = std::min(max_e, 1);
    for (int e = 0; e <= max_e; ++e) {
      cur[i] = e;
      self(self, i + 1, remaining - e * gens_[i].degree);
    }
    cur[i] = 0;
  };
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end());
  return out;
}

std::string RingPresentation::monomial_label(const Monomial& m) const {
  std::string out;
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (m[i] == 0) continue;
    out += gens_[i].label;
    if (m[i] > 1) out += superscript(m[i]);
  }
  return out.empty() ? "1" : out;
}

Monomial RingPresentation::parse_monomial(const std::string& text) const {
  std::string s = trim(text);
  Monomial m = unit();
  if (s == "1") return m;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] == '*') {
      ++pos;
      continue;
    }
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      const auto& l = gens_[i].label;
      if (s.compare(pos, l.size(), l) == 0 && (!best || l.size() > gens_[*best].label.size())) best = i;
    }
    if (!best) throw InputError("cannot read monomial '" + text + "' at offset " + std::to_string(pos));
    pos += gens_[*best].label.size();
    int e = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) throw InputError("missing exponent in monomial '" + text + "'");
      e = std::stoi(s.substr(start, pos - start));
    } else {
      int sup = read_superscript(s, pos);
      if (sup >= 0) e = sup;
    }
    m[*best] += e;
  }
  return m;
}

Terms RingPresentation::parse_terms(const std::string& text) const {
  Terms out;
  std::string s = trim(text);
  if (s == "0") return out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t plus = s.find('+', start);
    std::string piece = trim(s.substr(start, plus == std::string::npos ? std::string::npos : plus - start));
    if (piece.empty()) throw InputError("empty term in '" + text + "'");
    Integer coeff = 1;
    std::size_t star = piece.find('*');
    if (star != std::string::npos && std::all_of(piece.begin(), piece.begin() + static_cast<long>(star),
                                                 [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '-'; })) {
      coeff = Integer(piece.substr(0, star));
      piece = piece.substr(star + 1);
    }
    Monomial m = parse_monomial(piece);
    Integer c = reduce(out[m] + coeff);
    if (c == 0) {
      out.erase(m);
    } else {
      out[m] = c;
    }
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  return out;
}

void RingPresentation::set_square(int which, const std::string& generator, Terms image) {
  if (coeff_ != CoeffRing::Z2) throw InputError("Steenrod squares are only defined on Z2 rings");
  if (which != 1 && which != 2) throw InputError("only Sq1 and Sq2 are supported");
  std::size_t g = generator_index(generator);
  for (const auto& [m, c] : image) {
    if (degree(m) != gens_[g].degree + which)
      throw InputError("Sq" + std::to_string(which) + "(" + generator + ") has the wrong degree");
    (void)c;
  }
  (which == 1 ? sq1_ : sq2_)[g] = std::move(image);
}

const Terms* RingPresentation::square_of_generator(int which, std::size_t generator) const {
  const auto& table = which == 1 ? sq1_ : sq2_;
  auto it = table.find(generator);
  return it == table.end() ? nullptr : &it->second;
}

CohomologyClass::CohomologyClass(RingPtr ring, int degree) : ring_(std::move(ring)), degree_(degree) {}

CohomologyClass::CohomologyClass(RingPtr ring, int degree, const Terms& terms)
    : ring_(std::move(ring)), degree_(degree) {
  for (const auto& [m, c] : terms) add(m, c);
}

void CohomologyClass::add(const Monomial& m, const Integer& c) {
  if (ring_->degree(m) != degree_)
    throw InputError("monomial " + ring_->monomial_label(m) + " does not have degree " + std::to_string(degree_));
  if (ring_->is_zero_monomial(m)) return;
  Integer v = ring_->reduce(coefficient(m) + c);
  if (v == 0) {
    terms_.erase(m);
  } else {
    terms_[m] = v;
  }
}

CohomologyClass CohomologyClass::one(RingPtr ring) {
  Monomial u = ring->unit();
  return CohomologyClass(ring, 0, Terms{{u, Integer(1)}});
}

CohomologyClass CohomologyClass::generator(RingPtr ring, const std::string& label, const Integer& coeff) {
  std::size_t i = ring->generator_index(label);
  return monomial(ring, ring->generator_monomial(i), coeff);
}

CohomologyClass CohomologyClass::monomial(RingPtr ring, const Monomial& m, const Integer& coeff) {
  int d = ring->degree(m);
  CohomologyClass x(ring, d);
  x.add(m, coeff);
  return x;
}

CohomologyClass CohomologyClass::parse(RingPtr ring, int degree, const std::string& text) {
  Terms t = ring->parse_terms(text);
  return CohomologyClass(ring, degree, t);
}

Integer CohomologyClass::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

std::vector<Integer> CohomologyClass::coordinates() const {
  auto basis = ring_->basis(degree_);
  std::vector<Integer> out;
  out.reserve(basis.size());
  for (const auto& m : basis) out.push_back(coefficient(m));
  return out;
}

std::string CohomologyClass::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Integer a = c;
    if (!first) out += a < 0 ? " - " : " + ";
    else if (a < 0) out += "-";
    if (a < 0) a = -a;
    if (a != 1 || ring_->degree(m) == 0) {
      out += a.get_str();
      if (ring_->degree(m) != 0) out += "·";
    }
    if (ring_->degree(m) != 0) out += ring_->monomial_label(m);
    first = false;
  }
  return out;
}

CohomologyClass CohomologyClass::operator+(const CohomologyClass& other) const {
  if (ring_ != other.ring_ || degree_ != other.degree_) throw InputError("adding classes of different rings or degrees");
  CohomologyClass r = *this;
  for (const auto& [m, c] : other.terms_) r.add(m, c);
  return r;
}

CohomologyClass CohomologyClass::operator-(const CohomologyClass& other) const { return *this + other * Integer(-1); }

CohomologyClass CohomologyClass::operator*(const Integer& scalar) const {
  CohomologyClass r(ring_, degree_);
  for (const auto& [m, c] : terms_) r.add(m, c * scalar);
  return r;
}

bool operator==(const CohomologyClass& a, const CohomologyClass& b) {
  return a.ring_ == b.ring_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
}

namespace {

// Sign and product of two monomials, or nullopt when an exterior square appears.
std::optional<std::pair<int, Monomial>> monomial_product(const RingPresentation& ring, const Monomial& a,
                                                         const Monomial& b) {
  const auto& gens = ring.generators();
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
  if (ring.is_zero_monomial(m)) return std::nullopt;
  long exponent = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (b[i] == 0 || gens[i].degree % 2 == 0) continue;
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      if (gens[j].degree % 2 == 0) continue;
      exponent += static_cast<long>(b[i]) * a[j];
    }
  }
  return std::make_pair(exponent % 2 == 0 ? 1 : -1, m);
}

void require_z2(const CohomologyClass& x, const char* op) {
  if (x.ring()->coefficients() != CoeffRing::Z2) throw InputError(std::string(op) + " needs a Z2 ring");
}

Terms apply_square(const RingPtr& ring, int which, const Monomial& m);

CohomologyClass square_class(const RingPtr& ring, int which, const CohomologyClass& x) {
  int target = x.degree() + which;
  if (target > ring->degree_cap())
    throw InputError("Sq" + std::to_string(which) + " of a degree-" + std::to_string(x.degree()) + " class exceeds the cap");
  CohomologyClass out(ring, target);
  for (const auto& [m, c] : x.terms()) {
    Terms t = apply_square(ring, which, m);
    out = out + CohomologyClass(ring, target, t) * c;
  }
  return out;
}

Terms apply_square(const RingPtr& ring, int which, const Monomial& m) {
  const auto& gens = ring->generators();
  std::size_t first = gens.size();
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] > 0) {
      first = i;
      break;
    }
  if (first == gens.size()) return {};  // Sq^k(1) = 0 for k > 0

  auto generator_square = [&](int k) -> CohomologyClass {
    const Terms* t = ring->square_of_generator(k, first);
    if (!t) {
      if (k == 1) return CohomologyClass(ring, gens[first].degree + 1);
      throw InputError("missing Sq2 data for generator " + gens[first].label);
    }
    return CohomologyClass(ring, gens[first].degree + k, *t);
  };

  Monomial rest = m;
  rest[first] -= 1;
  CohomologyClass g = CohomologyClass::monomial(ring, ring->generator_monomial(first));
  CohomologyClass r = CohomologyClass::monomial(ring, rest);
  CohomologyClass total(ring, ring->degree(m) + which);

  if (which == 1) {
    total = total + multiply(generator_square(1), r);
    total = total + multiply(g, square_class(ring, 1, r));
  } else {
    total = total + multiply(generator_square(2), r);
    total = total + multiply(generator_square(1), square_class(ring, 1, r));
    total = total + multiply(g, square_class(ring, 2, r));
  }
  return total.terms();
}

}  // namespace

CohomologyClass multiply(const CohomologyClass& x, const CohomologyClass& y) {
  if (x.ring() != y.ring()) throw InputError("multiplying classes from different rings");
  const auto& ring = x.ring();
  int d = x.degree() + y.degree();
  if (d > ring->degree_cap())
    throw InputError("product of degree " + std::to_string(d) + " exceeds the cap " + std::to_string(ring->degree_cap()));
  CohomologyClass out(ring, d);
  Terms acc;
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) {
      auto p = monomial_product(*ring, a, b);
      if (!p) continue;
      acc[p->second] += ca * cb * p->first;
    }
  return CohomologyClass(ring, d, acc);
}

CohomologyClass sq1(const CohomologyClass& x) {
  require_z2(x, "Sq1");
  return square_class(x.ring(), 1, x);
}

CohomologyClass sq2(const CohomologyClass& x) {
  require_z2(x, "Sq2");
  return square_class(x.ring(), 2, x);
}

void PairingTable::set_homology_basis(int degree, std::vector<std::string> labels) {
  PairingBlock b;
  b.cohomology = ring_->basis(degree);
  b.homology = std::move(labels);
  b.matrix = IntMatrix(b.cohomology.size(), b.homology.size());
  blocks_[degree] = std::move(b);
}

void PairingTable::set_value(int degree, const Monomial& cohomology, const std::string& homology, const Integer& value) {
  auto it = blocks_.find(degree);
  if (it == blocks_.end()) throw InputError("no homology basis declared in degree " + std::to_string(degree));
  auto& b = it->second;
  auto ci = std::find(b.cohomology.begin(), b.cohomology.end(), cohomology);
  if (ci == b.cohomology.end())
    throw InputError(ring_->monomial_label(cohomology) + " is not a basis monomial in degree " + std::to_string(degree));
  auto hi = std::find(b.homology.begin(), b.homology.end(), homology);
  if (hi == b.homology.end())
    throw InputError(homology + " is not a homology generator in degree " + std::to_string(degree));
  b.matrix(static_cast<std::size_t>(ci - b.cohomology.begin()), static_cast<std::size_t>(hi - b.homology.begin())) =
      ring_->reduce(value);
}

namespace {

// Inverse over Z (unimodular) or Z2; throws if the matrix is not invertible.
IntMatrix invert(const IntMatrix& p, CoeffRing ring) {
  const std::size_t n = p.rows();
  if (p.cols() != n) throw InputError("pairing block is not square");
  if (ring == CoeffRing::Z) {
    auto snf = smith_normal_form(p);
    for (std::size_t i = 0; i < n; ++i)
      if (snf.D(i, i) != 1) throw InputError("pairing block is not unimodular");
    return snf.V * snf.U;
  }
  IntMatrix a = p, inv = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = reduce_mod(a(i, j), 2);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) throw InputError("pairing block is singular mod 2");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(col, j), a(piv, j));
      std::swap(inv(col, j), inv(piv, j));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) = reduce_mod(a(i, j) + a(col, j), 2);
        inv(i, j) = reduce_mod(inv(i, j) + inv(col, j), 2);
      }
    }
  }
  return inv;
}

}  // namespace

void PairingTable::validate() const {
  for (const auto& [d, b] : blocks_) {
    if (b.cohomology.size() != b.homology.size())
      throw InputError("pairing in degree " + std::to_string(d) + " pairs " + std::to_string(b.cohomology.size()) +
                       " cohomology classes against " + std::to_string(b.homology.size()) + " homology classes");
    invert(b.matrix, ring_->coefficients());
  }
}

const PairingBlock& PairingTable::block(int degree) const {
  auto it = blocks_.find(degree);
  if (it == blocks_.end()) throw InputError("no pairing data in degree " + std::to_string(degree));
  return it->second;
}

Integer PairingTable::pair(const CohomologyClass& x, const std::string& homology_word) const {
  auto it = blocks_.find(x.degree());
  std::vector<std::string> labels;
  std::size_t start = 0;
  for (;;) {
    std::size_t plus = homology_word.find('+', start);
    labels.push_back(trim(homology_word.substr(start, plus == std::string::npos ? std::string::npos : plus - start)));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  Integer total = 0;
  for (const auto& label : labels) {
    if (it == blocks_.end() ||
        std::find(it->second.homology.begin(), it->second.homology.end(), label) == it->second.homology.end()) {
      for (const auto& [d, b] : blocks_)
        if (std::find(b.homology.begin(), b.homology.end(), label) != b.homology.end())
          throw InputError("degree mismatch: " + label + " has degree " + std::to_string(d) + " but the class has degree " +
                           std::to_string(x.degree()));
      throw InputError("unknown homology generator '" + label + "'");
    }
    const auto& b = it->second;
    std::size_t h = static_cast<std::size_t>(std::find(b.homology.begin(), b.homology.end(), label) - b.homology.begin());
    for (std::size_t i = 0; i < b.cohomology.size(); ++i) total += x.coefficient(b.cohomology[i]) * b.matrix(i, h);
  }
  return ring_->reduce(total);
}

GroupMorphism dualize(const IntMatrix& f, const PairingBlock& domain, const PairingBlock& codomain, CoeffRing ring) {
  if (f.rows() != codomain.cohomology.size() || f.cols() != domain.cohomology.size())
    throw InputError("basis mismatch: map is " + std::to_string(f.rows()) + "x" + std::to_string(f.cols()) +
                     " but the bases have sizes " + std::to_string(codomain.cohomology.size()) + " and " +
                     std::to_string(domain.cohomology.size()));
  if (domain.homology.size() != domain.cohomology.size() || codomain.homology.size() != codomain.cohomology.size())
    throw InputError("basis mismatch between homology and cohomology");
  IntMatrix g = invert(domain.matrix, ring) * f.transpose() * codomain.matrix;
  Integer m = ring_modulus(ring);
  std::vector<Integer> src(codomain.homology.size(), m), tgt(domain.homology.size(), m);
  return GroupMorphism(src, tgt, g);
}

IntMatrix square_matrix(const RingPtr& ring, int which, int degree) {
  auto src = ring->basis(degree);
  auto dst = ring->basis(degree + which);
  IntMatrix out(dst.size(), src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    auto x = CohomologyClass::monomial(ring, src[j]);
    auto y = which == 1 ? sq1(x) : sq2(x);
    auto coords = y.coordinates();
    for (std::size_t i = 0; i < dst.size(); ++i) out(i, j) = coords[i];
  }
  return out;
}

GroupMorphism dual_sq2(const PairingTable& pairing, int p) {
  const auto& ring = pairing.ring();
  auto get_block = [&](int d) {
    if (pairing.has_degree(d)) return pairing.block(d);
    PairingBlock empty;
    empty.cohomology = d >= 0 ? ring->basis(d) : std::vector<Monomial>{};
    if (!empty.cohomology.empty()) throw InputError("no pairing data in degree " + std::to_string(d));
    return empty;
  };
  PairingBlock dom = get_block(p - 2);
  PairingBlock cod = get_block(p);
  if (dom.cohomology.empty() || cod.cohomology.empty()) {
    return GroupMorphism::zero(std::vector<Integer>(cod.homology.size(), Integer(2)),
                               std::vector<Integer>(dom.homology.size(), Integer(2)));
  }
  return dualize(square_matrix(ring, 2, p - 2), dom, cod, ring->coefficients());
}

}  // namespace bordcalc
