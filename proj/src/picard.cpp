#include "bordcalc/picard.hpp"

#include <algorithm>
#include <stdexcept>

#include "bordcalc/errors.hpp"

namespace bordcalc {

namespace {

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Element basis_vector(const FGAbelianGroup& g, std::size_t i, const Integer& k = 1) {
  Element e(g.generator_orders().size(), 0);
  e[i] = k;
  return e;
}

Element raw_add(const Element& x, const Element& y) {
  Element out = x;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += y[i];
  return out;
}

Element negate(const FGAbelianGroup& g, const Element& x) { return scale(g, -1, x); }

// Test elements: the whole group when small enough, otherwise words in at most two generators
// with coefficients in [−bound, bound].
std::vector<Element> sample(const FGAbelianGroup& g, int bound, std::size_t exhaustive_limit, bool& exhaustive) {
  if (g.is_finite() && g.order() <= static_cast<long>(exhaustive_limit)) {
    exhaustive = true;
    return enumerate(g);
  }
  exhaustive = false;
  std::size_t k = g.generator_orders().size();
  std::vector<Element> out{Element(k, 0)};
  for (std::size_t i = 0; i < k; ++i)
    for (int a = -bound; a <= bound; ++a) {
      if (a == 0) continue;
      out.push_back(reduce_element(g, basis_vector(g, i, a)));
      for (std::size_t j = i + 1; j < k; ++j)
        for (int b = -bound; b <= bound; ++b) {
          if (b == 0) continue;
          Element e = basis_vector(g, i, a);
          e[j] = b;
          out.push_back(reduce_element(g, e));
        }
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Element reduce_element(const FGAbelianGroup& g, Element x) {
  auto orders = g.generator_orders();
  if (x.size() != orders.size())
    throw InputError("element " + element_str(x) + " has the wrong length for " + g.str());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = reduce_mod(x[i], orders[i]);
  return x;
}

Element add(const FGAbelianGroup& g, const Element& x, const Element& y) { return reduce_element(g, raw_add(x, y)); }

Element scale(const FGAbelianGroup& g, const Integer& k, const Element& x) {
  Element out = x;
  for (auto& c : out) c *= k;
  return reduce_element(g, out);
}

bool is_zero_element(const Element& x) {
  return std::all_of(x.begin(), x.end(), [](const Integer& c) { return c == 0; });
}

std::string element_str(const Element& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) out += (i ? "," : "") + x[i].get_str();
  return out + ")";
}

std::vector<Element> enumerate(const FGAbelianGroup& g, const Integer& limit) {
  if (!g.is_finite()) throw InputError(g.str() + " is infinite and cannot be enumerated");
  if (g.order() > limit) throw InputError(g.str() + " has more than " + limit.get_str() + " elements");
  auto orders = g.generator_orders();
  std::vector<Element> out{Element(orders.size(), 0)};
  for (std::size_t i = 0; i < orders.size(); ++i) {
    std::vector<Element> next;
    for (const auto& e : out)
      for (Integer c = 0; c < orders[i]; ++c) {
        Element f = e;
        f[i] = c;
        next.push_back(f);
      }
    out = std::move(next);
  }
  return out;
}

QuadraticMap::QuadraticMap(FGAbelianGroup domain, FGAbelianGroup codomain, Function f)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), f_(std::move(f)) {}

QuadraticMap QuadraticMap::zero(const FGAbelianGroup& domain, const FGAbelianGroup& codomain) {
  std::size_t k = codomain.generator_orders().size();
  return QuadraticMap(domain, codomain, [k](const Element&) { return Element(k, 0); });
}

QuadraticMap QuadraticMap::from_generators(const FGAbelianGroup& domain, const FGAbelianGroup& codomain,
                                           std::vector<Element> values, std::vector<std::vector<Element>> b) {
  std::size_t n = domain.generator_orders().size();
  std::size_t k = codomain.generator_orders().size();
  if (values.size() != n) throw InputError("need one value per generator of " + domain.str());
  for (auto& v : values) v = reduce_element(codomain, v);
  if (b.empty()) b.assign(n, std::vector<Element>(n, Element(k, 0)));
  if (b.size() != n) throw InputError("bilinear table has the wrong size");
  for (auto& row : b) {
    if (row.size() != n) throw InputError("bilinear table has the wrong size");
    for (auto& v : row) v = reduce_element(codomain, v);
  }
  return QuadraticMap(domain, codomain, [values, b, codomain, n, k](const Element& x) {
    Element out(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t t = 0; t < k; ++t) out[t] += x[i] * x[i] * values[i][t];
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t t = 0; t < k; ++t) out[t] += x[i] * x[j] * b[i][j][t];
    }
    return reduce_element(codomain, out);
  });
}

QuadraticMap QuadraticMap::linear(const FGAbelianGroup& domain, const FGAbelianGroup& codomain,
                                  std::vector<Element> values) {
  std::size_t n = domain.generator_orders().size();
  std::size_t k = codomain.generator_orders().size();
  if (values.size() != n) throw InputError("need one value per generator of " + domain.str());
  for (auto& v : values) v = reduce_element(codomain, v);
  return QuadraticMap(domain, codomain, [values, codomain, n, k](const Element& x) {
    Element out(k, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < k; ++t) out[t] += x[i] * values[i][t];
    return reduce_element(codomain, out);
  });
}

Element QuadraticMap::operator()(const Element& x) const {
  if (x.size() != domain_.generator_orders().size())
    throw InputError("element " + element_str(x) + " has the wrong length for " + domain_.str());
  return reduce_element(codomain_, f_(x));
}

Element QuadraticMap::bilinear(const Element& x, const Element& y) const {
  Element s = (*this)(raw_add(x, y));
  return add(codomain_, s, negate(codomain_, add(codomain_, (*this)(x), (*this)(y))));
}

std::vector<Element> QuadraticMap::generator_values() const {
  std::vector<Element> out;
  for (std::size_t i = 0; i < domain_.generator_orders().size(); ++i) out.push_back((*this)(basis_vector(domain_, i)));
  return out;
}

std::string QuadraticMap::str() const {
  std::string out = domain_.str() + " -> " + codomain_.str() + ":";
  auto values = generator_values();
  for (std::size_t i = 0; i < values.size(); ++i) out += " e" + std::to_string(i + 1) + "->" + element_str(values[i]);
  return out;
}

FormCheck is_quadratic(const QuadraticMap& q, int word_bound) {
  FormCheck out;
  auto xs = sample(q.domain(), word_bound, 64, out.exhaustive);
  auto orders = q.domain().generator_orders();
  auto fail = [&](const std::string& why) {
    out.holds = false;
    out.witness = why;
    return out;
  };
  for (const auto& x : xs)
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (orders[i] == 0) continue;
      if (q(raw_add(x, basis_vector(q.domain(), i, orders[i]))) != q(x))
        return fail("q is not well defined at " + element_str(x));
    }
  const auto& cod = q.codomain();
  for (const auto& x : xs)
    for (const auto& y : xs)
      for (const auto& z : xs) {
        Element lhs = q.bilinear(add(q.domain(), x, y), z);
        Element rhs = add(cod, q.bilinear(x, z), q.bilinear(y, z));
        if (lhs != rhs)
          return fail("b_q(x+y,z) != b_q(x,z)+b_q(y,z) at x=" + element_str(x) + " y=" + element_str(y) +
                      " z=" + element_str(z));
      }
  return out;
}

FormCheck is_linear_quadratic(const QuadraticMap& q, int word_bound) {
  FormCheck out = is_quadratic(q, word_bound);
  if (!out.holds) return out;
  bool exhaustive = true;
  auto xs = sample(q.domain(), word_bound, 64, exhaustive);
  for (const auto& x : xs)
    for (const auto& y : xs)
      if (!is_zero_element(q.bilinear(x, y))) {
        out.holds = false;
        out.witness = "b_q(" + element_str(x) + "," + element_str(y) + ") != 0";
        return out;
      }
  return out;
}

SkewForm::SkewForm(FGAbelianGroup domain, FGAbelianGroup codomain, std::vector<std::vector<Element>> table)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), table_(std::move(table)) {
  auto orders = domain_.generator_orders();
  std::size_t n = orders.size();
  if (table_.size() != n) throw InputError("form table needs one row per generator of " + domain_.str());
  for (std::size_t i = 0; i < n; ++i) {
    if (table_[i].size() != n) throw InputError("form table needs one column per generator of " + domain_.str());
    for (std::size_t j = 0; j < n; ++j) {
      auto& v = table_[i][j];
      v = reduce_element(codomain_, v);
      for (const auto& m : {orders[i], orders[j]})
        if (m != 0 && !is_zero_element(scale(codomain_, m, v)))
          throw InputError("form value on (e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) +
                           ") is not killed by " + m.get_str() + ", so the form is not well defined");
    }
  }
}

Element SkewForm::operator()(const Element& x, const Element& y) const {
  Element out(codomain_.generator_orders().size(), 0);
  for (std::size_t i = 0; i < table_.size(); ++i)
    for (std::size_t j = 0; j < table_.size(); ++j) out = add(codomain_, out, scale(codomain_, x[i] * y[j], table_[i][j]));
  return out;
}

bool SkewForm::skew() const {
  for (std::size_t i = 0; i < table_.size(); ++i)
    for (std::size_t j = 0; j < table_.size(); ++j)
      if (!is_zero_element(add(codomain_, table_[i][j], table_[j][i]))) return false;
  return true;
}

bool SkewForm::alternating() const {
  if (!skew()) return false;
  for (std::size_t i = 0; i < table_.size(); ++i)
    if (!is_zero_element(table_[i][i])) return false;
  return true;
}

QuadraticMap delta_star(const SkewForm& sigma) {
  if (!sigma.skew()) throw InputError("the form is not skew-symmetric");
  QuadraticMap q(sigma.domain(), sigma.codomain(), [sigma](const Element& x) {
    return sigma(reduce_element(sigma.domain(), x), reduce_element(sigma.domain(), x));
  });
  auto check = is_linear_quadratic(q);
  if (!check.holds) throw std::logic_error("diagonal of a skew form is not linear quadratic: " + check.witness);
  return q;
}

SesCount ses_check(const FGAbelianGroup& pi0, const FGAbelianGroup& pi1) {
  const Integer limit = 4096;
  for (const auto* g : {&pi0, &pi1})
    if (!g->is_finite() || g->order() > limit)
      throw InputError(g->str() + " is not a finite group of order at most 4096");
  auto elems = enumerate(pi1, limit);
  auto killed_by = [&](const Integer& m) {
    std::vector<Element> out;
    for (const auto& v : elems)
      if (is_zero_element(scale(pi1, m, v))) out.push_back(v);
    return out;
  };
  auto orders = pi0.generator_orders();
  SesCount out{1, 1, 1, true};
  for (std::size_t i = 0; i < orders.size(); ++i) {
    for (std::size_t j = i + 1; j < orders.size(); ++j) {
      // σ(eᵢ,eⱼ) is free subject to being killed by both orders; σ(eⱼ,eᵢ) is then forced.
      out.alt *= killed_by(gcd(orders[i], orders[j])).size();
    }
    std::vector<Element> diagonal;
    for (const auto& v : killed_by(orders[i]))
      if (is_zero_element(scale(pi1, 2, v))) diagonal.push_back(v);
    out.skew *= diagonal.size();
    // Hom(π₀/2π₀, π₁) on this generator: Z/2 when the order is even, nothing otherwise.
    auto hom = killed_by(gcd(orders[i], 2));
    out.hom *= hom.size();
    if (diagonal != hom) out.exact = false;
  }
  out.skew *= out.alt;
  if (out.skew != out.alt * out.hom) out.exact = false;
  return out;
}

void PicardData::validate() const {
  if (!q) return;
  if (!(q->domain() == pi0) || !(q->codomain() == pi1))
    throw InputError("symmetry invariant must map " + pi0.str() + " to " + pi1.str());
  auto check = is_linear_quadratic(*q);
  if (!check.holds) throw InputError("symmetry invariant is not linear quadratic: " + check.witness);
}

std::string PicardData::str() const {
  return "pi0 = " + pi0.str() + "  pi1 = " + pi1.str() + "  q = " + (q ? q->str() : std::string("unknown"));
}

PicardData picard_from_groups(const FGAbelianGroup& omega_n, const FGAbelianGroup& omega_n1) {
  return PicardData{omega_n, omega_n1, std::nullopt};
}

PicardData super_torsor_picard() {
  auto z2 = FGAbelianGroup::cyclic(2);
  SkewForm sign(z2, z2, {{Element{1}}});
  return PicardData{z2, z2, delta_star(sign)};
}

PicardData plain_torsor_picard() {
  auto z2 = FGAbelianGroup::cyclic(2);
  return PicardData{z2, z2, QuadraticMap::zero(z2, z2)};
}

bool functor_exists(const PicardData& src, const PicardData& dst, const GroupMorphism& f0, const GroupMorphism& f1) {
  if (!src.q || !dst.q) throw UnresolvedError("the symmetry invariant is unknown, so functor existence is undecided");
  if (f0.source_orders() != src.pi0.generator_orders() || f0.target_orders() != dst.pi0.generator_orders())
    throw InputError("f0 must map " + src.pi0.str() + " to " + dst.pi0.str());
  if (f1.source_orders() != src.pi1.generator_orders() || f1.target_orders() != dst.pi1.generator_orders())
    throw InputError("f1 must map " + src.pi1.str() + " to " + dst.pi1.str());
  for (std::size_t i = 0; i < src.pi0.generator_orders().size(); ++i) {
    Element e = basis_vector(src.pi0, i);
    Element lhs = (*dst.q)(f0.apply(e));
    Element rhs = reduce_element(dst.pi1, f1.apply((*src.q)(e)));
    if (lhs != rhs) return false;
  }
  return true;
}

GradedTorsor GradedTorsor::make(std::string a, std::string b, int epsilon) {
  GradedTorsor t;
  t.points = {std::move(a), std::move(b)};
  t.epsilon = ((epsilon % 2) + 2) % 2;
  return t;
}

void GradedTorsor::validate() const {
  for (int p = 0; p < 2; ++p) {
    if (action[p] < 0 || action[p] > 1) throw InputError("torsor action leaves the point set");
    if (action[p] == p) throw InputError("torsor action has a fixed point, so it is not free");
    if (action[action[p]] != p) throw InputError("torsor action is not an involution");
  }
  if (epsilon != 0 && epsilon != 1) throw InputError("torsor grade must be 0 or 1");
  if (is_tensor())
    for (int p = 0; p < 2; ++p)
      if (cls[rep[p].first][rep[p].second] != p) throw InputError("tensor representatives are inconsistent");
}

std::string GradedTorsor::str() const {
  return "{" + points[0] + ", " + points[1] + "} grade " + std::to_string(epsilon);
}

TorsorMap compose(const TorsorMap& second, const TorsorMap& first) {
  return TorsorMap{{second.image[first.image[0]], second.image[first.image[1]]}};
}

namespace {

TorsorMap inverse(const TorsorMap& f) {
  TorsorMap out;
  for (int p = 0; p < 2; ++p) out.image[f.image[p]] = p;
  return out;
}

std::string wrap(const GradedTorsor& t, int p) { return t.is_tensor() ? "(" + t.points[p] + ")" : t.points[p]; }

}  // namespace

bool is_equivariant(const TorsorMap& f, const GradedTorsor& from, const GradedTorsor& to) {
  for (int p = 0; p < 2; ++p)
    if (f.image[from.action[p]] != to.action[f.image[p]]) return false;
  return true;
}

GradedTorsor torsor_tensor(const GradedTorsor& t, const GradedTorsor& u) {
  t.validate();
  u.validate();
  GradedTorsor out;
  out.left = std::make_shared<const GradedTorsor>(t);
  out.right = std::make_shared<const GradedTorsor>(u);
  out.epsilon = (t.epsilon + u.epsilon) % 2;
  // The anti-diagonal Z₂ identifies (i, j) with (τi, τj); the two orbits are those of (0,0) and (0,1).
  for (int p = 0; p < 2; ++p) {
    int i = 0, j = p;
    out.rep[p] = {i, j};
    out.cls[i][j] = p;
    out.cls[t.action[i]][u.action[j]] = p;
    out.points[p] = wrap(t, i) + "⊗" + wrap(u, j);
  }
  for (int p = 0; p < 2; ++p) out.action[p] = out.cls[t.action[out.rep[p].first]][out.rep[p].second];
  out.validate();
  return out;
}

TorsorMap torsor_symmetry(const GradedTorsor& t, const GradedTorsor& u) {
  GradedTorsor tu = torsor_tensor(t, u);
  GradedTorsor ut = torsor_tensor(u, t);
  TorsorMap out;
  for (int p = 0; p < 2; ++p) {
    auto [i, j] = tu.rep[p];
    int image = ut.cls[j][i];
    if (t.epsilon * u.epsilon % 2 == 1) image = ut.action[image];
    out.image[p] = image;
  }
  return out;
}

TorsorMap tensor_maps(const TorsorMap& f, const TorsorMap& g, const GradedTorsor& from, const GradedTorsor& to) {
  if (!from.is_tensor() || !to.is_tensor()) throw InputError("tensor_maps needs tensor products on both sides");
  TorsorMap out;
  for (int p = 0; p < 2; ++p) {
    auto [i, j] = from.rep[p];
    out.image[p] = to.cls[f.image[i]][g.image[j]];
  }
  return out;
}

TorsorMap associator(const GradedTorsor& from, const GradedTorsor& to) {
  if (!from.is_tensor() || !from.left->is_tensor() || !to.is_tensor() || !to.right->is_tensor())
    throw InputError("associator needs (a⊗b)⊗c and a⊗(b⊗c)");
  TorsorMap out;
  for (int p = 0; p < 2; ++p) {
    auto [ab, k] = from.rep[p];
    auto [i, j] = from.left->rep[ab];
    out.image[p] = to.cls[i][to.right->cls[j][k]];
  }
  return out;
}

bool hexagon_holds(const GradedTorsor& a, const GradedTorsor& b, const GradedTorsor& c) {
  const TorsorMap id;
  GradedTorsor bc = torsor_tensor(b, c);
  GradedTorsor a_bc = torsor_tensor(a, bc);
  TorsorMap direct = torsor_symmetry(a, bc);

  GradedTorsor ab = torsor_tensor(a, b), ba = torsor_tensor(b, a);
  GradedTorsor ac = torsor_tensor(a, c), ca = torsor_tensor(c, a);
  GradedTorsor ab_c = torsor_tensor(ab, c), ba_c = torsor_tensor(ba, c);
  GradedTorsor b_ac = torsor_tensor(b, ac), b_ca = torsor_tensor(b, ca);
  GradedTorsor bc_a = torsor_tensor(bc, a);

  TorsorMap path = inverse(associator(ab_c, a_bc));
  path = compose(tensor_maps(torsor_symmetry(a, b), id, ab_c, ba_c), path);
  path = compose(associator(ba_c, b_ac), path);
  path = compose(tensor_maps(id, torsor_symmetry(a, c), b_ac, b_ca), path);
  path = compose(inverse(associator(bc_a, b_ca)), path);
  return path == direct;
}

}  // namespace bordcalc
