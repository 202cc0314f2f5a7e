#include "bordcalc/charnum.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "bordcalc/errors.hpp"

namespace bordcalc {

namespace {

ManifoldModel::Block make_block(const std::string& raw) {
  std::string name;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) name += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (name == "K3") return {ManifoldModel::BlockKind::K3, name, "k3", 4};
  if (name.size() >= 2 && name[0] == 'S' && std::all_of(name.begin() + 1, name.end(), ::isdigit)) {
    int n = std::stoi(name.substr(1));
    if (n < 1 || n > 16) throw InputError("sphere dimension out of range: " + raw);
    return {n == 1 ? ManifoldModel::BlockKind::Circle : ManifoldModel::BlockKind::Sphere, name, "s" + name.substr(1), n};
  }
  throw InputError("unknown manifold block '" + raw + "' (expected Sn, K3 or S1)");
}

Integer top_coefficient(const CohomologyClass& x, const ManifoldModel& model) {
  if (x.degree() != model.dim())
    throw InputError("cannot integrate a degree " + std::to_string(x.degree()) + " class over the " +
                     std::to_string(model.dim()) + "-manifold " + model.str());
  return x.coefficient(Monomial(model.blocks().size(), 1));
}

Integer gcd_of(std::initializer_list<Integer> values) {
  Integer g = 0;
  for (const auto& v : values) {
    Integer a = abs(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  return g;
}

}  // namespace

ManifoldModel::ManifoldModel(const std::vector<std::string>& block_names) {
  if (block_names.empty()) throw InputError("a manifold model needs at least one block");
  std::map<std::string, int> seen;
  std::vector<RingGenerator> gens;
  for (const auto& raw : block_names) {
    Block b = make_block(raw);
    int k = ++seen[b.label];
    if (k > 1) b.label += "_" + std::to_string(k);
    dim_ += b.dim;
    gens.push_back({b.label, b.dim, GenKind::Exterior});
    blocks_.push_back(b);
  }
  ring_ = std::make_shared<RingPresentation>(CoeffRing::Z, gens, dim_);
  auto mod2 = std::make_shared<RingPresentation>(CoeffRing::Z2, gens, dim_);
  // Every block generator squares to zero and lives in a single cell, so all its squares vanish.
  for (const auto& g : gens) {
    mod2->set_square(1, g.label, {});
    mod2->set_square(2, g.label, {});
  }
  mod2_ring_ = mod2;
}

ManifoldModel ManifoldModel::parse(const std::string& text) {
  std::vector<std::string> names;
  std::string current;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    char c = i < text.size() ? text[i] : 'x';
    if (c == 'x' || c == 'X' || c == '*') {
      bool blank = std::all_of(current.begin(), current.end(), ::isspace);
      if (blank) throw InputError("empty block in manifold '" + text + "'");
      names.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  return ManifoldModel(names);
}

std::string ManifoldModel::str() const {
  std::string out;
  for (std::size_t i = 0; i < blocks_.size(); ++i) out += (i ? " x " : "") + blocks_[i].name;
  return out;
}

CohomologyClass ManifoldModel::top() const { return CohomologyClass::monomial(ring_, Monomial(blocks_.size(), 1)); }

CohomologyClass ManifoldModel::p1() const {
  CohomologyClass out(ring_, 4);
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i].kind == BlockKind::K3) out = out + fundamental_dual(i) * 48;
  return out;
}

CohomologyClass ManifoldModel::fundamental_dual(std::size_t block) const {
  if (block >= blocks_.size()) throw InputError("block index out of range");
  return CohomologyClass::monomial(ring_, ring_->generator_monomial(block));
}

CohomologyClass ManifoldModel::poincare_dual(const std::vector<std::size_t>& point_blocks) const {
  Monomial m(blocks_.size(), 0);
  for (auto i : point_blocks) {
    if (i >= blocks_.size()) throw InputError("block index out of range");
    m[i] = 1;
  }
  return CohomologyClass::monomial(ring_, m);
}

CohomologyClass ManifoldModel::parse_class(int degree, const std::string& text) const {
  CohomologyClass x = CohomologyClass::parse(ring_, degree, text);
  for (const auto& [m, c] : x.terms())
    if (ring_->degree(m) != degree)
      throw InputError("'" + text + "' is not homogeneous of degree " + std::to_string(degree));
  return x;
}

CohomologyClass ManifoldModel::reduce_mod2(const CohomologyClass& x) const {
  Terms t;
  for (const auto& [m, c] : x.terms())
    if (reduce_mod(c, 2) != 0) t[m] = 1;
  return CohomologyClass(mod2_ring_, x.degree(), t);
}

Integer integrate(const CohomologyClass& x, const ManifoldModel& model) {
  if (x.ring() != model.ring()) throw InputError("class does not live on " + model.str());
  return top_coefficient(x, model);
}

Integer integrate_mod2(const CohomologyClass& x, const ManifoldModel& model) {
  if (x.ring() != model.mod2_ring()) throw InputError("class does not live on the mod 2 ring of " + model.str());
  return reduce_mod(top_coefficient(x, model), 2);
}

CohomologyClass BundleData::c(int i, const ManifoldModel& model) const {
  if (i == 0) return CohomologyClass::one(model.ring());
  auto it = chern.find(i);
  return it == chern.end() ? model.zero(2 * i) : it->second;
}

std::string BundleData::tag() const { return (group == Group::SU ? "SU(" : "U(") + std::to_string(rank) + ")"; }

void BundleData::validate(const ManifoldModel& model) const {
  if (rank < 0) throw InputError("negative rank");
  for (const auto& [i, x] : chern) {
    if (x.ring() != model.ring()) throw InputError("c" + std::to_string(i) + " does not live on " + model.str());
    if (x.degree() != 2 * i) throw InputError("c" + std::to_string(i) + " must have degree " + std::to_string(2 * i));
    if (x.is_zero()) continue;
    if (i < 1 || i > rank) throw InputError("c" + std::to_string(i) + " is nonzero on a rank " + std::to_string(rank) + " bundle");
    if (i == 1 && group == Group::SU) throw InputError("an SU bundle has c1 = 0");
  }
}

BundleData trivial_bundle(int rank, BundleData::Group group) {
  BundleData b;
  b.group = group;
  b.rank = rank;
  return b;
}

BundleData whitney_sum(const std::vector<BundleData>& bundles, const ManifoldModel& model) {
  BundleData out;
  out.rank = 0;
  out.group = BundleData::Group::SU;
  for (const auto& b : bundles) {
    b.validate(model);
    if (b.group == BundleData::Group::U) out.group = BundleData::Group::U;
    BundleData next;
    next.group = out.group;
    next.rank = out.rank + b.rank;
    for (int k = 1; k <= next.rank && 2 * k <= model.dim(); ++k) {
      CohomologyClass ck = model.zero(2 * k);
      for (int i = 0; i <= k; ++i) ck = ck + multiply(out.c(i, model), b.c(k - i, model));
      if (!ck.is_zero()) next.chern.emplace(k, ck);
    }
    out = std::move(next);
  }
  if (out.group == BundleData::Group::SU && out.chern.count(1)) out.group = BundleData::Group::U;
  return out;
}

BundleData generator_bundle(int i, const ManifoldModel& base) {
  if (i < 2 || i > 5) throw InputError("generator bundles are available for 2 <= i <= 5, got " + std::to_string(i));
  if (base.dim() != 2 * i)
    throw InputError("the generator bundle for i = " + std::to_string(i) + " needs a " + std::to_string(2 * i) +
                     "-dimensional base, got " + base.str());
  Integer factorial = 1;
  for (int k = 2; k < i; ++k) factorial *= k;
  BundleData b;
  b.group = BundleData::Group::SU;
  b.rank = i;
  b.chern.emplace(i, base.top() * factorial);
  return b;
}

Integer exact(const Rational& value, const std::string& what) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() != 1) throw IntegralityError(what + " = " + v.get_str() + " is not an integer");
  return v.get_num();
}

namespace {

void require_loop_shape(const ManifoldModel& model, const BundleData& q, int dim) {
  if (model.dim() != dim) throw InputError("expected a " + std::to_string(dim) + "-dimensional model, got " + model.str());
  if (model.blocks().back().kind != ManifoldModel::BlockKind::Circle)
    throw InputError("the model must end in an S1 block: " + model.str());
  if (q.group != BundleData::Group::SU) throw InputError("loop invariants need an SU bundle, got " + q.tag());
  q.validate(model);
}

}  // namespace

SuLoopInvariants su_loop_invariants(const ManifoldModel& model, const BundleData& q) {
  require_loop_shape(model, q, 8);
  CohomologyClass c2 = q.c(2, model);
  Integer i4 = integrate(q.c(4, model), model);
  Integer i22 = integrate(multiply(c2, c2), model);
  Integer ip = integrate(multiply(model.p1(), c2), model);
  SuLoopInvariants out;
  out.a = exact(Rational(i4, 6) - Rational(i22, 12), "a");
  out.b = exact(Rational(ip, 48), "b");
  out.c = exact(Rational(i22, 2), "c");
  return out;
}

std::vector<Integer> bsu_loop_invariants(const ManifoldModel& model, const BundleData& q) {
  switch (model.dim()) {
    case 4:
      require_loop_shape(model, q, 4);
      return {integrate(q.c(2, model), model)};
    case 6:
      require_loop_shape(model, q, 6);
      return {exact(Rational(integrate(q.c(3, model), model), 2), "(1/2)∫c3")};
    case 8: {
      auto inv = su_loop_invariants(model, q);
      return {inv.a, inv.b, inv.c};
    }
    default:
      throw InputError("loop invariants exist for X x S1 with dim X = 3, 5, 7; got " + model.str());
  }
}

namespace {

const CohomologyClass& pulled(const PulledClasses& classes, const std::string& name, int degree,
                              const ManifoldModel& model) {
  auto it = classes.find(name);
  if (it == classes.end()) throw InputError("missing pulled-back class " + name);
  if (it->second.ring() != model.ring()) throw InputError(name + " does not live on " + model.str());
  if (it->second.degree() != degree) throw InputError(name + " must have degree " + std::to_string(degree));
  return it->second;
}

}  // namespace

std::vector<Integer> su_invariants_low(const ManifoldModel& model, const PulledClasses& classes) {
  switch (model.dim()) {
    case 3:
      return {integrate(pulled(classes, "b2", 3, model), model)};
    case 5:
      return {exact(Rational(integrate(pulled(classes, "b3", 5, model), model), 2), "(1/2)∫b3")};
    case 7: {
      Integer first = integrate(pulled(classes, "b4", 7, model), model);
      Integer ip = integrate(multiply(model.p1(), pulled(classes, "b2", 3, model)), model);
      return {first, exact(Rational(ip, 24), "(1/24)∫p1∪b2")};
    }
    case 8:
      return {integrate(multiply(pulled(classes, "b2", 3, model), pulled(classes, "b3", 5, model)), model)};
    default:
      throw InputError("SU invariants are defined in dimensions 3, 5, 7, 8; got " + model.str());
  }
}

std::vector<Integer> kz3_invariants(const ManifoldModel& model, const PulledClasses& classes) {
  const CohomologyClass& d3 = pulled(classes, "d3", 3, model);
  switch (model.dim()) {
    case 3:
      return {integrate(d3, model)};
    case 7:
      return {exact(Rational(integrate(multiply(model.p1(), d3), model), 8), "(1/8)∫p1∪d3")};
    case 8: {
      CohomologyClass bar = model.reduce_mod2(d3);
      return {integrate_mod2(multiply(bar, sq2(bar)), model)};
    }
    default:
      throw InputError("K(Z,3) invariants are defined in dimensions 3, 7, 8; got " + model.str());
  }
}

Integer xi_index(int r, const Integer& i2, const Integer& i4, const Integer& ip) {
  if (r < 2) throw InputError("rank must be at least 2");
  Rational v = Rational(r + 6, 6) * i2 - Rational(r, 3) * i4 + Rational(r, 12) * ip;
  return exact(v, "index for SU(" + std::to_string(r) + ")");
}

Integer xi_from_abc(int r, const SuLoopInvariants& inv) {
  if (r < 2) throw InputError("rank must be at least 2");
  return -2 * r * inv.a + 4 * r * inv.b + 2 * inv.c;
}

Integer floer_divisibility(int r) {
  if (r < 2) throw InputError("rank must be at least 2");
  if (r < 4) return gcd_of({Integer(2 * r + 12), Integer(4 * r)});
  return gcd_of({Integer(2 * r), Integer(4 * r), Integer(2)});
}

Integer stabilized_divisibility(int r_prime) {
  if (r_prime < 4) throw InputError("stabilization needs r' >= 4, got " + std::to_string(r_prime));
  return gcd_of({Integer(2 * r_prime + 12), Integer(4 * r_prime)});
}

}  // namespace bordcalc
