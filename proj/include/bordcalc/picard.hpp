#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bordcalc/abelian.hpp"

namespace bordcalc {

// Coordinates with respect to FGAbelianGroup::generator_orders(), reduced where the order is finite.
using Element = std::vector<Integer>;

Element reduce_element(const FGAbelianGroup& g, Element x);
Element add(const FGAbelianGroup& g, const Element& x, const Element& y);
Element scale(const FGAbelianGroup& g, const Integer& k, const Element& x);
bool is_zero_element(const Element& x);
std::string element_str(const Element& x);
// Every element of a finite group; throws InputError above the limit.
std::vector<Element> enumerate(const FGAbelianGroup& g, const Integer& limit = 4096);

class QuadraticMap {
 public:
  using Function = std::function<Element(const Element&)>;

  QuadraticMap(FGAbelianGroup domain, FGAbelianGroup codomain, Function f);

  static QuadraticMap zero(const FGAbelianGroup& domain, const FGAbelianGroup& codomain);
  // q(Σ xᵢeᵢ) = Σ xᵢ² qᵢ + Σ_{i<j} xᵢxⱼ bᵢⱼ; b is indexed [i][j] for i < j.
  static QuadraticMap from_generators(const FGAbelianGroup& domain, const FGAbelianGroup& codomain,
                                      std::vector<Element> values, std::vector<std::vector<Element>> b = {});
  // A homomorphism determined by the image of each generator.
  static QuadraticMap linear(const FGAbelianGroup& domain, const FGAbelianGroup& codomain, std::vector<Element> values);

  const FGAbelianGroup& domain() const { return domain_; }
  const FGAbelianGroup& codomain() const { return codomain_; }
  Element operator()(const Element& x) const;
  Element bilinear(const Element& x, const Element& y) const;  // b_q
  std::vector<Element> generator_values() const;
  std::string str() const;

 private:
  FGAbelianGroup domain_;
  FGAbelianGroup codomain_;
  Function f_;
};

// Verdict of a property check; exhaustive = false when only generator words up to a length bound were tried.
struct FormCheck {
  bool holds = true;
  bool exhaustive = true;
  std::string witness;  // first failure, if any
  explicit operator bool() const { return holds; }
};

FormCheck is_quadratic(const QuadraticMap& q, int word_bound = 2);
FormCheck is_linear_quadratic(const QuadraticMap& q, int word_bound = 2);

class SkewForm {
 public:
  // table[i][j] = σ(eᵢ, eⱼ); must be a well-defined bilinear map.
  SkewForm(FGAbelianGroup domain, FGAbelianGroup codomain, std::vector<std::vector<Element>> table);

  const FGAbelianGroup& domain() const { return domain_; }
  const FGAbelianGroup& codomain() const { return codomain_; }
  Element operator()(const Element& x, const Element& y) const;
  bool skew() const;
  bool alternating() const;

 private:
  FGAbelianGroup domain_;
  FGAbelianGroup codomain_;
  std::vector<std::vector<Element>> table_;
};

QuadraticMap delta_star(const SkewForm& sigma);

struct SesCount {
  Integer alt;
  Integer skew;
  Integer hom;  // |Hom(π₀/2π₀, π₁)|
  bool exact = false;
};

// Counts Alt ⊂ Skew → Hom(π₀/2π₀, π₁) for finite groups of order at most 2¹².
SesCount ses_check(const FGAbelianGroup& pi0, const FGAbelianGroup& pi1);

struct PicardData {
  FGAbelianGroup pi0;
  FGAbelianGroup pi1;
  std::optional<QuadraticMap> q;

  void validate() const;
  std::string str() const;
};

PicardData picard_from_groups(const FGAbelianGroup& omega_n, const FGAbelianGroup& omega_n1);
// s-Z₂-tor: π₀ = π₁ = Z₂ with q the diagonal of the sign (−1)^{εε′}.
PicardData super_torsor_picard();
// Plain Z₂-tor graded by Z₂ with the unsigned swap.
PicardData plain_torsor_picard();

// q′∘f₀ = f₁∘q, checked on the generators of π₀; throws UnresolvedError when either q is unknown.
bool functor_exists(const PicardData& src, const PicardData& dst, const GroupMorphism& f0, const GroupMorphism& f1);

// A two-point set with a free transitive Z₂-action and a Z₂ grade. Tensor products remember their
// factors so that associators and symmetries can be computed on actual points.
struct GradedTorsor {
  std::array<std::string, 2> points;
  std::array<int, 2> action{1, 0};  // the nontrivial element of Z₂
  int epsilon = 0;

  std::shared_ptr<const GradedTorsor> left;
  std::shared_ptr<const GradedTorsor> right;
  std::array<std::array<int, 2>, 2> cls{};         // point containing (i, j)
  std::array<std::pair<int, int>, 2> rep{};        // a representative of each point

  static GradedTorsor make(std::string a, std::string b, int epsilon);
  bool is_tensor() const { return left != nullptr; }
  void validate() const;
  std::string str() const;
};

struct TorsorMap {
  std::array<int, 2> image{0, 1};
  friend bool operator==(const TorsorMap&, const TorsorMap&) = default;
};

TorsorMap compose(const TorsorMap& second, const TorsorMap& first);
bool is_equivariant(const TorsorMap& f, const GradedTorsor& from, const GradedTorsor& to);

GradedTorsor torsor_tensor(const GradedTorsor& t, const GradedTorsor& u);
// t ⊗ u → u ⊗ t, (s, s′) ↦ (−1)^{εε′}(s′, s).
TorsorMap torsor_symmetry(const GradedTorsor& t, const GradedTorsor& u);
TorsorMap tensor_maps(const TorsorMap& f, const TorsorMap& g, const GradedTorsor& from, const GradedTorsor& to);
// (a ⊗ b) ⊗ c → a ⊗ (b ⊗ c)
TorsorMap associator(const GradedTorsor& from, const GradedTorsor& to);

// σ_{a, b⊗c} against the composite through (b⊗a)⊗c, for one triple of torsors.
bool hexagon_holds(const GradedTorsor& a, const GradedTorsor& b, const GradedTorsor& c);

}  // namespace bordcalc
