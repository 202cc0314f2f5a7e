#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bordcalc/abelian.hpp"

namespace bordcalc {

enum class CoeffRing { Z, Z2 };
enum class GenKind { Exterior, Polynomial };

std::string to_string(CoeffRing r);
Integer ring_modulus(CoeffRing r);  // 0 for Z, 2 for Z2

struct RingGenerator {
  std::string label;
  int degree = 0;
  GenKind kind = GenKind::Polynomial;
};

// Exponent of each generator, in declaration order.
using Monomial = std::vector<int>;
using Terms = std::map<Monomial, Integer>;

class RingPresentation {
 public:
  RingPresentation(CoeffRing coefficients, std::vector<RingGenerator> generators, int degree_cap = 10);

  CoeffRing coefficients() const { return coeff_; }
  const std::vector<RingGenerator>& generators() const { return gens_; }
  int degree_cap() const { return cap_; }

  std::optional<std::size_t> find_generator(const std::string& label) const;
  std::size_t generator_index(const std::string& label) const;  // throws when unknown

  int degree(const Monomial& m) const;
  Monomial unit() const { return Monomial(gens_.size(), 0); }
  Monomial generator_monomial(std::size_t index) const;
  bool is_zero_monomial(const Monomial& m) const;  // an exterior generator squared

  // Basis of the given degree, ascending lexicographic on exponent vectors.
  std::vector<Monomial> basis(int degree) const;

  std::string monomial_label(const Monomial& m) const;
  // Accepts "1", "x", "x*y", "x^2*y" and the superscript form "x²y" produced by monomial_label.
  Monomial parse_monomial(const std::string& text) const;
  Terms parse_terms(const std::string& text) const;  // "0" or monomials joined by '+', optional integer prefix "3*"

  // Steenrod data (Z2 rings only). Sq¹ defaults to zero; Sq² must be supplied where used.
  void set_square(int which, const std::string& generator, Terms image);
  const Terms* square_of_generator(int which, std::size_t generator) const;

  Integer reduce(const Integer& c) const { return reduce_mod(c, ring_modulus(coeff_)); }

 private:
  CoeffRing coeff_;
  std::vector<RingGenerator> gens_;
  int cap_;
  std::map<std::size_t, Terms> sq1_;
  std::map<std::size_t, Terms> sq2_;
};

using RingPtr = std::shared_ptr<const RingPresentation>;

class CohomologyClass {
 public:
  CohomologyClass(RingPtr ring, int degree);
  CohomologyClass(RingPtr ring, int degree, const Terms& terms);

  static CohomologyClass one(RingPtr ring);
  static CohomologyClass generator(RingPtr ring, const std::string& label, const Integer& coeff = 1);
  static CohomologyClass monomial(RingPtr ring, const Monomial& m, const Integer& coeff = 1);
  static CohomologyClass parse(RingPtr ring, int degree, const std::string& text);

  const RingPtr& ring() const { return ring_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Integer coefficient(const Monomial& m) const;

  // Coordinates in ring().basis(degree()).
  std::vector<Integer> coordinates() const;
  std::string str() const;

  CohomologyClass operator+(const CohomologyClass& other) const;
  CohomologyClass operator-(const CohomologyClass& other) const;
  CohomologyClass operator*(const Integer& scalar) const;
  friend bool operator==(const CohomologyClass& a, const CohomologyClass& b);

 private:
  void add(const Monomial& m, const Integer& c);

  RingPtr ring_;
  int degree_;
  Terms terms_;
};

CohomologyClass multiply(const CohomologyClass& x, const CohomologyClass& y);
CohomologyClass sq1(const CohomologyClass& x);
CohomologyClass sq2(const CohomologyClass& x);

// Pairing of the cohomology basis against named homology generators in one degree.
// matrix(i, j) = ⟨cohomology[i], homology[j]⟩.
struct PairingBlock {
  std::vector<Monomial> cohomology;
  std::vector<std::string> homology;
  IntMatrix matrix;
};

class PairingTable {
 public:
  PairingTable() = default;
  explicit PairingTable(RingPtr ring) : ring_(std::move(ring)) {}

  const RingPtr& ring() const { return ring_; }

  // Declares the homology basis of a degree; the cohomology basis comes from the ring.
  void set_homology_basis(int degree, std::vector<std::string> labels);
  void set_value(int degree, const Monomial& cohomology, const std::string& homology, const Integer& value);
  // Verifies every block is square and invertible over the coefficient ring.
  void validate() const;

  bool has_degree(int degree) const { return blocks_.count(degree) != 0; }
  const PairingBlock& block(int degree) const;
  const std::map<int, PairingBlock>& blocks() const { return blocks_; }

  Integer pair(const CohomologyClass& x, const std::string& homology_word) const;

 private:
  RingPtr ring_;
  std::map<int, PairingBlock> blocks_;
};

// f maps span(domain.cohomology) to span(codomain.cohomology) (rows = codomain size).
// The result maps codomain homology to domain homology: P_dom⁻¹ · fᵀ · P_cod.
GroupMorphism dualize(const IntMatrix& f, const PairingBlock& domain, const PairingBlock& codomain, CoeffRing ring);

// Matrix of Sq² (or Sq¹) from degree d to d + k in the ring bases.
IntMatrix square_matrix(const RingPtr& ring, int which, int degree);

// The homology map H_p → H_{p−2} dual to Sq²: H^{p−2} → H^p.
GroupMorphism dual_sq2(const PairingTable& pairing, int p);

}  // namespace bordcalc
