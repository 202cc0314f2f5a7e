#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "bordcalc/abelian.hpp"
#include "bordcalc/graded_ring.hpp"

namespace bordcalc {

struct Summand {
  Integer order;  // 0 for Z
  std::string label;
};

// A direct sum of cyclic groups with one label per summand, in the order written.
struct LabeledGroup {
  std::vector<Summand> summands;

  // group_text lists summands joined by '+': "Z", "Z^2", "Z/3", "Z/2^2" or "0".
  static LabeledGroup parse(const std::string& group_text, const std::string& labels_text);

  std::vector<Integer> orders() const;
  std::vector<std::string> labels() const;
  FGAbelianGroup group() const { return FGAbelianGroup::from_cyclic(orders()); }
  bool is_zero() const { return summands.empty(); }
  // "Z + Z/3 : ε4², ε8", or "0".
  std::string str() const;
};

// Parses the summand list of a group text; "Z^2 + Z/2" gives {0, 0, 2}.
std::vector<Integer> parse_summand_orders(const std::string& text);
// Lists summands in the given order: {0, 3} gives "Z + Z/3".
std::string summand_text(const std::vector<Integer>& orders);

// Joins a coefficient label and a homology label into an E² generator label.
std::string combine_labels(const std::string& coefficient, const std::string& homology);

struct Mod2Generator {
  enum class Origin { Reduction, Tor };
  std::string label;
  Origin origin = Origin::Reduction;
  std::string source;  // Z generator in degree p (reduction) or p−1 (Tor)
};

struct SpaceDescriptor {
  std::string name;
  int cap = 0;
  bool reduced = true;
  std::map<int, LabeledGroup> homology;                      // over Z
  std::map<int, std::vector<Mod2Generator>> homology_mod2;   // over Z2
  std::map<int, LabeledGroup> cohomology;                    // over Z, optional
  bool has_cohomology = false;
  RingPtr ring_mod2;
  RingPtr ring_integral;  // may be null
  PairingTable pairing;   // Z2 cohomology against Z2 homology

  // Throws InputError beyond the cap; absent degrees below it are zero.
  LabeledGroup homology_at(int p) const;
  std::vector<Mod2Generator> mod2_at(int p) const;
  bool has_degree(int p) const { return p >= 0 && p <= cap; }
  GradedGroups integral_groups() const;

  // Matrix of H_p(Z) → H_p(Z2): rows are Z2 generators, columns Z generators.
  IntMatrix reduction_matrix(int p) const;

  // The unreduced variant: H_0 = Z⟨1⟩ and its reduction 1̄.
  SpaceDescriptor with_basepoint() const;

  // UCT cross-checks, Sq endpoints and pairing shape.
  void validate() const;
};

using SpacePtr = std::shared_ptr<const SpaceDescriptor>;

SpaceDescriptor parse_space(const std::string& document, const std::string& source = "<space>");

// Coefficient groups Ω_q of the point (or any other theory) indexed by q.
struct CoefficientRow {
  std::string name;
  int max_q = -1;
  std::map<int, LabeledGroup> groups;  // absent q ≤ max_q means zero
  bool spin = false;                   // rows q = 0, 1 carry the Sq² formula for d²

  bool has(int q) const { return q >= 0 && q <= max_q; }
  LabeledGroup at(int q) const;  // throws beyond max_q
  std::string str() const;       // the "row" document
};

// Spin bordism of the point through degree 9, labelled as in the classical presentation.
CoefficientRow spin_coefficients();

CoefficientRow parse_row(const std::string& document, const std::string& source = "<row>");

}  // namespace bordcalc
