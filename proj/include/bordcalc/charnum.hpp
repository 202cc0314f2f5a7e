#pragma once

#include <map>
#include <string>
#include <vector>

#include "bordcalc/graded_ring.hpp"

namespace bordcalc {

// A product of spheres, K3 surfaces and circles. Each block contributes one generator: the dual of its
// fundamental class, labelled after the block ("s4", "k3", "s1"; repeats get "_2", "_3", ...).
// Only H^0 and the top class of K3 are modelled, which is all the invariants below ever touch.
class ManifoldModel {
 public:
  enum class BlockKind { Sphere, K3, Circle };
  struct Block {
    BlockKind kind;
    std::string name;   // "S7", "K3", "S1"
    std::string label;  // generator label
    int dim = 0;
  };

  explicit ManifoldModel(const std::vector<std::string>& block_names);
  // "S4 x S3 x S1", "K3xS3xS1"
  static ManifoldModel parse(const std::string& text);

  const std::vector<Block>& blocks() const { return blocks_; }
  const RingPtr& ring() const { return ring_; }
  const RingPtr& mod2_ring() const { return mod2_ring_; }
  int dim() const { return dim_; }
  std::string str() const;

  CohomologyClass zero(int degree) const { return CohomologyClass(ring_, degree); }
  CohomologyClass top() const;
  CohomologyClass p1() const;
  CohomologyClass fundamental_dual(std::size_t block) const;
  // PD of the sub-product where the listed blocks are collapsed to a point.
  CohomologyClass poincare_dual(const std::vector<std::size_t>& point_blocks) const;
  CohomologyClass parse_class(int degree, const std::string& text) const;
  CohomologyClass reduce_mod2(const CohomologyClass& x) const;

 private:
  std::vector<Block> blocks_;
  RingPtr ring_;
  RingPtr mod2_ring_;
  int dim_ = 0;
};

Integer integrate(const CohomologyClass& x, const ManifoldModel& model);
// Mod 2 evaluation on the fundamental class.
Integer integrate_mod2(const CohomologyClass& x, const ManifoldModel& model);

struct BundleData {
  enum class Group { SU, U };
  Group group = Group::SU;
  int rank = 0;
  std::map<int, CohomologyClass> chern;  // nonzero classes only

  CohomologyClass c(int i, const ManifoldModel& model) const;
  std::string tag() const;  // "SU(4)"
  void validate(const ManifoldModel& model) const;
};

BundleData whitney_sum(const std::vector<BundleData>& bundles, const ManifoldModel& model);
BundleData trivial_bundle(int rank, BundleData::Group group = BundleData::Group::SU);

// The clutching bundle of the generator of π_{2i−1}(SU) on a 2i-dimensional model.
BundleData generator_bundle(int i, const ManifoldModel& base);

struct SuLoopInvariants {
  Integer a, b, c;
  friend bool operator==(const SuLoopInvariants&, const SuLoopInvariants&) = default;
};

SuLoopInvariants su_loop_invariants(const ManifoldModel& model, const BundleData& q);
// The loop-space invariant in degree dim(model) − 1: one value for 3 and 5, three for 7.
std::vector<Integer> bsu_loop_invariants(const ManifoldModel& model, const BundleData& q);

// Pulled-back classes keyed by their names: "b2", "b3", "b4" for SU; "d3" for K(Z,3).
using PulledClasses = std::map<std::string, CohomologyClass>;
std::vector<Integer> su_invariants_low(const ManifoldModel& model, const PulledClasses& classes);
std::vector<Integer> kz3_invariants(const ManifoldModel& model, const PulledClasses& classes);

Integer xi_index(int r, const Integer& i2, const Integer& i4, const Integer& ip);
Integer xi_from_abc(int r, const SuLoopInvariants& inv);
Integer floer_divisibility(int r);
Integer stabilized_divisibility(int r_prime);

// Divides exactly or throws IntegralityError naming the quantity.
Integer exact(const Rational& value, const std::string& what);

}  // namespace bordcalc
