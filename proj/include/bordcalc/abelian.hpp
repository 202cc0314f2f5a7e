#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace bordcalc {

using Integer = mpz_class;
using Rational = mpq_class;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_columns(const std::vector<std::vector<Integer>>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Integer>& entries() const { return entries_; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::vector<Integer> column(std::size_t j) const;
  std::vector<Integer> row(std::size_t i) const;
  IntMatrix transpose() const;
  bool is_zero() const;
  IntMatrix hstack(const IntMatrix& right) const;
  IntMatrix select_columns(std::size_t begin, std::size_t end) const;
  IntMatrix select_rows(std::size_t begin, std::size_t end) const;

  std::string str() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend std::vector<Integer> operator*(const IntMatrix& a, const std::vector<Integer>& v);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
};

// Same decomposition, additionally carrying U⁻¹ and V⁻¹ (tracked through the elimination).
struct SmithFormWithInverses {
  IntMatrix U, D, V;
  IntMatrix U_inv, V_inv;
};

SmithForm smith_normal_form(const IntMatrix& m);
SmithFormWithInverses smith_normal_form_full(const IntMatrix& m);

// Canonical residue in [0, n) for n > 0; the value itself when n == 0.
Integer reduce_mod(const Integer& x, const Integer& n);

class FGAbelianGroup {
 public:
  FGAbelianGroup() = default;
  FGAbelianGroup(unsigned free_rank, std::vector<Integer> torsion);

  // Orders 0 mean Z, 1 is dropped, anything else is normalized through SNF.
  static FGAbelianGroup from_cyclic(const std::vector<Integer>& orders);
  static FGAbelianGroup free(unsigned rank) { return FGAbelianGroup(rank, {}); }
  static FGAbelianGroup cyclic(const Integer& m) { return from_cyclic({m}); }
  static FGAbelianGroup parse(const std::string& text);

  unsigned free_rank() const { return free_rank_; }
  const std::vector<Integer>& torsion() const { return torsion_; }
  bool is_zero() const { return free_rank_ == 0 && torsion_.empty(); }
  bool is_finite() const { return free_rank_ == 0; }
  bool is_torsion_free() const { return torsion_.empty(); }
  Integer order() const;  // finite groups only
  Integer torsion_order() const;

  // Free generators first (order 0), then the invariant factors in order.
  std::vector<Integer> generator_orders() const;

  FGAbelianGroup direct_sum(const FGAbelianGroup& other) const;
  std::string str() const;

  friend bool operator==(const FGAbelianGroup& a, const FGAbelianGroup& b) = default;

 private:
  unsigned free_rank_ = 0;
  std::vector<Integer> torsion_;
};

// A homomorphism between direct sums of cyclic groups given by their generator orders.
// The matrix has one column per source generator; entries are stored reduced.
class GroupMorphism {
 public:
  GroupMorphism(std::vector<Integer> source_orders, std::vector<Integer> target_orders, IntMatrix matrix);
  GroupMorphism(const FGAbelianGroup& source, const FGAbelianGroup& target, IntMatrix matrix);

  static GroupMorphism zero(std::vector<Integer> source_orders, std::vector<Integer> target_orders);

  const std::vector<Integer>& source_orders() const { return source_; }
  const std::vector<Integer>& target_orders() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }
  FGAbelianGroup source() const { return FGAbelianGroup::from_cyclic(source_); }
  FGAbelianGroup target() const { return FGAbelianGroup::from_cyclic(target_); }

  std::vector<Integer> apply(const std::vector<Integer>& x) const;
  bool is_zero() const;
  bool is_injective() const;
  FGAbelianGroup kernel() const;
  FGAbelianGroup image() const;
  FGAbelianGroup cokernel() const;
  GroupMorphism compose_after(const GroupMorphism& first) const;  // this ∘ first

  friend bool operator==(const GroupMorphism& a, const GroupMorphism& b);

 private:
  std::vector<Integer> source_;
  std::vector<Integer> target_;
  IntMatrix matrix_;
};

FGAbelianGroup cokernel(const IntMatrix& m);

// A coefficient group: Z when modulus == 0, Z/modulus otherwise.
struct Coefficient {
  Integer modulus = 0;
  static Coefficient integers() { return {0}; }
  static Coefficient mod(long m) { return {Integer(m)}; }
  bool is_integers() const { return modulus == 0; }
};

struct DerivedGroups {
  FGAbelianGroup tensor;
  FGAbelianGroup tor;
  FGAbelianGroup hom;
  FGAbelianGroup ext;
};

DerivedGroups tensor_tor_hom_ext(const FGAbelianGroup& g, const Coefficient& a);

using GradedGroups = std::map<int, FGAbelianGroup>;

// Hⁿ(−;A) = Hom(H_n, A) ⊕ Ext(H_{n−1}, A).
FGAbelianGroup uct_cohomology(const GradedGroups& h, int n, const Coefficient& a);
// H_n(−;A) = H_n ⊗ A ⊕ Tor(H_{n−1}, A).
FGAbelianGroup uct_homology(const GradedGroups& h, int n, const Coefficient& a);

}  // namespace bordcalc
