#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bordcalc/abelian.hpp"

namespace bordcalc::lattice {

// Columns form a basis of {x : m·x = 0}.
IntMatrix kernel_basis(const IntMatrix& m);

// Columns form a basis of the lattice spanned by the columns of gens (rows = ambient dimension).
IntMatrix span_basis(const IntMatrix& gens);

// Integer coordinates c with basis·c = v, if they exist. The basis must have independent columns.
std::optional<std::vector<Integer>> solve(const IntMatrix& basis, const std::vector<Integer>& v);

// Coordinates of every column of gens; throws InputError if some column lies outside the lattice.
IntMatrix express(const IntMatrix& basis, const IntMatrix& gens);

// Vectors x with m·x ≡ 0 modulo the given target orders (0 meaning no relation).
IntMatrix kernel_modulo(const IntMatrix& m, const std::vector<Integer>& target_orders);

IntMatrix diagonal(const std::vector<Integer>& d);

// A subquotient Z/B of a direct sum of cyclic groups, kept in ambient coordinates.
// The ambient relations are always part of B, and B is always contained in Z.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(std::vector<Integer> ambient_orders, const IntMatrix& cycles, const IntMatrix& boundaries);

  static Subquotient whole(std::vector<Integer> ambient_orders);

  std::size_t ambient_dim() const { return ambient_.size(); }
  const std::vector<Integer>& ambient_orders() const { return ambient_; }

  // Orders of the presentation generators (0 = infinite order), after dropping units.
  const std::vector<Integer>& orders() const { return orders_; }
  // One column per generator, in ambient coordinates.
  const IntMatrix& generators() const { return generators_; }
  FGAbelianGroup group() const { return FGAbelianGroup::from_cyclic(orders_); }
  bool is_zero() const { return orders_.empty(); }

  const IntMatrix& cycle_basis() const { return cycles_; }
  const IntMatrix& boundary_basis() const { return boundaries_; }

  bool is_cycle(const std::vector<Integer>& v) const;
  // Coordinates on the generators, reduced modulo their orders; nullopt when v is not a cycle.
  std::optional<std::vector<Integer>> coordinates(const std::vector<Integer>& v) const;

 private:
  std::vector<Integer> ambient_;
  IntMatrix cycles_;
  IntMatrix boundaries_;
  IntMatrix coord_map_;  // rows of U for the kept generators
  std::vector<Integer> orders_;
  IntMatrix generators_;
};

}  // namespace bordcalc::lattice
