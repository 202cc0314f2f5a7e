#include "bordcalc/lattice.hpp"

#include <utility>

#include "bordcalc/errors.hpp"

namespace bordcalc::lattice {

IntMatrix diagonal(const std::vector<Integer>& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

namespace {

std::size_t diagonal_rank(const IntMatrix& d) {
  std::size_t r = 0;
  while (r < d.rows() && r < d.cols() && d(r, r) != 0) ++r;
  return r;
}

}  // namespace

IntMatrix kernel_basis(const IntMatrix& m) {
  auto snf = smith_normal_form(m);
  std::size_t r = diagonal_rank(snf.D);
  return snf.V.select_columns(r, m.cols());
}

IntMatrix span_basis(const IntMatrix& gens) {
  if (gens.cols() == 0) return IntMatrix(gens.rows(), 0);
  auto snf = smith_normal_form_full(gens);
  std::size_t r = diagonal_rank(snf.D);
  IntMatrix basis(gens.rows(), r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < gens.rows(); ++i) basis(i, j) = snf.D(j, j) * snf.U_inv(i, j);
  return basis;
}

std::optional<std::vector<Integer>> solve(const IntMatrix& basis, const std::vector<Integer>& v) {
  if (v.size() != basis.rows()) throw InputError("vector length does not match lattice dimension");
  if (basis.cols() == 0) {
    for (const auto& x : v)
      if (x != 0) return std::nullopt;
    return std::vector<Integer>{};
  }
  auto snf = smith_normal_form(basis);
  std::size_t r = diagonal_rank(snf.D);
  if (r != basis.cols()) throw InputError("lattice basis has dependent columns");
  auto w = snf.U * v;
  std::vector<Integer> z(r);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i < r) {
      if (!mpz_divisible_p(w[i].get_mpz_t(), snf.D(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(z[i].get_mpz_t(), w[i].get_mpz_t(), snf.D(i, i).get_mpz_t());
    } else if (w[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V * z;
}

IntMatrix express(const IntMatrix& basis, const IntMatrix& gens) {
  IntMatrix out(basis.cols(), gens.cols());
  for (std::size_t j = 0; j < gens.cols(); ++j) {
    auto c = solve(basis, gens.column(j));
    if (!c) throw InputError("vector " + IntMatrix(gens.rows(), 1, gens.column(j)).str() + " lies outside the lattice");
    for (std::size_t i = 0; i < c->size(); ++i) out(i, j) = (*c)[i];
  }
  return out;
}

IntMatrix kernel_modulo(const IntMatrix& m, const std::vector<Integer>& target_orders) {
  if (target_orders.size() != m.rows()) throw InputError("target order count does not match matrix rows");
  std::vector<std::size_t> torsion_rows;
  for (std::size_t i = 0; i < target_orders.size(); ++i)
    if (target_orders[i] != 0) torsion_rows.push_back(i);
  IntMatrix rel(m.rows(), torsion_rows.size());
  for (std::size_t k = 0; k < torsion_rows.size(); ++k) rel(torsion_rows[k], k) = -target_orders[torsion_rows[k]];
  IntMatrix k = kernel_basis(m.hstack(rel));
  return span_basis(k.select_rows(0, m.cols()));
}

Subquotient Subquotient::whole(std::vector<Integer> ambient_orders) {
  std::size_t n = ambient_orders.size();
  return Subquotient(std::move(ambient_orders), IntMatrix::identity(n), IntMatrix(n, 0));
}

Subquotient::Subquotient(std::vector<Integer> ambient_orders, const IntMatrix& cycles, const IntMatrix& boundaries)
    : ambient_(std::move(ambient_orders)) {
  const std::size_t n = ambient_.size();
  if (cycles.rows() != n || boundaries.rows() != n) throw InputError("subquotient generators have the wrong length");

  IntMatrix b_gens = boundaries.hstack(diagonal(ambient_));
  boundaries_ = span_basis(b_gens);
  cycles_ = span_basis(cycles.hstack(b_gens));

  IntMatrix rel = express(cycles_, boundaries_);
  auto snf = smith_normal_form_full(rel);
  const std::size_t k = cycles_.cols();
  std::size_t r = 0;
  while (r < rel.rows() && r < rel.cols() && snf.D(r, r) != 0) ++r;

  IntMatrix gens_all = cycles_ * snf.U_inv;
  std::vector<std::vector<Integer>> gen_cols;
  std::vector<std::vector<Integer>> coord_rows;
  for (std::size_t j = 0; j < k; ++j) {
    Integer d = j < r ? snf.D(j, j) : Integer(0);
    if (d == 1) continue;
    auto g = gens_all.column(j);
    for (std::size_t i = 0; i < n; ++i) g[i] = reduce_mod(g[i], ambient_[i]);
    auto row = snf.U.row(j);
    for (const auto& x : g) {
      if (x == 0) continue;
      if (x < 0) {
        for (auto& y : g) y = -y;
        for (auto& y : row) y = -y;
        for (std::size_t i = 0; i < n; ++i) g[i] = reduce_mod(g[i], ambient_[i]);
      }
      break;
    }
    orders_.push_back(d);
    gen_cols.push_back(std::move(g));
    coord_rows.push_back(std::move(row));
  }
  generators_ = IntMatrix::from_columns(gen_cols, n);
  coord_map_ = IntMatrix(coord_rows.size(), k);
  for (std::size_t i = 0; i < coord_rows.size(); ++i)
    for (std::size_t j = 0; j < k; ++j) coord_map_(i, j) = coord_rows[i][j];
}

bool Subquotient::is_cycle(const std::vector<Integer>& v) const { return solve(cycles_, v).has_value(); }

std::optional<std::vector<Integer>> Subquotient::coordinates(const std::vector<Integer>& v) const {
  auto c = solve(cycles_, v);
  if (!c) return std::nullopt;
  auto x = coord_map_ * *c;
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = reduce_mod(x[i], orders_[i]);
  return x;
}

}  // namespace bordcalc::lattice
