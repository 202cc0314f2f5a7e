#include "bordcalc/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <utility>

#include "bordcalc/errors.hpp"
#include "bordcalc/lattice.hpp"

namespace bordcalc {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw InputError("matrix entry count " + std::to_string(entries_.size()) + " does not match " +
                     std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Integer> e;
  e.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw InputError("ragged matrix literal");
    for (long x : row) e.emplace_back(x);
  }
  return IntMatrix(r, c, std::move(e));
}

IntMatrix IntMatrix::from_columns(const std::vector<std::vector<Integer>>& columns, std::size_t rows) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw InputError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

std::vector<Integer> IntMatrix::column(std::size_t j) const {
  std::vector<Integer> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<Integer> IntMatrix::row(std::size_t i) const {
  return std::vector<Integer>(entries_.begin() + static_cast<long>(i * cols_),
                              entries_.begin() + static_cast<long>((i + 1) * cols_));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return x == 0; });
}

IntMatrix IntMatrix::hstack(const IntMatrix& right) const {
  if (right.rows_ != rows_) throw InputError("hstack row mismatch");
  IntMatrix m(rows_, cols_ + right.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < right.cols_; ++j) m(i, cols_ + j) = right(i, j);
  }
  return m;
}

IntMatrix IntMatrix::select_columns(std::size_t begin, std::size_t end) const {
  IntMatrix m(rows_, end - begin);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = begin; j < end; ++j) m(i, j - begin) = (*this)(i, j);
  return m;
}

IntMatrix IntMatrix::select_rows(std::size_t begin, std::size_t end) const {
  IntMatrix m(end - begin, cols_);
  for (std::size_t i = begin; i < end; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i - begin, j) = (*this)(i, j);
  return m;
}

std::string IntMatrix::str() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) out << "; ";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out << " ";
      out << (*this)(i, j).get_str();
    }
  }
  out << "]";
  return out.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix product shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

std::vector<Integer> operator*(const IntMatrix& a, const std::vector<Integer>& v) {
  if (a.cols_ != v.size()) throw InputError("matrix-vector shape mismatch");
  std::vector<Integer> out(a.rows_, Integer(0));
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
  return out;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
}

namespace {

class SmithWorker {
 public:
  explicit SmithWorker(const IntMatrix& m)
      : d_(m), u_(IntMatrix::identity(m.rows())), v_(IntMatrix::identity(m.cols())),
        ui_(IntMatrix::identity(m.rows())), vi_(IntMatrix::identity(m.cols())) {}

  void run() {
    const std::size_t steps = std::min(d_.rows(), d_.cols());
    for (std::size_t t = 0; t < steps; ++t) {
      if (!reduce_at(t)) break;
    }
  }

  SmithFormWithInverses result() && {
    return {std::move(u_), std::move(d_), std::move(v_), std::move(ui_), std::move(vi_)};
  }

 private:
  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    Integer best;
    for (std::size_t i = t; i < d_.rows(); ++i)
      for (std::size_t j = t; j < d_.cols(); ++j) {
        const Integer& x = d_(i, j);
        if (x == 0) continue;
        Integer a = abs(x);
        if (!found || a < best) {
          found = true;
          best = a;
          pi = i;
          pj = j;
        }
      }
    return found;
  }

  // Returns false when the remaining block is zero.
  bool reduce_at(std::size_t t) {
    for (;;) {
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(t, pi, pj)) return false;
      swap_rows(t, pi);
      swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < d_.rows(); ++i) {
        if (d_(i, t) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d_(i, t).get_mpz_t(), d_(t, t).get_mpz_t());
        add_row(i, t, -q);
        if (d_(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < d_.cols(); ++j) {
        if (d_(t, j) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), d_(t, j).get_mpz_t(), d_(t, t).get_mpz_t());
        add_col(j, t, -q);
        if (d_(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < d_.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < d_.cols(); ++j) {
          if (!mpz_divisible_p(d_(i, j).get_mpz_t(), d_(t, t).get_mpz_t())) {
            add_row(t, i, Integer(1));
            divides = false;
            break;
          }
        }
      if (!divides) continue;

      if (d_(t, t) < 0) negate_row(t);
      return true;
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < d_.cols(); ++j) std::swap(d_(a, j), d_(b, j));
    for (std::size_t j = 0; j < u_.cols(); ++j) std::swap(u_(a, j), u_(b, j));
    for (std::size_t i = 0; i < ui_.rows(); ++i) std::swap(ui_(i, a), ui_(i, b));
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < d_.rows(); ++i) std::swap(d_(i, a), d_(i, b));
    for (std::size_t i = 0; i < v_.rows(); ++i) std::swap(v_(i, a), v_(i, b));
    for (std::size_t j = 0; j < vi_.cols(); ++j) std::swap(vi_(a, j), vi_(b, j));
  }

  // row_dst += c · row_src
  void add_row(std::size_t dst, std::size_t src, const Integer& c) {
    for (std::size_t j = 0; j < d_.cols(); ++j) d_(dst, j) += c * d_(src, j);
    for (std::size_t j = 0; j < u_.cols(); ++j) u_(dst, j) += c * u_(src, j);
    for (std::size_t i = 0; i < ui_.rows(); ++i) ui_(i, src) -= c * ui_(i, dst);
  }

  // col_dst += c · col_src
  void add_col(std::size_t dst, std::size_t src, const Integer& c) {
    for (std::size_t i = 0; i < d_.rows(); ++i) d_(i, dst) += c * d_(i, src);
    for (std::size_t i = 0; i < v_.rows(); ++i) v_(i, dst) += c * v_(i, src);
    for (std::size_t j = 0; j < vi_.cols(); ++j) vi_(src, j) -= c * vi_(dst, j);
  }

  void negate_row(std::size_t t) {
    for (std::size_t j = 0; j < d_.cols(); ++j) d_(t, j) = -d_(t, j);
    for (std::size_t j = 0; j < u_.cols(); ++j) u_(t, j) = -u_(t, j);
    for (std::size_t i = 0; i < ui_.rows(); ++i) ui_(i, t) = -ui_(i, t);
  }

  IntMatrix d_, u_, v_, ui_, vi_;
};

}  // namespace

SmithFormWithInverses smith_normal_form_full(const IntMatrix& m) {
  SmithWorker w(m);
  w.run();
  return std::move(w).result();
}

SmithForm smith_normal_form(const IntMatrix& m) {
  auto full = smith_normal_form_full(m);
  return {std::move(full.U), std::move(full.D), std::move(full.V)};
}

Integer reduce_mod(const Integer& x, const Integer& n) {
  if (n == 0) return x;
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), n.get_mpz_t());
  return r;
}

FGAbelianGroup::FGAbelianGroup(unsigned free_rank, std::vector<Integer> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
  for (std::size_t i = 0; i < torsion_.size(); ++i) {
    if (torsion_[i] < 2) throw InputError("invariant factor " + torsion_[i].get_str() + " is below 2");
    if (i > 0 && !mpz_divisible_p(torsion_[i].get_mpz_t(), torsion_[i - 1].get_mpz_t()))
      throw InputError("invariant factors do not form a divisibility chain");
  }
}

FGAbelianGroup FGAbelianGroup::from_cyclic(const std::vector<Integer>& orders) {
  unsigned rank = 0;
  std::vector<Integer> finite;
  for (const Integer& n : orders) {
    if (n == 0) {
      ++rank;
    } else if (abs(n) != 1) {
      finite.push_back(abs(n));
    }
  }
  if (finite.empty()) return FGAbelianGroup(rank, {});
  auto snf = smith_normal_form(lattice::diagonal(finite));
  std::vector<Integer> inv;
  for (std::size_t i = 0; i < finite.size(); ++i)
    if (snf.D(i, i) > 1) inv.push_back(snf.D(i, i));
  return FGAbelianGroup(rank, std::move(inv));
}

FGAbelianGroup FGAbelianGroup::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw InputError("empty group expression");
  if (s == "0") return FGAbelianGroup();

  std::vector<Integer> orders;
  std::size_t pos = 0;
  auto read_int = [&](const char* what) {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw InputError("expected " + std::string(what) + " in group '" + text + "'");
    return Integer(s.substr(start, pos - start));
  };
  while (pos < s.size()) {
    if (s[pos] != 'Z') throw InputError("expected 'Z' in group '" + text + "'");
    ++pos;
    Integer order = 0;
    if (pos < s.size() && s[pos] == '/') {
      ++pos;
      order = read_int("modulus");
    } else if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      order = read_int("modulus");  // Z2 shorthand
    }
    long mult = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      mult = read_int("exponent").get_si();
    }
    for (long k = 0; k < mult; ++k) orders.push_back(order);
    if (pos < s.size()) {
      if (s[pos] != '+') throw InputError("expected '+' in group '" + text + "'");
      ++pos;
      if (pos == s.size()) throw InputError("dangling '+' in group '" + text + "'");
    }
  }
  return from_cyclic(orders);
}

Integer FGAbelianGroup::order() const {
  if (free_rank_ != 0) throw InputError("order of an infinite group requested");
  return torsion_order();
}

Integer FGAbelianGroup::torsion_order() const {
  Integer o = 1;
  for (const auto& d : torsion_) o *= d;
  return o;
}

std::vector<Integer> FGAbelianGroup::generator_orders() const {
  std::vector<Integer> out(free_rank_, Integer(0));
  out.insert(out.end(), torsion_.begin(), torsion_.end());
  return out;
}

FGAbelianGroup FGAbelianGroup::direct_sum(const FGAbelianGroup& other) const {
  auto a = generator_orders();
  auto b = other.generator_orders();
  a.insert(a.end(), b.begin(), b.end());
  return from_cyclic(a);
}

std::string FGAbelianGroup::str() const {
  if (is_zero()) return "0";
  std::vector<std::string> parts;
  if (free_rank_ == 1) parts.emplace_back("Z");
  if (free_rank_ > 1) parts.push_back("Z^" + std::to_string(free_rank_));
  for (const auto& d : torsion_) parts.push_back("Z/" + d.get_str());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " + ";
    out += parts[i];
  }
  return out;
}

GroupMorphism::GroupMorphism(std::vector<Integer> source_orders, std::vector<Integer> target_orders,
                             IntMatrix matrix)
    : source_(std::move(source_orders)), target_(std::move(target_orders)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.size() || matrix_.cols() != source_.size()) {
    throw InputError("morphism matrix is " + std::to_string(matrix_.rows()) + "x" +
                     std::to_string(matrix_.cols()) + " but generator counts are " +
                     std::to_string(target_.size()) + " (target) and " + std::to_string(source_.size()) +
                     " (source)");
  }
  for (std::size_t j = 0; j < source_.size(); ++j) {
    for (std::size_t i = 0; i < target_.size(); ++i) {
      Integer& a = matrix_(i, j);
      a = reduce_mod(a, target_[i]);
      if (source_[j] == 0 || a == 0) continue;
      Integer image = source_[j] * a;
      bool ok = target_[i] == 0 ? image == 0 : mpz_divisible_p(image.get_mpz_t(), target_[i].get_mpz_t()) != 0;
      if (!ok) {
        throw InputError("morphism sends a generator of order " + source_[j].get_str() +
                         " to an element whose order does not divide it");
      }
    }
  }
}

GroupMorphism::GroupMorphism(const FGAbelianGroup& source, const FGAbelianGroup& target, IntMatrix matrix)
    : GroupMorphism(source.generator_orders(), target.generator_orders(), std::move(matrix)) {}

GroupMorphism GroupMorphism::zero(std::vector<Integer> source_orders, std::vector<Integer> target_orders) {
  IntMatrix m(target_orders.size(), source_orders.size());
  return GroupMorphism(std::move(source_orders), std::move(target_orders), std::move(m));
}

std::vector<Integer> GroupMorphism::apply(const std::vector<Integer>& x) const {
  auto y = matrix_ * x;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = reduce_mod(y[i], target_[i]);
  return y;
}

bool GroupMorphism::is_zero() const { return matrix_.is_zero(); }

FGAbelianGroup GroupMorphism::kernel() const {
  IntMatrix k = lattice::kernel_modulo(matrix_, target_);
  // Source relations lie in k because torsion is respected.
  IntMatrix rel = lattice::express(k, lattice::diagonal(source_));
  return bordcalc::cokernel(rel);
}

bool GroupMorphism::is_injective() const { return kernel().is_zero(); }

FGAbelianGroup GroupMorphism::image() const {
  IntMatrix rel = lattice::diagonal(target_);
  IntMatrix span = lattice::span_basis(matrix_.hstack(rel));
  return bordcalc::cokernel(lattice::express(span, rel));
}

FGAbelianGroup GroupMorphism::cokernel() const {
  return bordcalc::cokernel(matrix_.hstack(lattice::diagonal(target_)));
}

GroupMorphism GroupMorphism::compose_after(const GroupMorphism& first) const {
  if (first.target_ != source_) throw InputError("composition of morphisms with mismatched groups");
  return GroupMorphism(first.source_, target_, matrix_ * first.matrix_);
}

bool operator==(const GroupMorphism& a, const GroupMorphism& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.matrix_ == b.matrix_;
}

FGAbelianGroup cokernel(const IntMatrix& m) {
  auto snf = smith_normal_form(m);
  std::vector<Integer> orders;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    orders.push_back(i < m.cols() ? snf.D(i, i) : Integer(0));
  }
  return FGAbelianGroup::from_cyclic(orders);
}

namespace {

Integer gcd_of(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace

DerivedGroups tensor_tor_hom_ext(const FGAbelianGroup& g, const Coefficient& a) {
  const Integer& m = a.modulus;
  std::vector<Integer> tensor, tor, hom, ext;
  for (const Integer& d : g.generator_orders()) {
    if (d == 0) {
      tensor.push_back(m);
      hom.push_back(m);
    } else if (m == 0) {
      tensor.push_back(d);
      ext.push_back(d);
    } else {
      Integer c = gcd_of(d, m);
      tensor.push_back(c);
      tor.push_back(c);
      hom.push_back(c);
      ext.push_back(c);
    }
  }
  return {FGAbelianGroup::from_cyclic(tensor), FGAbelianGroup::from_cyclic(tor),
          FGAbelianGroup::from_cyclic(hom), FGAbelianGroup::from_cyclic(ext)};
}

namespace {

const FGAbelianGroup& degree_or_throw(const GradedGroups& h, int n) {
  auto it = h.find(n);
  if (it == h.end()) throw InputError("homology in degree " + std::to_string(n) + " is not available");
  return it->second;
}

FGAbelianGroup lower_degree(const GradedGroups& h, int n) {
  if (n < 0) return FGAbelianGroup();
  return degree_or_throw(h, n);
}

}  // namespace

FGAbelianGroup uct_cohomology(const GradedGroups& h, int n, const Coefficient& a) {
  auto top = tensor_tor_hom_ext(degree_or_throw(h, n), a);
  auto below = tensor_tor_hom_ext(lower_degree(h, n - 1), a);
  return top.hom.direct_sum(below.ext);
}

FGAbelianGroup uct_homology(const GradedGroups& h, int n, const Coefficient& a) {
  auto top = tensor_tor_hom_ext(degree_or_throw(h, n), a);
  auto below = tensor_tor_hom_ext(lower_degree(h, n - 1), a);
  return top.tensor.direct_sum(below.tor);
}

}  // namespace bordcalc
