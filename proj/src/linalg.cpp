#include "tropocone/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "tropocone/error.hpp"

namespace tropocone {

// ---------------------------------------------------------------- IntMatrix

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<Vec>& rows, std::size_t cols) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::DimensionMismatch, "row length differs from column count");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::from_cols(const std::vector<Vec>& cols, std::size_t rows) {
  return from_rows(cols, rows).transpose();
}

IntMatrix IntMatrix::diagonal(const Vec& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Vec IntMatrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Vec IntMatrix::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<Vec> IntMatrix::row_list() const {
  std::vector<Vec> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

std::vector<Vec> IntMatrix::col_list() const {
  std::vector<Vec> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(col(j));
  return out;
}

void IntMatrix::set_row(std::size_t i, const Vec& v) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
}

void IntMatrix::set_col(std::size_t j, const Vec& v) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) m.set_row(i, row(idx[i]));
  return m;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Int& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
    }
  return c;
}

Vec operator*(const IntMatrix& a, const Vec& v) {
  if (a.cols_ != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  Vec out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix difference shape mismatch");
  IntMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

bool operator<(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
  if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
  return a.data_ < b.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ",";
    os << vec_to_string(row(i));
  }
  os << "]";
  return os.str();
}

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "hstack row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

IntMatrix vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "vstack column mismatch");
  IntMatrix m(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) m.set_row(i, a.row(i));
  for (std::size_t i = 0; i < b.rows(); ++i) m.set_row(a.rows() + i, b.row(i));
  return m;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

// ---------------------------------------------------------------- vectors

Int dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "dot product length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec add(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector sum length mismatch");
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

Vec sub(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector difference length mismatch");
  Vec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

Vec scale(const Int& c, const Vec& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

Vec concat(const Vec& a, const Vec& b) {
  Vec c = a;
  c.insert(c.end(), b.begin(), b.end());
  return c;
}

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

std::string vec_to_string(const Vec& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i].get_str();
  }
  os << "]";
  return os.str();
}

Int content(const Vec& v) {
  Int g = 0;
  for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

Vec primitive(const Vec& v) {
  Int g = content(v);
  if (g == 0) throw Error(ErrorCode::ZeroVector, "primitive() of the zero vector");
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod_floor(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r < 0) r += abs(b);
  return r;
}

// ---------------------------------------------------------------- Smith form

namespace {

// Elementary operations recorded on the transforms.
struct SmithState {
  IntMatrix D, U, V, Vinv;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < D.cols(); ++c) std::swap(D(i, c), D(j, c));
    for (std::size_t c = 0; c < U.cols(); ++c) std::swap(U(i, c), U(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < D.rows(); ++r) std::swap(D(r, i), D(r, j));
    for (std::size_t r = 0; r < V.rows(); ++r) std::swap(V(r, i), V(r, j));
    for (std::size_t c = 0; c < Vinv.cols(); ++c) std::swap(Vinv(i, c), Vinv(j, c));
  }
  // row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t c = 0; c < D.cols(); ++c) D(i, c) += q * D(j, c);
    for (std::size_t c = 0; c < U.cols(); ++c) U(i, c) += q * U(j, c);
  }
  // col_i += q * col_j
  void add_col(std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t r = 0; r < D.rows(); ++r) D(r, i) += q * D(r, j);
    for (std::size_t r = 0; r < V.rows(); ++r) V(r, i) += q * V(r, j);
    // V <- V E with E = I + q e_j e_i^T, so Vinv <- E^{-1} Vinv: row_j -= q row_i.
    for (std::size_t c = 0; c < Vinv.cols(); ++c) Vinv(j, c) -= q * Vinv(i, c);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < D.cols(); ++c) D(i, c) = -D(i, c);
    for (std::size_t c = 0; c < U.cols(); ++c) U(i, c) = -U(i, c);
  }
};

}  // namespace

Vec SmithForm::diagonal() const {
  Vec d(rank);
  for (std::size_t i = 0; i < rank; ++i) d[i] = D(i, i);
  return d;
}

SmithForm smith_normal_form(const IntMatrix& M) {
  const std::size_t m = M.rows(), n = M.cols();
  SmithState s{M, IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(n)};
  std::size_t t = 0;
  while (t < m && t < n) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    bool found = false;
    std::size_t pi = 0, pj = 0;
    Int best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (s.D(i, j) == 0) continue;
        Int a = abs(s.D(i, j));
        if (!found || a < best) {
          found = true;
          best = a;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    s.swap_rows(t, pi);
    s.swap_cols(t, pj);
    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (s.D(i, t) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), s.D(i, t).get_mpz_t(), s.D(t, t).get_mpz_t());
        s.add_row(i, t, -q);
        if (s.D(i, t) != 0) {
          s.swap_rows(t, i);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (s.D(t, j) == 0) continue;
        Int q;
        mpz_tdiv_q(q.get_mpz_t(), s.D(t, j).get_mpz_t(), s.D(t, t).get_mpz_t());
        s.add_col(j, t, -q);
        if (s.D(t, j) != 0) {
          s.swap_cols(t, j);
          changed = true;
        }
      }
      if (changed) continue;
      // Row and column of the pivot are clear; enforce divisibility.
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!mpz_divisible_p(s.D(i, j).get_mpz_t(), s.D(t, t).get_mpz_t())) {
            s.add_row(t, i, 1);
            fixed = true;
            break;
          }
        }
      if (!fixed) break;
    }
    if (s.D(t, t) < 0) s.negate_row(t);
    ++t;
  }
  SmithForm out{std::move(s.D), std::move(s.U), std::move(s.V), std::move(s.Vinv), t};
  return out;
}

// ---------------------------------------------------------------- Hermite form

IntMatrix hermite_normal_form(const IntMatrix& M) {
  IntMatrix A = M;
  const std::size_t m = A.rows(), n = A.cols();
  std::size_t r = 0;
  auto add_row = [&](std::size_t i, std::size_t j, const Int& q) {
    for (std::size_t c = 0; c < n; ++c) A(i, c) += q * A(j, c);
  };
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < n; ++c) std::swap(A(i, c), A(j, c));
  };
  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (A(i, c) != 0 && (best == m || abs(A(i, c)) < abs(A(best, c)))) best = i;
      if (best == m) break;
      swap_rows(r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (A(i, c) == 0) continue;
        Int q = floor_div(A(i, c), A(r, c));
        add_row(i, r, -q);
        if (A(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (r < m && A(r, c) != 0) {
      if (A(r, c) < 0)
        for (std::size_t k = 0; k < n; ++k) A(r, k) = -A(r, k);
      for (std::size_t i = 0; i < r; ++i) {
        Int q = floor_div(A(i, c), A(r, c));
        if (q != 0) add_row(i, r, -q);
      }
      ++r;
    }
  }
  IntMatrix out(r, n);
  for (std::size_t i = 0; i < r; ++i) out.set_row(i, A.row(i));
  return out;
}

std::size_t rank(const IntMatrix& M) { return hermite_normal_form(M).rows(); }

Int determinant(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw Error(ErrorCode::DimensionMismatch, "determinant of a non-square matrix");
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  // Fraction-free Bareiss elimination.
  IntMatrix A = M;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && A(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(A(k, c), A(p, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        A(i, j) = A(i, j) * A(k, k) - A(i, k) * A(k, j);
        mpz_divexact(A(i, j).get_mpz_t(), A(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

// ---------------------------------------------------------------- solving

std::optional<Vec> solve_integer(const IntMatrix& A, const Vec& b) {
  if (A.rows() != b.size()) throw Error(ErrorCode::DimensionMismatch, "solve_integer: rhs length mismatch");
  SmithForm s = smith_normal_form(A);
  Vec ub = s.U * b;
  Vec y(A.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < s.rank) {
      if (!mpz_divisible_p(ub[i].get_mpz_t(), s.D(i, i).get_mpz_t())) return std::nullopt;
      y[i] = ub[i] / s.D(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * y;
}

std::optional<std::vector<Rat>> solve_rational(const IntMatrix& A, const Vec& b) {
  if (A.rows() != b.size()) throw Error(ErrorCode::DimensionMismatch, "solve_rational: rhs length mismatch");
  SmithForm s = smith_normal_form(A);
  Vec ub = s.U * b;
  std::vector<Rat> y(A.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < s.rank) {
      y[i] = Rat(ub[i], s.D(i, i));
      y[i].canonicalize();
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Rat> x(A.cols());
  for (std::size_t i = 0; i < A.cols(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) x[i] += Rat(s.V(i, j)) * y[j];
  return x;
}

IntMatrix integer_kernel(const IntMatrix& A) {
  SmithForm s = smith_normal_form(A);
  const std::size_t n = A.cols();
  IntMatrix K(n - s.rank, n);
  for (std::size_t i = s.rank; i < n; ++i) K.set_row(i - s.rank, s.V.col(i));
  return hermite_normal_form(K);
}

IntMatrix orthogonal_complement(const IntMatrix& M) { return integer_kernel(M); }

IntMatrix saturation(const IntMatrix& M) {
  if (M.rows() == 0) return IntMatrix(0, M.cols());
  return integer_kernel(integer_kernel(M));
}

// ---------------------------------------------------------------- lattices

std::optional<Int> lattice_index(const Lattice& sup, const Lattice& sub) {
  if (sup.ambient_rank != sub.ambient_rank) throw Error(ErrorCode::DimensionMismatch, "lattices in different ambient spaces");
  const IntMatrix supT = sup.basis.transpose();
  IntMatrix coords(sub.basis.rows(), sup.basis.rows());
  for (std::size_t i = 0; i < sub.basis.rows(); ++i) {
    auto x = solve_integer(supT, sub.basis.row(i));
    if (!x) throw Error(ErrorCode::NotSublattice, "sub basis vector " + vec_to_string(sub.basis.row(i)) + " is not in sup");
    coords.set_row(i, *x);
  }
  SmithForm s = smith_normal_form(coords);
  if (s.rank < rank(sup.basis)) return std::nullopt;
  Int idx = 1;
  for (std::size_t i = 0; i < s.rank; ++i) idx *= s.D(i, i);
  return idx;
}

bool QuotientPresentation::Element::is_zero() const {
  return tropocone::is_zero(free) && tropocone::is_zero(torsion);
}

QuotientPresentation::Element QuotientPresentation::reduce(const Vec& x) const {
  Element e;
  e.free = projection * x;
  e.torsion = torsion_projection * x;
  for (std::size_t i = 0; i < e.torsion.size(); ++i) e.torsion[i] = mod_floor(e.torsion[i], torsion_factors[i]);
  return e;
}

QuotientPresentation quotient(std::size_t ambient_rank, const IntMatrix& generators) {
  if (generators.cols() != ambient_rank && generators.rows() != 0)
    throw Error(ErrorCode::DimensionMismatch, "generators do not live in the ambient lattice");
  IntMatrix G = generators.rows() == 0 ? IntMatrix(0, ambient_rank) : generators;
  // Subgroup = row space of G.  With U G V = D, x lies in it iff y = x V has
  // d_i | y_i for i < rank and y_i = 0 beyond.
  SmithForm s = smith_normal_form(G);
  QuotientPresentation q;
  q.source_rank = ambient_rank;
  q.free_rank = ambient_rank - s.rank;
  q.projection = IntMatrix(q.free_rank, ambient_rank);
  q.lift = IntMatrix(ambient_rank, q.free_rank);
  for (std::size_t j = 0; j < q.free_rank; ++j) {
    q.projection.set_row(j, s.V.col(s.rank + j));
    q.lift.set_col(j, s.Vinv.row(s.rank + j));
  }
  std::vector<Vec> trows;
  for (std::size_t i = 0; i < s.rank; ++i) {
    if (s.D(i, i) >= 2) {
      q.torsion_factors.push_back(s.D(i, i));
      trows.push_back(s.V.col(i));
    }
  }
  q.torsion_projection = IntMatrix::from_rows(trows, ambient_rank);
  return q;
}

}  // namespace tropocone
