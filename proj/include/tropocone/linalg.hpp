#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tropocone {

using Int = mpz_class;
using Rat = mpq_class;
using Vec = std::vector<Int>;

// Dense row-major matrix of arbitrary-precision integers.  A linear map
// N^a -> N^b is stored as a b x a matrix acting on column vectors.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n);
  static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
  static IntMatrix from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static IntMatrix from_cols(const std::vector<Vec>& cols, std::size_t rows);
  static IntMatrix diagonal(const Vec& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  std::vector<Vec> row_list() const;
  std::vector<Vec> col_list() const;
  void set_row(std::size_t i, const Vec& v);
  void set_col(std::size_t j, const Vec& v);

  IntMatrix transpose() const;
  IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
  IntMatrix select_cols(const std::vector<std::size_t>& idx) const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend Vec operator*(const IntMatrix& a, const Vec& v);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator<(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

// Block helpers.
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b);

// Vector helpers.
Int dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Int& c, const Vec& v);
bool is_zero(const Vec& v);
Vec concat(const Vec& a, const Vec& b);
Vec unit_vector(std::size_t n, std::size_t i);
std::string vec_to_string(const Vec& v);

// Divides by the gcd of the entries; the sign is preserved.
Vec primitive(const Vec& v);
// Content (gcd of entries, nonnegative); zero for the zero vector.
Int content(const Vec& v);

struct SmithForm {
  IntMatrix D;     // m x n diagonal, d_i | d_{i+1}, nonnegative
  IntMatrix U;     // m x m unimodular
  IntMatrix V;     // n x n unimodular
  IntMatrix Vinv;  // inverse of V
  std::size_t rank = 0;
  Vec diagonal() const;  // the first `rank` invariant factors
};

// U * M * V = D.
SmithForm smith_normal_form(const IntMatrix& M);

// Row-style Hermite normal form of the row lattice of M.  Zero rows are
// dropped, pivots are positive and entries above a pivot are reduced into
// [0, pivot).  Two matrices generate the same row lattice iff their HNFs agree.
IntMatrix hermite_normal_form(const IntMatrix& M);

std::size_t rank(const IntMatrix& M);
Int determinant(const IntMatrix& M);

// Exact solution of A x = b over the integers, if any.
std::optional<Vec> solve_integer(const IntMatrix& A, const Vec& b);
// Exact solution of A x = b over the rationals, if any (one particular solution).
std::optional<std::vector<Rat>> solve_rational(const IntMatrix& A, const Vec& b);

// Rows form a (saturated, HNF-canonical) basis of {x in Z^n : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& A);
// Rows form a basis of (Q-span of rows of M) ∩ Z^n, HNF-canonical.
IntMatrix saturation(const IntMatrix& M);
// Rows form a basis of {y in Z^n : y . r = 0 for all rows r of M}.
IntMatrix orthogonal_complement(const IntMatrix& M);

// A sublattice of Z^ambient_rank, given by a basis (rows).
struct Lattice {
  std::size_t ambient_rank = 0;
  IntMatrix basis;
  static Lattice standard(std::size_t n) { return {n, IntMatrix::identity(n)}; }
};

// |sup / sub| when finite, std::nullopt for "infinite" (rank drop).
// Throws NotSublattice when sub is not contained in sup.
std::optional<Int> lattice_index(const Lattice& sup, const Lattice& sub);

// Presentation of Z^n / <generators>, generators given as rows.
struct QuotientPresentation {
  std::size_t source_rank = 0;
  std::size_t free_rank = 0;
  Vec torsion_factors;          // each >= 2, each divides the next
  IntMatrix projection;         // free_rank x n
  IntMatrix torsion_projection; // torsion_factors.size() x n; row i read modulo torsion_factors[i]
  IntMatrix lift;               // n x free_rank with projection * lift = identity

  struct Element {
    Vec free;
    Vec torsion;  // reduced into [0, modulus)
    bool is_zero() const;
    friend bool operator==(const Element& a, const Element& b) {
      return a.free == b.free && a.torsion == b.torsion;
    }
  };
  Element reduce(const Vec& x) const;
  bool contains(const Vec& x) const { return reduce(x).is_zero(); }
};

QuotientPresentation quotient(std::size_t ambient_rank, const IntMatrix& generators);

// Integer division helpers (floor semantics for mod).
Int floor_div(const Int& a, const Int& b);
Int mod_floor(const Int& a, const Int& b);

}  // namespace tropocone
