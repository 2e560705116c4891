#include <gtest/gtest.h>

#include <random>

#include "tropocone/linalg.hpp"

using namespace tropocone;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Independent oracle: the k-th determinantal divisor is the gcd of all k x k minors.
Vec invariant_factors_by_minors(const IntMatrix& A) {
  Vec factors;
  Int prev = 1;
  for (std::size_t k = 1; k <= std::min(A.rows(), A.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(A.rows(), k, 0, cur, rs);
    subsets(A.cols(), k, 0, cur, cs);
    Int g = 0;
    for (auto& r : rs)
      for (auto& c : cs) {
        Int det = determinant(A.select_rows(r).select_cols(c));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
      }
    if (g == 0) break;
    factors.push_back(g / prev);
    prev = g;
  }
  return factors;
}

}  // namespace

TEST(LinalgProperties, SmithFormMatchesDeterminantalDivisors) {
  std::mt19937_64 rng(20261015);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix A = random_matrix(rng, r, c, -6, 6);
    auto s = smith_normal_form(A);
    ASSERT_EQ(s.U * A * s.V, s.D);
    ASSERT_EQ(abs(determinant(s.U)), 1);
    ASSERT_EQ(abs(determinant(s.V)), 1);
    ASSERT_EQ(s.V * s.Vinv, IntMatrix::identity(c));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) ASSERT_EQ(s.D(i, j), 0);
    Vec d = s.diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i) ASSERT_TRUE(mpz_divisible_p(d[i + 1].get_mpz_t(), d[i].get_mpz_t()));
    ASSERT_EQ(d, invariant_factors_by_minors(A)) << A.to_string();
  }
}

TEST(LinalgProperties, QuotientMembershipAgreesWithSolve) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 4, k = rng() % 4;
    IntMatrix G = random_matrix(rng, k, n, -4, 4);
    auto q = quotient(n, G);
    ASSERT_EQ(q.free_rank, n - rank(G));
    ASSERT_EQ(q.projection * q.lift, IntMatrix::identity(q.free_rank));
    for (int probe = 0; probe < 5; ++probe) {
      IntMatrix x = random_matrix(rng, n, 1, -5, 5);
      Vec v = x.col(0);
      bool member = solve_integer(G.transpose(), v).has_value();
      ASSERT_EQ(member, q.contains(v)) << G.to_string() << " " << vec_to_string(v);
    }
    for (std::size_t i = 0; i < G.rows(); ++i) ASSERT_TRUE(q.contains(G.row(i)));
  }
}

TEST(LinalgProperties, LatticeIndexIsProductOfInvariantFactors) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 3;
    IntMatrix B = random_matrix(rng, n, n, -5, 5);
    Int det = determinant(B);
    auto idx = lattice_index(Lattice::standard(n), Lattice{n, B});
    if (det == 0) {
      ASSERT_FALSE(idx.has_value());
    } else {
      ASSERT_TRUE(idx.has_value());
      ASSERT_EQ(*idx, abs(det));
    }
  }
}

TEST(LinalgProperties, KernelAndSolveAreExact) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 5;
    IntMatrix A = random_matrix(rng, r, c, -4, 4);
    IntMatrix K = integer_kernel(A);
    ASSERT_EQ(K.rows(), c - rank(A));
    ASSERT_TRUE((A * K.transpose()).is_zero());
    // Saturation: the kernel basis has full-rank gcd of maximal minors = 1.
    if (K.rows() > 0) ASSERT_EQ(invariant_factors_by_minors(K), Vec(K.rows(), Int(1)));
    IntMatrix x = random_matrix(rng, c, 1, -3, 3);
    Vec b = A * x.col(0);
    auto sol = solve_integer(A, b);
    ASSERT_TRUE(sol.has_value());
    ASSERT_EQ(A * *sol, b);
  }
}
