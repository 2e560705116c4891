#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tropocone/complex.hpp"
#include "tropocone/linalg.hpp"

namespace tropocone {

// Integer function on the k-dimensional cones (= isomorphism classes of the
// skeletonized complex).  Cones absent from `values` carry weight 0.
struct Weight {
  std::size_t dim = 0;
  std::map<std::size_t, Int> values;

  Int at(std::size_t cone) const {
    auto it = values.find(cone);
    return it == values.end() ? Int(0) : it->second;
  }
  // Drops zero entries so that equal weights compare equal.
  Weight normalized() const;
  friend bool operator==(const Weight& a, const Weight& b) {
    Weight x = a.normalized(), y = b.normalized();
    return x.dim == y.dim && x.values == y.values;
  }
};

Weight constant_weight(const PoicComplex& phi, std::size_t k, const Int& c);
Weight scale(const Int& c, const Weight& w);
Weight add(const Weight& a, const Weight& b);

struct NormalVector {
  std::size_t at = 0;      // codimension-one cone s
  std::size_t toward = 0;  // cone t > s
  Vec lattice_generator;   // u in N^t, generator of N^t / N^s on the side of t
  Vec image;               // X_t u in N_X
  QuotientPresentation::Element value;  // class in N_X / X_s(N^s)
};

NormalVector normal_vector(const LinearComplex& lc, std::size_t s, std::size_t t);

struct BalanceResult {
  bool balanced = false;
  Vec sum;                  // sum of weighted normal images in N_X
  std::optional<Vec> certificate;  // lambda with X_s lambda = sum
};

BalanceResult is_balanced_at(const LinearComplex& lc, const Weight& w, std::size_t s);

struct BalanceReport {
  bool balanced = true;
  std::optional<std::size_t> failing_cone;
  std::map<std::size_t, Vec> certificates;
};
BalanceReport check_balanced(const LinearComplex& lc, const Weight& w);

struct WeightLattice {
  std::size_t dim = 0;
  std::vector<std::size_t> cones;  // the k-dimensional cones, in coordinate order
  std::vector<Weight> basis;
  std::size_t rank() const { return basis.size(); }
};

// Basis of the balanced weights of dimension k.  Extra equality rows
// (pairs of k-cones forced to carry equal weight) may be imposed.
WeightLattice minkowski_basis(const LinearComplex& lc, std::size_t k,
                              const std::vector<std::pair<std::size_t, std::size_t>>& equal_pairs = {});

// (w x v)(i, j) = w(i) v(j) on the product complex with ids i * psi_size + j.
Weight cross_product(const Weight& w, const Weight& v, std::size_t psi_size);

// Pullback along a cone map: value w(f(p)) on cones p with dim p = dim f(p) = k.
Weight pullback_along(const PoicComplex& source, const PoicComplex& target, const std::vector<std::size_t>& cone_map,
                      const Weight& w);

// Weight of a full subcomplex extended by zero to the ambient complex.
Weight extend_by_zero(const Subcomplex& sub, std::size_t ambient_size, const Weight& w);

// Pure of dimension n and the n-dimensional Minkowski weights have rank 1.
// Throws NotPure.
bool is_irreducible(const LinearComplex& lc);

}  // namespace tropocone
