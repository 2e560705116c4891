#include <gtest/gtest.h>

#include <random>

#include "tropocone/poic.hpp"

using namespace tropocone;

namespace {

Vec random_vec(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  Vec v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST(ConeProperties, DoubleDescriptionIsConsistent) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 4;
    std::size_t k = rng() % 7;
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(random_vec(rng, n, -3, 3));
    ClosedCone c = ClosedCone::from_generators(n, gens);
    // Every generator lies in the cone.
    for (const Vec& g : gens) ASSERT_TRUE(c.contains(g)) << c.to_string();
    // Every facet is supported by dim-1 independent rays (modulo lineality).
    for (const Vec& f : c.facets()) {
      std::vector<Vec> tight = c.lineality().row_list();
      for (const Vec& r : c.rays())
        if (dot(f, r) == 0) tight.push_back(r);
      std::size_t rk = tight.empty() ? 0 : rank(IntMatrix::from_rows(tight, n));
      ASSERT_EQ(rk + 1, c.dim());
    }
    // Every ray is extreme.
    for (const Vec& r : c.rays()) {
      std::vector<Vec> tight = c.equations().row_list();
      for (const Vec& f : c.facets())
        if (dot(f, r) == 0) tight.push_back(f);
      std::size_t rk = tight.empty() ? 0 : rank(IntMatrix::from_rows(tight, n));
      ASSERT_EQ(rk, n - 1 - c.lineality().rows());
    }
    // Round trip through the other description.
    ClosedCone h = ClosedCone::from_inequalities(n, c.facets(), c.equations().row_list());
    ASSERT_EQ(h, c);
  }
}

TEST(ConeProperties, FacesOfFacesAreFaces) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng() % 3;
    std::vector<PoicConstraint> cs;
    for (std::size_t i = 0; i < n; ++i) cs.push_back({unit_vector(n, i), bool(rng() % 2)});
    std::size_t extra = rng() % 3;
    for (std::size_t i = 0; i < extra; ++i) {
      Vec v = random_vec(rng, n, 0, 2);
      if (!is_zero(v)) cs.push_back({v, bool(rng() % 2)});
    }
    Poic p;
    try {
      p = Poic::make(n, cs);
    } catch (...) {
      continue;
    }
    // Membership oracle: raw constraints.
    for (int probe = 0; probe < 10; ++probe) {
      Vec x = random_vec(rng, n, 0, 2);
      bool raw = true;
      for (auto& c : cs) {
        Int v = dot(c.normal, x);
        if (v < 0 || (c.strict && v == 0)) raw = false;
      }
      ASSERT_EQ(raw, p.contains(x));
    }
    auto faces = p.faces();
    for (const auto& fe : faces) {
      ASSERT_EQ(check_morphism(fe.matrix, fe.sub, p).face_embedding, true);
      // Saturated lattice: the quotient by the face lattice is torsion-free.
      auto q = quotient(n, fe.matrix.transpose());
      ASSERT_TRUE(q.torsion_factors.empty());
      for (const auto& ff : fe.sub.faces()) {
        IntMatrix comp = fe.matrix * ff.matrix;
        auto rep = check_morphism(comp, ff.sub, p);
        ASSERT_TRUE(rep.face_embedding);
        ASSERT_TRUE(p.closure_faces()[*rep.image_face].retained);
      }
    }
  }
}
