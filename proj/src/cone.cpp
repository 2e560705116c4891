#include "tropocone/cone.hpp"

#include <algorithm>
#include <sstream>

#include "tropocone/error.hpp"

namespace tropocone {

Vec project_primitive(const Vec& v, const IntMatrix& L) {
  if (L.rows() == 0) return is_zero(v) ? v : primitive(v);
  IntMatrix G = L * L.transpose();
  Vec b = L * v;
  auto c = solve_rational(G, b);
  if (!c) throw Error(ErrorCode::DimensionMismatch, "degenerate lineality basis");
  std::vector<Rat> p(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    p[i] = v[i];
    for (std::size_t k = 0; k < L.rows(); ++k) p[i] -= (*c)[k] * Rat(L(k, i));
  }
  Int den = 1;
  for (auto& x : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat s = p[i] * Rat(den);
    out[i] = s.get_num();
  }
  return is_zero(out) ? out : primitive(out);
}

namespace {

struct DDResult {
  std::vector<Vec> rays;
  IntMatrix lineality;
};

// Incremental double description for { x : a.x >= 0 (a in ineq), e.x = 0 (e in eq) }.
DDResult double_description(std::size_t n, const std::vector<Vec>& ineq, const std::vector<Vec>& eq) {
  std::vector<Vec> constraints;
  for (const Vec& e : eq) {
    constraints.push_back(e);
    constraints.push_back(scale(-1, e));
  }
  for (const Vec& a : ineq) constraints.push_back(a);

  std::vector<Vec> L;
  for (std::size_t i = 0; i < n; ++i) L.push_back(unit_vector(n, i));
  std::vector<Vec> R;
  std::vector<std::vector<bool>> Z;  // zero sets over processed constraints
  std::size_t processed = 0;

  for (const Vec& a0 : constraints) {
    if (a0.size() != n) throw Error(ErrorCode::DimensionMismatch, "constraint length differs from ambient dimension");
    if (is_zero(a0)) {
      for (auto& z : Z) z.push_back(true);
      ++processed;
      continue;
    }
    const Vec& a = a0;
    std::size_t li = L.size();
    for (std::size_t i = 0; i < L.size(); ++i)
      if (dot(a, L[i]) != 0) {
        li = i;
        break;
      }
    if (li < L.size()) {
      Vec l = L[li];
      Int al = dot(a, l);
      if (al < 0) {
        l = scale(-1, l);
        al = -al;
      }
      std::vector<Vec> newL;
      for (std::size_t i = 0; i < L.size(); ++i) {
        if (i == li) continue;
        Vec v = sub(scale(al, L[i]), scale(dot(a, L[i]), l));
        if (!is_zero(v)) newL.push_back(primitive(v));
      }
      for (std::size_t j = 0; j < R.size(); ++j) {
        Int ar = dot(a, R[j]);
        if (ar != 0) R[j] = primitive(sub(scale(al, R[j]), scale(ar, l)));
        Z[j].push_back(true);
      }
      std::vector<bool> zl(processed + 1, true);
      zl.back() = false;
      R.push_back(primitive(l));
      Z.push_back(zl);
      L = std::move(newL);
      ++processed;
      continue;
    }
    // a vanishes on the lineality space: Motzkin step.
    std::vector<std::size_t> pos, neg, zer;
    std::vector<Int> val(R.size());
    for (std::size_t j = 0; j < R.size(); ++j) {
      val[j] = dot(a, R[j]);
      if (val[j] > 0) pos.push_back(j);
      else if (val[j] < 0) neg.push_back(j);
      else zer.push_back(j);
    }
    std::vector<Vec> newR;
    std::vector<std::vector<bool>> newZ;
    for (std::size_t j : pos) {
      newR.push_back(R[j]);
      auto z = Z[j];
      z.push_back(false);
      newZ.push_back(std::move(z));
    }
    for (std::size_t j : zer) {
      newR.push_back(R[j]);
      auto z = Z[j];
      z.push_back(true);
      newZ.push_back(std::move(z));
    }
    for (std::size_t p : pos)
      for (std::size_t q : neg) {
        const std::size_t m = Z[p].size();
        std::vector<bool> common(m);
        for (std::size_t k = 0; k < m; ++k) common[k] = Z[p][k] && Z[q][k];
        bool adjacent = true;
        for (std::size_t r = 0; r < R.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          bool superset = true;
          for (std::size_t k = 0; k < m; ++k)
            if (common[k] && !Z[r][k]) {
              superset = false;
              break;
            }
          if (superset) adjacent = false;
        }
        if (!adjacent) continue;
        Vec v = sub(scale(val[p], R[q]), scale(val[q], R[p]));
        newR.push_back(primitive(v));
        common.push_back(true);
        newZ.push_back(std::move(common));
      }
    R = std::move(newR);
    Z = std::move(newZ);
    ++processed;
  }

  DDResult out;
  IntMatrix Lm = IntMatrix::from_rows(L, n);
  out.lineality = Lm.rows() ? saturation(Lm) : IntMatrix(0, n);
  for (const Vec& r : R) {
    Vec c = project_primitive(r, out.lineality);
    if (!is_zero(c)) out.rays.push_back(std::move(c));
  }
  std::sort(out.rays.begin(), out.rays.end());
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  return out;
}

std::vector<Vec> rows_of(const IntMatrix& m) { return m.row_list(); }

}  // namespace

ClosedCone ClosedCone::from_inequalities(std::size_t n, const std::vector<Vec>& inequalities,
                                         const std::vector<Vec>& equations) {
  DDResult v = double_description(n, inequalities, equations);
  DDResult h = double_description(n, v.rays, rows_of(v.lineality));
  ClosedCone c;
  c.n_ = n;
  c.rays_ = std::move(v.rays);
  c.lineality_ = std::move(v.lineality);
  c.facets_ = std::move(h.rays);
  c.equations_ = std::move(h.lineality);
  c.dim_ = n - c.equations_.rows();
  return c;
}

ClosedCone ClosedCone::from_generators(std::size_t n, const std::vector<Vec>& rays, const std::vector<Vec>& lineality) {
  DDResult h = double_description(n, rays, lineality);
  DDResult v = double_description(n, h.rays, rows_of(h.lineality));
  ClosedCone c;
  c.n_ = n;
  c.rays_ = std::move(v.rays);
  c.lineality_ = std::move(v.lineality);
  c.facets_ = std::move(h.rays);
  c.equations_ = std::move(h.lineality);
  c.dim_ = n - c.equations_.rows();
  return c;
}

Vec ClosedCone::interior_point() const {
  Vec w(n_);
  for (const Vec& r : rays_) w = add(w, r);
  return w;
}

bool ClosedCone::contains(const Vec& x) const {
  for (std::size_t i = 0; i < equations_.rows(); ++i)
    if (dot(equations_.row(i), x) != 0) return false;
  for (const Vec& f : facets_)
    if (dot(f, x) < 0) return false;
  return true;
}

bool ClosedCone::relative_interior_contains(const Vec& x) const {
  for (std::size_t i = 0; i < equations_.rows(); ++i)
    if (dot(equations_.row(i), x) != 0) return false;
  for (const Vec& f : facets_)
    if (dot(f, x) <= 0) return false;
  return true;
}

std::vector<std::size_t> ClosedCone::tight_facets(const Vec& x) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < facets_.size(); ++i)
    if (dot(facets_[i], x) == 0) out.push_back(i);
  return out;
}

ClosedCone ClosedCone::face(const std::vector<std::size_t>& tight) const {
  std::vector<Vec> eqs = equations_.row_list();
  for (std::size_t i : tight) eqs.push_back(facets_.at(i));
  return from_inequalities(n_, facets_, eqs);
}

ClosedCone ClosedCone::intersect(const ClosedCone& other) const {
  if (other.n_ != n_) throw Error(ErrorCode::AmbientMismatch, "intersecting cones in different ambient spaces");
  std::vector<Vec> ineq = facets_;
  ineq.insert(ineq.end(), other.facets_.begin(), other.facets_.end());
  std::vector<Vec> eqs = equations_.row_list();
  for (const Vec& e : other.equations_.row_list()) eqs.push_back(e);
  return from_inequalities(n_, ineq, eqs);
}

ClosedCone ClosedCone::image(const IntMatrix& A) const {
  if (A.cols() != n_) throw Error(ErrorCode::DimensionMismatch, "image: matrix columns differ from ambient dimension");
  std::vector<Vec> r, l;
  for (const Vec& x : rays_) r.push_back(A * x);
  for (const Vec& x : lineality_.row_list()) l.push_back(A * x);
  return from_generators(A.rows(), r, l);
}

ClosedCone ClosedCone::preimage(const IntMatrix& A) const {
  if (A.rows() != n_) throw Error(ErrorCode::DimensionMismatch, "preimage: matrix rows differ from ambient dimension");
  IntMatrix At = A.transpose();
  std::vector<Vec> f, e;
  for (const Vec& x : facets_) f.push_back(At * x);
  for (const Vec& x : equations_.row_list()) e.push_back(At * x);
  return from_inequalities(A.cols(), f, e);
}

IntMatrix ClosedCone::span_basis() const {
  if (equations_.rows() == 0) return IntMatrix::identity(n_);
  return integer_kernel(equations_);
}

bool operator<(const ClosedCone& a, const ClosedCone& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  if (a.rays_ != b.rays_) return a.rays_ < b.rays_;
  return a.lineality_ < b.lineality_;
}

std::string ClosedCone::to_string() const {
  std::ostringstream os;
  os << "cone(n=" << n_ << ", rays=[";
  for (std::size_t i = 0; i < rays_.size(); ++i) os << (i ? "," : "") << vec_to_string(rays_[i]);
  os << "], lineality=" << lineality_.to_string() << ")";
  return os.str();
}

}  // namespace tropocone
