#include "tropocone/weights.hpp"

#include "tropocone/error.hpp"

namespace tropocone {

Weight Weight::normalized() const {
  Weight w{dim, {}};
  for (const auto& [k, v] : values)
    if (v != 0) w.values[k] = v;
  return w;
}

Weight constant_weight(const PoicComplex& phi, std::size_t k, const Int& c) {
  Weight w{k, {}};
  for (std::size_t p : phi.cones_of_dim(k)) w.values[p] = c;
  return w;
}

Weight scale(const Int& c, const Weight& w) {
  Weight out{w.dim, {}};
  for (const auto& [k, v] : w.values) out.values[k] = c * v;
  return out;
}

Weight add(const Weight& a, const Weight& b) {
  if (a.dim != b.dim) throw Error(ErrorCode::DimensionMismatch, "adding weights of different dimensions");
  Weight out = a;
  for (const auto& [k, v] : b.values) out.values[k] += v;
  return out.normalized();
}

NormalVector normal_vector(const LinearComplex& lc, std::size_t s, std::size_t t) {
  const PoicComplex& phi = lc.complex;
  if (!phi.less(s, t) || phi.dim(t) != phi.dim(s) + 1)
    throw Error(ErrorCode::BadCodimension, phi.label(s) + " -> " + phi.label(t) + " is not a codimension-one relation");
  const IntMatrix F = phi.face_map(s, t);
  const std::size_t nt = phi.cone(t).rank();
  QuotientPresentation q = quotient(nt, F.transpose());
  if (q.free_rank != 1 || !q.torsion_factors.empty())
    throw Error(ErrorCode::BadCodimension, "N^t / N^s is not a rank-one lattice");
  Vec u = q.lift.col(0);
  if ((q.projection * phi.cone(t).witness())[0] < 0) u = scale(-1, u);
  NormalVector nv;
  nv.at = s;
  nv.toward = t;
  nv.lattice_generator = u;
  nv.image = lc.linear.maps[t] * u;
  QuotientPresentation qs = quotient(lc.linear.target_rank, lc.linear.maps[s].transpose());
  nv.value = qs.reduce(nv.image);
  return nv;
}

BalanceResult is_balanced_at(const LinearComplex& lc, const Weight& w, std::size_t s) {
  const PoicComplex& phi = lc.complex;
  if (phi.dim(s) + 1 != w.dim)
    throw Error(ErrorCode::BadCodimension, "balancing a " + std::to_string(w.dim) + "-weight at a " +
                                               std::to_string(phi.dim(s)) + "-dimensional cone");
  BalanceResult r;
  r.sum = Vec(lc.linear.target_rank);
  for (std::size_t t : star1(phi, s)) {
    Int c = w.at(t);
    if (c == 0) continue;
    r.sum = tropocone::add(r.sum, tropocone::scale(c, normal_vector(lc, s, t).image));
  }
  r.certificate = solve_integer(lc.linear.maps[s], r.sum);
  r.balanced = r.certificate.has_value();
  return r;
}

BalanceReport check_balanced(const LinearComplex& lc, const Weight& w) {
  BalanceReport rep;
  if (w.dim == 0) return rep;
  for (std::size_t s : lc.complex.cones_of_dim(w.dim - 1)) {
    auto r = is_balanced_at(lc, w, s);
    if (!r.balanced) {
      rep.balanced = false;
      rep.failing_cone = s;
      return rep;
    }
    rep.certificates[s] = *r.certificate;
  }
  return rep;
}

WeightLattice minkowski_basis(const LinearComplex& lc, std::size_t k,
                              const std::vector<std::pair<std::size_t, std::size_t>>& equal_pairs) {
  const PoicComplex& phi = lc.complex;
  WeightLattice out;
  out.dim = k;
  out.cones = phi.cones_of_dim(k);
  const std::size_t m = out.cones.size();
  if (m == 0) return out;
  std::map<std::size_t, std::size_t> col;
  for (std::size_t i = 0; i < m; ++i) col[out.cones[i]] = i;

  std::vector<std::size_t> walls = k == 0 ? std::vector<std::size_t>{} : phi.cones_of_dim(k - 1);
  std::vector<std::size_t> offset;
  std::size_t total = m;
  for (std::size_t s : walls) {
    offset.push_back(total);
    total += phi.cone(s).rank();
  }
  const std::size_t N = lc.linear.target_rank;
  std::vector<Vec> rows;
  for (std::size_t wi = 0; wi < walls.size(); ++wi) {
    std::size_t s = walls[wi];
    std::vector<Vec> block(N, Vec(total));
    bool any = false;
    for (std::size_t t : star1(phi, s)) {
      any = true;
      Vec img = normal_vector(lc, s, t).image;
      for (std::size_t r = 0; r < N; ++r) block[r][col.at(t)] += img[r];
    }
    if (!any) continue;
    const IntMatrix& X = lc.linear.maps[s];
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < X.cols(); ++c) block[r][offset[wi] + c] -= X(r, c);
    for (auto& row : block)
      if (!is_zero(row)) rows.push_back(std::move(row));
  }
  for (const auto& [a, b] : equal_pairs) {
    Vec row(total);
    row[col.at(a)] += 1;
    row[col.at(b)] -= 1;
    if (!is_zero(row)) rows.push_back(std::move(row));
  }
  IntMatrix K = rows.empty() ? IntMatrix::identity(total) : integer_kernel(IntMatrix::from_rows(rows, total));
  std::vector<std::size_t> wcols(m);
  for (std::size_t i = 0; i < m; ++i) wcols[i] = i;
  IntMatrix B = hermite_normal_form(K.select_cols(wcols));
  for (std::size_t i = 0; i < B.rows(); ++i) {
    Weight w{k, {}};
    for (std::size_t j = 0; j < m; ++j)
      if (B(i, j) != 0) w.values[out.cones[j]] = B(i, j);
    out.basis.push_back(std::move(w));
  }
  return out;
}

Weight cross_product(const Weight& w, const Weight& v, std::size_t psi_size) {
  Weight out{w.dim + v.dim, {}};
  for (const auto& [i, a] : w.values)
    for (const auto& [j, b] : v.values)
      if (a * b != 0) out.values[product_id(i, j, psi_size)] = a * b;
  return out;
}

Weight pullback_along(const PoicComplex& source, const PoicComplex& target, const std::vector<std::size_t>& cone_map,
                      const Weight& w) {
  Weight out{w.dim, {}};
  for (std::size_t p = 0; p < source.size(); ++p) {
    if (source.dim(p) != w.dim || target.dim(cone_map[p]) != w.dim) continue;
    Int v = w.at(cone_map[p]);
    if (v != 0) out.values[p] = v;
  }
  return out;
}

Weight extend_by_zero(const Subcomplex& sub, std::size_t ambient_size, const Weight& w) {
  Weight out{w.dim, {}};
  for (const auto& [k, v] : w.values) {
    if (k >= sub.ids.size() || sub.ids[k] >= ambient_size)
      throw Error(ErrorCode::NotSubcomplex, "weight refers to a cone outside the subcomplex");
    if (v != 0) out.values[sub.ids[k]] = v;
  }
  return out;
}

bool is_irreducible(const LinearComplex& lc) {
  auto n = lc.complex.pure_dim();
  if (!n) throw Error(ErrorCode::NotPure, "complex is not pure");
  return minkowski_basis(lc, *n).rank() == 1;
}

}  // namespace tropocone
