#include "nl/lie.hpp"

#include <cmath>

namespace nl {

namespace {

const Cplx kI(0.0, 1.0);

// Coordinates of the columns of M in the V basis, after projecting onto V.
RMat v_coords(const Subspace& V, const RMat& m_cols) {
  Mat coords = V.basis().adjoint() * m_cols.cast<Cplx>();
  return coords.real();
}

// Membership of v in h with an absolute floor: small absolute residuals
// count as members even when v itself is small.
bool member_abs(const Subspace& h, const Vec& v, double tol) {
  Vec res = v - h.basis() * (h.basis().adjoint() * v);
  return res.norm() <= tol * (1.0 + v.norm());
}

}  // namespace

LieAlgebra LieAlgebra::zero(int dim) {
  LieAlgebra g;
  g.dim = dim;
  g.c.assign(dim, RMat::Zero(dim, dim));
  return g;
}

void LieAlgebra::set_constant(int i, int j, int k, double value) {
  c[k](i, j) = value;
  c[k](j, i) = -value;
}

RVec LieAlgebra::bracket(const RVec& x, const RVec& y) const {
  if (x.size() != dim || y.size() != dim)
    throw ShapeError("LieAlgebra::bracket: dimension mismatch");
  RVec out(dim);
  for (int k = 0; k < dim; ++k) out(k) = x.dot(c[k] * y);
  return out;
}

Vec LieAlgebra::bracket_c(const Vec& x, const Vec& y) const {
  if (x.size() != dim || y.size() != dim)
    throw ShapeError("LieAlgebra::bracket_c: dimension mismatch");
  Vec out(dim);
  for (int k = 0; k < dim; ++k) out(k) = x.transpose() * c[k].cast<Cplx>() * y;
  return out;
}

LieAlgebra LieAlgebra::change_basis(const RMat& p) const {
  LieAlgebra out = LieAlgebra::zero(dim);
  RMat pinv = p.inverse();
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      RVec br = pinv * bracket(p.col(i), p.col(j));
      for (int k = 0; k < dim; ++k) out.c[k](i, j) = br(k);
    }
  return out;
}

AlgebraReport validate_algebra(const LieAlgebra& g) {
  AlgebraReport rep;
  const int m = g.dim;
  for (int k = 0; k < m; ++k)
    rep.antisymmetry_residual = std::max(
        rep.antisymmetry_residual, (g.c[k] + g.c[k].transpose()).norm());

  for (int i = 0; i < m && rep.detail.empty(); ++i)
    for (int j = i + 1; j < m && rep.detail.empty(); ++j)
      for (int l = j + 1; l < m; ++l) {
        RVec ei = RVec::Unit(m, i), ej = RVec::Unit(m, j), el = RVec::Unit(m, l);
        RVec jac = g.bracket(ei, g.bracket(ej, el)) +
                   g.bracket(ej, g.bracket(el, ei)) +
                   g.bracket(el, g.bracket(ei, ej));
        double r = jac.norm();
        if (r > rep.jacobi_residual) rep.jacobi_residual = r;
        if (r > 1e-10) {
          rep.detail = "Jacobi violated on triple (" + std::to_string(i) + "," +
                       std::to_string(j) + "," + std::to_string(l) + ")";
          break;
        }
      }

  if (!g.basis_matrices.empty()) {
    if (static_cast<int>(g.basis_matrices.size()) != m)
      throw ShapeError("validate_algebra: realization size");
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        Mat comm = g.basis_matrices[i] * g.basis_matrices[j] -
                   g.basis_matrices[j] * g.basis_matrices[i];
        Mat rhs = Mat::Zero(comm.rows(), comm.cols());
        for (int k = 0; k < m; ++k)
          rhs += g.c[k](i, j) * g.basis_matrices[k];
        rep.realization_residual =
            std::max(rep.realization_residual, (comm - rhs).norm());
      }
  }

  rep.ok = rep.antisymmetry_residual == 0.0 && rep.jacobi_residual <= 1e-10 &&
           rep.realization_residual <= 1e-8;
  return rep;
}

PairReport validate_pair(const HomogeneousPair& pair) {
  PairReport rep;
  const int m = pair.g.dim;

  rep.h_subalgebra = true;
  for (Eigen::Index a = 0; a < pair.h.dim(); ++a)
    for (Eigen::Index b = 0; b < pair.h.dim(); ++b) {
      Vec br = pair.g.bracket_c(pair.h.basis().col(a), pair.h.basis().col(b));
      if (!member_abs(pair.h, br, pair.mem_tol)) rep.h_subalgebra = false;
    }

  rep.direct_complement = is_direct_complement(pair.h, pair.V);

  rep.samples_preserve_h = true;
  for (const RMat& A : pair.H_samples) {
    Mat Ac = A.cast<Cplx>();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        Vec lhs = Ac * pair.g.bracket_c(Vec::Unit(m, i), Vec::Unit(m, j));
        Vec rhs = pair.g.bracket_c(Ac.col(i), Ac.col(j));
        rep.automorphism_residual =
            std::max(rep.automorphism_residual, (lhs - rhs).norm());
      }
    for (Eigen::Index a = 0; a < pair.h.dim(); ++a)
      if (!member_abs(pair.h, Vec(Ac * pair.h.basis().col(a)), pair.mem_tol))
        rep.samples_preserve_h = false;
  }

  rep.ok = rep.h_subalgebra && rep.direct_complement &&
           rep.automorphism_residual <= 1e-8 && rep.samples_preserve_h;
  return rep;
}

RMat quotient_action(const HomogeneousPair& pair, const RMat& A) {
  // Project A|V back onto V along h.
  const int m = pair.g.dim;
  Eigen::Index hd = pair.h.dim(), vd = pair.V.dim();
  Mat full(m, hd + vd);
  full << pair.h.basis(), pair.V.basis();
  if (hd + vd != m) throw ShapeError("quotient_action: h + V must span g");
  Mat coords = full.partialPivLu().solve(A.cast<Cplx>() * pair.V.basis());
  return coords.bottomRows(vd).real();
}

bool check_I0(const HomogeneousPair& pair, const RMat& Ibar) {
  Eigen::Index vd = pair.V.dim();
  if (Ibar.rows() != vd || Ibar.cols() != vd)
    throw ShapeError("check_I0: operator must act on the V coordinates");
  double tol = 1e-8;
  if ((Ibar * Ibar + RMat::Identity(vd, vd)).norm() > tol) return false;
  for (const RMat& A : pair.H_samples) {
    RMat q = quotient_action(pair, A);
    if ((q * Ibar - Ibar * q).norm() > tol) return false;
  }
  return true;
}

bool check_IV(const HomogeneousPair& pair, const PartialStructure& I) {
  const int m = pair.g.dim;
  if (I.I.rows() != m || I.I.cols() != m)
    throw ShapeError("check_IV: operator must act on g");
  double tol = pair.mem_tol;
  Mat Ic = I.I.cast<Cplx>();

  // h inside Ker I.
  if ((Ic * pair.h.basis()).norm() > tol * (1.0 + pair.h.dim())) return false;

  // I(V) <= V and (I|V)^2 = -id_V.
  for (Eigen::Index a = 0; a < pair.V.dim(); ++a) {
    Vec v = pair.V.basis().col(a);
    if (!member_abs(pair.V, Vec(Ic * v), tol)) return false;
    if ((Ic * (Ic * v) + v).norm() > tol * 10.0) return false;
  }

  // Equivariance modulo h against every sampled automorphism.
  for (const RMat& A : pair.H_samples) {
    Mat Ac = A.cast<Cplx>();
    for (Eigen::Index a = 0; a < pair.V.dim(); ++a) {
      Vec v = pair.V.basis().col(a);
      Vec diff = Ic * (Ac * v) - Ac * (Ic * v);
      if (!member_abs(pair.h, diff, tol)) return false;
    }
  }
  return true;
}

RMat c_V(const HomogeneousPair& pair, const PartialStructure& I) {
  if (!check_IV(pair, I))
    throw InvalidInputError("c_V: operator fails the membership check");
  return v_coords(pair.V, RMat(I.I * pair.V.basis().real()));
}

PartialStructure c_V_inverse(const HomogeneousPair& pair, const RMat& Ibar) {
  if (!check_I0(pair, Ibar))
    throw InvalidInputError("c_V_inverse: operator fails the base-point check");
  const int m = pair.g.dim;
  Eigen::Index hd = pair.h.dim(), vd = pair.V.dim();
  if (hd + vd != m) throw ShapeError("c_V_inverse: h + V must span g");
  Mat full(m, m);
  full << pair.h.basis(), pair.V.basis();
  Mat images(m, m);
  images.leftCols(hd).setZero();
  images.rightCols(vd) = pair.V.basis() * Ibar.cast<Cplx>();
  Mat Ic = images * full.inverse();
  return PartialStructure{Ic.real()};
}

bool integrability_criterion(const HomogeneousPair& pair,
                         const PartialStructure& I) {
  const int m = pair.g.dim;
  Mat Ic = I.I.cast<Cplx>();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      Vec x = Vec::Unit(m, i), y = Vec::Unit(m, j);
      Vec Ix = Ic * x, Iy = Ic * y;
      Vec expr = Ic * pair.g.bracket_c(Ix, y) + Ic * pair.g.bracket_c(x, Iy) +
                 pair.g.bracket_c(x, y) - pair.g.bracket_c(Ix, Iy);
      if (!member_abs(pair.h, expr, pair.mem_tol)) return false;
    }
  return true;
}

Subspace build_k(const HomogeneousPair& pair, const PartialStructure& I) {
  if (pair.V.dim() % 2 != 0)
    throw InvalidInputError("build_k: dim V must be even");
  Eigen::Index vd = pair.V.dim();
  // I restricted to V in the V basis, then its +i eigenspace.
  RMat Ibar = v_coords(pair.V, RMat(I.I * pair.V.basis().real()));
  Subspace coeffs =
      kernel(Ibar.cast<Cplx>() - kI * Mat::Identity(vd, vd), pair.h.tol());
  Mat plus_vectors = pair.V.basis() * coeffs.basis();
  Mat joint(pair.g.dim, pair.h.dim() + plus_vectors.cols());
  joint << pair.h.basis(), plus_vectors;
  return Subspace(joint, pair.h.tol());
}

K0Report check_K0(const HomogeneousPair& pair, const Subspace& k) {
  K0Report rep;
  Subspace kbar = k.conjugate();

  rep.bracket_closed = true;
  for (Eigen::Index a = 0; a < k.dim() && rep.bracket_closed; ++a)
    for (Eigen::Index b = a + 1; b < k.dim(); ++b) {
      Vec br = pair.g.bracket_c(k.basis().col(a), k.basis().col(b));
      Vec res = br - k.basis() * (k.basis().adjoint() * br);
      if (res.norm() > pair.mem_tol * (1.0 + br.norm())) {
        rep.bracket_closed = false;
        break;
      }
    }

  rep.sum_full = subspace_sum(k, kbar).dim() == pair.g.dim;
  rep.intersect_h = subspace_intersect(k, kbar).equals(pair.h);

  rep.ad_invariant = true;
  for (const RMat& A : pair.H_samples) {
    Mat Ac = A.cast<Cplx>();
    for (Eigen::Index a = 0; a < k.dim(); ++a)
      if (!member_abs(k, Vec(Ac * k.basis().col(a)), pair.mem_tol))
        rep.ad_invariant = false;
  }
  return rep;
}

PartialStructure beta(const HomogeneousPair& pair, const Subspace& k) {
  const int m = pair.g.dim;
  Subspace vk = subspace_intersect(pair.V, k);
  Subspace vkbar = subspace_intersect(pair.V, k.conjugate());
  if (pair.h.dim() + vk.dim() + vkbar.dim() != m)
    throw InvalidInputError("beta: h_C + (V_C ∩ k) + (V_C ∩ conj k) does not "
                            "decompose g_C");
  Mat q(m, m);
  q << pair.h.basis(), vk.basis(), vkbar.basis();
  Vec diag(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (i < pair.h.dim())
      diag(i) = 0.0;
    else if (i < pair.h.dim() + vk.dim())
      diag(i) = kI;  // +i on V_C ∩ k, so that build_k inverts this map
    else
      diag(i) = -kI;
  }
  Eigen::PartialPivLU<Mat> lu(q);
  if (std::abs(lu.determinant()) < 1e-12)
    throw InvalidInputError("beta: decomposition is numerically singular");
  Mat Ic = q * diag.asDiagonal() * lu.inverse();
  if (Ic.imag().norm() > 1e-7 * (1.0 + Ic.real().norm()))
    throw InvalidInputError("beta: reconstructed operator is not real");
  return PartialStructure{Ic.real()};
}

bool nu_iso_check(const HomogeneousPair& pair, const Subspace& k) {
  const int m = pair.g.dim;
  // Realify C^m as R^{2m}; the real span of k has basis {w, i w}.
  auto realify = [m](const Vec& w) {
    RVec out(2 * m);
    out.head(m) = w.real();
    out.tail(m) = w.imag();
    return out;
  };
  RMat kreal(2 * m, 2 * k.dim());
  for (Eigen::Index j = 0; j < k.dim(); ++j) {
    kreal.col(2 * j) = realify(k.basis().col(j));
    kreal.col(2 * j + 1) = realify(Vec(kI * k.basis().col(j)));
  }
  Subspace ks(kreal.cast<Cplx>(), k.tol());

  // Quotient dimensions must match: dim_R g/h = dim_R g_C/k.
  if (m - pair.h.dim() != 2 * m - ks.dim()) return false;

  // x + h -> x + k is injective iff no nonzero V-combination lands in k.
  RMat vreal(2 * m, pair.V.dim());
  for (Eigen::Index j = 0; j < pair.V.dim(); ++j)
    vreal.col(j) = realify(Vec(pair.V.basis().col(j)));
  Mat proj = vreal.cast<Cplx>() -
             ks.basis() * (ks.basis().adjoint() * vreal.cast<Cplx>());
  return rank_of(proj, 1e-7) == pair.V.dim();
}

double roundtrip_I(const HomogeneousPair& pair, const PartialStructure& I) {
  PartialStructure back = beta(pair, build_k(pair, I));
  return (back.I - I.I).norm();
}

double roundtrip_k(const HomogeneousPair& pair, const Subspace& k) {
  Subspace back = build_k(pair, beta(pair, k));
  if (back.dim() != k.dim()) return 1.0;
  // Projector distance measures the gap between the two spans.
  return (back.projector() - k.projector()).operatorNorm();
}

EquivalenceReport criterion_subalgebra_equivalence(const HomogeneousPair& pair,
                                    const PartialStructure& I) {
  EquivalenceReport rep;
  rep.criterion = integrability_criterion(pair, I);
  Subspace k = build_k(pair, I);
  K0Report k0 = check_K0(pair, k);
  rep.k_bracket_closed = k0.bracket_closed;
  rep.k_sum_full = k0.sum_full;
  rep.k_intersect_h = k0.intersect_h;
  rep.agreement = (rep.criterion == rep.k_bracket_closed);
  return rep;
}

}  // namespace nl
