#include "nl/linalg.hpp"

#include <Eigen/SVD>

namespace nl {

Mat complexify(const RMat& m) {
  if (m.rows() != m.cols())
    throw ShapeError("complexify: matrix must be square");
  return m.cast<Cplx>();
}

namespace {

// Columns of U belonging to singular values above tol * sigma_max.
Mat dominant_left_vectors(const Mat& m, double tol) {
  if (m.cols() == 0) return Mat(m.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * smax) ++r;
  if (smax == 0.0) r = 0;
  return svd.matrixU().leftCols(r);
}

}  // namespace

Subspace::Subspace(const Mat& raw_basis, double tol)
    : basis_(dominant_left_vectors(raw_basis, tol)), tol_(tol) {}

Subspace Subspace::zero(Eigen::Index ambient, double tol) {
  return Subspace(Mat(ambient, 0), tol);
}

Subspace Subspace::full(Eigen::Index ambient, double tol) {
  return Subspace(Mat::Identity(ambient, ambient), tol);
}

Mat Subspace::complement_basis() const {
  // Full SVD of the basis matrix; the trailing left vectors span the
  // orthogonal complement.
  if (dim() == 0) return Mat::Identity(ambient_dim(), ambient_dim());
  Eigen::JacobiSVD<Mat> svd(basis_, Eigen::ComputeFullU);
  return svd.matrixU().rightCols(ambient_dim() - dim());
}

double Subspace::distance(const Vec& v) const {
  double nv = v.norm();
  if (nv == 0.0) return 0.0;
  Vec res = v - basis_ * (basis_.adjoint() * v);
  return res.norm() / nv;
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != ambient_dim()) throw ShapeError("Subspace: ambient mismatch");
  // Membership threshold is looser than the rank threshold so that spans
  // surviving an orthonormalization still test as members.
  return distance(v) <= std::max(tol_ * 10.0, 1e-8);
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_dim() != ambient_dim())
    throw ShapeError("Subspace: ambient mismatch");
  for (Eigen::Index j = 0; j < other.dim(); ++j)
    if (!contains(Vec(other.basis_.col(j)))) return false;
  return true;
}

bool Subspace::equals(const Subspace& other) const {
  return dim() == other.dim() && contains(other) && other.contains(*this);
}

Subspace Subspace::conjugate() const {
  return Subspace(basis_.conjugate(), tol_);
}

Subspace kernel(const Mat& m, double tol) {
  if (m.cols() == 0) return Subspace::zero(0, tol);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  Eigen::Index r = 0;
  if (smax > 0.0)
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > tol * smax) ++r;
  Mat null_basis = svd.matrixV().rightCols(m.cols() - r);
  Subspace out(null_basis, tol);
  return out;
}

Subspace range(const Mat& m, double tol) { return Subspace(m, tol); }

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw ShapeError("subspace_sum: ambient mismatch");
  Mat joint(a.ambient_dim(), a.dim() + b.dim());
  joint << a.basis(), b.basis();
  return Subspace(joint, std::min(a.tol(), b.tol()));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw ShapeError("subspace_intersect: ambient mismatch");
  // Intersection = orthogonal complement of (a_perp + b_perp).
  Mat ap = a.complement_basis();
  Mat bp = b.complement_basis();
  Mat joint(a.ambient_dim(), ap.cols() + bp.cols());
  joint << ap, bp;
  Subspace perp(joint, std::min(a.tol(), b.tol()));
  return Subspace(perp.complement_basis(), std::min(a.tol(), b.tol()));
}

bool is_direct_complement(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw ShapeError("is_direct_complement: ambient mismatch");
  return subspace_intersect(a, b).dim() == 0 &&
         subspace_sum(a, b).dim() == a.ambient_dim();
}

Eigen::Index rank_of(const Mat& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  if (smax == 0.0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * smax) ++r;
  return r;
}

}  // namespace nl
