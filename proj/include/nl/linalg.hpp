#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "nl/errors.hpp"

namespace nl {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using Cplx = std::complex<double>;

/// Default relative singular-value threshold for rank decisions.
inline constexpr double kRankTol = 1e-9;

/// Extension of a real operator to the complexified space. The extension
/// commutes with the coordinatewise conjugation.
Mat complexify(const RMat& m);

/// A linear subspace of C^ambient, held as an orthonormal basis.
///
/// Real subspaces are represented by real basis vectors inside the
/// complexified ambient space; every rank decision below uses the
/// subspace's relative singular-value tolerance.
class Subspace {
public:
  /// Empty subspace of a zero-dimensional ambient space.
  Subspace() : basis_(0, 0), tol_(kRankTol) {}

  /// Span of the columns of `raw`, orthonormalized at tolerance `tol`.
  Subspace(const Mat& raw_basis, double tol = kRankTol);

  static Subspace zero(Eigen::Index ambient, double tol = kRankTol);
  static Subspace full(Eigen::Index ambient, double tol = kRankTol);

  Eigen::Index ambient_dim() const { return basis_.rows(); }
  Eigen::Index dim() const { return basis_.cols(); }
  double tol() const { return tol_; }

  /// Orthonormal basis, one vector per column.
  const Mat& basis() const { return basis_; }

  /// Orthogonal projector onto the span.
  Mat projector() const { return basis_ * basis_.adjoint(); }

  /// Orthonormal basis of the orthogonal complement.
  Mat complement_basis() const;

  /// Relative distance of v from the span: ||v - Pv|| / ||v|| (0 for v = 0).
  double distance(const Vec& v) const;

  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;

  /// Mutual containment of bases at tolerance; basis-independent.
  bool equals(const Subspace& other) const;

  /// Componentwise conjugate span (ambient is a complexified real space).
  Subspace conjugate() const;

private:
  Mat basis_;   // ambient x dim, orthonormal columns
  double tol_;
};

/// Kernel of m at relative tolerance tol: span of all v with
/// ||m v|| <= tol * ||m|| * ||v||.
Subspace kernel(const Mat& m, double tol = kRankTol);

/// Column span of m at relative tolerance tol.
Subspace range(const Mat& m, double tol = kRankTol);

Subspace subspace_sum(const Subspace& a, const Subspace& b);
Subspace subspace_intersect(const Subspace& a, const Subspace& b);

/// True iff a ∩ b = {0} and a + b is the whole ambient space.
bool is_direct_complement(const Subspace& a, const Subspace& b);

/// Numerical rank at relative tolerance.
Eigen::Index rank_of(const Mat& m, double tol = kRankTol);

}  // namespace nl
