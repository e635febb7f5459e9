#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "nl/linalg.hpp"

namespace nl {

/// Multi-indices are packed 8 bits per variable (up to 8 variables,
/// per-variable exponent < 255), so products are plain integer adds.
using MIdx = std::uint64_t;

inline constexpr int kMaxVars = 8;

inline int midx_exp(MIdx m, int var) {
  return static_cast<int>((m >> (8 * var)) & 0xff);
}

inline MIdx midx_bump(MIdx m, int var, int by) {
  return m + (static_cast<MIdx>(by) << (8 * var));
}

inline int midx_degree(MIdx m) {
  int d = 0;
  while (m) {
    d += static_cast<int>(m & 0xff);
    m >>= 8;
  }
  return d;
}

std::vector<int> midx_unpack(MIdx m, int nvars);
MIdx midx_pack(const std::vector<int>& exps);

/// Lexicographic order on unpacked exponent tuples.
bool midx_lex_less(MIdx a, MIdx b, int nvars);

/// Monomial value x^alpha.
Cplx midx_eval(MIdx m, const Vec& x);

/// Polynomial map x -> vector, stored as multi-index -> coefficient vector.
class VecPoly {
public:
  VecPoly() : nvars_(0), dim_(0) {}
  VecPoly(int nvars, Eigen::Index dim) : nvars_(nvars), dim_(dim) {}

  static VecPoly constant(int nvars, const Vec& v);
  /// The identity field x -> x.
  static VecPoly coordinate(int nvars);

  int nvars() const { return nvars_; }
  Eigen::Index dim() const { return dim_; }
  const std::unordered_map<MIdx, Vec>& terms() const { return terms_; }

  void add_term(MIdx m, const Vec& coeff);

  Vec eval(const Vec& x) const;
  /// Exact polynomial Jacobian at x; column j is the partial in x_j.
  Mat jacobian(const Vec& x) const;

  int degree() const;
  VecPoly operator+(const VecPoly& o) const;
  VecPoly operator-(const VecPoly& o) const;
  VecPoly scaled(Cplx s) const;

  /// Keys in lexicographic multi-index order (for serialization).
  std::vector<MIdx> sorted_keys() const;

private:
  int nvars_;
  Eigen::Index dim_;
  std::unordered_map<MIdx, Vec> terms_;
};

/// Polynomial map x -> square matrix.
class MatPoly {
public:
  MatPoly() : nvars_(0), dim_(0) {}
  MatPoly(int nvars, Eigen::Index dim) : nvars_(nvars), dim_(dim) {}

  static MatPoly constant(int nvars, const Mat& m);
  static MatPoly identity(int nvars, Eigen::Index dim);

  int nvars() const { return nvars_; }
  Eigen::Index dim() const { return dim_; }
  const std::unordered_map<MIdx, Mat>& terms() const { return terms_; }

  void add_term(MIdx m, const Mat& coeff);

  Mat eval(const Vec& x) const;

  /// Directional derivative (d/dt M_{x+tw})|_{t=0} as an operator.
  Mat dir_deriv(const Vec& x, const Vec& w) const;

  int degree() const;
  MatPoly operator+(const MatPoly& o) const;
  MatPoly operator-(const MatPoly& o) const;
  MatPoly operator*(const MatPoly& o) const;
  VecPoly operator*(const VecPoly& o) const;
  MatPoly scaled(Cplx s) const;

  /// Drop terms whose coefficient norm is below cutoff (exact zeros from
  /// cancellation); keeps maps small after products.
  void prune(double cutoff = 0.0);

  /// Sum of coefficient spectral norms weighted by r^|alpha|; an upper
  /// bound for sup_{|x|<=r} ||M_x||.
  double norm_bound(double r) const;

  std::vector<MIdx> sorted_keys() const;

private:
  int nvars_;
  Eigen::Index dim_;
  std::unordered_map<MIdx, Mat> terms_;
};

}  // namespace nl
