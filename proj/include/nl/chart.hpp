#pragma once

#include <cstdint>
#include <vector>

#include "nl/poly.hpp"
#include "nl/rng.hpp"

namespace nl {

/// An almost complex structure on a chart ball: polynomial operator field
/// x -> J_x on B(0, r) with (J_x)^2 = -id. Coefficients are real; complex
/// arguments reuse the same coefficients (the holomorphic extension is
/// exact for polynomials).
struct OperatorField {
  MatPoly J;
  double radius = 0.5;

  Eigen::Index dim() const { return J.dim(); }
  int nvars() const { return J.nvars(); }

  Mat eval(const Vec& x) const { return J.eval(x); }

  /// ||J_x^2 + id|| at x.
  double structure_residual(const Vec& x) const;

  /// Throws InvalidStructureError when J_x^2 != -id beyond tol.
  void require_valid_at(const Vec& x, double tol = 1e-6) const;
};

/// Deterministic point source for a chart ball.
struct ChartSampler {
  int n = 2;
  double r = 0.5;
  int count = 100;
  std::uint64_t seed = 0;

  /// Real points strictly inside B(0, r).
  std::vector<Vec> real_points() const;
  /// Complex points with |z| <= r / (2e), the holomorphic-extension domain.
  std::vector<Vec> complex_points() const;
};

/// [a,b]_x = a'_x(b_x) - b'_x(a_x), exact on polynomial data.
Vec lie_bracket(const VecPoly& a, const VecPoly& b, const Vec& x);

/// Torsion via the defining four-bracket expression
/// J[Ja,b] + J[a,Jb] + [a,b] - [Ja,Jb] evaluated at x.
Vec torsion_bracket(const OperatorField& F, const VecPoly& a, const VecPoly& b,
                    const Vec& x);

/// Torsion via the pointwise derivative formula; depends only on the values
/// u = a_x, v = b_x. With D_w J the derivative of J in direction w,
///   -(D_v J)(J_x u) - (D_{J_x v} J)(u) + (D_u J)(J_x v) + (D_{J_x u} J)(v).
Vec torsion_pointwise(const OperatorField& F, const Vec& u, const Vec& v,
                      const Vec& x);

/// Residual of (Jc)'_x u = J'_x(c_x, u) + J_x c'_x u.
double check_identity_1(const OperatorField& F, const VecPoly& c, const Vec& x,
                        const Vec& u);

/// Residual of J'_x(J_x u, v) + J_x J'_x(u, v) = 0.
double check_identity_2(const OperatorField& F, const Vec& x, const Vec& u,
                        const Vec& v);

enum class AcsKind {
  /// J = (id+N) J0 (id+N)^{-1}, N random; torsion generically nonzero.
  generic,
  /// J = (id+M)^{-1} J0 (id+M) with M the Jacobian of a polynomial map;
  /// the pullback of the constant structure, hence torsion-free.
  integrable,
};

/// Block rotation matrix: the constant reference structure on R^n.
RMat block_rotation(int n);

/// Conjugated almost complex structure with certified residual
/// ||J_x^2 + id|| <= 1e-8 on sampled points. `eps` bounds the conjugation
/// perturbation: sup ||N(x)|| <= eps on the chart.
OperatorField generate_acs(int n, std::uint64_t seed, int d, double eps,
                           AcsKind kind = AcsKind::generic,
                           double radius = 0.5);

/// Max ||J_x^2 + id|| over `samples` random points in the chart ball.
double certify_acs(const OperatorField& F, int samples, std::uint64_t seed);

/// Spectral projections onto the +i / -i eigenspaces of J_z:
/// P_plus = (id - i J_z)/2 projects onto Ker(J_z - i id).
std::pair<Mat, Mat> eigenprojections(const OperatorField& F, const Vec& z);

struct InvolutivityReport {
  /// max over samples of ||P_opposite [a,b]_z|| / ||[a,b]_z||.
  double max_closure_residual = 0.0;
  /// Set when ||[a,b]|| was negligible at every sample.
  bool inconclusive = false;
  int samples_used = 0;
};

/// Random polynomial field with real coefficients, all terms up to degree d.
VecPoly random_vec_poly(int n, int d, Rng& rng, double scale = 1.0);

/// Brackets of sections of the -i eigendistribution, tested for closure.
/// Sections are P_minus * a for random polynomial fields a; P_minus is the
/// polynomial projection field, so sections and brackets are exact.
InvolutivityReport check_involutivity(const OperatorField& F,
                                      const ChartSampler& sampler);

/// True iff (J_z - i id) restricted to Ker(J_0 + i id) is injective with
/// range equal to Ker(J_z + i id).
bool check_exactness(const OperatorField& F, const Vec& z,
                     double tol = kRankTol);

}  // namespace nl
