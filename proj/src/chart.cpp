#include "nl/chart.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nl {

namespace {

const Cplx kI(0.0, 1.0);

// All multi-indices with lo <= |alpha| <= hi over n variables.
void enumerate_midx(int n, int lo, int hi, int var, int degree_left, MIdx cur,
                    std::vector<MIdx>& out) {
  if (var == n) {
    int deg = midx_degree(cur);
    if (deg >= lo && deg <= hi) out.push_back(cur);
    return;
  }
  for (int e = 0; e <= degree_left; ++e)
    enumerate_midx(n, lo, hi, var + 1, degree_left - e, midx_bump(cur, var, e),
                   out);
}

std::vector<MIdx> midx_range(int n, int lo, int hi) {
  std::vector<MIdx> out;
  enumerate_midx(n, lo, hi, 0, hi, 0, out);
  std::sort(out.begin(), out.end(),
            [&](MIdx a, MIdx b) { return midx_lex_less(a, b, n); });
  return out;
}

Mat random_matrix(int n, Rng& rng) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Cplx(rng.gaussian(), 0.0);
  return m;
}

Vec random_real_vector(int n, Rng& rng) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = Cplx(rng.gaussian(), 0.0);
  return v;
}

}  // namespace

double OperatorField::structure_residual(const Vec& x) const {
  Mat Jx = J.eval(x);
  return (Jx * Jx + Mat::Identity(dim(), dim())).operatorNorm();
}

void OperatorField::require_valid_at(const Vec& x, double tol) const {
  double res = structure_residual(x);
  if (res > tol)
    throw InvalidStructureError("operator field violates J^2 = -id, residual " +
                                std::to_string(res));
}

std::vector<Vec> ChartSampler::real_points() const {
  Rng rng(seed);
  std::vector<Vec> pts;
  pts.reserve(count);
  for (int s = 0; s < count; ++s) {
    Vec dir = random_real_vector(n, rng);
    double nd = dir.norm();
    if (nd == 0.0) nd = 1.0;
    double rad = r * 0.9 * std::pow(rng.uniform(), 1.0 / n);
    pts.push_back(Vec(dir * (rad / nd)));
  }
  return pts;
}

std::vector<Vec> ChartSampler::complex_points() const {
  Rng rng(seed ^ 0x636f6d706c6578ull);
  const double rmax = r / (2.0 * std::exp(1.0));
  std::vector<Vec> pts;
  pts.reserve(count);
  for (int s = 0; s < count; ++s) {
    Vec z(n);
    for (int i = 0; i < n; ++i) z(i) = Cplx(rng.gaussian(), rng.gaussian());
    double nz = z.norm();
    if (nz == 0.0) nz = 1.0;
    double rad = rmax * 0.9 * std::pow(rng.uniform(), 1.0 / (2 * n));
    pts.push_back(Vec(z * (rad / nz)));
  }
  return pts;
}

Vec lie_bracket(const VecPoly& a, const VecPoly& b, const Vec& x) {
  if (a.dim() != b.dim() || a.nvars() != b.nvars() || x.size() != a.nvars())
    throw ShapeError("lie_bracket: dimension mismatch");
  return a.jacobian(x) * b.eval(x) - b.jacobian(x) * a.eval(x);
}

Vec torsion_bracket(const OperatorField& F, const VecPoly& a, const VecPoly& b,
                    const Vec& x) {
  F.require_valid_at(x);
  VecPoly Ja = F.J * a;
  VecPoly Jb = F.J * b;
  Mat Jx = F.eval(x);
  return Jx * lie_bracket(Ja, b, x) + Jx * lie_bracket(a, Jb, x) +
         lie_bracket(a, b, x) - lie_bracket(Ja, Jb, x);
}

Vec torsion_pointwise(const OperatorField& F, const Vec& u, const Vec& v,
                      const Vec& x) {
  F.require_valid_at(x);
  Mat Jx = F.eval(x);
  Vec Ju = Jx * u;
  Vec Jv = Jx * v;
  // J'_x(operand, direction): differentiate in the second slot, apply to
  // the first.
  return Vec(-F.J.dir_deriv(x, v) * Ju - F.J.dir_deriv(x, Jv) * u +
             F.J.dir_deriv(x, u) * Jv + F.J.dir_deriv(x, Ju) * v);
}

double check_identity_1(const OperatorField& F, const VecPoly& c, const Vec& x,
                        const Vec& u) {
  VecPoly Jc = F.J * c;
  Vec lhs = Jc.jacobian(x) * u;
  Vec rhs = F.J.dir_deriv(x, u) * c.eval(x) + F.eval(x) * (c.jacobian(x) * u);
  return (lhs - rhs).norm();
}

double check_identity_2(const OperatorField& F, const Vec& x, const Vec& u,
                        const Vec& v) {
  Mat Jx = F.eval(x);
  Mat DvJ = F.J.dir_deriv(x, v);
  return (DvJ * (Jx * u) + Jx * (DvJ * u)).norm();
}

RMat block_rotation(int n) {
  RMat j0 = RMat::Zero(n, n);
  for (int b = 0; b + 1 < n; b += 2) {
    j0(b, b + 1) = -1.0;
    j0(b + 1, b) = 1.0;
  }
  return j0;
}

OperatorField generate_acs(int n, std::uint64_t seed, int d, double eps,
                           AcsKind kind, double radius) {
  if (n <= 0 || n % 2 != 0)
    throw InvalidInputError("generate_acs: dimension must be even");
  if (n > kMaxVars) throw InvalidInputError("generate_acs: dimension too large");
  if (eps < 0.0 || eps > 0.5)
    throw InvalidInputError(
        "generate_acs: eps must be in [0, 0.5] so that id + N stays "
        "invertible on the chart");

  Rng rng = Rng(seed).split(0x616373);
  MatPoly N(n, n);

  if (eps > 0.0 && d > 0) {
    if (kind == AcsKind::generic) {
      std::vector<MIdx> idxs = midx_range(n, 1, d);
      for (MIdx m : idxs) {
        Mat g = random_matrix(n, rng);
        double nm = g.operatorNorm();
        if (nm == 0.0) continue;
        double rpow = std::pow(radius, midx_degree(m));
        N.add_term(m, Mat(g * (eps / (nm * idxs.size() * rpow))));
      }
    } else {
      // M = psi' for a random polynomial map psi with terms of degree >= 2,
      // then scaled so that sup ||M|| <= eps on the chart.
      std::vector<MIdx> idxs = midx_range(n, 2, d + 1);
      for (MIdx m : idxs) {
        Vec coeff = random_real_vector(n, rng);
        for (int v = 0; v < n; ++v) {
          int e = midx_exp(m, v);
          if (e == 0) continue;
          Mat col = Mat::Zero(n, n);
          col.col(v) = static_cast<double>(e) * coeff;
          N.add_term(midx_bump(m, v, -1), col);
        }
      }
      double b = N.norm_bound(radius);
      if (b > 0.0) N = N.scaled(eps / b);
    }
  }

  double eta = N.norm_bound(radius);
  // Truncation order for (id + N)^{-1}: tail eta^{K+1}/(1-eta) <= 1e-10.
  int K = 0;
  if (eta > 1e-12) {
    K = static_cast<int>(
            std::ceil(std::log(1e-10 * (1.0 - eta)) / std::log(eta))) -
        1;
    K = std::max(K, 1);
    if (K > 80)
      throw InvalidInputError("generate_acs: eps too close to the "
                              "invertibility bound for truncation");
  }

  MatPoly id = MatPoly::identity(n, n);
  MatPoly inv = id;  // Horner form of sum_{k<=K} (-N)^k
  for (int k = 0; k < K; ++k) inv = id - N * inv;

  MatPoly j0 = MatPoly::constant(n, complexify(block_rotation(n)));
  MatPoly T = id + N;

  OperatorField F;
  F.radius = radius;
  F.J = (kind == AcsKind::generic) ? T * (j0 * inv) : inv * (j0 * T);
  F.J.prune(0.0);

  double res = certify_acs(F, 50, seed ^ 0xce27ull);
  if (res > 1e-8)
    throw InvalidStructureError(
        "generate_acs: certification failed, residual " + std::to_string(res));
  return F;
}

double certify_acs(const OperatorField& F, int samples, std::uint64_t seed) {
  ChartSampler sampler{static_cast<int>(F.nvars()), F.radius, samples, seed};
  double worst = 0.0;
  for (const Vec& x : sampler.real_points())
    worst = std::max(worst, F.structure_residual(x));
  for (const Vec& z : sampler.complex_points())
    worst = std::max(worst, F.structure_residual(z));
  return worst;
}

std::pair<Mat, Mat> eigenprojections(const OperatorField& F, const Vec& z) {
  F.require_valid_at(z);
  Mat Jz = F.eval(z);
  Mat id = Mat::Identity(F.dim(), F.dim());
  return {0.5 * (id - kI * Jz), 0.5 * (id + kI * Jz)};
}

VecPoly random_vec_poly(int n, int d, Rng& rng, double scale) {
  VecPoly p(n, n);
  for (MIdx m : midx_range(n, 0, d))
    p.add_term(m, Vec(random_real_vector(n, rng) * scale));
  return p;
}

InvolutivityReport check_involutivity(const OperatorField& F,
                                      const ChartSampler& sampler) {
  const int n = F.nvars();
  MatPoly id = MatPoly::identity(n, n);
  MatPoly p_minus = (id + F.J.scaled(kI)).scaled(0.5);

  Rng rng = Rng(sampler.seed).split(0x696e76);
  VecPoly a = random_vec_poly(n, 2, rng, 1.0);
  VecPoly b = random_vec_poly(n, 2, rng, 1.0);
  VecPoly c1 = p_minus * a;
  VecPoly c2 = p_minus * b;

  InvolutivityReport rep;
  for (const Vec& z : sampler.complex_points()) {
    Vec w = lie_bracket(c1, c2, z);
    double nw = w.norm();
    if (nw <= 1e-12) continue;
    Mat p_plus = 0.5 * (Mat::Identity(n, n) - kI * F.eval(z));
    rep.max_closure_residual =
        std::max(rep.max_closure_residual, (p_plus * w).norm() / nw);
    ++rep.samples_used;
  }
  rep.inconclusive = (rep.samples_used == 0);
  return rep;
}

bool check_exactness(const OperatorField& F, const Vec& z, double tol) {
  const Eigen::Index n = F.dim();
  Mat id = Mat::Identity(n, n);
  Mat J0 = F.eval(Vec::Zero(F.nvars()));
  Subspace z0_minus = kernel(J0 + kI * id, tol);

  Mat A = F.eval(z) - kI * id;
  Mat image = A * z0_minus.basis();
  if (rank_of(image, tol) != z0_minus.dim()) return false;
  return range(image, tol).equals(kernel(F.eval(z) + kI * id, tol));
}

}  // namespace nl
