#include "nl/fixtures.hpp"

#include <cmath>

#include "nl/chart.hpp"

namespace nl {

namespace {

Subspace span_cols(const RMat& cols) { return Subspace(cols.cast<Cplx>()); }

RMat unit_cols(int dim, std::initializer_list<int> idx) {
  RMat m = RMat::Zero(dim, static_cast<Eigen::Index>(idx.size()));
  Eigen::Index j = 0;
  for (int i : idx) m(i, j++) = 1.0;
  return m;
}

RMat rotation_e1e2(double t) {
  RMat a = RMat::Identity(3, 3);
  a(0, 0) = std::cos(t);
  a(0, 1) = -std::sin(t);
  a(1, 0) = std::sin(t);
  a(1, 1) = std::cos(t);
  return a;
}

RMat random_invertible(int n, Rng& rng) {
  for (;;) {
    RMat p(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) p(i, j) = rng.gaussian();
    Eigen::JacobiSVD<RMat> svd(p);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) > 0.0 && sv(0) / sv(sv.size() - 1) < 20.0) return p;
  }
}

}  // namespace

LieFixture fixture_su2() {
  LieFixture fx;
  fx.name = "su2";
  fx.pair.g = LieAlgebra::zero(3);
  fx.pair.g.set_constant(0, 1, 2, 1.0);
  fx.pair.g.set_constant(1, 2, 0, 1.0);
  fx.pair.g.set_constant(2, 0, 1, 1.0);
  // Realization by -(i/2) sigma_k.
  Mat s1(2, 2), s2(2, 2), s3(2, 2);
  s1 << 0, 1, 1, 0;
  s2 << 0, Cplx(0, -1), Cplx(0, 1), 0;
  s3 << 1, 0, 0, -1;
  fx.pair.g.basis_matrices = {Mat(Cplx(0, -0.5) * s1), Mat(Cplx(0, -0.5) * s2),
                              Mat(Cplx(0, -0.5) * s3)};
  fx.pair.h = span_cols(unit_cols(3, {2}));
  fx.pair.V = span_cols(unit_cols(3, {0, 1}));
  fx.pair.H_samples = {rotation_e1e2(0.0), rotation_e1e2(0.7),
                       rotation_e1e2(2.1)};
  RMat I = RMat::Zero(3, 3);
  I(1, 0) = 1.0;   // I e1 = e2
  I(0, 1) = -1.0;  // I e2 = -e1
  fx.I = {I};
  return fx;
}

LieFixture fixture_abelian2() {
  LieFixture fx;
  fx.name = "abelian2";
  fx.pair.g = LieAlgebra::zero(2);
  fx.pair.h = Subspace::zero(2);
  fx.pair.V = Subspace::full(2);
  fx.pair.H_samples = {RMat::Identity(2, 2), RMat(-RMat::Identity(2, 2))};
  RMat I(2, 2);
  I << 0, -1, 1, 0;
  fx.I = {I};
  return fx;
}

LieFixture fixture_abelian4() {
  LieFixture fx;
  fx.name = "abelian4";
  fx.pair.g = LieAlgebra::zero(4);
  fx.pair.h = Subspace::zero(4);
  fx.pair.V = Subspace::full(4);
  fx.pair.H_samples = {RMat::Identity(4, 4)};
  fx.I = {block_rotation(4)};
  return fx;
}

namespace {
LieFixture heisenberg4_base() {
  LieFixture fx;
  fx.pair.g = LieAlgebra::zero(4);
  fx.pair.g.set_constant(0, 1, 2, 1.0);  // [e1, e2] = e3
  fx.pair.h = Subspace::zero(4);
  fx.pair.V = Subspace::full(4);
  fx.pair.H_samples = {RMat::Identity(4, 4)};
  return fx;
}
}  // namespace

LieFixture fixture_heisenberg4() {
  LieFixture fx = heisenberg4_base();
  fx.name = "heisenberg4";
  // I e1 = e3, I e3 = -e1, I e2 = e4, I e4 = -e2: pairs the bracket
  // generators with the center, so the criterion fails.
  RMat I = RMat::Zero(4, 4);
  I(2, 0) = 1.0;
  I(0, 2) = -1.0;
  I(3, 1) = 1.0;
  I(1, 3) = -1.0;
  fx.I = {I};
  return fx;
}

LieFixture fixture_heisenberg4_true() {
  LieFixture fx = heisenberg4_base();
  fx.name = "heisenberg4_true";
  fx.I = {block_rotation(4)};
  return fx;
}

LieFixture random_fixture(std::uint64_t seed) {
  Rng rng(seed);
  int family = static_cast<int>(rng.below(4));

  LieFixture fx;
  switch (family) {
    case 0: {  // abelian
      int dim = 2 * (1 + static_cast<int>(rng.below(4)));
      fx.name = "random_abelian";
      fx.pair.g = LieAlgebra::zero(dim);
      fx.pair.h = Subspace::zero(dim);
      fx.pair.V = Subspace::full(dim);
      fx.pair.H_samples = {RMat::Identity(dim, dim)};
      break;
    }
    case 1: {  // two-step nilpotent: generators bracket into the center
      int gens = 2 + static_cast<int>(rng.below(2)) * 2;  // 2 or 4
      int cent = 2;
      int dim = gens + cent;
      fx.name = "random_nilpotent";
      fx.pair.g = LieAlgebra::zero(dim);
      for (int i = 0; i < gens; ++i)
        for (int j = i + 1; j < gens; ++j)
          for (int k = 0; k < cent; ++k)
            fx.pair.g.set_constant(i, j, gens + k,
                                   std::round(4.0 * rng.uniform(-1.0, 1.0)) / 2.0);
      fx.pair.h = Subspace::zero(dim);
      fx.pair.V = Subspace::full(dim);
      fx.pair.H_samples = {RMat::Identity(dim, dim)};
      break;
    }
    case 2: {  // su(2) + R, h = 0
      fx.name = "random_su2_plus_r";
      fx.pair.g = LieAlgebra::zero(4);
      fx.pair.g.set_constant(0, 1, 2, 1.0);
      fx.pair.g.set_constant(1, 2, 0, 1.0);
      fx.pair.g.set_constant(2, 0, 1, 1.0);
      fx.pair.h = Subspace::zero(4);
      fx.pair.V = Subspace::full(4);
      fx.pair.H_samples = {RMat::Identity(4, 4)};
      break;
    }
    default: {  // su(2)/u(1) with the rotation structure
      LieFixture base = fixture_su2();
      fx = base;
      fx.name = "random_su2_quotient";
      break;
    }
  }

  const int dim = fx.pair.g.dim;
  if (family == 3) {
    // Only a basis change of the (e1,e2) plane keeps check_IV valid here.
    return fx;
  }

  // Random complex structure on V = g: I = S J0 S^{-1}.
  RMat s = random_invertible(dim, rng);
  RMat I = s * block_rotation(dim) * s.inverse();
  // Renormalize: numerical conjugation keeps I^2 = -id to machine precision.
  fx.I = {I};
  return fx;
}

}  // namespace nl
