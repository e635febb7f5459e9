#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nl/linalg.hpp"
#include "nl/rng.hpp"

using namespace nl;

namespace {

const Cplx I(0.0, 1.0);

RMat j0_2d() {
  RMat j(2, 2);
  j << 0, -1, 1, 0;
  return j;
}

Mat random_mat(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      m(i, j) = Cplx(rng.gaussian(), rng.gaussian());
  return m;
}

}  // namespace

TEST_CASE("complexify basic cases") {
  CHECK(complexify(RMat::Identity(3, 3)).isApprox(Mat::Identity(3, 3)));
  CHECK(complexify(RMat::Zero(2, 2)).norm() == 0.0);
  CHECK_THROWS_AS(complexify(RMat::Zero(2, 3)), ShapeError);

  // J0 has eigenvalues +-i: lambda^2 + 1 = 0 by the hand-computed
  // characteristic polynomial, so J0 -+ i id must be singular.
  Mat j0 = complexify(j0_2d());
  CHECK(rank_of(Mat(j0 - I * Mat::Identity(2, 2))) == 1);
  CHECK(rank_of(Mat(j0 + I * Mat::Identity(2, 2))) == 1);
}

TEST_CASE("complexify is multiplicative") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    RMat a(3, 3), b(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        a(i, j) = rng.gaussian();
        b(i, j) = rng.gaussian();
      }
    CHECK((complexify(RMat(a * b)) - complexify(a) * complexify(b)).norm() <
          1e-12);
  }
}

TEST_CASE("kernel examples") {
  CHECK(kernel(Mat::Zero(3, 3)).dim() == 3);
  CHECK(kernel(Mat::Identity(4, 4)).dim() == 0);

  // J0 (1, -i) = i (1, -i), checked by hand, so Ker(J0 - i id) = span{(1,-i)}.
  Mat j0 = complexify(j0_2d());
  Subspace k = kernel(Mat(j0 - I * Mat::Identity(2, 2)));
  REQUIRE(k.dim() == 1);
  Vec v(2);
  v << 1.0, -I;
  CHECK(k.contains(v));
  CHECK((j0 * v - I * v).norm() < 1e-14);

  // Rank-nullity at tolerance.
  Rng rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    Mat m = random_mat(5, 5, rng);
    if (rep % 3 == 0) m.col(0) = m.col(1);  // force some defect
    CHECK(kernel(m).dim() + rank_of(m) == 5);
  }
}

TEST_CASE("subspace sum, intersection, complement examples") {
  Mat e1 = Mat::Identity(2, 2).col(0);
  Mat e2 = Mat::Identity(2, 2).col(1);
  Subspace a(e1), b(e2);
  CHECK(subspace_sum(a, b).dim() == 2);
  CHECK(subspace_intersect(a, b).dim() == 0);
  CHECK(is_direct_complement(a, b));

  CHECK(subspace_sum(a, a).equals(a));
  CHECK(subspace_intersect(a, a).equals(a));
  CHECK_FALSE(is_direct_complement(a, a));

  Mat j0 = complexify(j0_2d());
  Subspace kp = kernel(Mat(j0 - I * Mat::Identity(2, 2)));
  Subspace km = kernel(Mat(j0 + I * Mat::Identity(2, 2)));
  CHECK(is_direct_complement(kp, km));

  CHECK_THROWS_AS(subspace_sum(a, Subspace::zero(3)), ShapeError);
}

TEST_CASE("Grassmann identity on random pairs") {
  Rng rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    Eigen::Index da = 1 + rng.below(4);
    Eigen::Index db = 1 + rng.below(4);
    Subspace a(random_mat(6, da, rng));
    Subspace b(random_mat(6, db, rng));
    Subspace sum = subspace_sum(a, b);
    Subspace inter = subspace_intersect(a, b);
    CHECK(sum.dim() + inter.dim() == a.dim() + b.dim());
  }
}

TEST_CASE("conjugate_subspace") {
  Vec v(2);
  v << 1.0, I;
  Subspace s((Mat(v)));
  Vec vbar(2);
  vbar << 1.0, -I;
  CHECK(s.conjugate().contains(vbar));
  CHECK(s.conjugate().conjugate().equals(s));

  // Real subspaces are fixed by conjugation.
  Rng rng(5);
  RMat real_basis(4, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) real_basis(i, j) = rng.gaussian();
  Subspace r(real_basis.cast<Cplx>());
  CHECK(r.conjugate().equals(r));

  // span{(1,-i)} + its conjugate spans C^2.
  Subspace sm((Mat(vbar)));
  CHECK(subspace_sum(sm, sm.conjugate()).dim() == 2);
}

TEST_CASE("kernel conjugation symmetry for real operators") {
  Rng rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    RMat m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = rng.gaussian();
    Mat mc = complexify(m);
    Mat id = Mat::Identity(4, 4);
    Subspace a = kernel(Mat(mc - I * id), 1e-7);
    Subspace b = kernel(Mat(mc + I * id), 1e-7);
    CHECK(a.conjugate().equals(b));
  }
}

TEST_CASE("membership stable under basis change") {
  Rng rng(31);
  Mat basis = random_mat(5, 3, rng);
  Subspace s(basis);
  // Re-span by random combinations of the same columns.
  Mat mix = basis * random_mat(3, 3, rng);
  Subspace t(mix);
  CHECK(s.equals(t));
}
