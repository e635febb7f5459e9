#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nl/flag.hpp"

using namespace nl;

namespace {

const Cplx kI(0.0, 1.0);

FlagData flag_2x2_rank1() {
  StarAlgebra A{{2}};
  FlagSpec f{1, {{1}}};
  return build_flag_data(A, f, 5);
}

}  // namespace

TEST_CASE("StarAlgebra dimensions") {
  StarAlgebra A{{2, 3}};
  CHECK(A.total() == 5);
  CHECK(A.skew_dim() == 13);
}

TEST_CASE("FlagSpec validation and projections") {
  StarAlgebra A{{2}};
  FlagSpec f{1, {{1}}};
  f.validate(A);

  Mat p = f.projection(A, 0);
  CHECK(p(0, 0) == 1.0);
  CHECK(p(1, 1) == 0.0);
  CHECK((p * p - p).norm() == 0.0);
  CHECK((p - p.adjoint()).norm() == 0.0);

  // Nested flags: p_i p_j = p_i for i <= j.
  StarAlgebra B{{3}};
  FlagSpec g{2, {{1, 2}}};
  g.validate(B);
  Mat p1 = g.projection(B, 0), p2 = g.projection(B, 1);
  CHECK((p1 * p2 - p1).norm() == 0.0);

  CHECK_THROWS_AS((FlagSpec{1, {{3}}}).validate(A), InvalidInputError);
  CHECK_THROWS_AS((FlagSpec{2, {{2, 1}}}).validate(A), InvalidInputError);
  CHECK_THROWS_AS((FlagSpec{1, {{1}, {1}}}).validate(A), InvalidInputError);
  CHECK_THROWS_AS((FlagSpec{0, {}}).validate(A), InvalidInputError);
}

TEST_CASE("SkewCoords is a faithful chart") {
  StarAlgebra A{{2, 1}};
  SkewCoords coords(A);
  CHECK(coords.dim() == A.skew_dim());

  Rng rng(61);
  // Round-trip a random skew-Hermitian block-diagonal element.
  Mat b = Mat::Zero(3, 3);
  Mat g(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = Cplx(rng.gaussian(), rng.gaussian());
  b.topLeftCorner(2, 2) = g - g.adjoint();
  b(2, 2) = Cplx(0.0, rng.gaussian());
  CHECK((coords.matrix_of(Vec(coords.coords(b))) - b).norm() < 1e-12);

  // Coordinates are complex-linear and turn -b* into conjugation.
  Vec z = coords.coords(b);
  CHECK((coords.coords(Mat(kI * b)) - Cplx(0, 1) * z).norm() < 1e-12);
  CHECK((coords.coords(Mat(-b.adjoint())) - z.conjugate()).norm() < 1e-12);

  // The structure constants define a genuine Lie algebra realized by the
  // basis matrices.
  AlgebraReport rep = validate_algebra(coords.lie_algebra());
  CHECK(rep.ok);
}

TEST_CASE("2x2 rank-1 flag: block counts") {
  FlagData data = flag_2x2_rank1();
  CHECK(data.pair.g.dim == 4);        // u(2)
  CHECK(data.pair.h.dim() == 2);      // diagonal skews
  CHECK(data.pair.V.dim() == 2);      // off-diagonal skews
  CHECK(data.k.dim() == 3);           // upper-triangular 2x2 matrices
  CHECK(validate_pair(data.pair).ok);

  // k contains the strict upper corner and the diagonal, not the lower one.
  Mat e12 = Mat::Zero(2, 2), e21 = Mat::Zero(2, 2);
  e12(0, 1) = 1.0;
  e21(1, 0) = 1.0;
  CHECK(data.k.contains(data.coords.coords(e12)));
  CHECK_FALSE(data.k.contains(data.coords.coords(e21)));
  CHECK(data.k.contains(data.coords.coords(Mat(Mat::Identity(2, 2)))));
}

TEST_CASE("degenerate flag p = unit") {
  StarAlgebra A{{2}};
  FlagSpec f{1, {{2}}};
  FlagData data = build_flag_data(A, f, 9);
  CHECK(data.pair.h.dim() == data.pair.g.dim);
  CHECK(data.pair.V.dim() == 0);
  CHECK(data.k.dim() == 4);  // all of A
  CHECK(verify_flag(data).pass());
}

TEST_CASE("3x3 flag with ranks (1,2)") {
  StarAlgebra A{{3}};
  FlagSpec f{2, {{1, 2}}};
  FlagData data = build_flag_data(A, f, 13);
  CHECK(data.k.dim() == 6);       // complex upper-triangular 3x3
  CHECK(data.pair.h.dim() == 3);  // three diagonal imaginary slots
  CHECK(data.pair.V.dim() == 6);
  FlagReport rep = verify_flag(data);
  CHECK(rep.pass());
}

TEST_CASE("two-block algebra with a block-respecting flag") {
  StarAlgebra A{{2, 2}};
  FlagSpec f{1, {{1}, {1}}};
  FlagData data = build_flag_data(A, f, 17);
  CHECK(data.pair.g.dim == 8);
  CHECK(data.pair.h.dim() == 4);
  CHECK(data.pair.V.dim() == 4);
  CHECK(data.k.dim() == 6);
  CHECK(verify_flag(data).pass());
}

TEST_CASE("K0 conditions hold exactly for flags") {
  FlagData data = flag_2x2_rank1();
  Subspace kbar = data.k.conjugate();
  CHECK(subspace_sum(data.k, kbar).dim() == data.pair.g.dim);
  CHECK(subspace_intersect(data.k, kbar).equals(data.pair.h));
  // Complex-structure dimension balance.
  CHECK(data.pair.V.dim() == 2 * (data.k.dim() - data.pair.h.dim()));
}

TEST_CASE("dimension balance across a flag sweep") {
  for (auto [sizes, ranks] :
       std::vector<std::pair<std::vector<int>, std::vector<std::vector<int>>>>{
           {{3}, {{0, 2}}},
           {{4}, {{1, 3}}},
           {{2, 2}, {{1, 0}, {2, 1}}},
       }) {
    StarAlgebra A{sizes};
    FlagSpec f{static_cast<int>(ranks[0].size()), {}};
    // Ranks are stored per block; the rows above are per block already.
    f.ranks = ranks;
    // Sort each block's rank list (the helper table lists them unordered).
    for (auto& rr : f.ranks) std::sort(rr.begin(), rr.end());
    FlagData data = build_flag_data(A, f, 23);
    CAPTURE(sizes[0]);
    CHECK(data.pair.V.dim() == 2 * (data.k.dim() - data.pair.h.dim()));
    CHECK(verify_flag(data).pass());
  }
}

TEST_CASE("unitary samples commute with the flag") {
  FlagData data = flag_2x2_rank1();
  Mat p = data.flag.projection(data.A, 0);
  REQUIRE(data.unitaries.size() == 10);
  for (const Mat& u : data.unitaries) {
    CHECK((u * u.adjoint() - Mat::Identity(2, 2)).norm() < 1e-12);
    CHECK((u * p - p * u).norm() < 1e-12);
  }
}

TEST_CASE("flag data is deterministic in the seed") {
  FlagData a = build_flag_data(StarAlgebra{{3}}, FlagSpec{2, {{1, 2}}}, 77);
  FlagData b = build_flag_data(StarAlgebra{{3}}, FlagSpec{2, {{1, 2}}}, 77);
  REQUIRE(a.unitaries.size() == b.unitaries.size());
  for (size_t i = 0; i < a.unitaries.size(); ++i)
    CHECK((a.unitaries[i] - b.unitaries[i]).norm() == 0.0);
}
