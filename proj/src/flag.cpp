#include "nl/flag.hpp"

#include <algorithm>
#include <numeric>

namespace nl {

namespace {

const Cplx kI(0.0, 1.0);

Mat random_unitary(int d, Rng& rng) {
  Mat g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Cplx(rng.gaussian(), rng.gaussian());
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  // Fix the phase ambiguity so the draw is deterministic in the entries.
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    Cplx rjj = r(j, j);
    if (std::abs(rjj) > 0) q.col(j) *= rjj / std::abs(rjj);
  }
  return q;
}

}  // namespace

int StarAlgebra::total() const {
  return std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
}

int StarAlgebra::skew_dim() const {
  int m = 0;
  for (int d : block_sizes) m += d * d;
  return m;
}

void FlagSpec::validate(const StarAlgebra& A) const {
  if (nflags < 1) throw InvalidInputError("flag: need at least one projection");
  if (ranks.size() != A.block_sizes.size())
    throw InvalidInputError("flag: one rank sequence per block required");
  for (size_t b = 0; b < ranks.size(); ++b) {
    if (static_cast<int>(ranks[b].size()) != nflags)
      throw InvalidInputError("flag: rank sequence length must equal n");
    int prev = 0;
    for (int r : ranks[b]) {
      if (r < prev || r > A.block_sizes[b])
        throw InvalidInputError("flag: ranks must be nondecreasing and fit "
                                "the block");
      prev = r;
    }
  }
}

Mat FlagSpec::projection(const StarAlgebra& A, int j) const {
  int n = A.total();
  Mat p = Mat::Zero(n, n);
  int off = 0;
  for (size_t b = 0; b < A.block_sizes.size(); ++b) {
    for (int t = 0; t < ranks[b][j]; ++t) p(off + t, off + t) = 1.0;
    off += A.block_sizes[b];
  }
  return p;
}

SkewCoords::SkewCoords(const StarAlgebra& A) : A_(A) {
  int n = A.total();
  int off = 0;
  for (int d : A.block_sizes) {
    for (int p = 0; p < d; ++p) {
      Mat m = Mat::Zero(n, n);
      m(off + p, off + p) = kI;
      basis_.push_back(m);
      slots_.push_back({off, p, p, 0});
    }
    for (int p = 0; p < d; ++p)
      for (int q = p + 1; q < d; ++q) {
        Mat mu = Mat::Zero(n, n);
        mu(off + p, off + q) = 1.0;
        mu(off + q, off + p) = -1.0;
        basis_.push_back(mu);
        slots_.push_back({off, p, q, 1});
        Mat mv = Mat::Zero(n, n);
        mv(off + p, off + q) = kI;
        mv(off + q, off + p) = kI;
        basis_.push_back(mv);
        slots_.push_back({off, p, q, 2});
      }
    off += d;
  }
}

Vec SkewCoords::coords(const Mat& b) const {
  Vec z(dim());
  for (int i = 0; i < dim(); ++i) {
    const Slot& s = slots_[i];
    Cplx bpq = b(s.offset + s.p, s.offset + s.q);
    Cplx bqp = b(s.offset + s.q, s.offset + s.p);
    switch (s.kind) {
      case 0: z(i) = -kI * bpq; break;
      case 1: z(i) = 0.5 * (bpq - bqp); break;
      default: z(i) = -0.5 * kI * (bpq + bqp); break;
    }
  }
  return z;
}

RVec SkewCoords::real_coords(const Mat& b) const { return coords(b).real(); }

Mat SkewCoords::matrix_of(const Vec& z) const {
  int n = A_.total();
  Mat out = Mat::Zero(n, n);
  for (int i = 0; i < dim(); ++i) out += z(i) * basis_[i];
  return out;
}

LieAlgebra SkewCoords::lie_algebra() const {
  LieAlgebra g = LieAlgebra::zero(dim());
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j) {
      RVec br = real_coords(Mat(basis_[i] * basis_[j] - basis_[j] * basis_[i]));
      for (int k = 0; k < dim(); ++k)
        if (br(k) != 0.0) g.set_constant(i, j, k, br(k));
    }
  g.basis_matrices = basis_;
  return g;
}

FlagData build_flag_data(const StarAlgebra& A, const FlagSpec& flag,
                         std::uint64_t seed, int n_unitaries) {
  flag.validate(A);
  SkewCoords coords(A);
  const int m = coords.dim();
  const int n = A.total();

  // Refined partition within each block: segments cut by the flag ranks,
  // including the remainder above p_n. q-index of a local row = segment id.
  std::vector<std::vector<int>> cuts(A.block_sizes.size());
  for (size_t b = 0; b < A.block_sizes.size(); ++b) {
    std::vector<int> c = flag.ranks[b];
    c.push_back(A.block_sizes[b]);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    cuts[b] = c;
  }
  auto qindex = [&](size_t b, int local_row) {
    int idx = 0;
    while (cuts[b][idx] <= local_row) ++idx;
    return idx;
  };
  auto block_of = [&](int global) {
    size_t b = 0;
    int off = 0;
    while (global >= off + A.block_sizes[b]) off += A.block_sizes[b], ++b;
    return std::pair<size_t, int>(b, off);
  };

  // h: slots inside one segment; V: slots crossing segments.
  std::vector<int> h_slots, v_slots;
  {
    // Recover slot structure by probing basis elements.
    for (int i = 0; i < m; ++i) {
      const Mat& B = coords.basis_element(i);
      int row = -1, col = -1;
      for (int r = 0; r < n && row < 0; ++r)
        for (int c2 = 0; c2 < n; ++c2)
          if (B(r, c2) != Cplx(0.0, 0.0)) {
            row = r;
            col = c2;
            break;
          }
      auto [b, off] = block_of(row);
      bool same = qindex(b, row - off) == qindex(b, col - off);
      (same ? h_slots : v_slots).push_back(i);
    }
  }

  auto unit_cols = [m](const std::vector<int>& idx) {
    Mat out = Mat::Zero(m, static_cast<Eigen::Index>(idx.size()));
    for (size_t j = 0; j < idx.size(); ++j) out(idx[j], j) = 1.0;
    return out;
  };

  FlagData data{A, flag, coords, {}, Subspace::zero(m), {}};
  data.pair.g = coords.lie_algebra();
  data.pair.h = Subspace(unit_cols(h_slots));
  data.pair.V = Subspace(unit_cols(v_slots));

  // k: block upper-triangular w.r.t. the refined partition.
  std::vector<Vec> k_cols;
  {
    int off = 0;
    for (size_t b = 0; b < A.block_sizes.size(); ++b) {
      int d = A.block_sizes[b];
      for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t)
          if (qindex(b, s) <= qindex(b, t)) {
            Mat e = Mat::Zero(n, n);
            e(off + s, off + t) = 1.0;
            k_cols.push_back(coords.coords(e));
          }
      off += d;
    }
  }
  Mat kbasis(m, static_cast<Eigen::Index>(k_cols.size()));
  for (size_t j = 0; j < k_cols.size(); ++j) kbasis.col(j) = k_cols[j];
  data.k = Subspace(kbasis);

  // Random unitaries commuting with the flag: block-diagonal w.r.t. the
  // refined partition.
  Rng rng = Rng(seed).split(0x666c6167);
  for (int s = 0; s < n_unitaries; ++s) {
    Mat u = Mat::Zero(n, n);
    int off = 0;
    for (size_t b = 0; b < A.block_sizes.size(); ++b) {
      int prev = 0;
      for (int cut : cuts[b]) {
        int seg = cut - prev;
        if (seg > 0)
          u.block(off + prev, off + prev, seg, seg) = random_unitary(seg, rng);
        prev = cut;
      }
      off += A.block_sizes[b];
    }
    data.unitaries.push_back(u);
    RMat ad(m, m);
    for (int i = 0; i < m; ++i)
      ad.col(i) = coords.real_coords(
          Mat(u * coords.basis_element(i) * u.adjoint()));
    data.pair.H_samples.push_back(ad);
  }
  return data;
}

FlagReport verify_flag(const FlagData& data) {
  FlagReport rep;
  rep.k0 = check_K0(data.pair, data.k);
  rep.nu_iso = nu_iso_check(data.pair, data.k);

  PartialStructure I = beta(data.pair, data.k);
  rep.iv_membership = check_IV(data.pair, I);
  rep.criterion = integrability_criterion(data.pair, I);
  rep.roundtrip_i = roundtrip_I(data.pair, I);
  rep.roundtrip_k = roundtrip_k(data.pair, data.k);

  Mat P = data.k.projector();
  for (const Mat& u : data.unitaries)
    for (Eigen::Index j = 0; j < data.k.dim(); ++j) {
      Mat W = data.coords.matrix_of(Vec(data.k.basis().col(j)));
      Vec v = data.coords.coords(Mat(u * W * u.adjoint()));
      rep.ad_residual = std::max(rep.ad_residual, (v - P * v).norm());
    }
  return rep;
}

}  // namespace nl
