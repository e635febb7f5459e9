#pragma once

#include <cstdint>
#include <vector>

#include "nl/lie.hpp"
#include "nl/rng.hpp"

namespace nl {

/// Finite-dimensional C*-algebra: block-diagonal complex matrices with the
/// given block sizes.
struct StarAlgebra {
  std::vector<int> block_sizes;

  int total() const;
  /// Real dimension of the skew-adjoint part (= complex dimension of A).
  int skew_dim() const;
};

/// A flag of projections p_1 <= ... <= p_n, block-respecting and diagonal:
/// within block b, p_j has rank ranks[b][j].
struct FlagSpec {
  int nflags = 1;
  /// ranks[b][j], nondecreasing in j, each <= block size.
  std::vector<std::vector<int>> ranks;

  void validate(const StarAlgebra& A) const;  // throws InvalidInputError
  /// The j-th projection as a matrix (0-based j < nflags).
  Mat projection(const StarAlgebra& A, int j) const;
};

/// Coordinate chart on the skew-adjoint part of A: a fixed real basis of
/// the skew-Hermitian block-diagonal matrices, with complex-linear
/// extension to all of A. Conjugation b -> -b* is componentwise coordinate
/// conjugation by construction.
class SkewCoords {
public:
  explicit SkewCoords(const StarAlgebra& A);

  int dim() const { return static_cast<int>(basis_.size()); }
  const Mat& basis_element(int i) const { return basis_[i]; }

  /// Complex coordinates of an arbitrary element of A.
  Vec coords(const Mat& b) const;
  /// Real coordinates of a skew-Hermitian element.
  RVec real_coords(const Mat& b) const;
  Mat matrix_of(const Vec& coords) const;

  /// Structure constants of the skew-adjoint part in this basis.
  LieAlgebra lie_algebra() const;

private:
  StarAlgebra A_;
  std::vector<Mat> basis_;
  // (block, row, col) per basis element, plus which of the 1-2 components.
  struct Slot { int offset, p, q, kind; };  // kind 0: diag; 1: re; 2: im
  std::vector<Slot> slots_;
};

struct FlagData {
  StarAlgebra A;
  FlagSpec flag;
  SkewCoords coords;
  HomogeneousPair pair;
  Subspace k;          // block upper-triangular part of A, in coordinates
  std::vector<Mat> unitaries;  // the sampled flag-commuting unitaries
};

/// Builds (g, h, V, H-samples) and the candidate subalgebra k from a flag:
/// g = skew-adjoint part, h = commutant of the flag in g, V = skew-adjoint
/// part with vanishing block-diagonal component, k = block upper-triangular
/// elements, H-samples = Ad of random unitaries commuting with the flag.
FlagData build_flag_data(const StarAlgebra& A, const FlagSpec& flag,
                         std::uint64_t seed, int n_unitaries = 10);

struct FlagReport {
  K0Report k0;
  bool nu_iso = false;
  bool iv_membership = false;
  bool criterion = false;
  double roundtrip_i = 0.0;
  double roundtrip_k = 0.0;
  double ad_residual = 0.0;  // max ||(1-P_k) u k u*|| over unitaries
  bool pass() const {
    return k0.pass() && nu_iso && iv_membership && criterion &&
           roundtrip_i <= 1e-9 && roundtrip_k <= 1e-9 && ad_residual <= 1e-10;
  }
};

/// Runs the whole verification chain on flag data.
FlagReport verify_flag(const FlagData& data);

}  // namespace nl
