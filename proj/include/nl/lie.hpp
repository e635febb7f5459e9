#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nl/linalg.hpp"

namespace nl {

/// Finite-dimensional real Lie algebra given by structure constants:
/// [e_i, e_j] = sum_k c^k_{ij} e_k.
struct LieAlgebra {
  int dim = 0;
  /// c[k](i,j) = c^k_{ij}; bracket(x,y)_k = x^T c[k] y.
  std::vector<RMat> c;
  /// Optional matrix realization of the basis (used only for validation).
  std::vector<Mat> basis_matrices;

  static LieAlgebra zero(int dim);

  void set_constant(int i, int j, int k, double value);  // also sets (j,i,k)
  double constant(int i, int j, int k) const { return c[k](i, j); }

  RVec bracket(const RVec& x, const RVec& y) const;
  /// Complexified bracket (same structure constants).
  Vec bracket_c(const Vec& x, const Vec& y) const;

  /// Structure constants in the basis f_i = P e_i.
  LieAlgebra change_basis(const RMat& p) const;
};

struct AlgebraReport {
  double antisymmetry_residual = 0.0;
  double jacobi_residual = 0.0;
  double realization_residual = 0.0;
  bool ok = false;
  std::string detail;  // names the failing triple, if any
};

AlgebraReport validate_algebra(const LieAlgebra& g);

/// The data of G/H at Lie-algebra level: a complement V of h in g and a
/// finite list of sampled algebra automorphisms representing Ad_G(h),
/// h in H (possibly from several connected components).
struct HomogeneousPair {
  LieAlgebra g;
  Subspace h;  // real basis vectors inside C^dim
  Subspace V;
  std::vector<RMat> H_samples;

  /// Relative membership tolerance for all h-membership tests.
  double mem_tol = 1e-8;
};

struct PairReport {
  bool h_subalgebra = false;
  bool direct_complement = false;
  double automorphism_residual = 0.0;
  bool samples_preserve_h = false;
  bool ok = false;
};

PairReport validate_pair(const HomogeneousPair& pair);

/// An operator I on g with h <= Ker I, I(V) <= V, (I|V)^2 = -id.
struct PartialStructure {
  RMat I;
};

/// Is Ibar (on g/h, written in the V basis) a valid base-point structure:
/// Ibar^2 = -id and Ibar commutes with every induced quotient action.
bool check_I0(const HomogeneousPair& pair, const RMat& Ibar);

/// Membership of I in the operator class attached to the complement V:
/// h <= Ker I, I(V) <= V, (I|V)^2 = -id_V, and for every sampled
/// automorphism A: I(Av) - A(Iv) in h.
bool check_IV(const HomogeneousPair& pair, const PartialStructure& I);

/// Quotient matrix of I on g/h in the V basis.
RMat c_V(const HomogeneousPair& pair, const PartialStructure& I);
/// Lift of a quotient operator back to g (zero on h, Ibar on V).
PartialStructure c_V_inverse(const HomogeneousPair& pair, const RMat& Ibar);

/// Induced action of a sampled automorphism on g/h, in the V basis.
RMat quotient_action(const HomogeneousPair& pair, const RMat& A);

/// The integrability criterion: for all basis pairs (x, y) of g,
/// I[Ix,y] + I[x,Iy] + [x,y] - [Ix,Iy] lies in h.
bool integrability_criterion(const HomogeneousPair& pair,
                         const PartialStructure& I);

/// k = h_C + Ker(I_C - i id) ∩ V_C, as a complex subspace of g_C.
Subspace build_k(const HomogeneousPair& pair, const PartialStructure& I);

struct K0Report {
  bool bracket_closed = false;
  bool sum_full = false;       // k + conj(k) = g_C
  bool intersect_h = false;    // k ∩ conj(k) = h_C
  bool ad_invariant = false;   // A(k) <= k for every sample
  bool pass() const {
    return bracket_closed && sum_full && intersect_h && ad_invariant;
  }
};

K0Report check_K0(const HomogeneousPair& pair, const Subspace& k);

/// Reconstructs the real operator whose +i eigenspace on V_C is V_C ∩ k.
/// Inverse of build_k on subspaces passing check_K0.
PartialStructure beta(const HomogeneousPair& pair, const Subspace& k);

/// The real-linear map x + h -> x + k from g/h to g_C/k is an isomorphism.
bool nu_iso_check(const HomogeneousPair& pair, const Subspace& k);

/// ||beta(build_k(I)) - I||.
double roundtrip_I(const HomogeneousPair& pair, const PartialStructure& I);
/// Subspace distance between build_k(beta(k)) and k (0 when spans agree).
double roundtrip_k(const HomogeneousPair& pair, const Subspace& k);

struct EquivalenceReport {
  bool criterion = false;
  bool k_bracket_closed = false;
  bool k_sum_full = false;
  bool k_intersect_h = false;
  bool agreement = false;
};

/// Meta-test: integrability_criterion(I) must agree with bracket-closure of
/// build_k(I); conditions sum/intersect hold by construction.
EquivalenceReport criterion_subalgebra_equivalence(const HomogeneousPair& pair,
                                    const PartialStructure& I);

}  // namespace nl
