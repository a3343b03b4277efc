#pragma once

#include <optional>

#include "proctheory/numeric.hpp"

namespace pt {

// A completely positive map n -> m, canonically represented by its Choi
// matrix over the scalar backend, with an optional Kraus family witness.
//
// Convention (fixed project-wide): with vec(K)[i*m + r] = K(r, i),
//   choi = Sum_k vec(K_k) vec(K_k)†,
// i.e. choi = Sum_ij |i><j| (x) Phi(|i><j|), input factor first. choi has
// shape (n*m) x (n*m).
struct CpmMap {
  int in_dim = 0, out_dim = 0;
  Mat choi;                          // (n*m) x (n*m), self-adjoint
  std::optional<std::vector<Mat>> kraus;  // each m x n

  Backend backend() const { return choi.backend(); }
};

Mat vec_of(const Mat& k);                 // (n*m) x 1 column
Mat unvec(const Mat& v, int out_dim, int in_dim);

// Doubling: the image of a pure morphism. Works over any involutive backend.
CpmMap dbl(const Mat& f);

CpmMap cpm_from_kraus(int in_dim, int out_dim, std::vector<Mat> kraus);
// Float backend: rebuilds a (minimal) Kraus family by eigendecomposition.
// Throws if choi is not PSD within tol.
std::vector<Mat> kraus_from_choi(const CpmMap& f, double tol = kDefaultTol);

CpmMap cpm_identity(Backend b, int n);
CpmMap cpm_zero(Backend b, int n, int m);
CpmMap cpm_swap(Backend b, int n, int m);
// Discarding: the trace effect n -> 1 (choi = id_n).
CpmMap cpm_discard(Backend b, int n);
// State preparation dbl of a column vector, etc. use dbl directly.

CpmMap cpm_compose(const CpmMap& g, const CpmMap& f);
CpmMap cpm_tensor(const CpmMap& f, const CpmMap& g);
CpmMap cpm_dagger(const CpmMap& f);
CpmMap cpm_add(const CpmMap& f, const CpmMap& g);  // entrywise Choi addition
CpmMap cpm_scale(double r, const CpmMap& f);       // float backend

bool cpm_eq(const CpmMap& a, const CpmMap& b, double tol = kDefaultTol);

// Partial trace of choi over the output leg: the n x n "input density"
// Sum_k K_k† K_k. Causality is this being the identity.
Mat cpm_input_density(const CpmMap& f);
bool is_cpm_causal(const CpmMap& f, double tol = kDefaultTol);
// Trace non-increasing: id - input density PSD within tol (float), or
// entrywise domination for exact nonnegative cases handled by callers.
bool is_cpm_subcausal(const CpmMap& f, double tol = kDefaultTol);

// Choi rank-1 test, scale-invariant: lambda_2 <= tol * lambda_1.
bool is_cpm_pure(const CpmMap& f, double tol = kDefaultTol);

// Marginal over an environment of dimension env appended as the last tensor
// factor of the output: (id (x) discard) o g.
CpmMap cpm_marginal(const CpmMap& g, int sys_out, int env);

// Stinespring-style purification: returns dbl(V) with V : n -> m*k stacking
// a minimal Kraus family (k = Kraus rank; environment is the trailing
// factor). Marginalizing the k-dim leg recovers f.
struct Purification {
  CpmMap pure;  // n -> m*env
  int env = 0;
  Mat isometry_like;  // the underlying V (m*env) x n
};
Purification purify(const CpmMap& f, double tol = kDefaultTol);

// Essential uniqueness: for pure f, g : A -> B (x) C with equal B-marginals,
// returns a unitary U on the (padded) environment with
// (id_B (x) dbl(U)) o f = g within tol. Environments are zero-padded to a
// common dimension first. Throws if the marginals differ beyond tol.
struct EuWitness {
  Mat unitary;     // env x env
  double residual = 0.0;
  int env = 0;     // common environment dimension after padding
};
EuWitness essential_uniqueness_witness(const CpmMap& f, const CpmMap& g,
                                       int sys_out, double tol = kDefaultTol);

// CP axiom probe for pure morphisms: returns
//   (discard o dbl(f) == discard o dbl(g),  f†f == g†g).
// The axiom holds when the two booleans agree.
std::pair<bool, bool> cp_axiom_check(const Mat& f, const Mat& g,
                                     double tol = kDefaultTol);

}  // namespace pt
