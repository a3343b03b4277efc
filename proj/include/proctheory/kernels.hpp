#pragma once

#include "proctheory/cpm.hpp"
#include "proctheory/report.hpp"

namespace pt {

// A dagger kernel on a fixed ambient object, held as a self-adjoint
// idempotent projection (every backend) plus an isometry witness where one
// exists exactly: orthonormal columns on the float backend, coordinate
// selections on Bool/Nat/RatNonneg. Field backends (Rat, GaussRat) carry the
// projection only; normalisation generally needs square roots they lack.
// Kernels are compared via their projections, which are unitary-invariant.
struct KernelRep {
  Backend backend = Backend::FloatC;
  int ambient = 0;
  Mat projection;              // ambient x ambient
  std::optional<Mat> isometry; // ambient x rank
  int rank = 0;
};

KernelRep kernel_from_isometry(const Mat& iso, double tol = kDefaultTol);
KernelRep kernel_from_projection(const Mat& p, double tol = kDefaultTol);
KernelRep full_kernel(Backend b, int ambient);   // top element (id)
KernelRep zero_kernel(Backend b, int ambient);   // bottom element

// ker(f): matrix backends. Float: rank-revealing SVD nullspace; fields:
// exact elimination; nonnegative backends: the zero-column coordinate
// subspace.
KernelRep kernel_of(const Mat& f, double tol = kDefaultTol);
// ker of a completely positive map: dbl of the nullspace of its input
// density Sum K†K. The rep lives at the matrix level on the input object.
KernelRep cpm_kernel(const CpmMap& f, double tol = kDefaultTol);

// coker(f) = ker(f†)†. On the float backend this is the honest morphism
// B -> Coker(f) (isometry dagger); cokernel_projected gives the composite
// with its embedding (B -> B, = id - im-projection), available exactly on
// every backend and sufficient for the lattice formulas.
Mat cokernel_iso(const Mat& f, double tol = kDefaultTol);
Mat cokernel_projected(const Mat& f, double tol = kDefaultTol);

// im(f) = ker(coker(f)); coim(f) = coker(ker(f)) returned in projected form.
KernelRep image_of(const Mat& f, double tol = kDefaultTol);
Mat coimage_projected(const Mat& f, double tol = kDefaultTol);
KernelRep cpm_image(const CpmMap& f, double tol = kDefaultTol);

// Lattice structure of DKer(A).
KernelRep complement(const KernelRep& k);                 // coker(k)†
KernelRep meet(const KernelRep& k, const KernelRep& l,
               double tol = kDefaultTol);                 // k o ker(coker(l) o k)
KernelRep join(const KernelRep& k, const KernelRep& l,
               double tol = kDefaultTol);                 // (k⊥ ∧ l⊥)⊥
bool kernel_leq(const KernelRep& k, const KernelRep& l,
                double tol = kDefaultTol);                // q p = p
bool kernel_eq(const KernelRep& k, const KernelRep& l,
               double tol = kDefaultTol);

// Random kernels for the samplers. Fields and float draw images of random
// matrices; nonnegative backends draw coordinate subsets.
KernelRep sample_kernel(Backend b, int ambient, Rng& rng,
                        double tol = kDefaultTol);
// A pair k <= l.
std::pair<KernelRep, KernelRep> sample_nested_kernels(Backend b, int ambient,
                                                      Rng& rng,
                                                      double tol = kDefaultTol);

// --- Sampled law checkers ----------------------------------------------------

// Lattice axioms, a ∨ a⊥ = 1, a ∧ a⊥ = 0, double complement, and the
// orthomodular law a <= b ==> b = a ∨ (b ∧ a⊥).
LawReport check_orthomodular(Backend b, int ambient, int samples,
                             uint64_t seed, double tol = 1e-8);
// im(k o k† o l) = k ∧ (l ∨ k⊥) on sampled kernel pairs.
LawReport check_image_meet_lemma(Backend b, int ambient, int samples,
                                 uint64_t seed, double tol = 1e-8);
// For sampled atoms a (rank 1) and kernels b: rank(b ∧ (a ∨ b⊥)) ∈ {0, 1}.
LawReport check_covering_law(Backend b, int ambient, int samples,
                             uint64_t seed, double tol = 1e-8);
// Kernel universal property on samples: f o ker(f) = 0 and every sampled g
// with f o g = 0 factors through ker(f) (least squares / exact solve).
LawReport check_kernel_factorisation(Backend b, int rows, int cols,
                                     int samples, uint64_t seed,
                                     double tol = 1e-8);
// im(f (x) g) = im(f) (x) im(g) on samples.
LawReport check_image_tensor_compat(Backend b, int max_dim, int samples,
                                    uint64_t seed, double tol = 1e-8);
// f† o f = 0 ==> f = 0 on samples (checked constructively: the implication
// is exercised by building f with f†f = 0 forced only by f = 0).
LawReport check_dagger_zero(Backend b, int max_dim, int samples, uint64_t seed,
                            double tol = 1e-8);
// Every nonzero sampled kernel dominates a rank-1 kernel.
LawReport check_atomicity(Backend b, int ambient, int samples, uint64_t seed,
                          double tol = 1e-8);

}  // namespace pt
