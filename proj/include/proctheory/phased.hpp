#pragma once

#include "proctheory/numeric.hpp"
#include "proctheory/report.hpp"

namespace pt {

// Groups of central invertible scalars used for quotienting.
//   Circle: unit-modulus complex floats.
//   GaussTrivialInvolution: units {1, -1} of the Gaussian rationals read
//     with the *trivial* involution; kept as the counterexample backend for
//     positive-freeness.
//   Trivial: the one-element group.
enum class PhaseGroupKind { Circle, GaussTrivialInvolution, Trivial };

// A morphism of Mat_C modulo global phases, stored canonically: the first
// nonzero entry in row-major order is made real and positive.
struct QuotMorphism {
  Mat rep;
  PhaseGroupKind group = PhaseGroupKind::Circle;
  bool canonical = false;
};

QuotMorphism canonicalize(const Mat& f, PhaseGroupKind g = PhaseGroupKind::Circle,
                          double tol = kDefaultTol);
bool quot_eq(const QuotMorphism& a, const QuotMorphism& b,
             double tol = kDefaultTol);
QuotMorphism quot_compose(const QuotMorphism& g, const QuotMorphism& f,
                          double tol = kDefaultTol);
QuotMorphism quot_tensor(const QuotMorphism& f, const QuotMorphism& g,
                         double tol = kDefaultTol);
QuotMorphism quot_dagger(const QuotMorphism& f, double tol = kDefaultTol);

// --- Phased coproducts on the quotient ---------------------------------------

// Carrier of A + B is the direct sum; coprojections are the block inclusions.
Mat coprojection_left(int dim_a, int dim_b);   // (a+b) x a over FloatC
Mat coprojection_right(int dim_a, int dim_b);  // (a+b) x b
// The phase family diag(id_A, u * id_B).
Mat phase_on_sum(int dim_a, int dim_b, std::complex<double> u);

// Cotuple [f, g] : A + B -> C of the representatives, canonicalized.
QuotMorphism phased_cotuple(const QuotMorphism& f, const QuotMorphism& g,
                            int dim_a, int dim_b, double tol = kDefaultTol);
// For h, h' : A + B -> C agreeing on both coprojections (as quotient
// morphisms), the phase u with h' = h o diag(id, u). Throws when the
// coprojection composites disagree; returns nullopt when no unit phase fits.
std::optional<std::complex<double>> uniqueness_phase(const QuotMorphism& h,
                                                     const QuotMorphism& h2,
                                                     int dim_a, int dim_b,
                                                     double tol = kDefaultTol);

LawReport check_phased_coproducts(int max_dim, int samples, uint64_t seed,
                                  double tol = 1e-8);

// --- The reconstruction from the quotient ------------------------------------

// Objects of the reconstructed category are (n+1)-dimensional carriers with
// the distinguished last coordinate as the unit slot; morphisms are block
// diagonal and fix it. Normalizing the unit entry to 1 pins the global
// phase, so extraction is exact.
struct GpMorphism {
  Mat rep;  // (m+1) x (n+1), block diagonal, unit entry 1
  int in_dim() const { return rep.cols() - 1; }
  int out_dim() const { return rep.rows() - 1; }
};

GpMorphism gp_embed(const Mat& f);
GpMorphism gp_from_quot(const QuotMorphism& q, double tol = kDefaultTol);
Mat gp_extract(const GpMorphism& f);
GpMorphism gp_compose(const GpMorphism& g, const GpMorphism& f);
GpMorphism gp_tensor(const GpMorphism& f, const GpMorphism& g);
GpMorphism gp_dagger(const GpMorphism& f);
bool gp_eq(const GpMorphism& a, const GpMorphism& b, double tol = kDefaultTol);

// The mediating corner isometry (n*m + 1) -> (n+1)(m+1) aligning the
// reconstructed tensor with the carrier tensor.
Mat gp_corner(int n, int m);

// Round trip embed -> quotient -> reconstruct -> extract at the stated
// dimensions, plus functoriality, monoidality against the corner maps,
// phases-are-scalars, and the dagger-biproduct facts on the carriers.
LawReport gp_roundtrip_check(int max_dim, int samples, uint64_t seed,
                             double tol = 1e-8);

// Phase-generator conditions on the quotient: the codiagonal is phase monic
// and diagonal monos are phase epic. With inject_noncentral the family is
// polluted with a non-central automorphism, which must produce a witness.
LawReport check_phase_generator(int max_dim, int samples, uint64_t seed,
                                double tol = 1e-8,
                                bool inject_noncentral = false);

// Positive-freeness and positive cancellation of the phase family. The
// circle passes; the trivial-involution Gaussian backend fails with witness
// diag(1, -1).
LawReport check_positive_freeness(PhaseGroupKind kind, int max_dim,
                                  int samples, uint64_t seed,
                                  double tol = 1e-8);

}  // namespace pt
