#pragma once

#include "proctheory/block.hpp"
#include "proctheory/cpm.hpp"
#include "proctheory/report.hpp"

#include <gmpxx.h>

namespace pt {

// --- Sub-causality and the partial addition ---------------------------------

// discard o f + e = discard for some effect e. Nonnegative matrix backends:
// every column sum <= 1; Boolean relations: always; float matrices are
// interpreted entrywise-nonnegative-within-tol.
bool is_sub_causal_mat(const Mat& f, double tol = kDefaultTol);
bool is_sub_causal_cpm(const CpmMap& f, double tol = kDefaultTol);

// The coarse-graining partial operation: f + g when the sum is sub-causal,
// undefined otherwise.
std::optional<Mat> ovee_mat(const Mat& f, const Mat& g,
                            double tol = kDefaultTol);
std::optional<CpmMap> ovee_cpm(const CpmMap& f, const CpmMap& g,
                               double tol = kDefaultTol);

// Sampled checks: the sub-causal morphisms are closed under composition and
// tensor; ovee satisfies the PCM laws; the downset property holds (if f + g
// is sub-causal then so are f and g).
LawReport check_subcausal_closure(Backend b, int max_dim, int samples,
                                  uint64_t seed, double tol = 1e-8);
LawReport check_pcm_laws(Backend b, int max_dim, int samples, uint64_t seed,
                         double tol = 1e-8);
// Scaled snake equations over nonnegative rationals: the cup scaled by 1/n
// and the cap are sub-causal and satisfy the snake up to the factor 1/n.
LawReport check_scaled_snake(int max_dim, uint64_t seed);

// --- Tests as morphisms into coproducts --------------------------------------

// A test is a block column A -> B_1 + ... + B_n whose carrier is causal;
// events are recovered by the projections (joint monicity is exact here).
struct TestMorphism {
  BlockMor carrier;  // src is a singleton list (A)
  size_t branches() const { return carrier.tgt.parts.size(); }
};

TestMorphism make_test(const BlockTheory& th, const std::vector<Morphism>& events);
Morphism test_event(const BlockTheory& th, const TestMorphism& t, size_t i);
// Merge the selected branches (which must share a target): the codiagonal
// after restriction, equal to the left-fold sum of the selected events.
Morphism coarse_grain(const BlockTheory& th, const TestMorphism& t,
                      const std::vector<size_t>& branch_subset);
bool test_is_causal(const BlockTheory& th, const TestMorphism& t, double tol);

// --- Partial arrows (the Kleisli construction over a test category) ---------

enum class ParBackend {
  FiniteSet,        // total functions; partial arrows are partial functions
  SubStochasticQ,   // column-stochastic rational matrices
};

// A partial arrow A -> B held as its carrier A -> B + 1; the final row is
// the abort branch.
struct ParArrow {
  ParBackend kind;
  Mat carrier;  // (m + 1) x n
  int in_dim() const { return carrier.cols(); }
  int out_dim() const { return carrier.rows() - 1; }
};

// Kleisli identity kappa_1 o f for a total morphism f.
ParArrow par_lift(ParBackend kind, const Mat& total);
ParArrow par_id(ParBackend kind, int n);
ParArrow par_zero(ParBackend kind, int n, int m);
ParArrow par_compose(const ParArrow& g, const ParArrow& f);  // [g, kappa_2] o f
bool par_eq(const ParArrow& f, const ParArrow& g, double tol = kDefaultTol);
// Causal = the abort row vanishes; then the arrow factors as kappa_1 o total.
bool par_causal(const ParArrow& f, double tol = kDefaultTol);
std::optional<Mat> par_total_factor(const ParArrow& f, double tol = kDefaultTol);

// Sample a total morphism of the backend (function / stochastic matrix).
Mat sample_total(ParBackend kind, int src, int tgt, Rng& rng);

// Joint monicity of the outcome projections and the causal-factoring
// characterization, on samples; includes a deliberate corrupted-projection
// self-test that must produce a failure witness.
LawReport check_test_category(ParBackend kind, int max_dim, int samples,
                              uint64_t seed, double tol = 1e-8);
// Strong algebraicity probe: event tuples whose discarded sums form a test
// themselves form a test (sampled).
LawReport check_strongly_algebraic(int max_dim, int samples, uint64_t seed,
                                   double tol = 1e-8);

// --- Finite PCMs and bounded totalisation ------------------------------------

// Element 0 is the zero. table[i][j] = index of i + j, or -1 when undefined.
struct FinitePCM {
  std::vector<std::string> names;
  std::vector<std::vector<int>> table;

  int size() const { return static_cast<int>(names.size()); }
  int ovee(int i, int j) const { return table[i][j]; }
  LawReport check_axioms() const;  // commutativity, unit, partial assoc.
};

// {0, 1/2, 1} with p + q defined when <= 1.
FinitePCM half_unit_pcm();

// Words are sorted multisets of nonzero elements; the classes are the
// congruence closure of {x, y} ~ {x v y} within the size bound. A class is
// certified when no rewrite from any member would leave the bound, i.e. the
// computed class is the full equivalence class.
struct TotalisationClass {
  std::vector<std::vector<int>> members;
  bool certified = true;
  int singleton = -1;  // element index when some member is a single letter
};

struct TotalisationResult {
  int max_word = 0;
  std::vector<TotalisationClass> classes;
  std::optional<int> class_of(std::vector<int> word) const;  // sorts its input

 private:
  friend TotalisationResult totalise_pcm(const FinitePCM&, int);
  std::vector<std::vector<int>> words_;
  std::vector<int> word_class_;
};

TotalisationResult totalise_pcm(const FinitePCM& m, int max_word);

// On certified classes containing a singleton {b}: every member multiset
// folds (in every order) to a defined sum equal to b.
LawReport verify_totalisation_fact(const FinitePCM& m,
                                   const TotalisationResult& t);

// --- Pair representation of the totalisation --------------------------------

// Equality of representatives (f, r) ~ (g, s) of total morphisms over
// nonnegative rational matrices: holds iff r·f = s·g exactly (clearing
// denominators realizes the scaling witnesses). Inputs must be sub-causal.
bool total_rep_equal(const Mat& f, const mpq_class& r, const Mat& g,
                     const mpq_class& s);

}  // namespace pt
