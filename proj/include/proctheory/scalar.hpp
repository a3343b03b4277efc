#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "proctheory/common.hpp"
#include "proctheory/rng.hpp"

namespace pt {

// Pluggable scalar backends. Exact backends serve the structural checks;
// float complex serves every construction needing square roots.
enum class Backend {
  Bool,       // Boolean semiring (join / meet)
  Nat,        // unbounded naturals
  RatNonneg,  // nonnegative rationals
  Rat,        // rationals, trivial involution
  GaussRat,   // Gaussian rationals Q(i), conjugation involution
  FloatC,     // complex doubles
};

struct BackendCaps {
  bool has_involution = false;
  bool has_subtraction = false;
  bool has_division = false;
  bool has_sqrt_of_positives = false;
  bool exact = true;
};

BackendCaps caps_of(Backend b);
std::string backend_name(Backend b);
std::optional<Backend> backend_from_name(const std::string& name);

struct GaussQ {
  mpq_class re, im;
  bool operator==(const GaussQ& o) const { return re == o.re && im == o.im; }
};

// A scalar tagged with its backend. Payload form always matches the tag;
// rationals are kept in lowest terms with positive denominator (mpq_class
// canonical form).
class ScalarValue {
 public:
  using Payload =
      std::variant<bool, mpz_class, mpq_class, GaussQ, std::complex<double>>;

  ScalarValue() : backend_(Backend::Bool), v_(false) {}
  ScalarValue(Backend b, Payload v);

  Backend backend() const { return backend_; }
  const Payload& payload() const { return v_; }

  static ScalarValue zero(Backend b);
  static ScalarValue one(Backend b);
  static ScalarValue from_int(Backend b, long n);  // n >= 0 for unsigned backends
  static ScalarValue from_rational(Backend b, const mpq_class& q);
  static ScalarValue gauss(const mpq_class& re, const mpq_class& im);
  static ScalarValue complex(std::complex<double> z);

  bool is_zero(double tol = kDefaultTol) const;
  bool is_one(double tol = kDefaultTol) const;

  // Accessors; these throw on backend mismatch.
  bool as_bool() const;
  const mpz_class& as_nat() const;
  const mpq_class& as_rat() const;
  const GaussQ& as_gauss() const;
  std::complex<double> as_complex() const;

  // Exact value embedded into complex doubles (for oracles and printing).
  std::complex<double> approx() const;

  std::string str() const;

 private:
  Backend backend_;
  Payload v_;
};

// Semiring operations. Mixing backends throws BackendError.
ScalarValue add(const ScalarValue& a, const ScalarValue& b);
ScalarValue mul(const ScalarValue& a, const ScalarValue& b);
// Requires has_subtraction / has_division.
ScalarValue sub(const ScalarValue& a, const ScalarValue& b);
ScalarValue div(const ScalarValue& a, const ScalarValue& b);
// Involution; requires has_involution.
ScalarValue dagger(const ScalarValue& a);

bool scalar_eq(const ScalarValue& a, const ScalarValue& b,
               double tol = kDefaultTol);

// Positivity: a = t† · t for some t of the same backend.
//   Bool / Nat / RatNonneg: every element counts as positive.
//   Rat: a is a square of a rational.
//   GaussRat: a is real, nonnegative, and a sum of two rational squares
//     (two-squares criterion on num(a)·den(a)).
//   FloatC: imaginary part within tol and real part >= -tol (relative).
bool is_positive(const ScalarValue& a, double tol = kDefaultTol);

// Polar decomposition s = r · u with r real positive and u† u = 1.
// Float backend only; exact backends lack the required square roots.
std::pair<ScalarValue, ScalarValue> polar_decompose(const ScalarValue& s,
                                                    double tol = kDefaultTol);

// True iff n is expressible as x^2 + y^2 over the integers (n >= 0),
// decided by trial-division factorization. Exposed for tests.
bool is_sum_of_two_squares(const mpz_class& n);

// Finds (x, y) with x^2 + y^2 = n, or nullopt. Bounded search; n is expected
// to be desk-scale.
std::optional<std::pair<mpz_class, mpz_class>> two_square_witness(
    const mpz_class& n);

// --- Phased-ring sample checker -------------------------------------------

struct PhasedRingEntry {
  ScalarValue a, b;
  std::optional<ScalarValue> c, d, e;  // a†a + b†b = c†c; a = c·d; b = c·e
  bool ok = false;
  std::string note;
};

struct PhasedRingReport {
  Backend backend;
  std::vector<PhasedRingEntry> entries;
  bool integral_domain_ok = true;
  bool pass = false;  // all entries ok and integral domain held on samples
  std::string summary() const;
};

// For each sampled pair (a, b) attempts to produce c with a†a + b†b = c†c
// together with divisibility witnesses d, e. Failures are entries, not
// errors. Also spot-checks the integral-domain law on the samples.
PhasedRingReport check_phased_ring(Backend b,
                                   const std::vector<std::pair<ScalarValue, ScalarValue>>& samples,
                                   double tol = kDefaultTol);

// Seeded sample from a small value set appropriate to the backend.
ScalarValue sample_scalar(Backend b, Rng& rng);

}  // namespace pt
