#include "doctest.h"

#include "proctheory/scalar.hpp"

using namespace pt;

namespace {

const Backend kAll[] = {Backend::Bool,     Backend::Nat, Backend::RatNonneg,
                        Backend::Rat,      Backend::GaussRat,
                        Backend::FloatC};

ScalarValue q(long num, long den = 1) {
  return ScalarValue::from_rational(Backend::Rat, mpq_class(num, den));
}

}  // namespace

TEST_CASE("rational addition is exact") {
  CHECK(scalar_eq(add(q(1, 2), q(1, 3)), q(5, 6)));
}

TEST_CASE("boolean join") {
  ScalarValue t(Backend::Bool, true);
  CHECK(add(t, t).as_bool());
  CHECK_FALSE(add(ScalarValue::zero(Backend::Bool),
                  ScalarValue::zero(Backend::Bool))
                  .as_bool());
}

TEST_CASE("gaussian addition cancels the imaginary part") {
  ScalarValue a = ScalarValue::gauss(1, 1);
  ScalarValue b = ScalarValue::gauss(1, -1);
  CHECK(scalar_eq(add(a, b), ScalarValue::gauss(2, 0)));
}

TEST_CASE("dagger conjugates and is involutive") {
  ScalarValue g = ScalarValue::gauss(2, 3);
  CHECK(scalar_eq(dagger(g), ScalarValue::gauss(2, -3)));
  CHECK(scalar_eq(dagger(dagger(g)), g));
  CHECK(scalar_eq(dagger(q(5)), q(5)));
  double th = 0.7853981633974483;  // pi/4
  ScalarValue z = ScalarValue::complex({std::cos(th), std::sin(th)});
  CHECK(scalar_eq(dagger(z),
                  ScalarValue::complex({std::cos(th), -std::sin(th)})));
}

TEST_CASE("backend mismatch raises") {
  CHECK_THROWS_AS(add(q(1), ScalarValue::one(Backend::Nat)), BackendError);
}

TEST_CASE("semiring laws hold on samples for every backend") {
  for (Backend b : kAll) {
    Rng rng(7 + static_cast<int>(b));
    for (int i = 0; i < 200; ++i) {
      ScalarValue x = sample_scalar(b, rng), y = sample_scalar(b, rng),
                  z = sample_scalar(b, rng);
      CHECK(scalar_eq(add(add(x, y), z), add(x, add(y, z))));
      CHECK(scalar_eq(mul(x, y), mul(y, x)));
      CHECK(scalar_eq(mul(x, add(y, z)), add(mul(x, y), mul(x, z))));
      CHECK(scalar_eq(add(x, ScalarValue::zero(b)), x));
      CHECK(scalar_eq(mul(x, ScalarValue::one(b)), x));
      // Involution laws.
      CHECK(scalar_eq(dagger(mul(x, y)), mul(dagger(x), dagger(y))));
      CHECK(scalar_eq(dagger(add(x, y)), add(dagger(x), dagger(y))));
      CHECK(scalar_eq(dagger(dagger(x)), x));
    }
  }
}

TEST_CASE("positivity of t† t on samples") {
  for (Backend b : kAll) {
    Rng rng(11 + static_cast<int>(b));
    for (int i = 0; i < 200; ++i) {
      ScalarValue t = sample_scalar(b, rng);
      CHECK(is_positive(mul(dagger(t), t)));
    }
  }
}

TEST_CASE("positivity decisions per backend") {
  CHECK(is_positive(q(4)));          // 4 = 2^2
  CHECK_FALSE(is_positive(q(2)));    // 2 is not a rational square
  CHECK_FALSE(is_positive(q(-1)));
  CHECK(is_positive(q(9, 4)));       // (3/2)^2
  // Gaussian rationals: sums of two rational squares.
  CHECK(is_positive(ScalarValue::gauss(2, 0)));   // 1 + 1
  CHECK(is_positive(ScalarValue::gauss(5, 0)));   // 4 + 1
  CHECK_FALSE(is_positive(ScalarValue::gauss(3, 0)));
  CHECK_FALSE(is_positive(ScalarValue::gauss(0, 1)));
  CHECK(is_positive(ScalarValue::gauss(mpq_class(1, 2), 0)));  // 2/4
  CHECK_FALSE(is_positive(ScalarValue::complex({-0.5, 0.0})));
  CHECK(is_positive(ScalarValue::complex({0.5, 0.0})));
}

TEST_CASE("two-squares decision matches the brute-force oracle") {
  auto brute = [](long n) {
    for (long x = 0; x * x <= n; ++x)
      for (long y = x; x * x + y * y <= n; ++y)
        if (x * x + y * y == n) return true;
    return false;
  };
  for (long n = 0; n <= 500; ++n)
    CHECK(is_sum_of_two_squares(mpz_class(n)) == brute(n));
}

TEST_CASE("polar decomposition on the float backend") {
  auto [r, u] = polar_decompose(ScalarValue::complex({3, 4}));
  CHECK(scalar_eq(r, ScalarValue::complex({5, 0}), 1e-12));
  CHECK(scalar_eq(u, ScalarValue::complex({0.6, 0.8}), 1e-12));
  auto [r1, u1] = polar_decompose(ScalarValue::complex({1, 0}));
  CHECK(scalar_eq(r1, ScalarValue::one(Backend::FloatC)));
  auto [r2, u2] = polar_decompose(ScalarValue::complex({-2, 0}));
  CHECK(scalar_eq(r2, ScalarValue::complex({2, 0})));
  CHECK(scalar_eq(u2, ScalarValue::complex({-1, 0})));
  CHECK_THROWS_AS(polar_decompose(ScalarValue::zero(Backend::FloatC)),
                  TheoryError);
  CHECK_THROWS_AS(polar_decompose(q(4)), BackendError);
}

TEST_CASE("polar decomposition invariants on samples") {
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    ScalarValue s = sample_scalar(Backend::FloatC, rng);
    if (s.is_zero(1e-9)) continue;
    auto [r, u] = polar_decompose(s);
    CHECK(scalar_eq(mul(r, u), s, 1e-9));
    CHECK(scalar_eq(mul(dagger(u), u), ScalarValue::one(Backend::FloatC), 1e-9));
  }
}

TEST_CASE("phased ring witnesses on the float backend") {
  std::vector<std::pair<ScalarValue, ScalarValue>> samples = {
      {ScalarValue::complex({3, 0}), ScalarValue::complex({4, 0})},
      {ScalarValue::zero(Backend::FloatC), ScalarValue::zero(Backend::FloatC)},
  };
  PhasedRingReport rep = check_phased_ring(Backend::FloatC, samples);
  REQUIRE(rep.entries.size() == 2);
  CHECK(rep.pass);
  CHECK(scalar_eq(*rep.entries[0].c, ScalarValue::complex({5, 0}), 1e-9));
  CHECK(scalar_eq(*rep.entries[0].d, ScalarValue::complex({0.6, 0}), 1e-9));
  CHECK(scalar_eq(*rep.entries[0].e, ScalarValue::complex({0.8, 0}), 1e-9));
}

TEST_CASE("gaussian rationals are not a phased ring") {
  // 1†1 + (1+i)†(1+i) = 3, which is not a norm in Q(i).
  std::vector<std::pair<ScalarValue, ScalarValue>> samples = {
      {ScalarValue::gauss(1, 0), ScalarValue::gauss(1, 1)},
      {ScalarValue::gauss(1, 0), ScalarValue::gauss(1, 0)},  // 2 = (1+i)†(1+i)
  };
  PhasedRingReport rep = check_phased_ring(Backend::GaussRat, samples);
  CHECK_FALSE(rep.entries[0].ok);
  CHECK(rep.entries[1].ok);  // c = 1+i works, divisibility in the field
  CHECK_FALSE(rep.pass);
}

TEST_CASE("phased ring checker needs subtraction") {
  CHECK_THROWS_AS(check_phased_ring(Backend::Nat, {}), BackendError);
}

TEST_CASE("float equality uses relative tolerance") {
  ScalarValue big1 = ScalarValue::complex({1e9, 0});
  ScalarValue big2 = ScalarValue::complex({1e9 + 0.5, 0});
  CHECK(scalar_eq(big1, big2, 1e-9));
  CHECK_FALSE(scalar_eq(ScalarValue::complex({0, 0}),
                        ScalarValue::complex({1e-3, 0}), 1e-9));
}
