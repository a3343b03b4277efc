#include "proctheory/scalar.hpp"

#include <cmath>
#include <sstream>

namespace pt {

BackendCaps caps_of(Backend b) {
  switch (b) {
    case Backend::Bool:
      return {true, false, false, true, true};
    case Backend::Nat:
      return {true, false, false, false, true};
    case Backend::RatNonneg:
      return {true, false, true, false, true};
    case Backend::Rat:
      return {true, true, true, false, true};
    case Backend::GaussRat:
      return {true, true, true, false, true};
    case Backend::FloatC:
      return {true, true, true, true, false};
  }
  throw TheoryError("unknown backend");
}

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::Bool: return "bool";
    case Backend::Nat: return "nat";
    case Backend::RatNonneg: return "rat_nonneg";
    case Backend::Rat: return "rat";
    case Backend::GaussRat: return "gauss_rat";
    case Backend::FloatC: return "float_complex";
  }
  return "?";
}

std::optional<Backend> backend_from_name(const std::string& name) {
  if (name == "bool") return Backend::Bool;
  if (name == "nat") return Backend::Nat;
  if (name == "rat_nonneg") return Backend::RatNonneg;
  if (name == "rat") return Backend::Rat;
  if (name == "gauss_rat") return Backend::GaussRat;
  if (name == "float_complex") return Backend::FloatC;
  return std::nullopt;
}

namespace {

void require_same(const ScalarValue& a, const ScalarValue& b,
                  const char* op) {
  if (a.backend() != b.backend())
    throw BackendError(std::string(op) + ": backend mismatch (" +
                       backend_name(a.backend()) + " vs " +
                       backend_name(b.backend()) + ")");
}

bool payload_matches(Backend b, const ScalarValue::Payload& v) {
  switch (b) {
    case Backend::Bool: return std::holds_alternative<bool>(v);
    case Backend::Nat: return std::holds_alternative<mpz_class>(v);
    case Backend::RatNonneg:
    case Backend::Rat: return std::holds_alternative<mpq_class>(v);
    case Backend::GaussRat: return std::holds_alternative<GaussQ>(v);
    case Backend::FloatC:
      return std::holds_alternative<std::complex<double>>(v);
  }
  return false;
}

mpq_class canon(mpq_class q) {
  q.canonicalize();
  return q;
}

}  // namespace

ScalarValue::ScalarValue(Backend b, Payload v) : backend_(b), v_(std::move(v)) {
  if (!payload_matches(b, v_))
    throw BackendError("scalar payload does not match backend tag");
  if (backend_ == Backend::Nat && as_nat() < 0)
    throw BackendError("nat scalar must be nonnegative");
  if (backend_ == Backend::RatNonneg && as_rat() < 0)
    throw BackendError("rat_nonneg scalar must be nonnegative");
}

ScalarValue ScalarValue::zero(Backend b) {
  switch (b) {
    case Backend::Bool: return {b, false};
    case Backend::Nat: return {b, mpz_class(0)};
    case Backend::RatNonneg:
    case Backend::Rat: return {b, mpq_class(0)};
    case Backend::GaussRat: return {b, GaussQ{mpq_class(0), mpq_class(0)}};
    case Backend::FloatC: return {b, std::complex<double>(0.0, 0.0)};
  }
  throw TheoryError("unknown backend");
}

ScalarValue ScalarValue::one(Backend b) {
  switch (b) {
    case Backend::Bool: return {b, true};
    case Backend::Nat: return {b, mpz_class(1)};
    case Backend::RatNonneg:
    case Backend::Rat: return {b, mpq_class(1)};
    case Backend::GaussRat: return {b, GaussQ{mpq_class(1), mpq_class(0)}};
    case Backend::FloatC: return {b, std::complex<double>(1.0, 0.0)};
  }
  throw TheoryError("unknown backend");
}

ScalarValue ScalarValue::from_int(Backend b, long n) {
  switch (b) {
    case Backend::Bool: return {b, n != 0};
    case Backend::Nat: return {b, mpz_class(n)};
    case Backend::RatNonneg:
    case Backend::Rat: return {b, mpq_class(n)};
    case Backend::GaussRat: return {b, GaussQ{mpq_class(n), mpq_class(0)}};
    case Backend::FloatC:
      return {b, std::complex<double>(static_cast<double>(n), 0.0)};
  }
  throw TheoryError("unknown backend");
}

ScalarValue ScalarValue::from_rational(Backend b, const mpq_class& q) {
  switch (b) {
    case Backend::RatNonneg:
    case Backend::Rat: return {b, canon(q)};
    case Backend::GaussRat: return {b, GaussQ{canon(q), mpq_class(0)}};
    case Backend::FloatC: return {b, std::complex<double>(q.get_d(), 0.0)};
    default:
      throw BackendError("from_rational: backend cannot hold a rational");
  }
}

ScalarValue ScalarValue::gauss(const mpq_class& re, const mpq_class& im) {
  return {Backend::GaussRat, GaussQ{canon(re), canon(im)}};
}

ScalarValue ScalarValue::complex(std::complex<double> z) {
  return {Backend::FloatC, z};
}

bool ScalarValue::as_bool() const {
  if (backend_ != Backend::Bool) throw BackendError("as_bool");
  return std::get<bool>(v_);
}
const mpz_class& ScalarValue::as_nat() const {
  if (backend_ != Backend::Nat) throw BackendError("as_nat");
  return std::get<mpz_class>(v_);
}
const mpq_class& ScalarValue::as_rat() const {
  if (backend_ != Backend::Rat && backend_ != Backend::RatNonneg)
    throw BackendError("as_rat");
  return std::get<mpq_class>(v_);
}
const GaussQ& ScalarValue::as_gauss() const {
  if (backend_ != Backend::GaussRat) throw BackendError("as_gauss");
  return std::get<GaussQ>(v_);
}
std::complex<double> ScalarValue::as_complex() const {
  if (backend_ != Backend::FloatC) throw BackendError("as_complex");
  return std::get<std::complex<double>>(v_);
}

std::complex<double> ScalarValue::approx() const {
  switch (backend_) {
    case Backend::Bool: return {as_bool() ? 1.0 : 0.0, 0.0};
    case Backend::Nat: return {as_nat().get_d(), 0.0};
    case Backend::RatNonneg:
    case Backend::Rat: return {as_rat().get_d(), 0.0};
    case Backend::GaussRat:
      return {as_gauss().re.get_d(), as_gauss().im.get_d()};
    case Backend::FloatC: return as_complex();
  }
  return {};
}

bool ScalarValue::is_zero(double tol) const {
  if (backend_ == Backend::FloatC) return std::abs(as_complex()) <= tol;
  return scalar_eq(*this, zero(backend_));
}

bool ScalarValue::is_one(double tol) const {
  return scalar_eq(*this, one(backend_), tol);
}

std::string ScalarValue::str() const {
  std::ostringstream os;
  switch (backend_) {
    case Backend::Bool: os << (as_bool() ? "true" : "false"); break;
    case Backend::Nat: os << as_nat().get_str(); break;
    case Backend::RatNonneg:
    case Backend::Rat: os << as_rat().get_str(); break;
    case Backend::GaussRat:
      os << as_gauss().re.get_str() << "+" << as_gauss().im.get_str() << "i";
      break;
    case Backend::FloatC: {
      auto z = as_complex();
      os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
      break;
    }
  }
  return os.str();
}

ScalarValue add(const ScalarValue& a, const ScalarValue& b) {
  require_same(a, b, "add");
  switch (a.backend()) {
    case Backend::Bool:
      return {a.backend(), a.as_bool() || b.as_bool()};
    case Backend::Nat:
      return {a.backend(), mpz_class(a.as_nat() + b.as_nat())};
    case Backend::RatNonneg:
    case Backend::Rat:
      return {a.backend(), canon(a.as_rat() + b.as_rat())};
    case Backend::GaussRat:
      return {a.backend(), GaussQ{canon(a.as_gauss().re + b.as_gauss().re),
                                  canon(a.as_gauss().im + b.as_gauss().im)}};
    case Backend::FloatC:
      return {a.backend(), a.as_complex() + b.as_complex()};
  }
  throw TheoryError("unknown backend");
}

ScalarValue mul(const ScalarValue& a, const ScalarValue& b) {
  require_same(a, b, "mul");
  switch (a.backend()) {
    case Backend::Bool:
      return {a.backend(), a.as_bool() && b.as_bool()};
    case Backend::Nat:
      return {a.backend(), mpz_class(a.as_nat() * b.as_nat())};
    case Backend::RatNonneg:
    case Backend::Rat:
      return {a.backend(), canon(a.as_rat() * b.as_rat())};
    case Backend::GaussRat: {
      const auto& x = a.as_gauss();
      const auto& y = b.as_gauss();
      return {a.backend(), GaussQ{canon(x.re * y.re - x.im * y.im),
                                  canon(x.re * y.im + x.im * y.re)}};
    }
    case Backend::FloatC:
      return {a.backend(), a.as_complex() * b.as_complex()};
  }
  throw TheoryError("unknown backend");
}

ScalarValue sub(const ScalarValue& a, const ScalarValue& b) {
  require_same(a, b, "sub");
  if (!caps_of(a.backend()).has_subtraction)
    throw BackendError("sub: backend lacks subtraction");
  switch (a.backend()) {
    case Backend::Rat:
      return {a.backend(), canon(a.as_rat() - b.as_rat())};
    case Backend::GaussRat:
      return {a.backend(), GaussQ{canon(a.as_gauss().re - b.as_gauss().re),
                                  canon(a.as_gauss().im - b.as_gauss().im)}};
    case Backend::FloatC:
      return {a.backend(), a.as_complex() - b.as_complex()};
    default:
      throw BackendError("sub: backend lacks subtraction");
  }
}

ScalarValue div(const ScalarValue& a, const ScalarValue& b) {
  require_same(a, b, "div");
  if (!caps_of(a.backend()).has_division)
    throw BackendError("div: backend lacks division");
  if (b.is_zero()) throw TheoryError("div: division by zero");
  switch (a.backend()) {
    case Backend::RatNonneg:
    case Backend::Rat:
      return {a.backend(), canon(a.as_rat() / b.as_rat())};
    case Backend::GaussRat: {
      const auto& x = a.as_gauss();
      const auto& y = b.as_gauss();
      mpq_class n = y.re * y.re + y.im * y.im;
      return {a.backend(), GaussQ{canon((x.re * y.re + x.im * y.im) / n),
                                  canon((x.im * y.re - x.re * y.im) / n)}};
    }
    case Backend::FloatC:
      return {a.backend(), a.as_complex() / b.as_complex()};
    default:
      throw BackendError("div: backend lacks division");
  }
}

ScalarValue dagger(const ScalarValue& a) {
  if (!caps_of(a.backend()).has_involution)
    throw BackendError("dagger: backend lacks involution");
  switch (a.backend()) {
    case Backend::Bool:
    case Backend::Nat:
    case Backend::RatNonneg:
    case Backend::Rat:
      return a;  // trivial involution
    case Backend::GaussRat:
      return {a.backend(), GaussQ{a.as_gauss().re, canon(-a.as_gauss().im)}};
    case Backend::FloatC:
      return {a.backend(), std::conj(a.as_complex())};
  }
  throw TheoryError("unknown backend");
}

bool scalar_eq(const ScalarValue& a, const ScalarValue& b, double tol) {
  if (a.backend() != b.backend()) return false;
  switch (a.backend()) {
    case Backend::Bool: return a.as_bool() == b.as_bool();
    case Backend::Nat: return a.as_nat() == b.as_nat();
    case Backend::RatNonneg:
    case Backend::Rat: return a.as_rat() == b.as_rat();
    case Backend::GaussRat: return a.as_gauss() == b.as_gauss();
    case Backend::FloatC: {
      auto x = a.as_complex(), y = b.as_complex();
      double m = std::max(std::abs(x), std::abs(y));
      return std::abs(x - y) <= tol * (1.0 + m);
    }
  }
  return false;
}

bool is_sum_of_two_squares(const mpz_class& n) {
  if (n < 0) return false;
  if (n == 0) return true;
  mpz_class m = n;
  // Strip factors of 2; 2 = 1^2 + 1^2 never obstructs.
  while (mpz_even_p(m.get_mpz_t())) m /= 2;
  mpz_class p = 3;
  while (p * p <= m) {
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      if (p % 4 == 3 && (e & 1)) return false;
    }
    p += 2;
  }
  // Remaining cofactor is 1 or prime.
  if (m > 1 && m % 4 == 3) return false;
  return true;
}

std::optional<std::pair<mpz_class, mpz_class>> two_square_witness(
    const mpz_class& n) {
  if (n < 0) return std::nullopt;
  if (!is_sum_of_two_squares(n)) return std::nullopt;
  mpz_class x = 0;
  while (x * x * 2 <= n) {
    mpz_class r = n - x * x;
    if (mpz_perfect_square_p(r.get_mpz_t())) {
      mpz_class y;
      mpz_sqrt(y.get_mpz_t(), r.get_mpz_t());
      return std::make_pair(x, y);
    }
    ++x;
  }
  return std::nullopt;
}

namespace {

// Is q a square of a rational? In lowest terms both num and den must be
// perfect integer squares.
bool rational_square(const mpq_class& q) {
  if (q < 0) return false;
  return mpz_perfect_square_p(q.get_num().get_mpz_t()) &&
         mpz_perfect_square_p(q.get_den().get_mpz_t());
}

mpq_class rational_sqrt(const mpq_class& q) {
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num().get_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den().get_mpz_t());
  return canon(mpq_class(n) / mpq_class(d));
}

// Is q >= 0 a sum of two rational squares? Equivalently num(q)*den(q) is a
// sum of two integer squares.
bool rational_two_squares(const mpq_class& q) {
  if (q < 0) return false;
  return is_sum_of_two_squares(mpz_class(q.get_num() * q.get_den()));
}

// Gaussian rational c with c†c = q (q >= 0), when one exists.
std::optional<GaussQ> gauss_norm_witness(const mpq_class& q) {
  if (q == 0) return GaussQ{mpq_class(0), mpq_class(0)};
  auto w = two_square_witness(mpz_class(q.get_num() * q.get_den()));
  if (!w) return std::nullopt;
  mpq_class den(q.get_den());
  return GaussQ{canon(mpq_class(w->first) / den),
                canon(mpq_class(w->second) / den)};
}

}  // namespace

bool is_positive(const ScalarValue& a, double tol) {
  if (!caps_of(a.backend()).has_involution)
    throw BackendError("is_positive: backend lacks involution");
  switch (a.backend()) {
    case Backend::Bool:
    case Backend::Nat:
    case Backend::RatNonneg:
      return true;
    case Backend::Rat:
      return rational_square(a.as_rat());
    case Backend::GaussRat: {
      const auto& g = a.as_gauss();
      if (g.im != 0) return false;
      return rational_two_squares(g.re);
    }
    case Backend::FloatC: {
      auto z = a.as_complex();
      double scale = 1.0 + std::abs(z);
      return std::abs(z.imag()) <= tol * scale && z.real() >= -tol * scale;
    }
  }
  return false;
}

std::pair<ScalarValue, ScalarValue> polar_decompose(const ScalarValue& s,
                                                    double tol) {
  if (s.backend() != Backend::FloatC)
    throw BackendError(
        "polar_decompose: unsupported on exact backends (no square roots)");
  auto z = s.as_complex();
  double r = std::abs(z);
  if (r <= tol) throw TheoryError("polar_decompose: zero input");
  return {ScalarValue::complex({r, 0.0}), ScalarValue::complex(z / r)};
}

PhasedRingReport check_phased_ring(
    Backend b, const std::vector<std::pair<ScalarValue, ScalarValue>>& samples,
    double tol) {
  const auto caps = caps_of(b);
  if (!caps.has_involution || !caps.has_subtraction)
    throw BackendError("check_phased_ring: needs involution and subtraction");
  PhasedRingReport rep;
  rep.backend = b;
  bool all_ok = true;
  for (const auto& [a, bb] : samples) {
    PhasedRingEntry e;
    e.a = a;
    e.b = bb;
    ScalarValue target = add(mul(dagger(a), a), mul(dagger(bb), bb));
    std::optional<ScalarValue> c;
    switch (b) {
      case Backend::FloatC: {
        double m = std::sqrt(std::max(0.0, target.as_complex().real()));
        c = ScalarValue::complex({m, 0.0});
        break;
      }
      case Backend::Rat: {
        if (rational_square(target.as_rat()))
          c = ScalarValue::from_rational(b, rational_sqrt(target.as_rat()));
        break;
      }
      case Backend::GaussRat: {
        const auto& t = target.as_gauss();
        if (t.im == 0) {
          if (auto w = gauss_norm_witness(t.re))
            c = ScalarValue(Backend::GaussRat, *w);
        }
        break;
      }
      default:
        break;
    }
    if (!c) {
      e.ok = false;
      e.note = "no c with a\xE2\x80\xA0a + b\xE2\x80\xA0b = c\xE2\x80\xA0c";
    } else if (c->is_zero(tol)) {
      e.c = c;
      e.ok = a.is_zero(tol) && bb.is_zero(tol);
      e.note = e.ok ? "trivial (all zero)" : "c = 0 but inputs nonzero";
      if (e.ok) {
        e.d = ScalarValue::zero(b);
        e.e = ScalarValue::zero(b);
      }
    } else {
      e.c = c;
      ScalarValue d = div(a, *c), ee = div(bb, *c);
      bool da = scalar_eq(mul(*c, d), a, tol);
      bool eb = scalar_eq(mul(*c, ee), bb, tol);
      e.d = d;
      e.e = ee;
      e.ok = da && eb;
      if (!e.ok) e.note = "divisibility witness failed";
    }
    all_ok = all_ok && e.ok;
    rep.entries.push_back(std::move(e));
  }
  // Integral-domain spot check on the same samples.
  for (const auto& [a, bb] : samples) {
    ScalarValue p = mul(a, bb);
    if (p.is_zero(tol) && !a.is_zero(tol) && !bb.is_zero(tol)) {
      rep.integral_domain_ok = false;
      break;
    }
  }
  rep.pass = all_ok && rep.integral_domain_ok;
  return rep;
}

std::string PhasedRingReport::summary() const {
  size_t fail = 0;
  for (const auto& e : entries)
    if (!e.ok) ++fail;
  std::ostringstream os;
  os << "phased-ring[" << backend_name(backend) << "]: " << entries.size()
     << " samples, " << fail << " failures"
     << (integral_domain_ok ? "" : ", integral-domain violated")
     << (pass ? " (pass)" : " (fail)");
  return os.str();
}

ScalarValue sample_scalar(Backend b, Rng& rng) {
  switch (b) {
    case Backend::Bool:
      return {b, rng.coin()};
    case Backend::Nat:
      return {b, mpz_class(rng.range(0, 4))};
    case Backend::RatNonneg: {
      mpq_class q(rng.range(0, 6), rng.range(1, 4));
      return ScalarValue::from_rational(b, q);
    }
    case Backend::Rat: {
      mpq_class q(rng.range(-6, 6), rng.range(1, 4));
      return ScalarValue::from_rational(b, q);
    }
    case Backend::GaussRat: {
      mpq_class re(rng.range(-3, 3), rng.range(1, 3));
      mpq_class im(rng.range(-3, 3), rng.range(1, 3));
      return ScalarValue::gauss(re, im);
    }
    case Backend::FloatC:
      return ScalarValue::complex({rng.gauss(), rng.gauss()});
  }
  throw TheoryError("unknown backend");
}

}  // namespace pt
