#include "proctheory/phased.hpp"

#include <chrono>

namespace pt {

namespace {
using Clock = std::chrono::steady_clock;
struct Timer {
  Clock::time_point t0 = Clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  }
};

double max_abs(const Mat& f) {
  double m = 0.0;
  for (int i = 0; i < f.rows(); ++i)
    for (int j = 0; j < f.cols(); ++j)
      m = std::max(m, std::abs(f.at(i, j).as_complex()));
  return m;
}

// Phase u (|u| = 1) with y = u * x, if any.
std::optional<std::complex<double>> phase_between(const Mat& x, const Mat& y,
                                                  double tol) {
  std::complex<double> num = 0.0, den = 0.0;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) {
      num += std::conj(x.at(i, j).as_complex()) * y.at(i, j).as_complex();
      den += std::norm(x.at(i, j).as_complex());
    }
  double scale = 1.0 + std::sqrt(std::abs(den));
  if (std::abs(den) <= tol * tol) {
    // x ~ 0: any unit phase works if y ~ 0 too.
    return max_abs(y) <= tol * scale ? std::optional(std::complex<double>(1.0))
                                     : std::nullopt;
  }
  std::complex<double> u = num / den;
  if (std::abs(std::abs(u) - 1.0) > 100 * tol) return std::nullopt;
  u /= std::abs(u);
  Mat scaled = mat_scale(ScalarValue::complex(u), x);
  if (!mat_eq(scaled, y, tol)) return std::nullopt;
  return u;
}

}  // namespace

QuotMorphism canonicalize(const Mat& f, PhaseGroupKind g, double tol) {
  if (g == PhaseGroupKind::Trivial) return {f, g, true};
  if (g == PhaseGroupKind::GaussTrivialInvolution) {
    if (f.backend() != Backend::GaussRat)
      throw BackendError("canonicalize: gauss backend expected");
    // Units with trivial involution are {1, -1}; normalize the sign of the
    // first nonzero entry's real (or imaginary) part.
    for (int i = 0; i < f.rows(); ++i)
      for (int j = 0; j < f.cols(); ++j) {
        const GaussQ& e = f.at(i, j).as_gauss();
        if (e.re == 0 && e.im == 0) continue;
        bool flip = e.re != 0 ? e.re < 0 : e.im < 0;
        Mat rep = flip ? mat_scale(ScalarValue::gauss(-1, 0), f) : f;
        return {rep, g, true};
      }
    return {f, g, true};
  }
  if (f.backend() != Backend::FloatC)
    throw BackendError("canonicalize: float backend expected for the circle");
  double scale = max_abs(f);
  if (scale <= tol) return {f, g, true};
  for (int i = 0; i < f.rows(); ++i)
    for (int j = 0; j < f.cols(); ++j) {
      auto z = f.at(i, j).as_complex();
      if (std::abs(z) > tol * (1.0 + scale)) {
        std::complex<double> u = std::conj(z / std::abs(z));
        return {mat_scale(ScalarValue::complex(u), f), g, true};
      }
    }
  return {f, g, true};
}

bool quot_eq(const QuotMorphism& a, const QuotMorphism& b, double tol) {
  if (a.group != b.group) return false;
  QuotMorphism ca = a.canonical ? a : canonicalize(a.rep, a.group, tol);
  QuotMorphism cb = b.canonical ? b : canonicalize(b.rep, b.group, tol);
  return mat_eq(ca.rep, cb.rep, tol);
}

QuotMorphism quot_compose(const QuotMorphism& g, const QuotMorphism& f,
                          double tol) {
  return canonicalize(mat_compose(g.rep, f.rep), f.group, tol);
}

QuotMorphism quot_tensor(const QuotMorphism& f, const QuotMorphism& g,
                         double tol) {
  return canonicalize(mat_kron(f.rep, g.rep), f.group, tol);
}

QuotMorphism quot_dagger(const QuotMorphism& f, double tol) {
  return canonicalize(mat_dagger(f.rep), f.group, tol);
}

Mat coprojection_left(int dim_a, int dim_b) {
  Mat m = Mat::zero(Backend::FloatC, dim_a + dim_b, dim_a);
  for (int i = 0; i < dim_a; ++i) m.at(i, i) = ScalarValue::one(Backend::FloatC);
  return m;
}

Mat coprojection_right(int dim_a, int dim_b) {
  Mat m = Mat::zero(Backend::FloatC, dim_a + dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    m.at(dim_a + i, i) = ScalarValue::one(Backend::FloatC);
  return m;
}

Mat phase_on_sum(int dim_a, int dim_b, std::complex<double> u) {
  Mat m = Mat::identity(Backend::FloatC, dim_a + dim_b);
  for (int i = 0; i < dim_b; ++i)
    m.at(dim_a + i, dim_a + i) = ScalarValue::complex(u);
  return m;
}

QuotMorphism phased_cotuple(const QuotMorphism& f, const QuotMorphism& g,
                            int dim_a, int dim_b, double tol) {
  if (f.rep.cols() != dim_a || g.rep.cols() != dim_b ||
      f.rep.rows() != g.rep.rows())
    throw ShapeError("phased_cotuple: shapes");
  return canonicalize(hstack(f.rep, g.rep), f.group, tol);
}

std::optional<std::complex<double>> uniqueness_phase(const QuotMorphism& h,
                                                     const QuotMorphism& h2,
                                                     int dim_a, int dim_b,
                                                     double tol) {
  if (h.rep.cols() != dim_a + dim_b || h2.rep.cols() != dim_a + dim_b)
    throw ShapeError("uniqueness_phase: carrier mismatch");
  Mat ha = submatrix(h.rep, 0, h.rep.rows(), 0, dim_a);
  Mat hb = submatrix(h.rep, 0, h.rep.rows(), dim_a, dim_a + dim_b);
  Mat ha2 = submatrix(h2.rep, 0, h2.rep.rows(), 0, dim_a);
  Mat hb2 = submatrix(h2.rep, 0, h2.rep.rows(), dim_a, dim_a + dim_b);
  // Precondition: h o kappa = h' o kappa as quotient morphisms.
  if (!quot_eq(canonicalize(ha, h.group, tol), canonicalize(ha2, h.group, tol),
               tol) ||
      !quot_eq(canonicalize(hb, h.group, tol), canonicalize(hb2, h.group, tol),
               tol))
    throw TheoryError("uniqueness_phase: coprojection composites disagree");
  // h' = w * (h o diag(1, u)): fix w on the A-block, then read u off B.
  auto w = phase_between(ha, ha2, tol);
  if (!w) {
    // A-block vanishes; the overall phase is free, absorb it into u.
    auto u = phase_between(hb, hb2, tol);
    return u;
  }
  Mat hb_scaled = mat_scale(ScalarValue::complex(*w), hb);
  return phase_between(hb_scaled, hb2, tol);
}

LawReport check_phased_coproducts(int max_dim, int samples, uint64_t seed,
                                  double tol) {
  Timer t;
  LawReport rep;
  rep.check = "phased-coproducts[circle]";
  Rng rng = Rng(seed).fork(rep.check);
  for (int s = 0; s < samples; ++s) {
    int a = rng.range(1, max_dim), b = rng.range(1, max_dim),
        c = rng.range(1, max_dim);
    ++rep.samples;
    QuotMorphism f = canonicalize(from_eigen(random_cmat(c, a, rng)));
    QuotMorphism g = canonicalize(from_eigen(random_cmat(c, b, rng)));
    QuotMorphism h = phased_cotuple(f, g, a, b, tol);
    // Existence: the cotuple restricts to f and g up to phase.
    QuotMorphism ha = quot_compose(
        h, canonicalize(coprojection_left(a, b)), tol);
    QuotMorphism hb = quot_compose(
        h, canonicalize(coprojection_right(a, b)), tol);
    if (!quot_eq(ha, f, tol))
      rep.fail("cotuple-left", f.rep.str(), ha.rep.str(), f.rep.str());
    if (!quot_eq(hb, g, tol))
      rep.fail("cotuple-right", g.rep.str(), hb.rep.str(), g.rep.str());
    // Uniqueness: a second mediator differs by a phase of the coproduct.
    double theta = rng.real() * 6.283185307179586;
    std::complex<double> u(std::cos(theta), std::sin(theta));
    QuotMorphism h2 = canonicalize(
        mat_compose(h.rep, phase_on_sum(a, b, u)), h.group, tol);
    auto got = uniqueness_phase(h, h2, a, b, tol);
    if (!got)
      rep.fail("uniqueness-phase", h.rep.str(), "no phase",
               "diag(1,u) witness");
    else {
      Mat lhs = mat_compose(h.rep, phase_on_sum(a, b, *got));
      if (!quot_eq(canonicalize(lhs, h.group, tol), h2, tol))
        rep.fail("uniqueness-verify", h.rep.str(), "h o diag(1,u)",
                 h2.rep.str());
    }
    auto trivial = uniqueness_phase(h, h, a, b, tol);
    if (!trivial || std::abs(*trivial - std::complex<double>(1.0)) > 1e-6)
      rep.fail("uniqueness-identity", h.rep.str(), "u != 1", "u = 1");
  }
  rep.elapsed_ms = t.ms();
  return rep;
}

// --- Reconstruction ----------------------------------------------------------

GpMorphism gp_embed(const Mat& f) {
  if (f.backend() != Backend::FloatC)
    throw BackendError("gp_embed: float backend");
  Mat one = Mat::identity(Backend::FloatC, 1);
  return {direct_sum(f, one)};
}

GpMorphism gp_from_quot(const QuotMorphism& q, double tol) {
  (void)tol;
  if (q.group != PhaseGroupKind::Circle)
    throw BackendError("gp_from_quot: circle quotient only");
  return gp_embed(q.rep);
}

Mat gp_extract(const GpMorphism& f) {
  const Mat& r = f.rep;
  // Normalize the unit slot (any representative keeps |entry| = 1).
  std::complex<double> lam = r.at(r.rows() - 1, r.cols() - 1).as_complex();
  if (std::abs(lam) < 1e-12)
    throw TheoryError("gp_extract: unit slot not preserved");
  Mat block = submatrix(r, 0, r.rows() - 1, 0, r.cols() - 1);
  return mat_scale(ScalarValue::complex(std::conj(lam) / std::norm(lam) *
                                        std::abs(lam)),
                   block);
}

GpMorphism gp_compose(const GpMorphism& g, const GpMorphism& f) {
  return {mat_compose(g.rep, f.rep)};
}

GpMorphism gp_tensor(const GpMorphism& f, const GpMorphism& g) {
  return gp_embed(mat_kron(gp_extract(f), gp_extract(g)));
}

GpMorphism gp_dagger(const GpMorphism& f) { return {mat_dagger(f.rep)}; }

bool gp_eq(const GpMorphism& a, const GpMorphism& b, double tol) {
  return mat_eq(gp_extract(a), gp_extract(b), tol);
}

Mat gp_corner(int n, int m) {
  // (n*m + 1) -> (n+1)(m+1); pairs (i, j) with i < n, j < m land on the
  // carrier pair index, the unit slot lands on the pair of unit slots.
  Mat c = Mat::zero(Backend::FloatC, (n + 1) * (m + 1), n * m + 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      c.at(i * (m + 1) + j, i * m + j) = ScalarValue::one(Backend::FloatC);
  c.at(n * (m + 1) + m, n * m) = ScalarValue::one(Backend::FloatC);
  return c;
}

LawReport gp_roundtrip_check(int max_dim, int samples, uint64_t seed,
                             double tol) {
  Timer t;
  LawReport rep;
  rep.check = "gp-roundtrip";
  Rng rng = Rng(seed).fork(rep.check);
  for (int s = 0; s < samples; ++s) {
    int n = rng.range(1, max_dim), m = rng.range(1, max_dim),
        k = rng.range(1, max_dim);
    ++rep.samples;
    Mat f = from_eigen(random_cmat(m, n, rng));
    Mat g = from_eigen(random_cmat(k, m, rng));
    // Embed -> quotient -> reconstruct -> extract: equal up to global phase.
    QuotMorphism qf = canonicalize(f);
    Mat back = gp_extract(gp_from_quot(qf, tol));
    if (!quot_eq(canonicalize(back), qf, tol))
      rep.fail("roundtrip", f.str(), back.str(), qf.rep.str());
    // Functoriality of the reconstruction on representatives.
    GpMorphism gf = gp_embed(f), gg = gp_embed(g);
    if (!mat_eq(gp_extract(gp_compose(gg, gf)), mat_compose(g, f), tol))
      rep.fail("compose", f.str() + " ; " + g.str(),
               gp_extract(gp_compose(gg, gf)).str(), mat_compose(g, f).str());
    if (!mat_eq(gp_extract(gp_dagger(gf)), mat_dagger(f), tol))
      rep.fail("dagger", f.str(), gp_extract(gp_dagger(gf)).str(),
               mat_dagger(f).str());
    // Monoidality against the corner isometry:
    // (F (x) G) o c = c o (F  tensor-hat  G).
    Mat h = from_eigen(random_cmat(k, m, rng));
    GpMorphism gh = gp_embed(h);
    Mat corner_src = gp_corner(n, m);
    Mat corner_tgt = gp_corner(m, k);
    Mat lhs = mat_compose(mat_kron(gf.rep, gh.rep), corner_src);
    Mat rhs = mat_compose(corner_tgt, gp_tensor(gf, gh).rep);
    if (!mat_eq(lhs, rhs, tol))
      rep.fail("monoidal-corner", f.str() + " | " + h.str(), lhs.str(),
               rhs.str());
    // Corner maps are isometries (the dagger-biproduct refinement).
    Mat gram = mat_mul(mat_dagger(corner_src), corner_src);
    if (!mat_eq(gram, Mat::identity(Backend::FloatC, n * m + 1), tol))
      rep.fail("corner-isometry", corner_src.str(), gram.str(), "id");
    // Phases on the carrier are scalar multiples of the identity in the
    // reconstruction: diag(id, u) ~ conj(u) * id as quotient morphisms.
    double theta = rng.real() * 6.283185307179586;
    std::complex<double> u(std::cos(theta), std::sin(theta));
    Mat phase = phase_on_sum(n, 1, u);
    Mat scalar_mult = mat_scale(ScalarValue::complex(std::conj(u)),
                                Mat::identity(Backend::FloatC, n + 1));
    if (!quot_eq(canonicalize(phase), canonicalize(scalar_mult), tol))
      rep.fail("phases-are-scalars", phase.str(), canonicalize(phase).rep.str(),
               canonicalize(scalar_mult).rep.str());
    // Scalars are recovered exactly, including unitary ones.
    std::complex<double> sc(rng.gauss(), rng.gauss());
    GpMorphism gsc = gp_embed(Mat::scalar(ScalarValue::complex(sc)));
    auto got = gp_extract(gsc).at(0, 0).as_complex();
    if (std::abs(got - sc) > tol * (1.0 + std::abs(sc)))
      rep.fail("scalar-recovery", "s", std::to_string(got.real()),
               std::to_string(sc.real()));
    // Dagger-biproduct facts on the carrier: coprojections are orthogonal
    // isometries.
    Mat ka = coprojection_left(n, 1), ki = coprojection_right(n, 1);
    if (!mat_eq(mat_mul(mat_dagger(ka), ka),
                Mat::identity(Backend::FloatC, n), tol) ||
        !mat_mul(mat_dagger(ka), ki).is_zero(tol))
      rep.fail("coprojection-isometry", ka.str(), "k†k, k†k'", "id, 0");
  }
  rep.elapsed_ms = t.ms();
  return rep;
}

LawReport check_phase_generator(int max_dim, int samples, uint64_t seed,
                                double tol, bool inject_noncentral) {
  Timer t;
  LawReport rep;
  rep.check = inject_noncentral ? "phase-generator[injected]"
                                : "phase-generator";
  Rng rng = Rng(seed).fork("phase-generator");
  // Codiagonal on I + I.
  Mat nabla(Backend::FloatC, 1, 2);
  nabla.at(0, 0) = nabla.at(0, 1) = ScalarValue::one(Backend::FloatC);
  for (int s = 0; s < samples; ++s) {
    ++rep.samples;
    double theta = rng.real() * 6.283185307179586;
    std::complex<double> u(std::cos(theta), std::sin(theta));
    std::vector<Mat> family = {phase_on_sum(1, 1, u)};
    if (inject_noncentral) family.push_back(Mat::swap(Backend::FloatC, 1, 2));
    for (const Mat& ph : family) {
      // Phase monic: nabla o U = nabla forces U = id.
      Mat comp = mat_compose(nabla, ph);
      bool fixes_nabla = quot_eq(canonicalize(comp), canonicalize(nabla), tol);
      bool is_id = mat_eq(ph, Mat::identity(Backend::FloatC, 2), tol);
      if (fixes_nabla && !is_id)
        rep.fail("phase-monic", ph.str(), "nabla o U = nabla", "U = id");
    }
    // Phase epic: a diagonal mono m : I + I -> A + B with U o m = m forces
    // U = id on the phase family.
    int a = rng.range(1, max_dim), b = rng.range(1, max_dim);
    CMat psi_a = random_isometry(a, 1, rng);
    CMat psi_b = random_isometry(b, 1, rng);
    Mat mono = Mat::zero(Backend::FloatC, a + b, 2);
    for (int i = 0; i < a; ++i) mono.at(i, 0) = ScalarValue::complex(psi_a(i, 0));
    for (int i = 0; i < b; ++i)
      mono.at(a + i, 1) = ScalarValue::complex(psi_b(i, 0));
    std::vector<std::pair<Mat, bool>> epics;
    epics.emplace_back(phase_on_sum(a, b, u),
                       std::abs(u - std::complex<double>(1.0)) < tol);
    if (inject_noncentral && a >= 2) {
      // A block rotation fixing psi_a but not the whole block.
      CMat rot = complete_unitary(psi_a, tol);
      CMat twist = CMat::Identity(a, a);
      twist(a - 1, a - 1) = std::complex<double>(-1.0, 0.0);
      CMat bad = rot * twist * rot.adjoint();
      Mat badm = direct_sum(from_eigen(bad), Mat::identity(Backend::FloatC, b));
      epics.emplace_back(badm, false);
    }
    for (const auto& [ph, id_expected] : epics) {
      Mat comp = mat_compose(ph, mono);
      bool fixes_mono = quot_eq(canonicalize(comp), canonicalize(mono), tol);
      bool is_id =
          mat_eq(ph, Mat::identity(Backend::FloatC, a + b), tol);
      (void)id_expected;
      if (fixes_mono && !is_id)
        rep.fail("phase-epic", ph.str(), "U o m = m", "U = id");
    }
  }
  rep.elapsed_ms = t.ms();
  return rep;
}

LawReport check_positive_freeness(PhaseGroupKind kind, int max_dim,
                                  int samples, uint64_t seed, double tol) {
  Timer t;
  LawReport rep;
  rep.check = std::string("positive-freeness[") +
              (kind == PhaseGroupKind::Circle ? "circle" : "gauss_trivial") +
              "]";
  Rng rng = Rng(seed).fork(rep.check);
  if (kind == PhaseGroupKind::GaussTrivialInvolution) {
    // With the trivial involution on the Gaussian rationals, -1 = i† · i is
    // a positive unitary scalar, so diag(1, -1) is a positive phase that is
    // not the identity.
    ++rep.samples;
    Mat g = Mat::zero(Backend::GaussRat, 2, 2);
    g.at(0, 0) = ScalarValue::gauss(1, 0);
    g.at(1, 1) = ScalarValue::gauss(0, 1);  // i
    Mat witness = mat_mul(mat_transpose(g), g);  // trivial involution dagger
    Mat expect = Mat::zero(Backend::GaussRat, 2, 2);
    expect.at(0, 0) = ScalarValue::gauss(1, 0);
    expect.at(1, 1) = ScalarValue::gauss(-1, 0);
    if (!mat_eq(witness, expect))
      rep.fail("counterexample-shape", g.str(), witness.str(), expect.str());
    else
      rep.fail("positive-free", "diag(1,i)",
               "positive phase diag(1,-1) != id", "positive phases trivial");
    rep.notes.push_back("expected failure: witness diag(1, -1)");
    rep.elapsed_ms = t.ms();
    return rep;
  }
  if (kind == PhaseGroupKind::Trivial) {
    rep.samples = 1;  // vacuous
    rep.elapsed_ms = t.ms();
    return rep;
  }
  for (int s = 0; s < samples; ++s) {
    int a = rng.range(1, max_dim), b = rng.range(1, max_dim);
    ++rep.samples;
    // Positive phases on the circle are trivial: u = e^{i t} with
    // diag(1, u) positive (= PSD) forces u = 1.
    double theta = rng.real() * 6.283185307179586;
    std::complex<double> u(std::cos(theta), std::sin(theta));
    Mat ph = phase_on_sum(a, b, u);
    CMat e = to_eigen(ph);
    bool positive = (e - e.adjoint()).norm() <= tol * (1.0 + e.norm());
    if (positive) {
      HermEig eig = herm_eig((e + e.adjoint()) / 2.0);
      positive = eig.values(0) >= -tol * (1.0 + e.norm());
    }
    bool is_id = std::abs(u - std::complex<double>(1.0)) <= tol;
    if (positive && !is_id)
      rep.fail("positive-free", ph.str(), "positive phase", "identity");
    // Positive cancellation: positive diagonal p, q with p = q o U have
    // p = q.
    CMat da = random_cmat(a, a, rng), db = random_cmat(b, b, rng);
    CMat pa = da.adjoint() * da, pb = db.adjoint() * db;
    Mat p = direct_sum(from_eigen(pa), from_eigen(pb));
    Mat q_times_u = mat_compose(p, phase_on_sum(a, b, u));
    // If q o U is again positive then U restricted to the support was
    // trivial and the positives must agree.
    CMat qu = to_eigen(q_times_u);
    bool qu_positive = (qu - qu.adjoint()).norm() <= tol * (1.0 + qu.norm());
    if (qu_positive && !mat_eq(q_times_u, p, tol) &&
        std::abs(u - std::complex<double>(1.0)) > 1e-6 && pb.norm() > 1e-9)
      rep.fail("positive-cancellation", p.str(), q_times_u.str(), p.str());
  }
  rep.elapsed_ms = t.ms();
  return rep;
}

}  // namespace pt
