#include "proctheory/kernels.hpp"

#include <chrono>

namespace pt {

namespace {

using Clock = std::chrono::steady_clock;

bool diag_kind(Backend b) {
  return b == Backend::Bool || b == Backend::Nat || b == Backend::RatNonneg;
}

bool field_kind(Backend b) {
  return b == Backend::Rat || b == Backend::GaussRat;
}

Mat selection_iso(Backend b, int ambient, const std::vector<int>& idx) {
  Mat m(b, ambient, static_cast<int>(idx.size()));
  for (size_t j = 0; j < idx.size(); ++j)
    m.at(idx[j], static_cast<int>(j)) = ScalarValue::one(b);
  return m;
}

std::vector<int> diag_support(const Mat& p) {
  std::vector<int> idx;
  for (int i = 0; i < p.rows(); ++i)
    if (!p.at(i, i).is_zero()) idx.push_back(i);
  return idx;
}

// id - p for backends with subtraction; diagonal flip otherwise (all
// projections on Bool/Nat/RatNonneg are coordinate-diagonal).
Mat complement_projection(const Mat& p) {
  if (caps_of(p.backend()).has_subtraction)
    return mat_sub(Mat::identity(p.backend(), p.rows()), p);
  Mat r = Mat::zero(p.backend(), p.rows(), p.rows());
  for (int i = 0; i < p.rows(); ++i)
    if (p.at(i, i).is_zero()) r.at(i, i) = ScalarValue::one(p.backend());
  return r;
}

KernelRep from_float_iso(const CMat& iso) {
  KernelRep k;
  k.backend = Backend::FloatC;
  k.ambient = static_cast<int>(iso.rows());
  k.rank = static_cast<int>(iso.cols());
  k.isometry = from_eigen(iso);
  k.projection = from_eigen(CMat(iso * iso.adjoint()));
  return k;
}

KernelRep from_field_basis(const Mat& basis) {
  KernelRep k;
  k.backend = basis.backend();
  k.ambient = basis.rows();
  k.rank = basis.cols();
  k.projection = exact_projection(basis);
  return k;
}

KernelRep from_selection(Backend b, int ambient, const std::vector<int>& idx) {
  KernelRep k;
  k.backend = b;
  k.ambient = ambient;
  k.rank = static_cast<int>(idx.size());
  Mat iso = selection_iso(b, ambient, idx);
  k.isometry = iso;
  k.projection = mat_mul(iso, mat_dagger(iso));
  return k;
}

// Column basis of the space a kernel includes.
Mat kernel_basis(const KernelRep& k) {
  if (k.isometry) return *k.isometry;
  return exact_column_basis(k.projection);
}

}  // namespace

KernelRep kernel_from_isometry(const Mat& iso, double tol) {
  if (iso.backend() == Backend::FloatC) {
    CMat m = to_eigen(iso);
    if ((m.adjoint() * m - CMat::Identity(m.cols(), m.cols())).norm() >
        tol * (1.0 + m.norm()))
      throw TheoryError("kernel_from_isometry: k†k != id");
    return from_float_iso(m);
  }
  Mat gram = mat_mul(mat_dagger(iso), iso);
  if (!mat_eq(gram, Mat::identity(iso.backend(), iso.cols())))
    throw TheoryError("kernel_from_isometry: k†k != id");
  KernelRep k;
  k.backend = iso.backend();
  k.ambient = iso.rows();
  k.rank = iso.cols();
  k.isometry = iso;
  k.projection = mat_mul(iso, mat_dagger(iso));
  return k;
}

KernelRep kernel_from_projection(const Mat& p, double tol) {
  if (p.rows() != p.cols()) throw ShapeError("kernel_from_projection");
  if (!mat_eq(p, mat_dagger(p), tol) || !mat_eq(p, mat_mul(p, p), tol))
    throw TheoryError("kernel_from_projection: not a self-adjoint idempotent");
  if (p.backend() == Backend::FloatC) {
    CMat cs = column_space(to_eigen(p), tol);
    return from_float_iso(cs);
  }
  if (diag_kind(p.backend()))
    return from_selection(p.backend(), p.rows(), diag_support(p));
  KernelRep k;
  k.backend = p.backend();
  k.ambient = p.rows();
  k.projection = p;
  k.rank = exact_column_basis(p).cols();
  return k;
}

KernelRep full_kernel(Backend b, int ambient) {
  if (b == Backend::FloatC)
    return from_float_iso(CMat::Identity(ambient, ambient));
  if (diag_kind(b)) {
    std::vector<int> all(ambient);
    for (int i = 0; i < ambient; ++i) all[i] = i;
    return from_selection(b, ambient, all);
  }
  return from_field_basis(Mat::identity(b, ambient));
}

KernelRep zero_kernel(Backend b, int ambient) {
  if (b == Backend::FloatC) return from_float_iso(CMat(ambient, 0));
  if (diag_kind(b)) return from_selection(b, ambient, {});
  return from_field_basis(Mat::zero(b, ambient, 0));
}

KernelRep kernel_of(const Mat& f, double tol) {
  Backend b = f.backend();
  if (b == Backend::FloatC) return from_float_iso(nullspace(to_eigen(f), tol));
  if (diag_kind(b)) return from_selection(b, f.cols(), zero_columns(f));
  return from_field_basis(exact_nullspace(f));
}

KernelRep cpm_kernel(const CpmMap& f, double tol) {
  return kernel_of(cpm_input_density(f), tol);
}

Mat cokernel_iso(const Mat& f, double tol) {
  if (f.backend() == Backend::FloatC) {
    CMat n = nullspace(to_eigen(mat_dagger(f)), tol);
    return from_eigen(CMat(n.adjoint()));
  }
  if (diag_kind(f.backend())) {
    KernelRep k = kernel_of(mat_dagger(f), tol);
    return mat_dagger(*k.isometry);
  }
  throw BackendError("cokernel_iso: isometry form needs float or selection");
}

Mat cokernel_projected(const Mat& f, double tol) {
  KernelRep kd = kernel_of(mat_dagger(f), tol);
  return kd.projection;
}

KernelRep image_of(const Mat& f, double tol) {
  Backend b = f.backend();
  if (b == Backend::FloatC)
    return from_float_iso(column_space(to_eigen(f), tol));
  if (diag_kind(b)) {
    std::vector<int> rows;
    for (int i = 0; i < f.rows(); ++i) {
      bool nonzero = false;
      for (int j = 0; j < f.cols() && !nonzero; ++j)
        if (!f.at(i, j).is_zero()) nonzero = true;
      if (nonzero) rows.push_back(i);
    }
    return from_selection(b, f.rows(), rows);
  }
  return from_field_basis(exact_column_basis(f));
}

Mat coimage_projected(const Mat& f, double tol) {
  return complement(kernel_of(f, tol)).projection;
}

KernelRep cpm_image(const CpmMap& f, double tol) {
  // Output density Sum K K† via the Choi partial trace over the input leg.
  const int n = f.in_dim, m = f.out_dim;
  Mat d(f.backend(), m, m);
  for (int r = 0; r < m; ++r)
    for (int s = 0; s < m; ++s) {
      ScalarValue acc = ScalarValue::zero(f.backend());
      for (int i = 0; i < n; ++i)
        acc = add(acc, f.choi.at(i * m + r, i * m + s));
      d.at(r, s) = acc;
    }
  return complement(kernel_of(d, tol));
}

KernelRep complement(const KernelRep& k) {
  Mat q = complement_projection(k.projection);
  if (k.backend == Backend::FloatC || diag_kind(k.backend))
    return kernel_from_projection(q);
  KernelRep r;
  r.backend = k.backend;
  r.ambient = k.ambient;
  r.projection = q;
  r.rank = k.ambient - k.rank;
  return r;
}

KernelRep meet(const KernelRep& k, const KernelRep& l, double tol) {
  if (k.ambient != l.ambient || k.backend != l.backend)
    throw ShapeError("meet: ambient mismatch");
  // k ∧ l = k o ker(coker(l) o k); coker(l) is zero-monic past its
  // projection so the kernel below is unchanged by using id - p_l.
  Mat restricted = mat_mul(complement_projection(l.projection),
                           kernel_basis(k));
  Backend b = k.backend;
  if (b == Backend::FloatC) {
    CMat c = nullspace(to_eigen(restricted), tol);
    CMat g = to_eigen(kernel_basis(k)) * c;
    return from_float_iso(g);
  }
  if (diag_kind(b)) {
    std::vector<int> zc = zero_columns(restricted);
    // kernel_basis is a selection; compose selections.
    std::vector<int> idx;
    const Mat& bk = kernel_basis(k);
    for (int j : zc)
      for (int i = 0; i < bk.rows(); ++i)
        if (!bk.at(i, j).is_zero()) idx.push_back(i);
    return from_selection(b, k.ambient, idx);
  }
  Mat c = exact_nullspace(restricted);
  Mat g = mat_mul(kernel_basis(k), c);
  return from_field_basis(exact_column_basis(g));
}

KernelRep join(const KernelRep& k, const KernelRep& l, double tol) {
  return complement(meet(complement(k), complement(l), tol));
}

bool kernel_leq(const KernelRep& k, const KernelRep& l, double tol) {
  return mat_eq(mat_mul(l.projection, k.projection), k.projection, tol);
}

bool kernel_eq(const KernelRep& k, const KernelRep& l, double tol) {
  return mat_eq(k.projection, l.projection, tol);
}

KernelRep sample_kernel(Backend b, int ambient, Rng& rng, double tol) {
  int r = rng.range(0, ambient);
  if (b == Backend::FloatC) return from_float_iso(random_isometry(ambient, r, rng));
  if (diag_kind(b)) {
    std::vector<int> idx;
    for (int i = 0; i < ambient; ++i)
      if (rng.coin()) idx.push_back(i);
    return from_selection(b, ambient, idx);
  }
  Mat m = sample_mat(b, ambient, r, rng);
  return from_field_basis(exact_column_basis(m));
}

std::pair<KernelRep, KernelRep> sample_nested_kernels(Backend b, int ambient,
                                                      Rng& rng, double tol) {
  KernelRep l = sample_kernel(b, ambient, rng, tol);
  if (l.rank == 0) return {l, l};
  if (b == Backend::FloatC) {
    int r = rng.range(0, l.rank);
    CMat inner = to_eigen(*l.isometry) * random_isometry(l.rank, r, rng);
    return {from_float_iso(inner), l};
  }
  if (diag_kind(b)) {
    std::vector<int> sub;
    for (int i : diag_support(l.projection))
      if (rng.coin()) sub.push_back(i);
    return {from_selection(b, ambient, sub), l};
  }
  Mat basis = exact_column_basis(l.projection);
  Mat m = mat_mul(basis, sample_mat(b, basis.cols(), rng.range(0, basis.cols()), rng));
  return {from_field_basis(exact_column_basis(m)), l};
}

// --- Checkers ----------------------------------------------------------------

namespace {

struct Timer {
  Clock::time_point t0 = Clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  }
};

std::string kshow(const KernelRep& k) {
  return "rank " + std::to_string(k.rank) + " proj " + k.projection.str();
}

}  // namespace

LawReport check_orthomodular(Backend b, int ambient, int samples,
                             uint64_t seed, double tol) {
  Timer t;
  LawReport rep;
  rep.check = "orthomodular[" + backend_name(b) + " dim " +
              std::to_string(ambient) + "]";
  Rng rng = Rng(seed).fork(rep.check);
  for (int s = 0; s < samples; ++s) {
    KernelRep a = sample_kernel(b, ambient, rng, tol);
    KernelRep c = sample_kernel(b, ambient, rng, tol);
    ++rep.samples;
    // Complement laws.
    if (!kernel_eq(join(a, complement(a), tol), full_kernel(b, ambient), tol))
      rep.fail("a-join-complement", kshow(a), "a v a'", "1");
    if (meet(a, complement(a), tol).rank != 0)
      rep.fail("a-meet-complement", kshow(a), "a ^ a'", "0");
    if (!kernel_eq(complement(complement(a)), a, tol))
      rep.fail("double-complement", kshow(a), "a''", "a");
    // Lattice sanity on pairs.
    if (!kernel_eq(meet(a, c, tol), meet(c, a, tol), tol))
      rep.fail("meet-commutes", kshow(a) + " | " + kshow(c), "a^c", "c^a");
    if (!kernel_eq(meet(a, full_kernel(b, ambient), tol), a, tol))
      rep.fail("meet-top", kshow(a), "a^1", "a");
    if (!kernel_eq(meet(a, a, tol), a, tol))
      rep.fail("meet-idempotent", kshow(a), "a^a", "a");
    // Order reversal.
    auto [k, l] = sample_nested_kernels(b, ambient, rng, tol);
    if (!kernel_leq(complement(l), complement(k), tol))
      rep.fail("complement-antitone", kshow(k) + " <= " + kshow(l), "l'", "k'");
    // Orthomodular law.
    KernelRep rhs = join(k, meet(l, complement(k), tol), tol);
    if (!kernel_eq(rhs, l, tol))
      rep.fail("orthomodular", kshow(k) + " <= " + kshow(l),
               "k v (l ^ k')", kshow(l));
  }
  rep.elapsed_ms = t.ms();
  return rep;
}

LawReport check_image_meet_lemma(Backend b, int ambient, int samples,
                                 uint64_t seed, double tol) {
  Timer t;
  LawReport rep;
  rep.check = "image-meet[" + backend_name(b) + " dim " +
              std::to_string(ambient) + "]";
  Rng rng = Rng(seed).fork(rep.check);
  for (int s = 0; s < samples; ++s) {
    KernelRep k = sample_kernel(b, ambient, rng, tol);
    KernelRep l = sample_kernel(b, ambient, rng, tol);
    ++rep.samples;
    Mat composite = mat_mul(k.projection, kernel_basis(l));
    KernelRep lhs = image_of(composite, tol);
    KernelRep rhs = meet(k, join(l, complement(k), tol), tol);
    if (!kernel_eq(lhs, rhs, tol))
      rep.fail("image-meet", kshow(k) + " | " + kshow(l), kshow(lhs),
               kshow(rhs));
  }
  rep.elapsed_ms = t.ms();
  return rep;
}

LawReport check_covering_law(Backend b, int ambient, int samples,
                             uint64_t seed, double tol) {
  Timer t;
  LawReport rep;
  rep.check = "covering-law[" + backend_name(b) + " dim " +
              std::to_string(ambient) + "]";
  Rng rng = Rng(seed).fork(rep.check);
  for (int s = 0; s < samples; ++s) {
    // Atom: rank-1 kernel.
    KernelRep a = sample_kernel(b, ambient, rng, tol);
    while (a.rank == 0) a = sample_kernel(b, ambient, rng, tol);
    Mat col = submatrix(kernel_basis(a), 0, ambient, 0, 1);
    KernelRep atom = image_of(col, tol);
    KernelRep k = sample_kernel(b, ambient, rng, tol);
    ++rep.samples;
    KernelRep c = meet(k, join(atom, complement(k), tol), tol);
    if (c.rank > 1)
      rep.fail("covering", kshow(atom) + " | " + kshow(k),
               "rank " + std::to_string(c.rank), "0 or 1");
  }
  rep.elapsed_ms = t.ms();
  return rep;
}

LawReport check_kernel_factorisation(Backend b, int rows, int cols,
                                     int samples, uint64_t seed, double tol) {
  Timer t;
  LawReport rep;
  rep.check = "kernel-factorisation[" + backend_name(b) + "]";
  Rng rng = Rng(seed).fork(rep.check);
  for (int s = 0; s < samples; ++s) {
    Mat f = sample_mat(b, rows, cols, rng);
    KernelRep k = kernel_of(f, tol);
    ++rep.samples;
    Mat basis = kernel_basis(k);
    if (!mat_mul(f, basis).is_zero(tol))
      rep.fail("f-ker-zero", f.str(), mat_mul(f, basis).str(), "0");
    if (k.rank == 0) continue;
    // Build g with f o g = 0, factor it back through the kernel.
    Mat m = sample_mat(b, k.rank, 2, rng);
    Mat g = mat_mul(basis, m);
    bool ok = false;
    if (b == Backend::FloatC) {
      CMat h = lstsq(to_eigen(basis), to_eigen(g), tol);
      ok = (to_eigen(basis) * h - to_eigen(g)).norm() <=
           tol * (1.0 + to_eigen(g).norm());
    } else if (field_kind(b)) {
      ok = exact_solve(basis, g).has_value();
    } else {
      Mat h = mat_mul(mat_dagger(basis), g);  // selections invert this way
      ok = mat_eq(mat_mul(basis, h), g);
    }
    if (!ok) rep.fail("factor-through-kernel", f.str(), g.str(), "basis h");
  }
  rep.elapsed_ms = t.ms();
  return rep;
}

LawReport check_image_tensor_compat(Backend b, int max_dim, int samples,
                                    uint64_t seed, double tol) {
  Timer t;
  LawReport rep;
  rep.check = "image-tensor[" + backend_name(b) + "]";
  Rng rng = Rng(seed).fork(rep.check);
  for (int s = 0; s < samples; ++s) {
    int r1 = rng.range(1, max_dim), c1 = rng.range(1, max_dim);
    int r2 = rng.range(1, max_dim), c2 = rng.range(1, max_dim);
    Mat f = sample_mat(b, r1, c1, rng), g = sample_mat(b, r2, c2, rng);
    ++rep.samples;
    KernelRep lhs = image_of(mat_kron(f, g), tol);
    Mat rhs = mat_kron(image_of(f, tol).projection, image_of(g, tol).projection);
    if (!mat_eq(lhs.projection, rhs, tol))
      rep.fail("image-tensor", f.str() + " | " + g.str(),
               lhs.projection.str(), rhs.str());
  }
  rep.elapsed_ms = t.ms();
  return rep;
}

LawReport check_dagger_zero(Backend b, int max_dim, int samples, uint64_t seed,
                            double tol) {
  Timer t;
  LawReport rep;
  rep.check = "dagger-zero[" + backend_name(b) + "]";
  Rng rng = Rng(seed).fork(rep.check);
  for (int s = 0; s < samples; ++s) {
    Mat f = sample_mat(b, rng.range(1, max_dim), rng.range(1, max_dim), rng);
    ++rep.samples;
    bool gram_zero = mat_mul(mat_dagger(f), f).is_zero(tol);
    if (gram_zero && !f.is_zero(tol))
      rep.fail("dagger-zero", f.str(), "f†f = 0", "f = 0");
  }
  rep.elapsed_ms = t.ms();
  return rep;
}

LawReport check_atomicity(Backend b, int ambient, int samples, uint64_t seed,
                          double tol) {
  Timer t;
  LawReport rep;
  rep.check = "atomicity[" + backend_name(b) + " dim " +
              std::to_string(ambient) + "]";
  Rng rng = Rng(seed).fork(rep.check);
  for (int s = 0; s < samples; ++s) {
    KernelRep k = sample_kernel(b, ambient, rng, tol);
    ++rep.samples;
    if (k.rank == 0) continue;
    Mat col = submatrix(kernel_basis(k), 0, ambient, 0, 1);
    KernelRep atom = image_of(col, tol);
    if (atom.rank != 1 || !kernel_leq(atom, k, tol))
      rep.fail("atom-below", kshow(k), kshow(atom), "rank-1 below k");
  }
  rep.elapsed_ms = t.ms();
  return rep;
}

}  // namespace pt
