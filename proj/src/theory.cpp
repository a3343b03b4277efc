#include "proctheory/theory.hpp"

#include <chrono>

namespace pt {

Morphism CpmTheory::sample(Rng& rng, Obj a, Obj b) const {
  if (field_ == Field::Exact) {
    int nk = rng.range(1, 2);
    std::vector<Mat> ks;
    for (int i = 0; i < nk; ++i)
      ks.push_back(sample_mat(backend_, b.dim, a.dim, rng));
    return {cpm_from_kraus(a.dim, b.dim, std::move(ks))};
  }
  int nk = rng.range(1, 2);
  std::vector<Mat> ks;
  for (int i = 0; i < nk; ++i)
    ks.push_back(from_eigen(random_cmat(b.dim, a.dim, rng, real_only()) /
                            std::sqrt(static_cast<double>(nk * b.dim))));
  return {cpm_from_kraus(a.dim, b.dim, std::move(ks))};
}

CpmMap CpmTheory::sample_channel(Rng& rng, int in_dim, int out_dim) const {
  if (field_ == Field::Exact)
    throw BackendError("sample_channel: float fields only");
  int nk = rng.range(1, std::min(3, out_dim * in_dim));
  std::vector<CMat> ks;
  for (int i = 0; i < nk; ++i)
    ks.push_back(random_cmat(out_dim, in_dim, rng, real_only()));
  // Normalize: Sum K†K = id.
  CMat total = CMat::Zero(in_dim, in_dim);
  for (const auto& k : ks) total += k.adjoint() * k;
  HermEig eig = herm_eig(total);
  CMat inv_sqrt = CMat::Zero(in_dim, in_dim);
  for (int i = 0; i < in_dim; ++i) {
    double l = eig.values(i);
    if (l <= 1e-12) throw TheoryError("sample_channel: degenerate sample");
    inv_sqrt += eig.vectors.col(i) * eig.vectors.col(i).adjoint() /
                std::sqrt(l);
  }
  std::vector<Mat> out;
  for (const auto& k : ks) out.push_back(from_eigen(k * inv_sqrt));
  return cpm_from_kraus(in_dim, out_dim, std::move(out));
}

CpmMap CpmTheory::sample_pure_state(Rng& rng, int dim) const {
  CMat v = random_cmat(dim, 1, rng, real_only());
  double n = v.norm();
  if (n <= 1e-12) v = CMat::Ones(dim, 1), n = v.norm();
  return dbl(from_eigen(v / n));
}

Morphism MutantTheory::compose(const Morphism& g, const Morphism& f) const {
  if (kind_ == MutantKind::TransposedCompose && f.is_mat() && g.is_mat() &&
      f.mat().rows() == f.mat().cols())
    return {mat_compose(g.mat(), mat_transpose(f.mat()))};
  return base_->compose(g, f);
}

std::vector<std::string> all_law_sets() {
  return {"category", "monoidal", "symmetry", "dagger",
          "compact",  "discard",  "zero",     "scalars"};
}

namespace {

using Clock = std::chrono::steady_clock;

struct Harness {
  const Theory& th;
  const LawParams& p;
  LawReport rep;
  Rng rng;

  Harness(const Theory& t, const LawParams& params, const std::string& check)
      : th(t), p(params), rng(params.seed) {
    rep.check = check;
    rng = Rng(params.seed).fork(check);
  }

  Obj obj() { return Obj{rng.range(1, p.max_dim)}; }

  void expect(const std::string& law, const Morphism& lhs, const Morphism& rhs,
              const std::string& inputs) {
    ++rep.samples;
    if (!th.equal(lhs, rhs, p.tol))
      rep.fail(law, inputs, th.show(lhs), th.show(rhs));
  }

  LawReport finish(Clock::time_point t0) {
    rep.elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    return rep;
  }
};

LawReport law_category(const Theory& th, const LawParams& p) {
  auto t0 = Clock::now();
  Harness h(th, p, "category");
  for (int s = 0; s < p.samples; ++s) {
    Obj a = h.obj(), b = h.obj(), c = h.obj(), d = h.obj();
    Morphism f = th.sample(h.rng, a, b);
    Morphism g = th.sample(h.rng, b, c);
    Morphism k = th.sample(h.rng, c, d);
    h.expect("assoc", th.compose(k, th.compose(g, f)),
             th.compose(th.compose(k, g), f),
             th.show(f) + " ; " + th.show(g) + " ; " + th.show(k));
    h.expect("id-left", th.compose(th.id(b), f), f, th.show(f));
    h.expect("id-right", th.compose(f, th.id(a)), f, th.show(f));
  }
  return h.finish(t0);
}

LawReport law_monoidal(const Theory& th, const LawParams& p) {
  auto t0 = Clock::now();
  Harness h(th, p, "monoidal");
  for (int s = 0; s < p.samples; ++s) {
    Obj a = h.obj(), b = h.obj(), c = h.obj(), d = h.obj();
    Morphism f1 = th.sample(h.rng, a, b), g1 = th.sample(h.rng, b, c);
    Morphism f2 = th.sample(h.rng, c, d), g2 = th.sample(h.rng, d, a);
    // Interchange.
    h.expect("interchange",
             th.compose(th.tensor(g1, g2), th.tensor(f1, f2)),
             th.tensor(th.compose(g1, f1), th.compose(g2, f2)),
             th.show(f1) + " | " + th.show(f2));
    h.expect("id-tensor", th.tensor(th.id(a), th.id(b)),
             th.id(th.tensor_obj(a, b)), "ids");
    // Strictness makes unitors identities: f (x) id_I = f.
    h.expect("unit-strict", th.tensor(f1, th.id(th.unit())), f1, th.show(f1));
  }
  return h.finish(t0);
}

LawReport law_symmetry(const Theory& th, const LawParams& p) {
  auto t0 = Clock::now();
  Harness h(th, p, "symmetry");
  for (int s = 0; s < p.samples; ++s) {
    Obj a = h.obj(), b = h.obj(), c = h.obj(), d = h.obj();
    Morphism f = th.sample(h.rng, a, c), g = th.sample(h.rng, b, d);
    h.expect("swap-inverse", th.compose(th.swap(b, a), th.swap(a, b)),
             th.id(th.tensor_obj(a, b)), "swap");
    h.expect("swap-natural",
             th.compose(th.swap(c, d), th.tensor(f, g)),
             th.compose(th.tensor(g, f), th.swap(a, b)),
             th.show(f) + " | " + th.show(g));
  }
  return h.finish(t0);
}

LawReport law_dagger(const Theory& th, const LawParams& p) {
  auto t0 = Clock::now();
  Harness h(th, p, "dagger");
  for (int s = 0; s < p.samples; ++s) {
    Obj a = h.obj(), b = h.obj(), c = h.obj();
    Morphism f = th.sample(h.rng, a, b), g = th.sample(h.rng, b, c);
    h.expect("dagger-involutive", th.dagger(th.dagger(f)), f, th.show(f));
    h.expect("dagger-contravariant", th.dagger(th.compose(g, f)),
             th.compose(th.dagger(f), th.dagger(g)),
             th.show(f) + " ; " + th.show(g));
    h.expect("dagger-monoidal", th.dagger(th.tensor(f, g)),
             th.tensor(th.dagger(f), th.dagger(g)),
             th.show(f) + " | " + th.show(g));
    h.expect("dagger-id", th.dagger(th.id(a)), th.id(a), "id");
    h.expect("dagger-swap", th.dagger(th.swap(a, b)), th.swap(b, a), "swap");
  }
  return h.finish(t0);
}

LawReport law_compact(const Theory& th, const LawParams& p) {
  auto t0 = Clock::now();
  Harness h(th, p, "compact");
  for (int s = 0; s < p.samples; ++s) {
    Obj a = h.obj();
    auto [cup, cap] = th.cup_cap(a);
    // Snake: (id (x) cap) o (cup (x) id) = id, objects self-dual.
    Morphism lhs1 = th.compose(th.tensor(th.id(a), cap),
                               th.tensor(cup, th.id(a)));
    h.expect("snake-1", lhs1, th.id(a), "n=" + std::to_string(a.dim));
    Morphism lhs2 = th.compose(th.tensor(cap, th.id(a)),
                               th.tensor(th.id(a), cup));
    h.expect("snake-2", lhs2, th.id(a), "n=" + std::to_string(a.dim));
    if (th.caps().has_dagger) {
      h.expect("cup-cap-dagger", th.dagger(cup), cap,
               "n=" + std::to_string(a.dim));
    }
  }
  return h.finish(t0);
}

LawReport law_discard(const Theory& th, const LawParams& p) {
  auto t0 = Clock::now();
  Harness h(th, p, "discard");
  for (int s = 0; s < p.samples; ++s) {
    Obj a = h.obj(), b = h.obj();
    h.expect("discard-unit", th.discard(th.unit()), th.id(th.unit()), "I");
    h.expect("discard-tensor", th.discard(th.tensor_obj(a, b)),
             th.tensor(th.discard(a), th.discard(b)),
             std::to_string(a.dim) + "x" + std::to_string(b.dim));
    // Coherence isomorphisms are causal; for the swap this reads
    // discard o swap = discard.
    h.expect("swap-causal", th.compose(th.discard(th.tensor_obj(b, a)),
                                       th.swap(a, b)),
             th.discard(th.tensor_obj(a, b)), "swap");
  }
  return h.finish(t0);
}

LawReport law_zero(const Theory& th, const LawParams& p) {
  auto t0 = Clock::now();
  Harness h(th, p, "zero");
  for (int s = 0; s < p.samples; ++s) {
    Obj a = h.obj(), b = h.obj(), c = h.obj();
    Morphism f = th.sample(h.rng, a, b);
    h.expect("zero-post", th.compose(th.zero(b, c), f), th.zero(a, c),
             th.show(f));
    h.expect("zero-pre", th.compose(f, th.zero(c, a)), th.zero(c, b),
             th.show(f));
    h.expect("zero-tensor", th.tensor(f, th.zero(c, c)),
             th.zero(th.tensor_obj(a, c), th.tensor_obj(b, c)), th.show(f));
  }
  return h.finish(t0);
}

LawReport law_scalars(const Theory& th, const LawParams& p) {
  auto t0 = Clock::now();
  Harness h(th, p, "scalars");
  Obj i = th.unit();
  for (int s = 0; s < p.samples; ++s) {
    Morphism x = th.sample(h.rng, i, i), y = th.sample(h.rng, i, i);
    h.expect("scalar-commute", th.compose(x, y), th.compose(y, x),
             th.show(x) + " , " + th.show(y));
    h.expect("scalar-tensor-compose", th.tensor(x, y), th.compose(x, y),
             th.show(x) + " , " + th.show(y));
  }
  return h.finish(t0);
}

}  // namespace

LawSuite check_laws(const Theory& th, const std::vector<std::string>& law_sets,
                    const LawParams& p) {
  std::vector<std::string> sets = law_sets;
  if (sets.size() == 1 && sets[0] == "all") sets = all_law_sets();
  LawSuite suite;
  suite.backend = th.name();
  for (const auto& s : sets) {
    if (s == "category") suite.reports.push_back(law_category(th, p));
    else if (s == "monoidal") suite.reports.push_back(law_monoidal(th, p));
    else if (s == "symmetry") suite.reports.push_back(law_symmetry(th, p));
    else if (s == "dagger") {
      if (!th.caps().has_dagger)
        throw BackendError("check_laws: dagger laws need an involution");
      suite.reports.push_back(law_dagger(th, p));
    } else if (s == "compact") {
      if (!th.caps().compact)
        throw BackendError("check_laws: compact laws unsupported");
      suite.reports.push_back(law_compact(th, p));
    } else if (s == "discard") suite.reports.push_back(law_discard(th, p));
    else if (s == "zero") suite.reports.push_back(law_zero(th, p));
    else if (s == "scalars") suite.reports.push_back(law_scalars(th, p));
    else throw TheoryError("check_laws: unknown law set '" + s + "'");
  }
  return suite;
}

}  // namespace pt
