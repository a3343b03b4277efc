#pragma once

#include <memory>
#include <variant>

#include "proctheory/cpm.hpp"
#include "proctheory/report.hpp"

namespace pt {

// Object of a concrete theory: matrix dimension, finite-set size, or CPM
// dimension. The unit object has dim 1 in every backend here.
struct Obj {
  int dim = 1;
  bool operator==(const Obj& o) const { return dim == o.dim; }
};

// Uniform morphism wrapper for the law harness.
struct Morphism {
  std::variant<Mat, CpmMap> pay;

  const Mat& mat() const { return std::get<Mat>(pay); }
  const CpmMap& cpm() const { return std::get<CpmMap>(pay); }
  bool is_mat() const { return std::holds_alternative<Mat>(pay); }
};

struct TheoryCaps {
  bool exact = true;
  bool has_dagger = false;
  bool has_addition = false;
  bool compact = false;
};

// Uniform interface for the finite symmetric monoidal dagger categories with
// discarding and zero morphisms used throughout. All backends are strict
// monoidal by construction (Kronecker / Cartesian products), so coherence
// isomorphisms are identities and the swap is an explicit matrix.
class Theory {
 public:
  virtual ~Theory() = default;
  virtual std::string name() const = 0;
  virtual TheoryCaps caps() const = 0;

  Obj unit() const { return Obj{1}; }
  Obj tensor_obj(Obj a, Obj b) const { return Obj{a.dim * b.dim}; }

  virtual Obj src(const Morphism& f) const = 0;
  virtual Obj tgt(const Morphism& f) const = 0;

  virtual Morphism id(Obj a) const = 0;
  virtual Morphism zero(Obj a, Obj b) const = 0;
  virtual Morphism discard(Obj a) const = 0;
  virtual Morphism swap(Obj a, Obj b) const = 0;
  virtual Morphism compose(const Morphism& g, const Morphism& f) const = 0;
  virtual Morphism tensor(const Morphism& f, const Morphism& g) const = 0;
  virtual Morphism dagger(const Morphism& f) const = 0;
  virtual Morphism add(const Morphism& f, const Morphism& g) const = 0;
  virtual std::pair<Morphism, Morphism> cup_cap(Obj a) const = 0;
  virtual bool equal(const Morphism& f, const Morphism& g,
                     double tol) const = 0;
  virtual Morphism sample(Rng& rng, Obj a, Obj b) const = 0;
  virtual std::string show(const Morphism& f) const = 0;

  bool is_causal(const Morphism& f, double tol) const {
    return equal(compose(discard(tgt(f)), f), discard(src(f)), tol);
  }
};

// Mat_S over any scalar backend. The Boolean case is the category of finite
// relations (dagger = relational converse).
class MatTheory : public Theory {
 public:
  explicit MatTheory(Backend b, std::string display_name = "")
      : backend_(b),
        name_(display_name.empty() ? ("mat_" + backend_name(b))
                                   : std::move(display_name)) {}
  Backend scalar_backend() const { return backend_; }

  std::string name() const override { return name_; }
  TheoryCaps caps() const override {
    return {caps_of(backend_).exact, caps_of(backend_).has_involution, true,
            true};
  }
  Obj src(const Morphism& f) const override { return Obj{f.mat().cols()}; }
  Obj tgt(const Morphism& f) const override { return Obj{f.mat().rows()}; }
  Morphism id(Obj a) const override {
    return {Mat::identity(backend_, a.dim)};
  }
  Morphism zero(Obj a, Obj b) const override {
    return {Mat::zero(backend_, b.dim, a.dim)};
  }
  Morphism discard(Obj a) const override {
    return {Mat::discard(backend_, a.dim)};
  }
  Morphism swap(Obj a, Obj b) const override {
    return {Mat::swap(backend_, a.dim, b.dim)};
  }
  Morphism compose(const Morphism& g, const Morphism& f) const override {
    return {mat_compose(g.mat(), f.mat())};
  }
  Morphism tensor(const Morphism& f, const Morphism& g) const override {
    return {mat_kron(f.mat(), g.mat())};
  }
  Morphism dagger(const Morphism& f) const override {
    return {mat_dagger(f.mat())};
  }
  Morphism add(const Morphism& f, const Morphism& g) const override {
    return {mat_add(f.mat(), g.mat())};
  }
  std::pair<Morphism, Morphism> cup_cap(Obj a) const override {
    auto [cup, cap] = mat_cup_cap(backend_, a.dim);
    return {{cup}, {cap}};
  }
  bool equal(const Morphism& f, const Morphism& g, double tol) const override {
    return mat_eq(f.mat(), g.mat(), tol);
  }
  Morphism sample(Rng& rng, Obj a, Obj b) const override {
    return {sample_mat(backend_, b.dim, a.dim, rng)};
  }
  std::string show(const Morphism& f) const override { return f.mat().str(); }

 private:
  Backend backend_;
  std::string name_;
};

inline MatTheory rel_theory() { return MatTheory(Backend::Bool, "rel"); }

// CPM over a matrix backend; float complex and float real are the audited
// instances, exact involutive backends expose the structural operations.
class CpmTheory : public Theory {
 public:
  enum class Field { ComplexFloat, RealFloat, Exact };
  explicit CpmTheory(Field field = Field::ComplexFloat,
                     Backend exact_backend = Backend::GaussRat)
      : field_(field),
        backend_(field == Field::Exact ? exact_backend : Backend::FloatC) {}

  Field field() const { return field_; }
  Backend scalar_backend() const { return backend_; }
  bool real_only() const { return field_ == Field::RealFloat; }

  std::string name() const override {
    switch (field_) {
      case Field::ComplexFloat: return "cpm_c";
      case Field::RealFloat: return "cpm_r";
      case Field::Exact: return "cpm_" + backend_name(backend_);
    }
    return "cpm";
  }
  TheoryCaps caps() const override {
    return {field_ == Field::Exact, true, true, true};
  }
  Obj src(const Morphism& f) const override { return Obj{f.cpm().in_dim}; }
  Obj tgt(const Morphism& f) const override { return Obj{f.cpm().out_dim}; }
  Morphism id(Obj a) const override { return {cpm_identity(backend_, a.dim)}; }
  Morphism zero(Obj a, Obj b) const override {
    return {cpm_zero(backend_, a.dim, b.dim)};
  }
  Morphism discard(Obj a) const override {
    return {cpm_discard(backend_, a.dim)};
  }
  Morphism swap(Obj a, Obj b) const override {
    return {cpm_swap(backend_, a.dim, b.dim)};
  }
  Morphism compose(const Morphism& g, const Morphism& f) const override {
    return {cpm_compose(g.cpm(), f.cpm())};
  }
  Morphism tensor(const Morphism& f, const Morphism& g) const override {
    return {cpm_tensor(f.cpm(), g.cpm())};
  }
  Morphism dagger(const Morphism& f) const override {
    return {cpm_dagger(f.cpm())};
  }
  Morphism add(const Morphism& f, const Morphism& g) const override {
    return {cpm_add(f.cpm(), g.cpm())};
  }
  std::pair<Morphism, Morphism> cup_cap(Obj a) const override {
    auto [cup, cap] = mat_cup_cap(backend_, a.dim);
    return {{dbl(cup)}, {dbl(cap)}};
  }
  bool equal(const Morphism& f, const Morphism& g, double tol) const override {
    return cpm_eq(f.cpm(), g.cpm(), tol);
  }
  Morphism sample(Rng& rng, Obj a, Obj b) const override;
  std::string show(const Morphism& f) const override {
    return "choi " + f.cpm().choi.str();
  }

  // Sample a causal morphism (channel); float fields only.
  CpmMap sample_channel(Rng& rng, int in_dim, int out_dim) const;
  // Sample a causal pure state dbl(v), |v| = 1.
  CpmMap sample_pure_state(Rng& rng, int dim) const;

 private:
  Field field_;
  Backend backend_;
};

// Decorator injecting deliberate bugs; used by harness self-tests and the
// mutant-detection acceptance criterion.
enum class MutantKind { TransposedCompose, NonIsometricKernel, NonCentralPhase };

class MutantTheory : public Theory {
 public:
  MutantTheory(std::shared_ptr<const Theory> base, MutantKind kind)
      : base_(std::move(base)), kind_(kind) {}
  std::string name() const override { return base_->name() + "+mutant"; }
  TheoryCaps caps() const override { return base_->caps(); }
  Obj src(const Morphism& f) const override { return base_->src(f); }
  Obj tgt(const Morphism& f) const override { return base_->tgt(f); }
  Morphism id(Obj a) const override { return base_->id(a); }
  Morphism zero(Obj a, Obj b) const override { return base_->zero(a, b); }
  Morphism discard(Obj a) const override { return base_->discard(a); }
  Morphism swap(Obj a, Obj b) const override { return base_->swap(a, b); }
  Morphism compose(const Morphism& g, const Morphism& f) const override;
  Morphism tensor(const Morphism& f, const Morphism& g) const override {
    return base_->tensor(f, g);
  }
  Morphism dagger(const Morphism& f) const override { return base_->dagger(f); }
  Morphism add(const Morphism& f, const Morphism& g) const override {
    return base_->add(f, g);
  }
  std::pair<Morphism, Morphism> cup_cap(Obj a) const override {
    return base_->cup_cap(a);
  }
  bool equal(const Morphism& f, const Morphism& g, double tol) const override {
    return base_->equal(f, g, tol);
  }
  Morphism sample(Rng& rng, Obj a, Obj b) const override {
    return base_->sample(rng, a, b);
  }
  std::string show(const Morphism& f) const override { return base_->show(f); }
  MutantKind kind() const { return kind_; }

 private:
  std::shared_ptr<const Theory> base_;
  MutantKind kind_;
};

// --- Law harness -------------------------------------------------------------

struct LawParams {
  int max_dim = 4;
  int samples = 200;
  uint64_t seed = 42;
  double tol = 1e-8;
};

// Known law-set names: category, monoidal, symmetry, dagger, compact,
// discard, zero, scalars. "all" expands to every set the backend supports.
std::vector<std::string> all_law_sets();
LawSuite check_laws(const Theory& th, const std::vector<std::string>& law_sets,
                    const LawParams& p);

}  // namespace pt
